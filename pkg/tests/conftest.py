"""Shared fixtures: the quartic Morse-squared Hamiltonian and its series.

The N=12 symbolic build is the expensive part of the suite, so it runs
once per session and its wall time is recorded for the performance
criterion.
"""

import time

import pytest

import kgflow as kg

QUARTIC_TEXT = "(1/8)*(sin(pi*x)^2 + sin(pi*y)^2)^2"
SHEAR_TEXT = "sin(2*pi*x)/(2*pi)"


@pytest.fixture(scope="session")
def quartic():
    return kg.parse_hamiltonian(QUARTIC_TEXT)


@pytest.fixture(scope="session")
def shear():
    return kg.parse_hamiltonian(SHEAR_TEXT)


@pytest.fixture(scope="session")
def build_timings():
    return {}


@pytest.fixture(scope="session")
def lie12(quartic, build_timings):
    t0 = time.perf_counter()
    zs = kg.build_lie_series(quartic, "z", 12)
    zbs = kg.build_lie_series(quartic, "zbar", 12)
    build_timings["lie12"] = time.perf_counter() - t0
    return zs, zbs


@pytest.fixture(scope="session")
def conformal12(quartic, lie12, build_timings):
    zs, zbs = lie12
    t0 = time.perf_counter()
    cs = kg.conformal_series(kg.jacobian_series(zs, zbs))
    build_timings["conformal12"] = (
        time.perf_counter() - t0 + build_timings["lie12"]
    )
    cs.hamiltonian_digest = QUARTIC_TEXT
    return cs
