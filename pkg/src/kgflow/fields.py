"""Uniform-lattice evaluation: fields, sign maps, degeneration times.

Lattice convention: G x G cell corners x_i = i/G, y_j = j/G for
i, j in 0..G-1 (periodic, so 1 is excluded).  Arrays are indexed [i, j]
with x on axis 0, stored row-major with j fastest, matching the CSV row
order.  Even G places the Hamiltonian's critical points exactly on the
lattice.

Determinism: complex exponential tables are computed once on the full
lattice vectors; worker threads only slice those tables and combine them
with elementwise arithmetic in a fixed order, so output is bitwise
independent of the thread count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .conformal import DEFAULT_EPS_BLOWUP, _TINY_DENOM
from .errors import NoDegenerationError, StepFailureError

NEGATIVE, BLOWUP, POSITIVE = 0, 1, 2

DEFAULT_COARSE_STEP = 0.005
DEFAULT_BISECT_TOL = 1e-4
DEFAULT_CRITICAL_GRID = 200


@dataclass
class FieldGrid:
    """Numeric samples of the conformal factor over the lattice."""

    G: int
    t: float
    mode: str
    h: np.ndarray
    im_residual: np.ndarray
    denom_abs: np.ndarray
    blowup: np.ndarray
    meta: dict


@dataclass
class SignMap:
    """Per-point classification: blowup iff denom_abs < eps_blowup,
    otherwise the sign of h (h <= 0 counts as negative)."""

    G: int
    classes: np.ndarray
    meta: dict


def resolve_threads(threads):
    if threads is None:
        env = os.environ.get("KGF_THREADS")
        if env:
            threads = int(env)
        else:
            threads = os.cpu_count() or 1
    return max(1, int(threads))


def eval_points(poly, xs, ys):
    """Vectorized TrigPoly evaluation at arbitrary points (complex)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    out = np.zeros(np.broadcast(xs, ys).shape, dtype=complex)
    for m, n, c in poly.numeric_terms():
        out += c * np.exp(1j * np.pi * (m * xs + n * ys))
    return out


class GridEvaluator:
    """Caches per-order lattice samples of a ConformalSeries.

    Building the cache costs one pass over every stored Fourier key;
    after that a field at any t is a handful of fused elementwise
    operations, which is what makes the critical-time scan cheap.
    """

    def __init__(self, cs, G):
        if G < 2:
            raise ValueError("grid size must be >= 2")
        self.cs = cs
        self.G = G
        self.xs = np.arange(G, dtype=float) / G
        self._ex = {}
        self._ey = {}
        self._den_grids = None
        self._num_grids = None

    def _exp_x(self, m):
        tab = self._ex.get(m)
        if tab is None:
            tab = self._ex[m] = np.exp(1j * np.pi * m * self.xs)
        return tab

    def _exp_y(self, n):
        # square lattice: the y nodes coincide with the x nodes
        tab = self._ey.get(n)
        if tab is None:
            tab = self._ey[n] = np.exp(1j * np.pi * n * self.xs)
        return tab

    def poly_grid(self, poly):
        out = np.zeros((self.G, self.G), dtype=complex)
        for m, n, c in poly.numeric_terms():
            out += c * np.outer(self._exp_x(m), self._exp_y(n))
        return out

    def denominator_grids(self):
        if self._den_grids is None:
            self._den_grids = [
                self.poly_grid(p) for p in self.cs.denominator.coeffs
            ]
        return self._den_grids

    def coefficient_grids(self):
        if self._num_grids is None:
            self._num_grids = [self.poly_grid(p) for p in self.cs.a]
        return self._num_grids

    def field(self, t, mode="rational", threads=None,
              eps_blowup=DEFAULT_EPS_BLOWUP):
        if mode == "rational":
            grids = self.denominator_grids()
        elif mode == "polynomial":
            grids = self.coefficient_grids()
        else:
            raise ValueError(f"unknown mode {mode!r}")
        threads = resolve_threads(threads)
        G = self.G
        powers = [t ** k for k in range(len(grids))]
        h = np.empty((G, G))
        im_residual = np.empty((G, G))
        denom_abs = np.ones((G, G))
        blowup = np.zeros((G, G), dtype=bool)

        def work(lo, hi):
            sl = slice(lo, hi)
            acc = np.zeros((hi - lo, G), dtype=complex)
            for k, grid in enumerate(grids):
                acc += powers[k] * grid[sl]
            if mode == "rational":
                mag = np.abs(acc)
                denom_abs[sl] = mag
                blowup[sl] = mag < eps_blowup
                with np.errstate(divide="ignore", invalid="ignore"):
                    val = np.where(acc == 0, np.inf, 1.0 / acc)
            else:
                val = acc
            h[sl] = val.real
            im_residual[sl] = np.abs(val.imag)

        chunks = _row_chunks(G, threads)
        if threads == 1 or len(chunks) == 1:
            for lo, hi in chunks:
                work(lo, hi)
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                list(pool.map(lambda c: work(*c), chunks))
        meta = {
            "hamiltonian": self.cs.hamiltonian_digest,
            "order": self.cs.order,
            "grid": G,
            "t": t,
            "mode": mode,
            "eps_blowup": eps_blowup,
            "threads": threads,
        }
        return FieldGrid(G, t, mode, h, im_residual, denom_abs, blowup, meta)


def _row_chunks(G, threads):
    size = max(1, math.ceil(G / threads))
    return [(lo, min(lo + size, G)) for lo in range(0, G, size)]


def evaluate_field(cs, G, t, mode="rational", threads=None,
                   eps_blowup=DEFAULT_EPS_BLOWUP, evaluator=None):
    """All G*G lattice values of the conformal factor at one time."""
    if evaluator is None:
        evaluator = GridEvaluator(cs, G)
    return evaluator.field(t, mode, threads, eps_blowup)


def sign_map(fg):
    classes = np.where(fg.h > 0, POSITIVE, NEGATIVE).astype(np.uint8)
    classes[fg.blowup] = BLOWUP
    return SignMap(fg.G, classes, dict(fg.meta))


def critical_time(cs, direction="pos", G=DEFAULT_CRITICAL_GRID,
                  t_max=0.5, coarse_step=DEFAULT_COARSE_STEP,
                  tol=DEFAULT_BISECT_TOL, eps_blowup=DEFAULT_EPS_BLOWUP,
                  threads=None, evaluator=None):
    """Earliest |t| at which the factor stops being strictly positive.

    Rational-mode lattice check: degenerate when min h <= 0 or any point
    blows up.  Coarse scan with the given step, then bisection to tol.
    Raises NoDegenerationError when the scan exhausts (0, t_max].
    """
    if direction not in ("pos", "neg"):
        raise ValueError("direction must be 'pos' or 'neg'")
    sign = 1.0 if direction == "pos" else -1.0
    if evaluator is None:
        evaluator = GridEvaluator(cs, G)

    def degenerate(s):
        fg = evaluator.field(sign * s, "rational", threads, eps_blowup)
        return bool(fg.blowup.any() or fg.h.min() <= 0)

    hit = None
    prev = 0.0
    k = 1
    while True:
        s = k * coarse_step
        if s > t_max + 1e-12:
            break
        if degenerate(s):
            hit = s
            break
        prev = s
        k += 1
    if hit is None:
        raise NoDegenerationError(
            f"no degeneration for |t| <= {t_max} at step {coarse_step}"
        )
    lo, hi = prev, hit
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if degenerate(mid):
            hi = mid
        else:
            lo = mid
    return sign * hi


def diagonal_errmap(cs, samples_s=50, t_min=-1.0, t_max=1.0, samples_t=81,
                    log_base=None):
    """Truncation-error indicator sampled on the diagonal x = y in [0, 0.5]
    crossed with a uniform time range; rows ordered s-major.

    Sentinels: -inf when the top term vanishes, +inf when the partial sum
    underflows.
    """
    n = cs.order
    if n < 2:
        raise ValueError("error indicator needs series order >= 2")
    svals = np.linspace(0.0, 0.5, samples_s)
    tvals = np.linspace(t_min, t_max, samples_t)
    coeff_vals = np.vstack([eval_points(p, svals, svals) for p in cs.a])
    rows = []
    scale = math.log(log_base) if log_base is not None else 1.0
    for i, s in enumerate(svals):
        top = abs(coeff_vals[n, i])
        for t in tvals:
            num = top * abs(t) ** n
            if num == 0.0:
                rows.append((s, t, -math.inf))
                continue
            val = 0j
            tk = 1.0
            for k in range(n):
                val += coeff_vals[k, i] * tk
                tk *= t
            den = abs(val)
            if den < _TINY_DENOM:
                rows.append((s, t, math.inf))
            else:
                rows.append((s, t, math.log(num / den) / scale))
    return rows


def real_flow_oracle(H, x0, y0, t, rtol=1e-12, atol=1e-12):
    """Independent check of the real-time flow: adaptive high-order
    integration of xdot = H_y, ydot = -H_x, outputs wrapped to [0, 1)."""
    hx = H.diff("x")
    hy = H.diff("y")

    def rhs(_, state):
        x, y = state
        return (hy.eval(x, y).real, -hx.eval(x, y).real)

    if t == 0:
        return (x0 % 1.0, y0 % 1.0)
    sol = solve_ivp(rhs, (0.0, t), (float(x0), float(y0)), method="DOP853",
                    rtol=rtol, atol=atol, dense_output=False)
    if not sol.success:
        raise StepFailureError(f"integrator failed: {sol.message}")
    x, y = sol.y[0, -1], sol.y[1, -1]
    return (x % 1.0, y % 1.0)
