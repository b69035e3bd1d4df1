import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kgflow import (
    PiRational,
    TrigPoly,
    format_trigpoly,
    linear_combine,
    parse_expression,
    parse_hamiltonian,
    rat,
)
from kgflow.errors import (
    ExpressionSyntaxError,
    InputError,
    NonLinearTrigArgumentError,
    NonTrigTermError,
    NotPeriodicError,
)

from .conftest import QUARTIC_TEXT, SHEAR_TEXT
from .strategies import real_periodic_hamiltonians


def python_eval(text, x, y):
    """Independent numeric route: hand the source to Python's own parser."""
    return eval(  # noqa: S307 - test oracle on known inputs
        text.replace("^", "**"),
        {"__builtins__": {}},
        {"pi": math.pi, "sin": math.sin, "cos": math.cos, "x": x, "y": y},
    )


def quartic_expected():
    # exponential-basis coefficients: 5/32 at (0,0), -1/16 at (+-2,0) and
    # (0,+-2), 1/128 at (+-4,0) and (0,+-4), 1/64 at (+-2,+-2); a cosine
    # term carries half its amplitude on each mirrored key
    pairs = [(rat(5, 32), TrigPoly.one())]
    for key in ((2, 0), (0, 2)):
        pairs.append((rat(-1, 8), TrigPoly.cosine(*key)))
    for key in ((4, 0), (0, 4)):
        pairs.append((rat(1, 64), TrigPoly.cosine(*key)))
    for key in ((2, 2), (2, -2)):
        pairs.append((rat(1, 32), TrigPoly.cosine(*key)))
    return linear_combine(pairs)


def test_quartic_fourier_form():
    got = parse_hamiltonian(QUARTIC_TEXT)
    assert got == quartic_expected()
    # mean value over the torus
    assert got.coeff(0, 0) == PiRational.from_rational(rat(5, 32))
    assert got.is_real() and got.is_periodic()


def test_quartic_cross_check_against_mul():
    base = parse_hamiltonian("sin(pi*x)^2 + sin(pi*y)^2")
    byhand = (base * base).scaled(rat(1, 8))
    assert byhand == parse_hamiltonian(QUARTIC_TEXT)


def test_shear_parses_with_inverse_pi():
    got = parse_hamiltonian(SHEAR_TEXT)
    want = TrigPoly.sine(2, 0).scaled(
        PiRational.from_rational(rat(1, 2), 0, -1)
    )
    assert got == want


def test_antiperiodic_rejected():
    with pytest.raises(NotPeriodicError):
        parse_hamiltonian("sin(pi*x)")


def test_bare_variable_rejected():
    with pytest.raises(NonTrigTermError) as info:
        parse_hamiltonian("x + y")
    assert info.value.position == 0


@pytest.mark.parametrize(
    "text",
    [
        "sin(pi*x*x)",
        "sin(x)",
        "cos(pi*x^2)",
        "sin(pi*x/3 + pi*x)",  # slope 4/3, not an integer
        "cos(pi*(x + 1/3))",  # phase denominator 3
    ],
)
def test_nonlinear_arguments_rejected(text):
    with pytest.raises(NonLinearTrigArgumentError):
        parse_hamiltonian(text)


@pytest.mark.parametrize(
    "text, pos",
    [
        ("", 0),
        ("2 +", 3),
        ("sin 2", 4),
        ("(1+2", 4),
        ("1 $ 2", 2),
        ("foo(x)", 0),
        ("2^x", 2),
        ("1/0", 1),
        ("1/(1+pi)", 1),
        ("sin(2*pi*x)/sin(2*pi*x)", 11),
    ],
)
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_hamiltonian(text)
    assert info.value.position == pos


def test_half_integer_phases():
    assert parse_hamiltonian("sin(pi*(2*x + 1/2))") == parse_hamiltonian(
        "cos(2*pi*x)"
    )
    assert parse_hamiltonian("cos(pi*(2*x + 1))") == parse_hamiltonian(
        "-cos(2*pi*x)"
    )


def test_numeric_division_and_powers():
    got = parse_hamiltonian("3/4 * cos(2*pi*x) * pi^2 / pi^2")
    assert got == TrigPoly.cosine(2, 0).scaled(rat(3, 4))


@pytest.mark.parametrize(
    "text",
    [
        QUARTIC_TEXT,
        "sin(2*pi*x)*cos(2*pi*y) + 1/3",
        "(cos(2*pi*x) - cos(2*pi*y))^3",
        "2*pi^2*sin(2*pi*(x+y))^2",
    ],
)
def test_eval_matches_python_at_random_points(text):
    poly = parse_hamiltonian(text)
    rng = random.Random(42)
    for _ in range(100):
        x, y = rng.random(), rng.random()
        assert abs(poly.eval(x, y).real - python_eval(text, x, y)) < 1e-10
        assert abs(poly.eval(x, y).imag) < 1e-10


@pytest.mark.parametrize(
    "text",
    [
        QUARTIC_TEXT,
        SHEAR_TEXT,
        "1/3 + pi*cos(2*pi*(x-y))",
        "sin(2*pi*x)*sin(2*pi*y)*pi^3",
    ],
)
def test_round_trip(text):
    poly = parse_hamiltonian(text)
    assert parse_hamiltonian(format_trigpoly(poly)) == poly


def test_format_zero():
    assert format_trigpoly(TrigPoly.zero()) == "0"
    assert parse_hamiltonian("0").is_zero()


@given(real_periodic_hamiltonians())
@settings(max_examples=50)
def test_round_trip_random(poly):
    assert parse_hamiltonian(format_trigpoly(poly)) == poly


@given(st.text(min_size=1, max_size=30))
@settings(max_examples=150)
def test_parser_is_total(text):
    # every input terminates with a poly or a positioned diagnostic
    try:
        parse_hamiltonian(text)
    except InputError as exc:
        pos = getattr(exc, "position", None)
        if pos is not None:
            assert 0 <= pos <= len(text)


def test_expression_tree_is_exposed():
    tree = parse_expression("sin(2*pi*x)^2")
    from kgflow.expressions import Pow, Trig

    assert isinstance(tree, Pow) and tree.exponent == 2
    assert isinstance(tree.base, Trig)
    assert (tree.base.m, tree.base.n, tree.base.c2) == (2, 0, 0)
