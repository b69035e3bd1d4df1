"""Conformal factor of the truncated flow: Jacobian series and inversion.

The truncated coordinate series psi(t) = z + sum_{k<=N} (it)^k/k! w_k
defines, for each t, a complex-valued map on the torus.  The metric
coefficient is h(x, y, t) = h0 / D(x, y, t) with D the Jacobian
determinant of that map in Wirtinger form,

    D = (d psi/dz)(d conj(psi)/dzbar) - (d psi/dzbar)(d conj(psi)/dz)
      = |d psi/dz|^2 - |d psi/dzbar|^2 ,

where conj(psi) is the pointwise complex conjugate, i.e. the zbar
coordinate series evaluated at -it.  (Feeding the zbar series at +it
instead makes D identically 1 through order N for every Hamiltonian --
the flow is symplectic for real time and that identity survives formal
substitution -- so that reading carries no information.)  D is expanded
in powers of t, truncated at the series order, and has exactly real
coefficients.  Inverting it as a power series gives the polynomial form
sum_k a_k(x, y) t^k; both the rational and the polynomial readings of h
are evaluated here.

All series coefficients stay exact, which is what makes identities like
a_0 = 1 and Im(a_k) = 0 checkable with no tolerance at all.

Note the i/2 normalization quirk: with flat initial data the factor must
satisfy h(., 0) = 1, so h0/D(0) = 1 fixes the overall constant; no stray
prefactor is applied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import BadConstantTermError, MismatchedSeriesError
from .scalars import I_POWERS, rat
from .trigpoly import TrigPoly, _finish, _mul_into


@dataclass
class TrigPolySeries:
    """Polynomial in t with TrigPoly coefficients: sum_k t^k coeffs[k]."""

    coeffs: list

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]


@dataclass
class ConformalSeries:
    """Coefficients a_0..a_N of the conformal factor, plus the denominator
    series retained for rational-mode evaluation."""

    a: list
    order: int
    denominator: TrigPolySeries
    hamiltonian_digest: str = ""


class ConformalValue(NamedTuple):
    h: float
    im_residual: float
    denom_abs: float
    blowup: bool


DEFAULT_EPS_BLOWUP = 1e-3
_TINY_DENOM = 1e-30


def _wirtinger_series(zs, zbs, imaginary_time):
    """The four derivative series A, B, C, E as coefficient lists in t."""
    if zs.which != "z" or zbs.which != "zbar":
        raise MismatchedSeriesError("need a z series and a zbar series")
    if zs.order != zbs.order:
        raise MismatchedSeriesError(
            f"orders differ: {zs.order} vs {zbs.order}"
        )
    if zs.hamiltonian != zbs.hamiltonian:
        raise MismatchedSeriesError("series built from different Hamiltonians")
    n = zs.order
    one, zero = TrigPoly.one(), TrigPoly.zero()
    A, B, C, E = [one], [zero], [zero], [one]
    fact = 1
    for k in range(1, n + 1):
        fact *= k
        if imaginary_time:
            # the z series carries (it)^k, its pointwise conjugate (-it)^k
            ire, iim = I_POWERS[k % 4]
            jre, jim = I_POWERS[(-k) % 4]
            re, im = ire / fact, iim / fact
            re2, im2 = jre / fact, jim / fact
        else:
            re = re2 = rat(1, fact)
            im = im2 = 0
        wz = zs.w[k - 1]
        wzb = zbs.w[k - 1]
        A.append(wz.diff("z").scaled(re, im))
        B.append(wz.diff("zbar").scaled(re, im))
        C.append(wzb.diff("z").scaled(re2, im2))
        E.append(wzb.diff("zbar").scaled(re2, im2))
    return A, B, C, E


def _determinant_series(A, B, C, E):
    n = len(A) - 1
    out = []
    for k in range(n + 1):
        acc = {}
        for i in range(k + 1):
            _mul_into(acc, A[i], E[k - i])
            _mul_into(acc, B[i], C[k - i], negate=True)
        out.append(_finish(acc))
    return TrigPolySeries(out)


def jacobian_series(zs, zbs):
    """Denominator series D(t) for imaginary time tau = i*t, truncated at
    the shared order.

    The zbar series enters at -it (pointwise conjugation of the z series),
    making D the real Jacobian determinant of the truncated map; the i^k
    factors are folded into the coefficients and every d_k is exactly real.
    """
    return _determinant_series(*_wirtinger_series(zs, zbs, True))


def real_time_jacobian_series(zs, zbs):
    """Same determinant for real tau = t: the flow is a symplectomorphism,
    so every coefficient beyond the constant 1 must vanish exactly."""
    return _determinant_series(*_wirtinger_series(zs, zbs, False))


def conformal_series(D, h0=1):
    """Invert the denominator series: a_0 = h0, a_k = -sum d_j a_{k-j}."""
    if D.coeffs[0] != TrigPoly.one():
        raise BadConstantTermError(
            "denominator series must have constant term 1"
        )
    n = D.order
    a = [TrigPoly.one()]
    for k in range(1, n + 1):
        acc = {}
        for j in range(1, k + 1):
            _mul_into(acc, D.coeffs[j], a[k - j], negate=True)
        a.append(_finish(acc))
    if h0 != 1:
        a = [p.scaled(h0) for p in a]
    return ConformalSeries(a, n, D)


def build_conformal_series(H, order, digest=None):
    """Full pipeline: coordinate Lie series -> Jacobian -> inversion."""
    from . import expressions
    from .lieseries import build_lie_series

    zs = build_lie_series(H, "z", order)
    zbs = build_lie_series(H, "zbar", order)
    cs = conformal_series(jacobian_series(zs, zbs))
    cs.hamiltonian_digest = (
        digest if digest is not None else expressions.format_trigpoly(H)
    )
    return cs


# ----------------------------------------------------------------------
# pointwise numeric evaluation


def eval_conformal(cs, x, y, t, mode="rational", eps_blowup=DEFAULT_EPS_BLOWUP):
    """Conformal factor at one point.

    polynomial mode evaluates sum a_k t^k (denom_abs reported as 1);
    rational mode evaluates h0 / D(x, y, t) and flags near-zero
    denominators as blow-ups (the value is still returned).
    """
    if mode == "polynomial":
        val = 0j
        tk = 1.0
        for p in cs.a:
            val += p.eval(x, y) * tk
            tk *= t
        return ConformalValue(val.real, abs(val.imag), 1.0, False)
    if mode != "rational":
        raise ValueError(f"unknown mode {mode!r}")
    dval = 0j
    tk = 1.0
    for p in cs.denominator.coeffs:
        dval += p.eval(x, y) * tk
        tk *= t
    denom_abs = abs(dval)
    if dval == 0:
        return ConformalValue(math.inf, 0.0, 0.0, True)
    val = 1.0 / dval
    return ConformalValue(
        val.real, abs(val.imag), denom_abs, denom_abs < eps_blowup
    )


def error_indicator(cs, x, y, t, log_base=None):
    """Truncation-error diagnostic: log of |last term| over |partial sum|.

    Returns -inf when the numerator vanishes (e.g. t = 0) and +inf when
    the lower-order partial sum is numerically zero.
    """
    n = cs.order
    if n < 2:
        raise ValueError("error indicator needs series order >= 2")
    num = abs(cs.a[n].eval(x, y)) * abs(t) ** n
    if num == 0.0:
        return -math.inf
    val = 0j
    tk = 1.0
    for p in cs.a[:n]:
        val += p.eval(x, y) * tk
        tk *= t
    den = abs(val)
    if den < _TINY_DENOM:
        return math.inf
    out = math.log(num / den)
    if log_base is not None:
        out /= math.log(log_base)
    return out
