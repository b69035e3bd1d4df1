"""Hamiltonian derivation on the torus and its truncated Lie series.

Sign convention: with symplectic form dx^dy the vector field of H is
X_H = H_y d/dx - H_x d/dy, i.e. xdot = H_y, ydot = -H_x.  Applied to the
complex chart seed z = x + i*y this gives X_H z = H_y - i*H_x, and
X_H zbar = H_y + i*H_x.  The torus is covered by the single chart: z is
multivalued but dz and every derived coefficient are periodic, so one
chart suffices.

The order-N series of a coordinate is  coordinate + sum_{k=1..N} tau^k/k! w_k
with w_1 the seed derivative and w_{k+1} = X_H w_k, all exact TrigPolys.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import expressions
from .errors import NotPeriodicError, NotRealError
from .scalars import PiRational
from .trigpoly import TrigPoly

_COORDS = ("z", "zbar")


def _check_hamiltonian(H):
    if not H.is_real():
        raise NotRealError("Hamiltonian must be real-valued")
    if not H.is_periodic():
        raise NotPeriodicError("Hamiltonian must be 1-periodic on the torus")


def hamiltonian_derivation(H, target):
    """Apply X_H = H_y d/dx - H_x d/dy.

    target is a TrigPoly, or one of the seed tags "z" / "zbar" whose
    affine derivatives (d/dx = 1, d/dy = +-i) are handled exactly.
    """
    _check_hamiltonian(H)
    hx = H.diff("x")
    hy = H.diff("y")
    if target in _COORDS:
        sign = -1 if target == "z" else 1
        return hy + hx.scaled(0, sign)
    return hy * target.diff("x") - hx * target.diff("y")


@dataclass
class CoordLieSeries:
    """Truncation data for e^{tau X_H} applied to one coordinate.

    w[k-1] holds w_k for k = 1..order; the k = 0 identity term is the
    coordinate itself and stays implicit.
    """

    which: str
    order: int
    w: list
    hamiltonian: TrigPoly

    def term(self, k):
        """w_k for k in 1..order."""
        if not 1 <= k <= self.order:
            raise IndexError(f"k must be in 1..{self.order}")
        return self.w[k - 1]


def build_lie_series(H, which, order):
    """Exact w_1..w_order for the coordinate `which` in {"z", "zbar"}."""
    if which not in _COORDS:
        raise ValueError(f"which must be one of {_COORDS}")
    if order < 1:
        raise ValueError("order must be >= 1")
    _check_hamiltonian(H)
    hx = H.diff("x")
    hy = H.diff("y")
    sign = -1 if which == "z" else 1
    w = [hy + hx.scaled(0, sign)]
    for _ in range(order - 1):
        prev = w[-1]
        w.append(hy * prev.diff("x") - hx * prev.diff("y"))
    return CoordLieSeries(which, order, w, H)


# ----------------------------------------------------------------------
# slow cross-check: differentiate the unexpanded expression tree


def naive_lie_series(text, which, order):
    """Same series as build_lie_series, by chain/Leibniz rules on the raw
    expression tree, Fourier-normalized only at the end for comparison.

    Tree sizes grow exponentially with the order, hence the order <= 4 cap.
    """
    if which not in _COORDS:
        raise ValueError(f"which must be one of {_COORDS}")
    if not 1 <= order <= 4:
        raise ValueError("naive series supports 1 <= order <= 4 only")
    h_ast = expressions.parse_expression(text)
    H = expressions.to_trigpoly(h_ast)
    _check_hamiltonian(H)
    hx = expressions.differentiate(h_ast, "x")
    hy = expressions.differentiate(h_ast, "y")
    sign = 1 if which == "zbar" else -1
    seed_i = expressions.Num(PiRational.from_rational(0, sign))
    trees = [expressions.Add(hy, expressions.Mul(seed_i, hx))]
    minus_one = expressions.Num(PiRational.from_rational(-1))
    for _ in range(order - 1):
        prev = trees[-1]
        trees.append(
            expressions.Add(
                expressions.Mul(hy, expressions.differentiate(prev, "x")),
                expressions.Mul(
                    minus_one,
                    expressions.Mul(hx, expressions.differentiate(prev, "y")),
                ),
            )
        )
    w = [expressions.to_trigpoly(tree) for tree in trees]
    return CoordLieSeries(which, order, w, H)
