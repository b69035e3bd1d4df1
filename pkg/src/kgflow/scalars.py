"""Exact scalar coefficients: Gaussian rationals times integer powers of pi.

Every symbolic quantity in the pipeline has coefficients in the ring
Q(i)[pi, 1/pi]: finite sums  sum_p (re_p + i*im_p) * pi**p  with rational
re_p, im_p and integer p.  Since pi is transcendental, such a sum is zero
iff every stored term vanishes, so equality is exactly decidable.

Negative pi powers are admitted: Hamiltonians like sin(2*pi*x)/(2*pi)
carry pi**-1 coefficients, and differentiation raises the power back.
"""

from __future__ import annotations

import math

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rational


def rat(numerator, denominator=1):
    """Build an exact rational from ints, strings like '5/32', or rationals."""
    return Rational(numerator, denominator) if denominator != 1 else Rational(numerator)


_ZERO = Rational(0)

# i**k for k mod 4, as (re, im) pairs
I_POWERS = ((Rational(1), _ZERO), (_ZERO, Rational(1)),
            (Rational(-1), _ZERO), (_ZERO, Rational(-1)))


class PiRational:
    """Immutable element of Q(i)[pi, 1/pi], stored sparsely by pi power."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        pruned = {}
        if terms:
            for p, (re, im) in terms.items():
                if re or im:
                    pruned[p] = (re, im)
        self.terms = pruned

    @classmethod
    def from_rational(cls, re, im=0, pi_power=0):
        return cls({pi_power: (rat(re), rat(im))})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: (Rational(1), _ZERO)})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, PiRational):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for p, (re, im) in other.terms.items():
            cur = out.get(p)
            if cur is None:
                out[p] = (re, im)
            else:
                out[p] = (cur[0] + re, cur[1] + im)
        return PiRational(out)

    def __neg__(self):
        return PiRational({p: (-re, -im) for p, (re, im) in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PiRational):
            out = {}
            for p1, (r1, i1) in self.terms.items():
                for p2, (r2, i2) in other.terms.items():
                    p = p1 + p2
                    re = r1 * r2 - i1 * i2
                    im = r1 * i2 + i1 * r2
                    cur = out.get(p)
                    if cur is None:
                        out[p] = (re, im)
                    else:
                        out[p] = (cur[0] + re, cur[1] + im)
            return PiRational(out)
        q = rat(other)
        return PiRational({p: (re * q, im * q) for p, (re, im) in self.terms.items()})

    __rmul__ = __mul__

    def scaled(self, re, im=0, pi_shift=0):
        """Multiply by the single monomial (re + i*im) * pi**pi_shift."""
        re = rat(re)
        im = rat(im)
        out = {}
        for p, (r, i) in self.terms.items():
            out[p + pi_shift] = (r * re - i * im, r * im + i * re)
        return PiRational(out)

    def conjugate(self):
        return PiRational({p: (re, -im) for p, (re, im) in self.terms.items()})

    def as_single_term(self):
        """Return (pi_power, (re, im)) when exactly one term is stored, else None."""
        if len(self.terms) != 1:
            return None
        p, val = next(iter(self.terms.items()))
        return p, val

    def invert(self):
        """Exact inverse, defined only for single-term values."""
        single = self.as_single_term()
        if single is None:
            raise ZeroDivisionError(
                "only single-term pi-rationals are invertible in the ring"
            )
        p, (re, im) = single
        norm = re * re + im * im
        return PiRational({-p: (re / norm, -im / norm)})

    def real_part(self):
        return PiRational({p: (re, _ZERO) for p, (re, _) in self.terms.items()})

    def imag_part(self):
        return PiRational({p: (im, _ZERO) for p, (_, im) in self.terms.items()})

    def pi_powers(self):
        return set(self.terms)

    def __complex__(self):
        val = 0j
        for p, (re, im) in self.terms.items():
            val += (float(re) + 1j * float(im)) * math.pi ** p
        return val

    def __repr__(self):
        if not self.terms:
            return "PiRational(0)"
        parts = []
        for p in sorted(self.terms):
            re, im = self.terms[p]
            parts.append(f"({re}{'+' if im >= 0 else ''}{im}i)pi^{p}")
        return "PiRational(" + " + ".join(parts) + ")"


PI_ZERO = PiRational.zero()
PI_ONE = PiRational.one()
