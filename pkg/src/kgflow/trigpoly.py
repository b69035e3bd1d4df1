"""Exact sparse trigonometric polynomials on the unit torus.

A TrigPoly is a finite Fourier sum  sum_{(m,n)} c_{m,n} e^{i*pi*(m*x + n*y)}
with PiRational coefficients, keyed by the integer frequency pair (m, n) in
units of pi.  Keeping everything in this canonical form is what prevents the
exponential blow-up that unexpanded symbolic differentiation suffers from:
products convolve supports instead of duplicating expression trees.

Frequencies are measured in units of pi (not 2*pi) so that factors such as
sin(pi*x) remain representable before torus periodicity (all-even keys) is
enforced at validation time.

Instances are immutable after construction and safe to share across threads;
all operations are pure.
"""

from __future__ import annotations

import cmath

from .scalars import PiRational, Rational, rat

_HALF = rat(1, 2)

# per-key Gaussian multiplier (re, im) for each derivative direction;
# the pi power always rises by one
_DIFF_RULES = {
    "x": lambda m, n: (0, m),
    "y": lambda m, n: (0, n),
    "z": lambda m, n: (rat(n, 2), rat(m, 2)),
    "zbar": lambda m, n: (rat(-n, 2), rat(m, 2)),
}


class TrigPoly:
    __slots__ = ("coeffs", "_numeric")

    def __init__(self, coeffs=None):
        pruned = {}
        if coeffs:
            for key, c in coeffs.items():
                if c:
                    pruned[key] = c
        self.coeffs = pruned
        self._numeric = None

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, value):
        """Constant function; value is a PiRational or anything rat() accepts."""
        if not isinstance(value, PiRational):
            value = PiRational.from_rational(value)
        return cls({(0, 0): value})

    @classmethod
    def one(cls):
        return cls.constant(1)

    @classmethod
    def monomial(cls, m, n, coeff):
        if not isinstance(coeff, PiRational):
            coeff = PiRational.from_rational(coeff)
        return cls({(m, n): coeff})

    @classmethod
    def cosine(cls, m, n):
        """cos(pi*(m*x + n*y)) in canonical form."""
        if m == 0 and n == 0:
            return cls.one()
        half = PiRational.from_rational(_HALF)
        return cls({(m, n): half, (-m, -n): half})

    @classmethod
    def sine(cls, m, n):
        """sin(pi*(m*x + n*y)) in canonical form."""
        if m == 0 and n == 0:
            return cls.zero()
        lower = PiRational.from_rational(0, _HALF)
        return cls({(m, n): -lower, (-m, -n): lower})

    # ------------------------------------------------------------------
    # ring structure

    def __add__(self, other):
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            cur = out.get(key)
            out[key] = c if cur is None else cur + c
        return TrigPoly(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TrigPoly({key: -c for key, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, TrigPoly):
            acc = {}
            _mul_into(acc, self, other)
            return _finish(acc)
        return self.scaled(other)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only non-negative integer powers are defined")
        result = TrigPoly.one()
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    def scaled(self, value, im=0, pi_shift=0):
        """Multiply every coefficient by (value + i*im) * pi**pi_shift.

        value may also be a PiRational, in which case im/pi_shift are unused.
        """
        if isinstance(value, PiRational):
            return TrigPoly({k: c * value for k, c in self.coeffs.items()})
        return TrigPoly(
            {k: c.scaled(value, im, pi_shift) for k, c in self.coeffs.items()}
        )

    # ------------------------------------------------------------------
    # calculus

    def diff(self, direction):
        """Exact derivative along x, y, z = (x+iy)/.. or zbar Wirtinger axes.

        On the basis monomial with key (m, n): d/dx multiplies by i*pi*m,
        d/dy by i*pi*n, d/dz by (pi/2)(n + i m), d/dzbar by (pi/2)(-n + i m).
        The pi degree of every coefficient rises by exactly one.
        """
        try:
            rule = _DIFF_RULES[direction]
        except KeyError:
            raise ValueError(f"unknown direction {direction!r}") from None
        out = {}
        for (m, n), c in self.coeffs.items():
            re, im = rule(m, n)
            if re or im:
                out[(m, n)] = c.scaled(re, im, 1)
        return TrigPoly(out)

    def conjugate(self):
        return TrigPoly(
            {(-m, -n): c.conjugate() for (m, n), c in self.coeffs.items()}
        )

    # ------------------------------------------------------------------
    # predicates and structure

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset((k, c) for k, c in self.coeffs.items()))

    def is_real(self):
        """True iff coeff(-m,-n) == conj(coeff(m,n)) for every key."""
        for (m, n), c in self.coeffs.items():
            mirror = self.coeffs.get((-m, -n))
            if mirror is None or mirror != c.conjugate():
                return False
        return True

    def is_periodic(self):
        """True iff every key has both m and n even (1-periodic in x and y)."""
        return all(m % 2 == 0 and n % 2 == 0 for m, n in self.coeffs)

    def support(self):
        return set(self.coeffs)

    def max_abs_freq(self):
        if not self.coeffs:
            return 0
        return max(max(abs(m), abs(n)) for m, n in self.coeffs)

    def pi_powers(self):
        powers = set()
        for c in self.coeffs.values():
            powers |= c.pi_powers()
        return powers

    def coeff(self, m, n):
        return self.coeffs.get((m, n), PiRational.zero())

    # ------------------------------------------------------------------
    # numeric bridge

    def numeric_terms(self):
        """Sorted (m, n, complex coefficient) triples; cached."""
        if self._numeric is None:
            self._numeric = tuple(
                (m, n, complex(self.coeffs[(m, n)]))
                for (m, n) in sorted(self.coeffs)
            )
        return self._numeric

    def eval(self, x, y):
        """Numeric value at (x, y) as a complex double."""
        val = 0j
        for m, n, c in self.numeric_terms():
            val += c * cmath.exp(1j * cmath.pi * (m * x + n * y))
        return val

    # ------------------------------------------------------------------
    # text form

    def debug_text(self):
        """One term per line: `m n re_num/re_den im_num/im_den pi_power`,
        keys sorted lexicographically."""
        lines = []
        for (m, n) in sorted(self.coeffs):
            terms = self.coeffs[(m, n)].terms
            for p in sorted(terms):
                re, im = terms[p]
                lines.append(
                    f"{m} {n} {re.numerator}/{re.denominator}"
                    f" {im.numerator}/{im.denominator} {p}"
                )
        return "\n".join(lines)

    def __repr__(self):
        if len(self.coeffs) <= 4:
            body = ", ".join(
                f"({m},{n}): {c!r}" for (m, n), c in sorted(self.coeffs.items())
            )
            return f"TrigPoly({{{body}}})"
        return f"TrigPoly(<{len(self.coeffs)} terms>)"


def linear_combine(pairs):
    """sum of scalar_i * poly_i in canonical form (zero coefficients pruned).

    Scalars may be PiRational or anything rat() accepts.
    """
    acc = {}
    for scalar, poly in pairs:
        if not isinstance(scalar, PiRational):
            scalar = PiRational.from_rational(scalar)
        if scalar.is_zero():
            continue
        for key, c in poly.coeffs.items():
            contrib = c * scalar
            cur = acc.get(key)
            acc[key] = contrib if cur is None else cur + contrib
    return TrigPoly(acc)


# ----------------------------------------------------------------------
# fused product accumulation: lets series code sum many products of one
# order without allocating intermediate TrigPolys


def _mul_into(acc, a, b, negate=False):
    """acc += a*b (or -= when negate), acc: {key: {pi_power: [re, im]}}."""
    for (m1, n1), c1 in a.coeffs.items():
        t1 = c1.terms
        for (m2, n2), c2 in b.coeffs.items():
            key = (m1 + m2, n1 + n2)
            tgt = acc.get(key)
            if tgt is None:
                tgt = acc[key] = {}
            for p1, (r1, i1) in t1.items():
                for p2, (r2, i2) in c2.terms.items():
                    p = p1 + p2
                    re = r1 * r2 - i1 * i2
                    im = r1 * i2 + i1 * r2
                    cur = tgt.get(p)
                    if cur is None:
                        tgt[p] = [-re, -im] if negate else [re, im]
                    elif negate:
                        cur[0] -= re
                        cur[1] -= im
                    else:
                        cur[0] += re
                        cur[1] += im


def _finish(acc):
    """Canonicalize a raw accumulator into a TrigPoly."""
    out = {}
    for key, powers in acc.items():
        c = PiRational({p: (re, im) for p, (re, im) in powers.items()})
        if c:
            out[key] = c
    return TrigPoly(out)
