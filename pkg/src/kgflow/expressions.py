"""Mini-language for torus Hamiltonians and its expression trees.

Grammar (division is legal only when the divisor is a constant monomial
q * pi^p, which keeps everything inside the exact coefficient ring):

    expr    := ['-'] term (('+'|'-') term)*
    term    := factor (('*'|'/') factor)*
    factor  := base ('^' UINT)?
    base    := UINT | 'pi' | 'x' | 'y'
             | ('sin'|'cos') '(' expr ')'
             | '(' expr ')'

The variables x and y are only meaningful inside sin/cos arguments, and
every such argument must normalize to pi*(m*x + n*y + c) with integer
m, n and 2c an integer (so the phase factor stays in {1, i, -1, -i}).

Parsing yields an expression tree first; `to_trigpoly` folds the tree
into canonical Fourier form.  The tree form is kept public because the
slow cross-check pipeline differentiates the unexpanded tree directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ExpressionSyntaxError,
    NonLinearTrigArgumentError,
    NonTrigTermError,
    NotPeriodicError,
    NotRealError,
)
from .scalars import I_POWERS, PiRational, rat
from .trigpoly import TrigPoly

# ----------------------------------------------------------------------
# expression tree


@dataclass(frozen=True)
class Num:
    value: PiRational


@dataclass(frozen=True)
class Var:
    name: str
    pos: int


@dataclass(frozen=True)
class Trig:
    fn: str  # "sin" or "cos"
    m: int
    n: int
    c2: int  # argument is pi*(m*x + n*y + c2/2)


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


_ZERO_NODE = Num(PiRational.zero())
_PI = PiRational.from_rational(1, 0, 1)


# ----------------------------------------------------------------------
# tokenizer

_SINGLE = set("+-*/^()")


def _tokenize(text):
    tokens = []
    i = 0
    size = len(text)
    while i < size:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SINGLE:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch in "0123456789":
            j = i
            while j < size and text[j] in "0123456789":
                j += 1
            tokens.append(("INT", int(text[i:j]), i))
            i = j
            continue
        if ch.isascii() and ch.isalpha():
            j = i
            while j < size and text[j].isascii() and text[j].isalnum():
                j += 1
            name = text[i:j]
            if name not in ("pi", "x", "y", "sin", "cos"):
                raise ExpressionSyntaxError(f"unknown name {name!r}", i)
            tokens.append(("NAME", name, i))
            i = j
            continue
        raise ExpressionSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("END", None, size))
    return tokens


# ----------------------------------------------------------------------
# recursive-descent parser


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.idx = 0

    def peek(self):
        return self.tokens[self.idx]

    def advance(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect(self, kind):
        tok = self.advance()
        if tok[0] != kind:
            raise ExpressionSyntaxError(
                f"expected {kind!r}, found {tok[1]!r}", tok[2]
            )
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "END":
            raise ExpressionSyntaxError(f"trailing input {tok[1]!r}", tok[2])
        return node

    def expr(self):
        if self.peek()[0] == "-":
            self.advance()
            node = Mul(Num(PiRational.from_rational(-1)), self.term())
        else:
            node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            if op == "-":
                rhs = Mul(Num(PiRational.from_rational(-1)), rhs)
            node = Add(node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.advance()
            rhs = self.factor()
            if op == "/":
                value = _constant_value(rhs, pos)
                if value.is_zero():
                    raise ExpressionSyntaxError("division by zero", pos)
                if value.as_single_term() is None:
                    raise ExpressionSyntaxError(
                        "divisor must reduce to a single constant q*pi^p", pos
                    )
                rhs = Num(value.invert())
            node = Mul(node, rhs)
        return node

    def factor(self):
        node = self.base()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.expect("INT")
            node = Pow(node, tok[1])
        return node

    def base(self):
        tok = self.advance()
        kind, value, pos = tok
        if kind == "INT":
            return Num(PiRational.from_rational(value))
        if kind == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "NAME":
            if value == "pi":
                return Num(_PI)
            if value in ("x", "y"):
                return Var(value, pos)
            # sin or cos
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return _linearized_trig(value, arg, pos)
        raise ExpressionSyntaxError(f"unexpected token {value!r}", pos)


def _constant_value(node, pos):
    """Fold a variable-free subtree into a PiRational."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Add):
        return _constant_value(node.left, pos) + _constant_value(node.right, pos)
    if isinstance(node, Mul):
        return _constant_value(node.left, pos) * _constant_value(node.right, pos)
    if isinstance(node, Pow):
        base = _constant_value(node.base, pos)
        out = PiRational.one()
        for _ in range(node.exponent):
            out = out * base
        return out
    if isinstance(node, Var):
        raise ExpressionSyntaxError(
            f"divisor may not contain {node.name!r}", node.pos
        )
    raise ExpressionSyntaxError("divisor must be numeric", pos)


def _linearized_trig(fn, arg, pos):
    """Normalize a trig argument into pi*(m*x + n*y + c2/2)."""
    cx, cy, cc = _linear_form(arg, pos)
    m = _pi_integer(cx, pos)
    n = _pi_integer(cy, pos)
    c2 = _pi_half_integer(cc, pos)
    return Trig(fn, m, n, c2)


def _linear_form(node, pos):
    """Walk an argument tree into (coeff_x, coeff_y, constant) PiRationals."""
    if isinstance(node, Num):
        return PiRational.zero(), PiRational.zero(), node.value
    if isinstance(node, Var):
        one = PiRational.one()
        zero = PiRational.zero()
        return (one, zero, zero) if node.name == "x" else (zero, one, zero)
    if isinstance(node, Add):
        ax, ay, ac = _linear_form(node.left, pos)
        bx, by, bc = _linear_form(node.right, pos)
        return ax + bx, ay + by, ac + bc
    if isinstance(node, Mul):
        ax, ay, ac = _linear_form(node.left, pos)
        bx, by, bc = _linear_form(node.right, pos)
        if ax.is_zero() and ay.is_zero():
            return bx * ac, by * ac, bc * ac
        if bx.is_zero() and by.is_zero():
            return ax * bc, ay * bc, ac * bc
        raise NonLinearTrigArgumentError(
            "product of two variable-dependent factors in trig argument", pos
        )
    if isinstance(node, Pow):
        if node.exponent == 0:
            return PiRational.zero(), PiRational.zero(), PiRational.one()
        if node.exponent == 1:
            return _linear_form(node.base, pos)
        bx, by, bc = _linear_form(node.base, pos)
        if bx.is_zero() and by.is_zero():
            out = PiRational.one()
            for _ in range(node.exponent):
                out = out * bc
            return PiRational.zero(), PiRational.zero(), out
        raise NonLinearTrigArgumentError(
            "variable raised to a power inside trig argument", pos
        )
    if isinstance(node, Trig):
        raise NonLinearTrigArgumentError("nested trig call in argument", pos)
    raise NonLinearTrigArgumentError("unsupported trig argument", pos)


def _pi_integer(value, pos):
    """Coefficient of x or y must be an integer multiple of pi."""
    if value.is_zero():
        return 0
    single = value.as_single_term()
    if single is not None:
        p, (re, im) = single
        if p == 1 and not im and re.denominator == 1:
            return int(re.numerator)
    raise NonLinearTrigArgumentError(
        "trig argument slope must be an integer times pi", pos
    )


def _pi_half_integer(value, pos):
    """Constant part must be pi*c with 2c integer (phase in {1,i,-1,-i})."""
    if value.is_zero():
        return 0
    single = value.as_single_term()
    if single is not None:
        p, (re, im) = single
        if p == 1 and not im:
            doubled = re * 2
            if doubled.denominator == 1:
                return int(doubled.numerator)
    raise NonLinearTrigArgumentError(
        "trig phase must be pi times a half-integer", pos
    )


# ----------------------------------------------------------------------
# tree -> canonical Fourier form


def to_trigpoly(node):
    if isinstance(node, Num):
        return TrigPoly.constant(node.value)
    if isinstance(node, Var):
        raise NonTrigTermError(node.pos)
    if isinstance(node, Trig):
        return _trig_to_poly(node)
    if isinstance(node, Add):
        return to_trigpoly(node.left) + to_trigpoly(node.right)
    if isinstance(node, Mul):
        return to_trigpoly(node.left) * to_trigpoly(node.right)
    if isinstance(node, Pow):
        return to_trigpoly(node.base) ** node.exponent
    raise TypeError(f"not an expression node: {node!r}")


def _trig_to_poly(node):
    # phase e^{i*pi*c2/2} = i^c2
    ph_re, ph_im = I_POWERS[node.c2 % 4]
    half = rat(1, 2)
    if node.fn == "cos":
        up = PiRational.from_rational(ph_re * half, ph_im * half)
    else:
        # sin: (phase*E - conj(phase*E)) / 2i  ->  -i/2 * phase on E
        up = PiRational.from_rational(ph_im * half, -ph_re * half)
    return TrigPoly.monomial(node.m, node.n, up) + TrigPoly.monomial(
        -node.m, -node.n, up.conjugate()
    )


# ----------------------------------------------------------------------
# tree differentiation (chain + Leibniz rules on the unexpanded tree)


def differentiate(node, direction):
    """d/dx or d/dy of an expression tree, without Fourier normalization.

    This is the deliberately slow route: product and power rules duplicate
    subtrees, so sizes grow exponentially with repeated application.
    """
    if direction not in ("x", "y"):
        raise ValueError(f"unknown direction {direction!r}")
    if isinstance(node, Num):
        return _ZERO_NODE
    if isinstance(node, Var):
        raise NonTrigTermError(node.pos)
    if isinstance(node, Trig):
        slope = node.m if direction == "x" else node.n
        if slope == 0:
            return _ZERO_NODE
        scale = Num(PiRational.from_rational(slope, 0, 1))
        if node.fn == "sin":
            return Mul(scale, Trig("cos", node.m, node.n, node.c2))
        return Mul(
            Num(PiRational.from_rational(-slope, 0, 1)),
            Trig("sin", node.m, node.n, node.c2),
        )
    if isinstance(node, Add):
        return Add(
            differentiate(node.left, direction),
            differentiate(node.right, direction),
        )
    if isinstance(node, Mul):
        return Add(
            Mul(differentiate(node.left, direction), node.right),
            Mul(node.left, differentiate(node.right, direction)),
        )
    if isinstance(node, Pow):
        if node.exponent == 0:
            return _ZERO_NODE
        return Mul(
            Mul(
                Num(PiRational.from_rational(node.exponent)),
                Pow(node.base, node.exponent - 1),
            ),
            differentiate(node.base, direction),
        )
    raise TypeError(f"not an expression node: {node!r}")


def tree_size(node):
    if isinstance(node, (Num, Var, Trig)):
        return 1
    if isinstance(node, (Add, Mul)):
        return 1 + tree_size(node.left) + tree_size(node.right)
    if isinstance(node, Pow):
        return 1 + tree_size(node.base)
    raise TypeError(f"not an expression node: {node!r}")


# ----------------------------------------------------------------------
# public entry points


def parse_expression(text):
    """Parse to an expression tree, without validation of the result."""
    if not text or not text.strip():
        raise ExpressionSyntaxError("empty expression", 0)
    return _Parser(text).parse()


def parse_hamiltonian(text):
    """Parse expression text into a validated canonical TrigPoly.

    The result must be real (automatic for this grammar) and 1-periodic
    on the unit torus, i.e. all frequency keys even.
    """
    poly = to_trigpoly(parse_expression(text))
    if not poly.is_periodic():
        bad = next(k for k in sorted(poly.coeffs) if k[0] % 2 or k[1] % 2)
        raise NotPeriodicError(
            f"frequency {bad} is odd in pi units: not 1-periodic on the torus"
        )
    if not poly.is_real():
        raise NotRealError("parsed Hamiltonian is not real-valued")
    return poly


# ----------------------------------------------------------------------
# printer (inverse of parsing, up to canonical form)


def format_trigpoly(poly):
    """Render a real TrigPoly as grammar text; re-parsing reproduces it."""
    if not poly.is_real():
        raise NotRealError("only real trig polynomials can be printed")
    if poly.is_zero():
        return "0"
    pieces = []  # (sign, text) with sign in {+1, -1}
    for (m, n) in sorted(poly.coeffs):
        if (m, n) < (0, 0):
            continue  # mirror partner handles it
        c = poly.coeffs[(m, n)]
        if (m, n) == (0, 0):
            _emit_scalar_terms(pieces, c.real_part(), None)
        else:
            # c*E + conj on the mirror: 2Re(c)cos(arg) - 2Im(c)sin(arg)
            _emit_scalar_terms(pieces, c.real_part() * 2, ("cos", m, n))
            _emit_scalar_terms(pieces, c.imag_part() * (-2), ("sin", m, n))
    if not pieces:
        return "0"
    sign, text = pieces[0]
    out = ("-" if sign < 0 else "") + text
    for sign, text in pieces[1:]:
        out += (" - " if sign < 0 else " + ") + text
    return out


def _emit_scalar_terms(pieces, scalar, trig):
    for p in sorted(scalar.terms):
        q = scalar.terms[p][0]
        sign = 1 if q >= 0 else -1
        q = abs(q)
        factors = [f"{q.numerator}/{q.denominator}"]
        if p > 0:
            factors.append(f"pi^{p}" if p != 1 else "pi")
        body = "*".join(factors)
        if p < 0:
            body += f"/pi^{-p}" if p != -1 else "/pi"
        if trig is not None:
            fn, m, n = trig
            body += f"*{fn}(pi*({_linear_text(m, n)}))"
        pieces.append((sign, body))


def _linear_text(m, n):
    out = ""
    if m:
        out += ("-" if m < 0 else "") + f"{abs(m)}*x"
    if n:
        if out:
            out += ("-" if n < 0 else "+") + f"{abs(n)}*y"
        else:
            out += ("-" if n < 0 else "") + f"{abs(n)}*y"
    return out or "0"
