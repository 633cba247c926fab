"""Exact scalar ring: sparse polynomials over Q in coordinates and group entries.

Symbols (36 total):

  0..3    x0..x3          coordinates on the base
  4..19   g(a,b)          entries of the Lorentz group element, index 4 + 4a + b
  20..35  ginv(a,b)       formal inverse entries, index 20 + 4a + b

No relation g * ginv = 1 is imposed syntactically.  Equality in the presence
of group symbols is decided by exact evaluation at Cayley-sampled Lorentz
elements (see cartankit.forms.equal_by_evaluation); ginv symbols are always
bound to the true inverse entries there.

Coefficients are gmpy2.mpq when available, else fractions.Fraction.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping

from . import kernels

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Q

QZERO = Q(0)
QONE = Q(1)

NUM_SYMBOLS = 36


def x_symbol(mu: int) -> int:
    if not 0 <= mu <= 3:
        raise ValueError(f"coordinate index out of range: {mu}")
    return mu


def g_symbol(a: int, b: int) -> int:
    return 4 + 4 * a + b


def ginv_symbol(a: int, b: int) -> int:
    return 20 + 4 * a + b


def is_group_symbol(s: int) -> bool:
    return s >= 4


SYMBOL_NAMES = (
    ["x0", "x1", "x2", "x3"]
    + [f"g{a}{b}" for a in range(4) for b in range(4)]
    + [f"ginv{a}{b}" for a in range(4) for b in range(4)]
)


def qstr(q) -> str:
    """Serialize an exact rational as the canonical "num/den" string."""
    q = Q(q)
    return f"{q.numerator}/{q.denominator}"


class ScalarExpr:
    """Immutable sparse polynomial with exact rational coefficients.

    terms maps a monomial (sorted tuple of (symbol, exponent) pairs) to a
    nonzero coefficient.  Construct via from_terms / constant / symbol, or
    with operators; never mutate .terms after construction.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = terms if terms is not None else {}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(c) -> "ScalarExpr":
        c = Q(c)
        return ScalarExpr({(): c} if c else {})

    @staticmethod
    def symbol(s: int) -> "ScalarExpr":
        if not 0 <= s < NUM_SYMBOLS:
            raise ValueError(f"symbol index out of range: {s}")
        return ScalarExpr({((s, 1),): QONE})

    @staticmethod
    def coerce(v) -> "ScalarExpr":
        if isinstance(v, ScalarExpr):
            return v
        return ScalarExpr.constant(v)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = ScalarExpr.coerce(other)
        return ScalarExpr(kernels.poly_add(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return ScalarExpr({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-ScalarExpr.coerce(other))

    def __rsub__(self, other):
        return ScalarExpr.coerce(other) + (-self)

    def __mul__(self, other):
        other = ScalarExpr.coerce(other)
        return ScalarExpr(kernels.poly_mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("powers must be nonnegative integers")
        out = ScalarExpr.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, ScalarExpr):
            return self.terms == other.terms
        return self.terms == ScalarExpr.coerce(other).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- queries -----------------------------------------------------------

    def constant_value(self):
        """The rational value of a constant expression; raises otherwise."""
        if not self.terms:
            return QZERO
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        raise ValueError(f"not a constant: {self}")

    def has_group_symbols(self) -> bool:
        return any(s >= 4 for m in self.terms for s, _ in m)

    def group_degree(self) -> int:
        """Maximal combined degree in g and ginv symbols over all terms."""
        best = 0
        for m in self.terms:
            d = sum(e for s, e in m if s >= 4)
            if d > best:
                best = d
        return best

    def depends_only_on_x(self) -> bool:
        return not self.has_group_symbols()

    # -- calculus ----------------------------------------------------------

    def diff_x(self, mu: int) -> "ScalarExpr":
        """Partial derivative with respect to the coordinate x^mu."""
        s0 = x_symbol(mu)
        out: dict = {}
        for m, c in self.terms.items():
            for i, (s, e) in enumerate(m):
                if s != s0:
                    continue
                if e == 1:
                    base = m[:i] + m[i + 1:]
                else:
                    base = m[:i] + ((s, e - 1),) + m[i + 1:]
                kernels.poly_iadd_scaled(out, {base: QONE}, c * e)
                break
        return ScalarExpr(out)

    def derive(self, images: Mapping[int, dict]) -> "ScalarExpr":
        """Apply a derivation given by symbol -> polynomial-image (Leibniz).

        Symbols absent from images are annihilated.
        """
        out: dict = {}
        for m, c in self.terms.items():
            for i, (s, e) in enumerate(m):
                img = images.get(s)
                if not img:
                    continue
                if e == 1:
                    base = m[:i] + m[i + 1:]
                else:
                    base = m[:i] + ((s, e - 1),) + m[i + 1:]
                for m2, c2 in img.items():
                    kernels.poly_iadd_scaled(
                        out, {kernels.mono_mul(base, m2): QONE}, c * e * c2)
        return ScalarExpr(out)

    # -- evaluation --------------------------------------------------------

    def substitute(self, bind: Mapping[int, object]) -> "ScalarExpr":
        """Bind a subset of symbols to exact rationals."""
        bind = {s: Q(v) for s, v in bind.items()}
        return ScalarExpr(kernels.poly_substitute(self.terms, bind))

    def evaluate(self, vals: Mapping[int, object]):
        """Evaluate with every occurring symbol bound; returns a rational."""
        return kernels.poly_eval(self.terms, vals, QZERO)

    # -- rendering ---------------------------------------------------------

    def sorted_terms(self):
        """Terms in the canonical order: graded, then lexicographic."""
        return sorted(self.terms.items(),
                      key=lambda mc: (sum(e for _, e in mc[0]), mc[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = [f"{SYMBOL_NAMES[s]}^{e}" if e > 1 else SYMBOL_NAMES[s]
                       for s, e in m]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(str(c) + "*" + "*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"ScalarExpr({self})"


ZERO = ScalarExpr.constant(0)
ONE = ScalarExpr.constant(1)

X = tuple(ScalarExpr.symbol(mu) for mu in range(4))
G = tuple(tuple(ScalarExpr.symbol(g_symbol(a, b)) for b in range(4))
          for a in range(4))
GINV = tuple(tuple(ScalarExpr.symbol(ginv_symbol(a, b)) for b in range(4))
             for a in range(4))


class RExpr:
    """Exact fraction of ScalarExprs (num / den), den a nonzero polynomial.

    Frame-index tensors (anything contracted with the inverse tetrad) are
    rational in the tetrad entries with denominator a power of det(e); this
    wrapper keeps them exact.  No gcd reduction is attempted: equality is
    decided by cross-multiplication, which is exact and complete because the
    polynomial ring is an integral domain.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = ScalarExpr.coerce(num)
        self.den = ONE if den is None else ScalarExpr.coerce(den)
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")

    @staticmethod
    def coerce(v) -> "RExpr":
        if isinstance(v, RExpr):
            return v
        return RExpr(v)

    def __add__(self, other):
        other = RExpr.coerce(other)
        if self.den == other.den:
            return RExpr(self.num + other.num, self.den)
        return RExpr(self.num * other.den + other.num * self.den,
                     self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RExpr(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RExpr.coerce(other))

    def __rsub__(self, other):
        return RExpr.coerce(other) + (-self)

    def __mul__(self, other):
        other = RExpr.coerce(other)
        return RExpr(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RExpr.coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero RExpr")
        return RExpr(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        other = RExpr.coerce(other)
        return (self.num * other.den - other.num * self.den).is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def evaluate(self, vals):
        den = self.den.evaluate(vals)
        if not den:
            raise ZeroDivisionError("denominator vanishes at this point")
        return self.num.evaluate(vals) / den

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RExpr({self})"


class ParseError(ValueError):
    """Raised on malformed polynomial strings; carries the position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def parse_polynomial(text: str,
                     names: Mapping[str, int] | None = None) -> ScalarExpr:
    """Parse a polynomial in x0..x3 with rational coefficients.

    Grammar: + - * / ^ (or **), parentheses, integer and num/den literals.
    Division is only allowed by a nonzero constant.  Scenario files never
    contain group symbols, so only the x names are accepted by default.
    """
    if names is None:
        names = {f"x{mu}": mu for mu in range(4)}

    tokens: list[tuple[str, object, int]] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j]), i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif text.startswith("**", i):
            tokens.append(("op", "^", i))
            i += 2
        elif ch in "+-*/^()":
            tokens.append(("op", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))

    pos = 0

    def peek():
        return tokens[pos]

    def take(kind, value=None):
        nonlocal pos
        k, v, p = tokens[pos]
        if k != kind or (value is not None and v != value):
            raise ParseError(f"expected {value or kind}, found {v!r}", p)
        pos += 1
        return v

    def parse_expr() -> ScalarExpr:
        k, v, _ = peek()
        negate = False
        if k == "op" and v in "+-":
            take("op")
            negate = v == "-"
        acc = parse_term()
        if negate:
            acc = -acc
        while True:
            k, v, _ = peek()
            if k == "op" and v in "+-":
                take("op")
                rhs = parse_term()
                acc = acc - rhs if v == "-" else acc + rhs
            else:
                return acc

    def parse_term() -> ScalarExpr:
        acc = parse_factor()
        while True:
            k, v, p = peek()
            if k == "op" and v == "*":
                take("op")
                acc = acc * parse_factor()
            elif k == "op" and v == "/":
                take("op")
                den = parse_factor()
                try:
                    dv = den.constant_value()
                except ValueError:
                    raise ParseError("division only by constants", p) from None
                if not dv:
                    raise ParseError("division by zero", p)
                acc = acc * ScalarExpr.constant(QONE / dv)
            else:
                return acc

    def parse_factor() -> ScalarExpr:
        k, v, p = peek()
        if k == "op" and v == "-":
            take("op")
            return -parse_factor()
        base = parse_atom()
        k, v, _ = peek()
        if k == "op" and v == "^":
            take("op")
            kk, vv, pp = peek()
            if kk != "num":
                raise ParseError("exponent must be a nonnegative integer", pp)
            take("num")
            return base ** int(vv)
        return base

    def parse_atom() -> ScalarExpr:
        k, v, p = peek()
        if k == "num":
            take("num")
            return ScalarExpr.constant(v)
        if k == "name":
            take("name")
            if v not in names:
                raise ParseError(f"unknown symbol {v!r}", p)
            return ScalarExpr.symbol(names[v])
        if k == "op" and v == "(":
            take("op")
            inner = parse_expr()
            take("op", ")")
            return inner
        raise ParseError(f"unexpected token {v!r}", p)

    result = parse_expr()
    k, v, p = peek()
    if k != "end":
        raise ParseError(f"trailing input {v!r}", p)
    return result
