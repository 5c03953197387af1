"""Exact arithmetic in Z[q, q^-1] and its fraction field Q(q).

Conventions used throughout the package:

* A Laurent polynomial is a map {exponent: coefficient} with arbitrary-precision
  integer coefficients and no stored zero coefficient.
* A rational function num/den is kept in a unique canonical form: den is an
  ordinary polynomial (minimum exponent 0) coprime to q, with positive leading
  coefficient; gcd(num shifted to an ordinary polynomial, den) = 1 and the
  integer contents of num and den are coprime.
* The signed parameter attached to an index a of gl(m, n) is q for a <= m and
  p = -q^-1 for a > m.  Note p - p^-1 = q - q^-1, which many identities rely on.

Text form (used by the CLI and tests): a polynomial prints as terms ``c*q^e``
joined by ``+``/``-`` in decreasing exponent order, e.g. ``q^2 - 2 + 3*q^-1``;
a rational function with nontrivial denominator prints as ``(num)/(den)``.
The parser accepts whitespace and an omitted ``*`` between coefficient and q.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import DivisionByZero, ExprSyntaxError, IndexOutOfRange

# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


class LaurentPoly:
    """An element of Z[q, q^-1], stored as {exponent: nonzero int}."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict[int, int] | None = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}
        self._hash: int | None = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> LaurentPoly:
        return _LP_ZERO

    @staticmethod
    def one() -> LaurentPoly:
        return _LP_ONE

    @staticmethod
    def integer(n: int) -> LaurentPoly:
        return LaurentPoly({0: n})

    @staticmethod
    def q(exp: int = 1, coeff: int = 1) -> LaurentPoly:
        """The monomial coeff * q^exp."""
        return LaurentPoly({exp: coeff})

    # -- basic queries -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_one(self) -> bool:
        return self.terms == {0: 1}

    @property
    def degree(self) -> int:
        """Largest exponent; undefined (raises) on zero."""
        return max(self.terms)

    @property
    def valuation(self) -> int:
        """Smallest exponent; undefined (raises) on zero."""
        return min(self.terms)

    def leading_coeff(self) -> int:
        return self.terms[max(self.terms)] if self.terms else 0

    def content(self) -> int:
        """Nonnegative gcd of all coefficients (0 for the zero polynomial)."""
        return math.gcd(*self.terms.values()) if self.terms else 0

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return _LP_ZERO
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[int, int] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPoly._raw(out)

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial; use RatFn")
        result = _LP_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: int) -> LaurentPoly:
        if c == 0:
            return _LP_ZERO
        if c == 1:
            return self
        return LaurentPoly._raw({e: c * v for e, v in self.terms.items()})

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by q^k."""
        if k == 0:
            return self
        return LaurentPoly._raw({e + k: c for e, c in self.terms.items()})

    def int_divexact(self, c: int) -> LaurentPoly:
        out = {}
        for e, v in self.terms.items():
            d, r = divmod(v, c)
            if r:
                raise ValueError(f"coefficient {v} not divisible by {c}")
            out[e] = d
        return LaurentPoly._raw(out)

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({poly_to_text(self)!r})"

    def __str__(self) -> str:
        return poly_to_text(self)

    @staticmethod
    def _raw(terms: dict[int, int]) -> LaurentPoly:
        # Trusted constructor: terms must already be zero-free.
        p = LaurentPoly.__new__(LaurentPoly)
        p.terms = terms
        p._hash = None
        return p


_LP_ZERO = LaurentPoly._raw({})
_LP_ONE = LaurentPoly._raw({0: 1})


def poly_arith(op: str, a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Dispatch form of +, -, * used by the CLI."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def quantum_int(k: int) -> LaurentPoly:
    """The balanced q-integer: q^(k-1) + q^(k-3) + ... + q^(1-k); odd in k."""
    if k == 0:
        return _LP_ZERO
    if k < 0:
        return -quantum_int(-k)
    return LaurentPoly._raw({k - 1 - 2 * i: 1 for i in range(k)})


# ---------------------------------------------------------------------------
# gcd machinery over Z[q] (ordinary polynomials as {exp >= 0: int} dicts)
# ---------------------------------------------------------------------------


def _dict_content(d: dict[int, int]) -> int:
    return math.gcd(*d.values()) if d else 0


def _dict_primitive(d: dict[int, int]) -> dict[int, int]:
    """Divide by +-content so the result is primitive with positive leading coeff."""
    if not d:
        return d
    c = _dict_content(d)
    if d[max(d)] < 0:
        c = -c
    if c == 1:
        return d
    return {e: v // c for e, v in d.items()}


def _pseudo_rem(f: dict[int, int], g: dict[int, int]) -> dict[int, int]:
    """Pseudo-remainder of f by g: some lc(g)^k * f mod g, k as small as needed."""
    dg = max(g)
    lg = g[dg]
    r = dict(f)
    while r and max(r) >= dg:
        dr = max(r)
        lr = r[dr]
        new = {e: lg * c for e, c in r.items()}
        for e, c in g.items():
            ee = e + dr - dg
            s = new.get(ee, 0) - lr * c
            if s:
                new[ee] = s
            else:
                new.pop(ee, None)
        r = new
    return r


def _poly_gcd_dict(f: dict[int, int], g: dict[int, int]) -> dict[int, int]:
    """gcd in Z[q] via content extraction and primitive-part Euclid."""
    if not f:
        return _dict_primitive(dict(g))
    if not g:
        return _dict_primitive(dict(f))
    c = math.gcd(_dict_content(f), _dict_content(g))
    a, b = _dict_primitive(f), _dict_primitive(g)
    while b:
        a, b = b, _dict_primitive(_pseudo_rem(a, b))
    if c != 1:
        a = {e: c * v for e, v in a.items()}
    return a


def _poly_divexact_dict(f: dict[int, int], g: dict[int, int]) -> dict[int, int]:
    """Exact quotient f/g in Z[q]; raises if the division is not exact."""
    if not f:
        return {}
    dg = max(g)
    lg = g[dg]
    r = dict(f)
    h: dict[int, int] = {}
    while r:
        dr = max(r)
        if dr < dg:
            raise ValueError("inexact polynomial division")
        coeff, rem = divmod(r[dr], lg)
        if rem:
            raise ValueError("inexact polynomial division")
        h[dr - dg] = coeff
        for e, c in g.items():
            ee = e + dr - dg
            s = r.get(ee, 0) - coeff * c
            if s:
                r[ee] = s
            else:
                r.pop(ee, None)
    return h


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


class RatFn:
    """An element of Q(q) in canonical reduced form.  Immutable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = _LP_ONE):
        n, d = _canonical_pair(num, den)
        self.num = n
        self.den = d
        self._hash: int | None = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> RatFn:
        return _RF_ZERO

    @staticmethod
    def one() -> RatFn:
        return _RF_ONE

    @staticmethod
    def integer(n: int) -> RatFn:
        return RatFn._raw(LaurentPoly.integer(n), _LP_ONE)

    @staticmethod
    def q(exp: int = 1, coeff: int = 1) -> RatFn:
        """The monomial coeff * q^exp as a rational function."""
        return RatFn._raw(LaurentPoly.q(exp, coeff), _LP_ONE)

    @staticmethod
    def of(num: LaurentPoly | int, den: LaurentPoly | int = 1) -> RatFn:
        if isinstance(num, int):
            num = LaurentPoly.integer(num)
        if isinstance(den, int):
            den = LaurentPoly.integer(den)
        return RatFn(num, den)

    # -- queries -------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, RatFn):
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den is other.den or self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> RatFn:
        return RatFn._raw(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RatFn):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RatFn):
            return NotImplemented
        if not self.num or not other.num:
            return _RF_ZERO
        if self.den.is_one() and other.den.is_one():
            return RatFn._raw(self.num * other.num, _LP_ONE)
        return RatFn(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if not isinstance(other, RatFn):
            return NotImplemented
        if not other.num:
            raise DivisionByZero("division by the zero rational function")
        return RatFn(self.num * other.den, self.den * other.num)

    def inv(self) -> RatFn:
        if not self.num:
            raise DivisionByZero("inverse of the zero rational function")
        return RatFn(self.den, self.num)

    def __pow__(self, n: int) -> RatFn:
        if n < 0:
            return self.inv() ** (-n)
        result = _RF_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RatFn)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"RatFn({scalar_to_text(self)!r})"

    def __str__(self) -> str:
        return scalar_to_text(self)

    @staticmethod
    def _raw(num: LaurentPoly, den: LaurentPoly) -> RatFn:
        # Trusted constructor: (num, den) must already be canonical.
        x = RatFn.__new__(RatFn)
        x.num = num
        x.den = den
        x._hash = None
        return x


def _canonical_pair(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if not den.terms:
        raise DivisionByZero("zero denominator")
    if not num.terms:
        return _LP_ZERO, _LP_ONE
    # Shift so den is an ordinary polynomial with nonzero constant term.
    vd = den.valuation
    den_d = den.shift(-vd).terms
    num = num.shift(-vd)
    vn = num.valuation
    num_d = num.shift(-vn).terms
    g = _poly_gcd_dict(num_d, den_d)
    if g != {0: 1} and g != {0: -1}:
        num_d = _poly_divexact_dict(num_d, g)
        den_d = _poly_divexact_dict(den_d, g)
    if den_d[max(den_d)] < 0:
        num_d = {e: -c for e, c in num_d.items()}
        den_d = {e: -c for e, c in den_d.items()}
    return LaurentPoly._raw(num_d).shift(vn), LaurentPoly._raw(den_d)


_RF_ZERO = RatFn._raw(_LP_ZERO, _LP_ONE)
_RF_ONE = RatFn._raw(_LP_ONE, _LP_ONE)


def ratfn_arith(op: str, a: RatFn, b: RatFn | None = None) -> RatFn:
    """Dispatch form of the field operations used by the CLI."""
    if op == "inv":
        return a.inv()
    assert b is not None
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def quantum_int_rf(k: int) -> RatFn:
    return RatFn._raw(quantum_int(k), _LP_ONE) if k else _RF_ZERO


Q = RatFn.q(1)
QINV = RatFn.q(-1)
P_SIGNED = RatFn.q(-1, -1)  # p = -q^-1
Q_MINUS_QINV = RatFn.of(LaurentPoly({1: 1, -1: -1}))


# ---------------------------------------------------------------------------
# Parameters (m, n)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GLParams:
    """The pair (m, n) with its index sets I = {1..m+n} and I' = I \\ {m+n}."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be positive integers")

    @property
    def size(self) -> int:
        return self.m + self.n

    @property
    def index_set(self) -> range:
        """I = {1, ..., m+n} (valid K indices)."""
        return range(1, self.m + self.n + 1)

    @property
    def iprime(self) -> range:
        """I' = {1, ..., m+n-1} (valid e/f indices)."""
        return range(1, self.m + self.n)

    def q_sub(self, a: int) -> RatFn:
        """The signed parameter at index a: q for a <= m, -q^-1 beyond."""
        if not 1 <= a <= self.size:
            raise IndexOutOfRange(f"index {a} outside 1..{self.size}")
        return Q if a <= self.m else P_SIGNED


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------


def poly_to_text(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    parts: list[str] = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if e == 0:
            body = str(c)
        elif e == 1:
            body = "q" if c == 1 else f"{c}*q"
        else:
            body = f"q^{e}" if c == 1 else f"{c}*q^{e}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def scalar_to_text(x: RatFn) -> str:
    if x.den.is_one():
        return poly_to_text(x.num)
    return f"({poly_to_text(x.num)})/({poly_to_text(x.den)})"


_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<q>q)|(?P<op>[\^*+\-/()]))")


def _tokenize_scalar(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.group("int"):
            tokens.append(("int", m.group("int"), m.start("int")))
        elif m.group("q"):
            tokens.append(("q", "q", m.start("q")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


class _PolyParser:
    """Recursive-descent parser for polynomial text (terms c*q^e joined by +/-)."""

    def __init__(self, tokens: list[tuple[str, str, int]]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        t = self.peek()
        if t is None:
            raise ExprSyntaxError("unexpected end of input", -1)
        self.i += 1
        return t

    def parse_int(self) -> int:
        sign = 1
        t = self.next()
        while t[0] == "op" and t[1] in "+-":
            if t[1] == "-":
                sign = -sign
            t = self.next()
        if t[0] != "int":
            raise ExprSyntaxError("expected an integer", t[2])
        return sign * int(t[1])

    def parse_poly(self, stop_at_paren: bool = False) -> LaurentPoly:
        total = _LP_ZERO
        sign = 1
        expect_term = True
        while True:
            t = self.peek()
            if t is None or (stop_at_paren and t[1] == ")" and t[0] == "op"):
                if expect_term:
                    raise ExprSyntaxError("expected a term", t[2] if t else -1)
                return total
            if t[0] == "op" and t[1] in "+-":
                self.next()
                if t[1] == "-":
                    sign = -sign
                expect_term = True
                continue
            if not expect_term:
                raise ExprSyntaxError(f"unexpected token {t[1]!r}", t[2])
            total = total + self.parse_term().scale(sign)
            sign = 1
            expect_term = False

    def parse_term(self) -> LaurentPoly:
        # term := int ['*'|nothing] [qpart] | qpart
        t = self.peek()
        if t is None:
            raise ExprSyntaxError("expected a term", -1)
        coeff = 1
        have_coeff = False
        if t[0] == "int":
            self.next()
            coeff = int(t[1])
            have_coeff = True
            nxt = self.peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "*":
                self.next()
                nxt = self.peek()
            if nxt is None or nxt[0] != "q":
                return LaurentPoly.integer(coeff)
            t = nxt
        if t[0] != "q":
            if have_coeff:
                return LaurentPoly.integer(coeff)
            raise ExprSyntaxError(f"expected a term, got {t[1]!r}", t[2])
        self.next()
        exp = 1
        nxt = self.peek()
        if nxt is not None and nxt[0] == "op" and nxt[1] == "^":
            self.next()
            exp = self.parse_int()
        return LaurentPoly.q(exp, coeff)


def parse_poly(text: str) -> LaurentPoly:
    """Parse polynomial text like ``q^2 - 2*q + 3*q^-1``."""
    parser = _PolyParser(_tokenize_scalar(text))
    p = parser.parse_poly()
    if parser.peek() is not None:
        raise ExprSyntaxError("trailing input", parser.peek()[2])
    return p


def parse_scalar(text: str) -> RatFn:
    """Parse scalar text: a polynomial, or ``(num)/(den)``."""
    tokens = _tokenize_scalar(text)
    parser = _PolyParser(tokens)
    t = parser.peek()
    if t is not None and t[0] == "op" and t[1] == "(":
        # Could be "(poly)" or "(num)/(den)".
        parser.next()
        num = parser.parse_poly(stop_at_paren=True)
        closing = parser.next()
        if closing[1] != ")":
            raise ExprSyntaxError("expected ')'", closing[2])
        nxt = parser.peek()
        if nxt is None:
            return RatFn(num)
        if nxt[0] == "op" and nxt[1] == "/":
            parser.next()
            opening = parser.next()
            if opening[1] != "(":
                raise ExprSyntaxError("expected '(' after '/'", opening[2])
            den = parser.parse_poly(stop_at_paren=True)
            closing = parser.next()
            if closing[1] != ")":
                raise ExprSyntaxError("expected ')'", closing[2])
            if parser.peek() is not None:
                raise ExprSyntaxError("trailing input", parser.peek()[2])
            return RatFn(num, den)
        raise ExprSyntaxError(f"unexpected token {nxt[1]!r}", nxt[2])
    p = parser.parse_poly()
    if parser.peek() is not None:
        raise ExprSyntaxError("trailing input", parser.peek()[2])
    return RatFn(p)
