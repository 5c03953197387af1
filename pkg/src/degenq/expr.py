"""Noncommutative polynomial expressions in the algebra generators.

Atoms are e<a>, f<a>, K<b> and its inverse; lowercase k<a> is parsing sugar
for K<a>*K<a+1>^-1.  Nodes are sums, products, integer powers, and scalar
leaves from Q(q).  Expressions are immutable; structural equality decides
equality of trees (not of algebra elements).

Grammar accepted by :func:`parse_expr`::

    expr   := term (('+'|'-') term)*
    term   := ['-'] factor ('*' factor)*
    factor := atom ('^' int)? | '(' expr ')' ('^' posint)? | scalar
    atom   := e<digits> | f<digits> | K<digits> | k<digits>

Scalars follow the polynomial grammar of :mod:`degenq.scalars`; negative
exponents are allowed on K/k atoms and on q only.  A parenthesized subtree
containing no generators collapses to a scalar leaf.
"""

from __future__ import annotations

import re

from .errors import ExprSyntaxError, IndexOutOfRange, MissingGenerator
from .linalg import SparseMat
from .scalars import GLParams, LaurentPoly, RatFn

_RF_ONE = RatFn.one()
_RF_MINUS_ONE = RatFn.integer(-1)


class Expr:
    """Base class; supports +, -, * and integer ** with scalar coercion."""

    __slots__ = ()

    def __add__(self, other) -> Expr:
        return make_sum([self, _coerce(other)])

    def __radd__(self, other) -> Expr:
        return make_sum([_coerce(other), self])

    def __sub__(self, other) -> Expr:
        return make_sum([self, negate(_coerce(other))])

    def __rsub__(self, other) -> Expr:
        return make_sum([_coerce(other), negate(self)])

    def __mul__(self, other) -> Expr:
        return make_prod([self, _coerce(other)])

    def __rmul__(self, other) -> Expr:
        return make_prod([_coerce(other), self])

    def __neg__(self) -> Expr:
        return negate(self)

    def __pow__(self, n: int) -> Expr:
        return make_pow(self, n)


def _coerce(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, RatFn):
        return Scalar(x)
    if isinstance(x, LaurentPoly):
        return Scalar(RatFn(x))
    if isinstance(x, int):
        return Scalar(RatFn.integer(x))
    raise TypeError(f"cannot use {type(x).__name__} in an algebra expression")


class Gen(Expr):
    """A generator atom: kinds 'e', 'f', 'K', 'Kinv'."""

    __slots__ = ("kind", "index", "_hash")

    def __init__(self, kind: str, index: int):
        assert kind in ("e", "f", "K", "Kinv")
        self.kind = kind
        self.index = index
        self._hash = hash((kind, index))

    def __eq__(self, other):
        return isinstance(other, Gen) and self.kind == other.kind and self.index == other.index

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Gen({self.kind!r}, {self.index})"


class Scalar(Expr):
    __slots__ = ("value", "_hash")

    def __init__(self, value: RatFn):
        self.value = value
        self._hash = hash(("scalar", value))

    def __eq__(self, other):
        return isinstance(other, Scalar) and self.value == other.value

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Scalar({self.value})"


class Sum(Expr):
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: tuple[Expr, ...]):
        self.terms = terms
        self._hash = hash(("sum", terms))

    def __eq__(self, other):
        return isinstance(other, Sum) and self.terms == other.terms

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Sum({', '.join(map(repr, self.terms))})"


class Prod(Expr):
    __slots__ = ("factors", "_hash")

    def __init__(self, factors: tuple[Expr, ...]):
        self.factors = factors
        self._hash = hash(("prod", factors))

    def __eq__(self, other):
        return isinstance(other, Prod) and self.factors == other.factors

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Prod({', '.join(map(repr, self.factors))})"


class Pow(Expr):
    __slots__ = ("base", "exp", "_hash")

    def __init__(self, base: Expr, exp: int):
        self.base = base
        self.exp = exp
        self._hash = hash(("pow", base, exp))

    def __eq__(self, other):
        return isinstance(other, Pow) and self.exp == other.exp and self.base == other.base

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Pow({self.base!r}, {self.exp})"


# -- smart constructors ---------------------------------------------------------


def make_sum(terms: list[Expr]) -> Expr:
    flat: list[Expr] = []
    for t in terms:
        if isinstance(t, Sum):
            flat.extend(t.terms)
        else:
            flat.append(t)
    if not flat:
        return Scalar(RatFn.zero())
    if len(flat) == 1:
        return flat[0]
    return Sum(tuple(flat))


def make_prod(factors: list[Expr]) -> Expr:
    """Flatten nested products and fold scalar factors into one leading scalar."""
    flat: list[Expr] = []
    coeff = _RF_ONE
    for f in factors:
        if isinstance(f, Prod):
            inner = f.factors
        else:
            inner = (f,)
        for g in inner:
            if isinstance(g, Scalar):
                coeff = coeff * g.value
            else:
                flat.append(g)
    if not coeff:
        return Scalar(RatFn.zero())
    if not flat:
        return Scalar(coeff)
    if not coeff.is_one():
        flat.insert(0, Scalar(coeff))
    if len(flat) == 1:
        return flat[0]
    return Prod(tuple(flat))


def make_pow(base: Expr, exp: int) -> Expr:
    if isinstance(base, Scalar):
        return Scalar(base.value**exp)
    if isinstance(base, Gen) and base.kind in ("K", "Kinv") and exp < 0:
        base = Gen("Kinv" if base.kind == "K" else "K", base.index)
        exp = -exp
    if exp < 0:
        raise ExprSyntaxError("negative powers are allowed only on K atoms and scalars")
    if exp == 0:
        return Scalar(_RF_ONE)
    if exp == 1:
        return base
    if isinstance(base, Pow):
        return Pow(base.base, base.exp * exp)
    return Pow(base, exp)


def negate(x: Expr) -> Expr:
    """Fold a minus sign into the leading scalar of a term."""
    if isinstance(x, Scalar):
        return Scalar(-x.value)
    if isinstance(x, Prod) and isinstance(x.factors[0], Scalar):
        return make_prod([Scalar(-x.factors[0].value), *x.factors[1:]])
    return make_prod([Scalar(_RF_MINUS_ONE), x])


# -- generator helpers ------------------------------------------------------------


def e(a: int) -> Gen:
    return Gen("e", a)


def f(a: int) -> Gen:
    return Gen("f", a)


def K(b: int) -> Gen:
    return Gen("K", b)


def Kinv(b: int) -> Gen:
    return Gen("Kinv", b)


def cartan(a: int) -> Expr:
    """k_a = K_a K_{a+1}^-1."""
    return Prod((Gen("K", a), Gen("Kinv", a + 1)))


def cartan_inv(a: int) -> Expr:
    """k_a^-1 = K_a^-1 K_{a+1}."""
    return Prod((Gen("Kinv", a), Gen("K", a + 1)))


def one() -> Expr:
    return Scalar(_RF_ONE)


def validate_indices(x: Expr, params: GLParams) -> None:
    """Check every atom index: e/f in I', K in I."""
    if isinstance(x, Gen):
        if x.kind in ("e", "f"):
            if not 1 <= x.index <= params.size - 1:
                raise IndexOutOfRange(f"{x.kind}{x.index}: index outside I' = 1..{params.size - 1}")
        else:
            if not 1 <= x.index <= params.size:
                raise IndexOutOfRange(f"K{x.index}: index outside I = 1..{params.size}")
    elif isinstance(x, Sum):
        for t in x.terms:
            validate_indices(t, params)
    elif isinstance(x, Prod):
        for t in x.factors:
            validate_indices(t, params)
    elif isinstance(x, Pow):
        validate_indices(x.base, params)


# -- Hopf structure on expressions -------------------------------------------------


def counit(x: Expr) -> RatFn:
    """The counit: kills e and f, sends K to 1; an algebra homomorphism."""
    if isinstance(x, Gen):
        return RatFn.zero() if x.kind in ("e", "f") else _RF_ONE
    if isinstance(x, Scalar):
        return x.value
    if isinstance(x, Sum):
        total = RatFn.zero()
        for t in x.terms:
            total = total + counit(t)
        return total
    if isinstance(x, Prod):
        total = _RF_ONE
        for t in x.factors:
            total = total * counit(t)
            if not total:
                return total
        return total
    if isinstance(x, Pow):
        return counit(x.base) ** x.exp
    raise TypeError(f"not an expression: {x!r}")


def antipode(x: Expr) -> Expr:
    """The antipode: S(e_a) = -e_a k_a^-1, S(f_a) = -k_a f_a, S(K_b) = K_b^-1.

    Extended as an anti-homomorphism (products reverse).
    """
    if isinstance(x, Gen):
        if x.kind == "e":
            return make_prod([Scalar(_RF_MINUS_ONE), x, cartan_inv(x.index)])
        if x.kind == "f":
            return make_prod([Scalar(_RF_MINUS_ONE), cartan(x.index), x])
        return Gen("Kinv" if x.kind == "K" else "K", x.index)
    if isinstance(x, Scalar):
        return x
    if isinstance(x, Sum):
        return make_sum([antipode(t) for t in x.terms])
    if isinstance(x, Prod):
        return make_prod([antipode(t) for t in reversed(x.factors)])
    if isinstance(x, Pow):
        return make_pow(antipode(x.base), x.exp)
    raise TypeError(f"not an expression: {x!r}")


def coproduct_terms(g: Gen, side: str = "Delta") -> list[tuple[Expr, Expr]]:
    """The coproduct of a generator as a list of (left, right) tensor legs.

    side 'Delta':      e_a -> e_a (x) k_a + 1 (x) e_a,   f_a -> f_a (x) 1 + k_a^-1 (x) f_a
    side 'DeltaPrime': e_a -> e_a (x) 1 + k_a (x) e_a,   f_a -> f_a (x) k_a^-1 + 1 (x) f_a
    K_b -> K_b (x) K_b on both sides.
    """
    a = g.index
    if g.kind in ("K", "Kinv"):
        return [(g, g)]
    if side == "Delta":
        if g.kind == "e":
            return [(g, cartan(a)), (one(), g)]
        return [(g, one()), (cartan_inv(a), g)]
    if side == "DeltaPrime":
        if g.kind == "e":
            return [(g, one()), (cartan(a), g)]
        return [(g, cartan_inv(a)), (one(), g)]
    raise ValueError(f"unknown coproduct side {side!r}")


# -- evaluation ---------------------------------------------------------------------


def eval_in_rep(x: Expr, rep) -> SparseMat:
    """Evaluate homomorphically in a representation.

    Sums map to matrix sums, products to matrix products, scalars to scalar
    multiples of the identity.  Shared subtrees are evaluated once per call.
    """
    dim = rep.dim
    gens = rep.gens
    cache: dict[int, SparseMat] = {}
    keep = []  # hold references so id() keys stay valid

    def go(node: Expr) -> SparseMat:
        got = cache.get(id(node))
        if got is not None:
            return got
        if isinstance(node, Gen):
            mat = gens.get((node.kind, node.index))
            if mat is None:
                raise MissingGenerator(f"representation lacks {node.kind}{node.index}")
            result = mat
        elif isinstance(node, Scalar):
            result = SparseMat.identity(dim).scale(node.value)
        elif isinstance(node, Sum):
            result = go(node.terms[0])
            for t in node.terms[1:]:
                result = result + go(t)
        elif isinstance(node, Prod):
            coeff = _RF_ONE
            mats = []
            for t in node.factors:
                if isinstance(t, Scalar):
                    coeff = coeff * t.value
                else:
                    mats.append(go(t))
            if not mats:
                result = SparseMat.identity(dim).scale(coeff)
            else:
                result = mats[0]
                for m in mats[1:]:
                    result = result * m
                if not coeff.is_one():
                    result = result.scale(coeff)
        elif isinstance(node, Pow):
            result = go(node.base) ** node.exp
        else:
            raise TypeError(f"not an expression: {node!r}")
        cache[id(node)] = result
        keep.append(node)
        return result

    return go(x)


# -- printer ------------------------------------------------------------------------


def _scalar_factor_text(v: RatFn) -> str:
    """Scalar as a product factor, parenthesized unless an unambiguous monomial."""
    from .scalars import scalar_to_text

    text = scalar_to_text(v)
    if v.is_polynomial() and len(v.num.terms) == 1:
        coeff = v.num.leading_coeff()
        if coeff > 0:
            return text
    return f"({text})"


def _factor_text(x: Expr) -> str:
    if isinstance(x, Gen):
        if x.kind == "Kinv":
            return f"K{x.index}^-1"
        return f"{x.kind}{x.index}"
    if isinstance(x, Scalar):
        return _scalar_factor_text(x.value)
    if isinstance(x, Pow):
        if isinstance(x.base, Gen):
            if x.base.kind == "Kinv":
                return f"K{x.base.index}^-{x.exp}"
            return f"{_factor_text(x.base)}^{x.exp}"
        return f"({expr_to_text(x.base)})^{x.exp}"
    return f"({expr_to_text(x)})"


def _term_text(x: Expr) -> tuple[str, str]:
    """Return (sign, body) where sign is '+' or '-' and body omits the sign."""
    if isinstance(x, Scalar):
        if x.value.num and x.value.num.leading_coeff() < 0:
            return "-", _term_scalar_body(-x.value)
        return "+", _term_scalar_body(x.value)
    if isinstance(x, Prod) and isinstance(x.factors[0], Scalar):
        v = x.factors[0].value
        rest = x.factors[1:]
        sign = "+"
        if v.num and v.num.leading_coeff() < 0:
            sign = "-"
            v = -v
        parts = [] if v.is_one() else [_scalar_factor_text(v)]
        parts.extend(_factor_text(t) for t in rest)
        return sign, "*".join(parts)
    if isinstance(x, Prod):
        return "+", "*".join(_factor_text(t) for t in x.factors)
    return "+", _factor_text(x)


def _term_scalar_body(v: RatFn) -> str:
    # Multi-term polynomials need parentheses so the term re-parses as one leaf;
    # a rational function already prints in parseable (num)/(den) form.
    from .scalars import scalar_to_text

    if v.is_polynomial() and len(v.num.terms) > 1:
        return f"({scalar_to_text(v)})"
    return scalar_to_text(v)


def expr_to_text(x: Expr) -> str:
    if isinstance(x, Sum):
        sign, body = _term_text(x.terms[0])
        out = body if sign == "+" else f"-{body}"
        for t in x.terms[1:]:
            sign, body = _term_text(t)
            out += f" {sign} {body}"
        return out
    sign, body = _term_text(x)
    return body if sign == "+" else f"-{body}"


# -- parser -------------------------------------------------------------------------

_EXPR_TOKEN_RE = re.compile(
    r"\s*(?:(?P<atom>[efKk])(?P<idx>\d+)|(?P<q>q)|(?P<int>\d+)|(?P<op>[\^*+\-/()]))"
)


def _tokenize_expr(text: str) -> list[tuple[str, object, int]]:
    tokens: list[tuple[str, object, int]] = []
    pos = 0
    while pos < len(text):
        m = _EXPR_TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.group("atom"):
            tokens.append(("atom", (m.group("atom"), int(m.group("idx"))), m.start("atom")))
        elif m.group("q"):
            tokens.append(("q", "q", m.start("q")))
        elif m.group("int"):
            tokens.append(("int", int(m.group("int")), m.start("int")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


def _as_scalar(x: Expr) -> RatFn | None:
    """The value of a generator-free expression, else None."""
    if isinstance(x, Scalar):
        return x.value
    if isinstance(x, Gen):
        return None
    if isinstance(x, Sum):
        total = RatFn.zero()
        for t in x.terms:
            v = _as_scalar(t)
            if v is None:
                return None
            total = total + v
        return total
    if isinstance(x, Prod):
        total = _RF_ONE
        for t in x.factors:
            v = _as_scalar(t)
            if v is None:
                return None
            total = total * v
        return total
    if isinstance(x, Pow):
        v = _as_scalar(x.base)
        return None if v is None else v**x.exp
    return None


class _ExprParser:
    def __init__(self, tokens, params: GLParams):
        self.tokens = tokens
        self.params = params
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        t = self.peek()
        if t is None:
            raise ExprSyntaxError("unexpected end of input", -1)
        self.i += 1
        return t

    def expect_op(self, op: str):
        t = self.next()
        if t[0] != "op" or t[1] != op:
            raise ExprSyntaxError(f"expected {op!r}, got {t[1]!r}", t[2])

    def parse_expr(self) -> Expr:
        terms = [self.parse_term()]
        while True:
            t = self.peek()
            if t is None or t[0] != "op" or t[1] not in "+-":
                break
            self.next()
            term = self.parse_term()
            terms.append(negate(term) if t[1] == "-" else term)
        return make_sum(terms)

    def parse_term(self) -> Expr:
        negated = False
        t = self.peek()
        while t is not None and t[0] == "op" and t[1] == "-":
            self.next()
            negated = not negated
            t = self.peek()
        factors = [self.parse_factor()]
        while True:
            t = self.peek()
            if t is None or t[0] != "op" or t[1] != "*":
                # Implicit product only between an integer and a following q-monomial.
                if (
                    t is not None
                    and t[0] == "q"
                    and len(factors) >= 1
                    and isinstance(factors[-1], Scalar)
                    and factors[-1].value.is_polynomial()
                    and set(factors[-1].value.num.terms.keys()) <= {0}
                ):
                    factors.append(self.parse_factor())
                    continue
                break
            self.next()
            factors.append(self.parse_factor())
        body = make_prod(factors)
        return negate(body) if negated else body

    def parse_optional_exponent(self) -> int | None:
        t = self.peek()
        if t is not None and t[0] == "op" and t[1] == "^":
            self.next()
            sign = 1
            t = self.next()
            if t[0] == "op" and t[1] == "-":
                sign = -1
                t = self.next()
            if t[0] != "int":
                raise ExprSyntaxError("expected an integer exponent", t[2])
            return sign * t[1]
        return None

    def parse_factor(self) -> Expr:
        t = self.next()
        if t[0] == "atom":
            letter, idx = t[1]
            exp = self.parse_optional_exponent()
            base: Expr
            if letter == "e":
                base = Gen("e", idx)
            elif letter == "f":
                base = Gen("f", idx)
            elif letter == "K":
                base = Gen("K", idx)
            else:  # k sugar
                base = cartan(idx)
                if exp is not None and exp < 0:
                    base = cartan_inv(idx)
                    exp = -exp
            if letter in ("e", "f") and exp is not None and exp < 0:
                raise ExprSyntaxError(f"negative power on {letter}{idx}", t[2])
            node = base if exp is None else make_pow(base, exp)
            validate_indices(node, self.params)
            return node
        if t[0] == "q":
            exp = self.parse_optional_exponent()
            return Scalar(RatFn.q(exp if exp is not None else 1))
        if t[0] == "int":
            exp = self.parse_optional_exponent()
            value = RatFn.integer(t[1])
            return Scalar(value if exp is None else value**exp)
        if t[0] == "op" and t[1] == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            v = _as_scalar(inner)
            if v is not None:
                inner = Scalar(v)
            nxt = self.peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "/":
                # Scalar division: (num)/(den) with both sides generator-free.
                self.next()
                self.expect_op("(")
                den_expr = self.parse_expr()
                self.expect_op(")")
                den = _as_scalar(den_expr)
                num = _as_scalar(inner)
                if num is None or den is None:
                    raise ExprSyntaxError("division is only defined between scalars", nxt[2])
                inner = Scalar(num / den)
            exp = self.parse_optional_exponent()
            if exp is None:
                return inner
            if exp < 0 and not isinstance(inner, Scalar):
                raise ExprSyntaxError("negative power on a parenthesized expression", t[2])
            return make_pow(inner, exp)
        raise ExprSyntaxError(f"unexpected token {t[1]!r}", t[2])


def parse_expr(text: str, params: GLParams) -> Expr:
    """Parse expression text, validating generator indices against params."""
    parser = _ExprParser(_tokenize_expr(text), params)
    x = parser.parse_expr()
    t = parser.peek()
    if t is not None:
        raise ExprSyntaxError(f"trailing input {t[1]!r}", t[2])
    return x
