"""Exact coefficient fields, Z^2-graded polynomial rings and polynomial arithmetic."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class RingError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)
        self.position = position


# ---------------------------------------------------------------------------
# coefficient fields

@dataclass(frozen=True)
class RationalField:
    """The field Q; elements are Fraction instances in lowest terms."""

    def __repr__(self):
        return "Q"

    @property
    def char(self):
        return 0

    def coerce(self, value):
        return Fraction(value)

    zero = Fraction(0)
    one = Fraction(1)


@dataclass(frozen=True)
class PrimeField:
    """The field Z/p for a prime p; elements are ints in [0, p)."""

    p: int

    def __post_init__(self):
        if self.p < 2 or any(self.p % q == 0 for q in range(2, int(self.p ** 0.5) + 1)):
            raise RingError("modulus %r is not prime" % (self.p,))

    def __repr__(self):
        return "F%d" % self.p

    @property
    def char(self):
        return self.p

    def coerce(self, value):
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise RingError("denominator divisible by %d" % self.p)
            return value.numerator * pow(den, -1, self.p) % self.p
        return int(value) % self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1


QQ = RationalField()

_MONOMIAL_CACHE = {}


# ---------------------------------------------------------------------------
# term orders

_ORDER_TAGS = ("lex", "deglex", "degrevlex", "elim")


@dataclass(frozen=True)
class TermOrder:
    """Total multiplicative order on monomials.

    ``elim`` is a block order: the first ``block`` variables (after the
    optional permutation) form an elimination block compared by degrevlex,
    ties broken by degrevlex on the remaining variables.
    """

    tag: str = "degrevlex"
    block: int = 0
    perm: tuple | None = None

    def __post_init__(self):
        if self.tag not in _ORDER_TAGS:
            raise RingError("unknown term order %r" % (self.tag,))
        if self.tag == "elim" and self.block <= 0:
            raise RingError("elimination order needs a positive block size")

    def key_function(self, nvars):
        """Sort key: key(m) < key(m') iff m < m' in this order."""
        perm = self.perm if self.perm is not None else tuple(range(nvars))
        if len(perm) != nvars:
            raise RingError("permutation length %d != %d variables" % (len(perm), nvars))
        tag, block = self.tag, self.block

        def revlex_part(e):
            # degrevlex: higher monomial == higher (deg, reversed negated exponents)
            return (sum(e),) + tuple(-x for x in reversed(e))

        if tag == "lex":
            return lambda m: tuple(m[i] for i in perm)
        if tag == "deglex":
            return lambda m: (sum(m),) + tuple(m[i] for i in perm)
        if tag == "degrevlex":
            return lambda m: revlex_part(tuple(m[i] for i in perm))

        def elim_key(m):
            e = tuple(m[i] for i in perm)
            return revlex_part(e[:block]) + revlex_part(e[block:])

        return elim_key


DEGREVLEX = TermOrder("degrevlex")
LEX = TermOrder("lex")
DEGLEX = TermOrder("deglex")


def elimination_order(block):
    return TermOrder("elim", block=block)


# ---------------------------------------------------------------------------
# rings

@dataclass(frozen=True)
class RingSpec:
    """A polynomial ring over an exact field with Z^2 variable degrees.

    Variables of degree (1, 0) play the role of the base coordinates; the
    remaining ones typically carry degrees (d_j, 1) (blow-up coordinates).
    Equality is value-based: two specs are the same ring iff all fields agree.
    """

    field: RationalField | PrimeField
    names: tuple
    degrees: tuple
    order: TermOrder = DEGREVLEX

    def __post_init__(self):
        if not self.names:
            raise RingError("a ring needs at least one variable")
        if len(set(self.names)) != len(self.names):
            raise RingError("duplicate variable names")
        if len(self.degrees) != len(self.names):
            raise RingError("degrees/names length mismatch")
        for d in self.degrees:
            if len(d) != 2 or d[0] < 0 or d[1] < 0 or d == (0, 0):
                raise RingError("variable degrees must be nonzero vectors in N^2")

    @property
    def nvars(self):
        return len(self.names)

    @property
    def x_count(self):
        """Number of degree-(1,0) variables."""
        return sum(1 for d in self.degrees if d == (1, 0))

    @property
    def y_count(self):
        """Number of second-degree-1 variables (the blow-up block)."""
        return sum(1 for d in self.degrees if d[1] == 1)

    def key_function(self):
        return self.order.key_function(self.nvars)

    def with_order(self, order):
        return RingSpec(self.field, self.names, self.degrees, order)

    def monomial_degree(self, mono):
        d1 = d2 = 0
        for e, (a, b) in zip(mono, self.degrees):
            d1 += e * a
            d2 += e * b
        return (d1, d2)

    def variable(self, i):
        mono = [0] * self.nvars
        mono[i] = 1
        return Polynomial(self, {tuple(mono): self.field.one})

    def gens(self):
        return [self.variable(i) for i in range(self.nvars)]

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {(0,) * self.nvars: self.field.one})

    def constant(self, c):
        c = self.field.coerce(c)
        if not c:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomials_of_degree(self, degree):
        """All exponent vectors of the given Z^2 degree, as a list of tuples."""
        key = (self.degrees, tuple(degree))
        cached = _MONOMIAL_CACHE.get(key)
        if cached is not None:
            return cached
        out = []
        n = self.nvars
        degs = self.degrees
        # cheapest first-degree cost per unit of second degree over each suffix
        INF = float("inf")
        min_ratio = [INF] * (n + 1)
        for i in range(n - 1, -1, -1):
            a, b = degs[i]
            min_ratio[i] = min(min_ratio[i + 1], a / b if b else INF)

        def rec(i, rem1, rem2, acc):
            if i == n:
                if rem1 == 0 and rem2 == 0:
                    out.append(tuple(acc))
                return
            if rem2 and rem2 * min_ratio[i] > rem1:
                return
            a, b = degs[i]
            emax1 = rem1 // a if a else None
            emax2 = rem2 // b if b else None
            cands = [c for c in (emax1, emax2) if c is not None]
            emax = min(cands)
            for e in range(emax + 1):
                acc.append(e)
                rec(i + 1, rem1 - e * a, rem2 - e * b, acc)
                acc.pop()

        if degree[0] >= 0 and degree[1] >= 0:
            rec(0, degree[0], degree[1], [])
        _MONOMIAL_CACHE[key] = out
        return out

    def __repr__(self):
        vars_ = ", ".join("%s(%d,%d)" % (n, d[0], d[1]) for n, d in zip(self.names, self.degrees))
        return "RingSpec(%r; %s; %s)" % (self.field, vars_, self.order.tag)


def graded_ring(names, field=QQ, order=DEGREVLEX):
    """Standard Z-graded polynomial ring: every variable has degree (1, 0)."""
    names = tuple(names)
    return RingSpec(field, names, tuple((1, 0) for _ in names), order)


def blowup_ring(x_names, y_names, y_degrees, field=QQ, order=DEGREVLEX):
    """Ring k[X; Y] with deg X_i = (1,0) and deg Y_j = (d_j, 1)."""
    x_names, y_names = tuple(x_names), tuple(y_names)
    degrees = tuple((1, 0) for _ in x_names) + tuple((d, 1) for d in y_degrees)
    return RingSpec(field, x_names + y_names, degrees, order)


# ---------------------------------------------------------------------------
# monomial helpers (exponent tuples)

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, assuming b | a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# polynomials

class Polynomial:
    """Immutable multivariate polynomial: canonical term list, descending order."""

    __slots__ = ("ring", "terms", "_key")

    def __init__(self, ring, coeffs):
        self.ring = ring
        key = ring.key_function()
        self._key = key
        items = [(m, c) for m, c in coeffs.items() if c]
        items.sort(key=lambda t: key(t[0]), reverse=True)
        self.terms = tuple(items)

    # -- basic protocol ----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring.names, self.terms))

    def __repr__(self):
        return format_polynomial(self)

    # -- structure ---------------------------------------------------------
    def as_dict(self):
        return dict(self.terms)

    def leading_monomial(self):
        if not self.terms:
            raise RingError("zero polynomial has no leading monomial")
        return self.terms[0][0]

    def leading_coefficient(self):
        if not self.terms:
            raise RingError("zero polynomial has no leading coefficient")
        return self.terms[0][1]

    def monic(self):
        if not self.terms:
            return self
        lc = self.terms[0][1]
        field = self.ring.field
        if lc == field.one:
            return self
        if field.char == 0:
            return self.scale(Fraction(1) / lc)
        return self.scale(pow(lc, -1, field.char))

    def _check_same_ring(self, other):
        if self.ring != other.ring:
            raise RingError("polynomials live in different rings")

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        self._check_same_ring(other)
        acc = dict(self.terms)
        p = self.ring.field.char
        for m, c in other.terms:
            v = acc.get(m, 0) + c
            if p:
                v %= p
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
        return Polynomial(self.ring, acc)

    def __neg__(self):
        p = self.ring.field.char
        if p:
            return Polynomial(self.ring, {m: (-c) % p for m, c in self.terms})
        return Polynomial(self.ring, {m: -c for m, c in self.terms})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_same_ring(other)
        acc = {}
        p = self.ring.field.char
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                v = acc.get(m, 0) + c1 * c2
                if p:
                    v %= p
                if v:
                    acc[m] = v
                else:
                    acc.pop(m, None)
        return Polynomial(self.ring, acc)

    def __pow__(self, k):
        if k < 0:
            raise RingError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def scale(self, c):
        c = self.ring.field.coerce(c)
        if not c:
            return self.ring.zero()
        p = self.ring.field.char
        if p:
            return Polynomial(self.ring, {m: (v * c) % p for m, v in self.terms})
        return Polynomial(self.ring, {m: v * c for m, v in self.terms})

    def mul_monomial(self, mono, c=1):
        c = self.ring.field.coerce(c)
        p = self.ring.field.char
        acc = {}
        for m, v in self.terms:
            w = v * c
            if p:
                w %= p
            if w:
                acc[mono_mul(m, mono)] = w
        return Polynomial(self.ring, acc)

    # -- grading -------------------------------------------------------------
    def multidegree(self):
        """Common Z^2 degree of all terms, or None if inhomogeneous.

        Raises on the zero polynomial: it carries every degree.
        """
        if not self.terms:
            raise RingError("the zero polynomial has no well-defined multidegree")
        degs = {self.ring.monomial_degree(m) for m, _ in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self):
        if not self.terms:
            return True
        return self.multidegree() is not None

    def total_degree(self):
        if not self.terms:
            raise RingError("zero polynomial")
        return max(sum(m) for m, _ in self.terms)

    def coefficient(self, mono):
        for m, c in self.terms:
            if m == mono:
                return c
        return 0


# ---------------------------------------------------------------------------
# parsing / formatting

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*^/]))")


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            raise ParseError("unexpected character %r" % text[pos], pos)
        if m.group(1):
            out.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2):
            out.append(("name", m.group(2), m.start(2)))
        else:
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, ring, tokens):
        self.ring = ring
        self.tokens = tokens
        self.i = 0
        self.var_index = {n: i for i, n in enumerate(ring.names)}

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError("expected %r" % op, pos)

    def parse_expr(self):
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.take()
            negate = val == "-"
        result = self.parse_term()
        if negate:
            result = -result
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.parse_term()
                result = result - rhs if val == "-" else result + rhs
            else:
                return result

    def parse_term(self):
        result = self.parse_factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                result = result * self.parse_factor()
            else:
                return result

    def parse_factor(self):
        base = self.parse_base()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "^":
                self.take()
                kind, exp, pos = self.take()
                if kind != "int":
                    raise ParseError("exponent must be a non-negative integer", pos)
                base = base ** exp
            else:
                return base

    def parse_base(self):
        kind, val, pos = self.take()
        if kind == "int":
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3, p3 = self.take()
                if k3 != "int" or v3 == 0:
                    raise ParseError("malformed rational literal", p3)
                return self.ring.constant(Fraction(val, v3))
            return self.ring.constant(val)
        if kind == "name":
            idx = self.var_index.get(val)
            if idx is None:
                raise ParseError("unknown variable %r" % val, pos)
            return self.ring.variable(idx)
        if kind == "op" and val == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise ParseError("unexpected token", pos)


def parse_polynomial(text, ring):
    """Parse an expression with +, -, *, ^, parentheses and rational literals."""
    parser = _Parser(ring, _tokenize(text))
    result = parser.parse_expr()
    kind, _, pos = parser.peek()
    if kind != "end":
        raise ParseError("trailing input", pos)
    return result


def format_polynomial(f):
    """Canonical text form: terms in descending order, explicit '*' and '^'."""
    if not f.terms:
        return "0"
    ring = f.ring
    parts = []
    for m, c in f.terms:
        factors = []
        for name, e in zip(ring.names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append("%s^%d" % (name, e))
        if isinstance(c, Fraction) and c.denominator != 1:
            cs = "%d/%d" % (abs(c.numerator), c.denominator)
        else:
            cs = str(abs(int(c)) if not isinstance(c, Fraction) else abs(c.numerator))
        neg = (isinstance(c, Fraction) and c < 0) or (not isinstance(c, Fraction) and c < 0)
        body = "*".join(factors) if factors else ""
        if body and cs == "1":
            text = body
        elif body:
            text = "%s*%s" % (cs, body)
        else:
            text = cs
        parts.append(("- " if neg else "+ ") + text)
    out = " ".join(parts)
    if out.startswith("+ "):
        out = out[2:]
    elif out.startswith("- "):
        out = "-" + out[2:]
    return out


def multidegree_of(f):
    """Common bidegree of the terms of f, or the string "inhomogeneous"."""
    deg = f.multidegree()
    return deg if deg is not None else "inhomogeneous"
