"""Exact coefficient fields, monomial orders and sparse multivariate polynomials."""

from __future__ import annotations

import operator
from dataclasses import dataclass, field as dc_field
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import RingMismatchError

Monomial = tuple  # exponent vector, one entry per ring variable


# ---------------------------------------------------------------------------
# coefficient fields
# ---------------------------------------------------------------------------


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _norm(r):
    if type(r) is Fraction and r.denominator == 1:
        return r.numerator
    return r


class RationalField:
    """The field QQ.

    Elements are Python ints or ``Fraction`` instances; integral values are
    kept as ints, which keeps the common integer-coefficient case fast.
    """

    characteristic = 0
    zero = 0
    one = 1

    @staticmethod
    def add(a, b):
        return _norm(a + b)

    @staticmethod
    def sub(a, b):
        return _norm(a - b)

    @staticmethod
    def mul(a, b):
        return _norm(a * b)

    neg = staticmethod(operator.neg)

    @staticmethod
    def div(a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in QQ")
        r = Fraction(a) / b
        return r.numerator if r.denominator == 1 else r

    def inv(self, a):
        return self.div(1, a)

    @staticmethod
    def convert(x):
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, str):
            return RationalField.convert(Fraction(x))
        raise TypeError(f"cannot convert {x!r} to a rational")

    @staticmethod
    def to_str(c) -> str:
        return str(c)

    def random_element(self, rng, bound: int = 3):
        return rng.randint(-bound, bound)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The prime field F_p with residues stored as ints in ``[0, p)``."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"{p!r} is not a prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 is not invertible in F_{self.p}")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def convert(self, x):
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        if isinstance(x, str):
            return self.convert(Fraction(x))
        raise TypeError(f"cannot convert {x!r} to F_{self.p}")

    def to_str(self, c) -> str:
        # symmetric representative reads better and re-parses to the same residue
        return str(c - self.p if c > self.p // 2 else c)

    def random_element(self, rng, bound: int = 3):
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"Fp({self.p})"


QQ = RationalField()


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------


class Cmp(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


ORDER_TAGS = ("lex", "grevlex", "graded-lex")


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order given by a tag and a variable precedence.

    ``precedence`` lists variable indices from most to least significant;
    ``None`` means the natural order ``0, 1, ..., n-1``.  ``key`` maps an
    exponent vector to a tuple whose Python ordering is the monomial order.
    """

    tag: str = "grevlex"
    precedence: tuple | None = None

    def __post_init__(self):
        if self.tag not in ORDER_TAGS:
            raise ValueError(f"unknown monomial order {self.tag!r}")
        if self.precedence is not None:
            object.__setattr__(self, "precedence", tuple(self.precedence))
            if sorted(self.precedence) != list(range(len(self.precedence))):
                raise ValueError("precedence must be a permutation of variable indices")

    def key(self, exp) -> tuple:
        if self.precedence is not None:
            exp = tuple(exp[i] for i in self.precedence)
        if self.tag == "lex":
            return tuple(exp)
        if self.tag == "grevlex":
            return (sum(exp),) + tuple(-e for e in reversed(exp))
        return (sum(exp),) + tuple(exp)

    def compare(self, u, v) -> Cmp:
        return mono_cmp(self, u, v)


@dataclass(frozen=True)
class EliminationOrder:
    """Block order eliminating every variable after the first ``n_keep``.

    Monomials compare first by total degree in the eliminated block, then by
    the base order on the kept variables, then by the base tag on the block.
    """

    base: MonomialOrder
    n_keep: int

    tag = "elim"

    def key(self, exp) -> tuple:
        kept, elim = exp[: self.n_keep], exp[self.n_keep :]
        return (sum(elim),) + self._sub_key(kept) + self._sub_key(elim, precedence=False)

    def _sub_key(self, exp, precedence=True):
        order = self.base if precedence else MonomialOrder(self.base.tag)
        return order.key(exp)

    def compare(self, u, v) -> Cmp:
        return mono_cmp(self, u, v)


def mono_cmp(order, u, v) -> Cmp:
    """Compare two monomials under ``order``."""
    if len(u) != len(v):
        raise ValueError(f"monomial length mismatch: {len(u)} vs {len(v)}")
    ku, kv = order.key(u), order.key(v)
    if ku > kv:
        return Cmp.GT
    if ku < kv:
        return Cmp.LT
    return Cmp.EQ


def mono_mul(u, v):
    return tuple(map(operator.add, u, v))


def mono_divides(u, v) -> bool:
    """True if ``u`` divides ``v``."""
    return all(a <= b for a, b in zip(u, v))


def mono_lcm(u, v):
    return tuple(map(max, u, v))


def mono_quo(v, u):
    return tuple(map(operator.sub, v, u))


# ---------------------------------------------------------------------------
# rings and polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class PolyRing:
    """A polynomial ring ``K[x_1, ..., x_n]`` with a fixed monomial order."""

    names: tuple
    field: object = QQ
    order: object = dc_field(default_factory=MonomialOrder)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be distinct: {names}")
        prec = getattr(self.order, "precedence", None)
        if prec is not None and len(prec) != len(names):
            raise ValueError("order precedence does not match the variable count")

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def var(self, which) -> "Polynomial":
        i = self.names.index(which) if isinstance(which, str) else which
        exp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {exp: 1})

    def monomial(self, exp, coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exp): coeff})

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring != self:
                raise RingMismatchError("polynomial belongs to a different ring")
            return x
        if isinstance(x, str):
            return self.parse(x)
        return self.constant(x)

    def parse(self, text: str) -> "Polynomial":
        from .cli.parser import parse_polynomial

        return parse_polynomial(text, self)

    def with_variable(self, name: str, elimination: bool = True) -> "PolyRing":
        """Return the ring with one fresh trailing variable adjoined."""
        while name in self.names:
            name = "_" + name
        base = self.order if isinstance(self.order, MonomialOrder) else MonomialOrder()
        if elimination:
            order = EliminationOrder(base, self.nvars)
        else:
            prec = base.precedence
            order = MonomialOrder(base.tag, None if prec is None else prec + (self.nvars,))
        return PolyRing(self.names + (name,), self.field, order)

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.names, self.field, order)

    def describe(self) -> str:
        fld = "QQ" if self.field == QQ else f"Fp({self.field.p})"
        tag = getattr(self.order, "tag", "grevlex")
        return f"{fld}[{','.join(self.names)}] order={tag}"

    def __repr__(self):
        return f"PolyRing({self.describe()})"


class Polynomial:
    """Immutable sparse polynomial.

    ``terms`` is a tuple of ``(exponent, coefficient)`` pairs sorted strictly
    descending in the ring's monomial order; the zero polynomial has no terms.
    """

    __slots__ = ("ring", "terms", "_dict", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping | Iterable = ()):
        K = ring.field
        d = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        n = ring.nvars
        for exp, c in items:
            exp = tuple(exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for {n} variables")
            c = K.convert(c)
            if exp in d:
                c = K.add(d[exp], c)
            d[exp] = c
        self._init(ring, {e: c for e, c in d.items() if c != 0})

    def _init(self, ring, d):
        self.ring = ring
        self._dict = d
        key = ring.order.key
        self.terms = tuple(sorted(d.items(), key=lambda t: key(t[0]), reverse=True))
        self._hash = None

    @classmethod
    def _from_dict(cls, ring, d) -> "Polynomial":
        """Build from an already-canonical dict (field elements, no zeros)."""
        p = cls.__new__(cls)
        p._init(ring, d)
        return p

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def as_dict(self) -> dict:
        return dict(self._dict)

    def coefficient(self, exp):
        return self._dict.get(tuple(exp), 0)

    @property
    def lead_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return self.terms[0][0]

    @property
    def lead_coeff(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.terms[0][1]

    def total_degree(self):
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self.terms:
            return float("-inf")
        return max(sum(e) for e, _ in self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(self.terms[0][0]))

    def is_term(self) -> bool:
        """A single nonzero coefficient times a monomial."""
        return len(self.terms) == 1

    def support(self) -> set:
        """Indices of the variables occurring in the polynomial."""
        return {i for e, _ in self.terms for i, k in enumerate(e) if k}

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        K = self.ring.field
        lc = self.lead_coeff
        return Polynomial._from_dict(self.ring, {e: K.div(c, lc) for e, c in self._dict.items()})

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError("polynomials belong to different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        K = self.ring.field
        d = dict(self._dict)
        for e, c in other._dict.items():
            v = K.add(d[e], c) if e in d else c
            if v == 0:
                d.pop(e, None)
            else:
                d[e] = v
        return Polynomial._from_dict(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        K = self.ring.field
        return Polynomial._from_dict(self.ring, {e: K.neg(c) for e, c in self._dict.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        K = self.ring.field
        add, mul = K.add, K.mul
        d = {}
        for e1, c1 in self._dict.items():
            for e2, c2 in other._dict.items():
                e = tuple(map(operator.add, e1, e2))
                c = mul(c1, c2)
                if e in d:
                    c = add(d[e], c)
                d[e] = c
        return Polynomial._from_dict(self.ring, {e: c for e, c in d.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = self.ring.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        K = self.ring.field
        c = K.convert(c)
        if c == 0:
            return self.ring.zero
        return Polynomial._from_dict(self.ring, {e: K.mul(v, c) for e, v in self._dict.items()})

    def mul_term(self, exp, c=1) -> "Polynomial":
        K = self.ring.field
        c = K.convert(c)
        if c == 0:
            return self.ring.zero
        return Polynomial._from_dict(
            self.ring, {tuple(map(operator.add, e, exp)): K.mul(v, c) for e, v in self._dict.items()}
        )

    def map_to(self, ring: PolyRing, positions=None) -> "Polynomial":
        """Embed into ``ring``; variable i goes to ``positions[i]`` (default: same index)."""
        n = ring.nvars
        if positions is None:
            positions = range(self.ring.nvars)
        positions = list(positions)
        d = {}
        for e, c in self._dict.items():
            ne = [0] * n
            for i, k in zip(positions, e):
                ne[i] += k
            d[tuple(ne)] = ring.field.convert(c)
        return Polynomial(ring, d)

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._dict == other._dict
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._dict.items())))
        return self._hash

    # -- printing ----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        K = self.ring.field
        names = self.ring.names
        out = []
        for k, (e, c) in enumerate(self.terms):
            s = K.to_str(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            mono = "*".join(
                names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(e) if a
            )
            if mono:
                body = mono if s == "1" else f"{s}*{mono}"
            else:
                body = s
            if k == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.ring != g.ring:
        raise RingMismatchError("poly_add: polynomials belong to different rings")
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.ring != g.ring:
        raise RingMismatchError("poly_mul: polynomials belong to different rings")
    return f * g


def polynomial_ring(names, field=QQ, order="grevlex") -> PolyRing:
    """Convenience constructor: ``polynomial_ring("x,y,z")``."""
    if isinstance(names, str):
        names = [s.strip() for s in names.split(",") if s.strip()]
    if isinstance(order, str):
        order = MonomialOrder(order)
    return PolyRing(tuple(names), field, order)
