"""Buchberger's algorithm for ideals and for submodules of free modules.

Module elements are handled internally as dicts ``{(component, exponent):
coefficient}``.  Terms are ordered position-over-term: a lower component
index beats everything in a higher one, and within a component the ring's
monomial order decides.  An ideal is the rank-one case.
"""

from __future__ import annotations

import heapq
import operator
from dataclasses import dataclass
from itertools import combinations

from .errors import NotMonomialError, PreconditionError, RingMismatchError
from .ring import Polynomial, PolyRing

_add = operator.add
_sub = operator.sub


def _divides(u, v):
    for a, b in zip(u, v):
        if a > b:
            return False
    return True


def _coprime(u, v):
    for a, b in zip(u, v):
        if a and b:
            return False
    return True


class _Elem:
    __slots__ = ("comp", "exp", "tail", "terms")

    def __init__(self, comp, exp, terms, tail):
        self.comp = comp
        self.exp = exp
        self.terms = terms
        self.tail = tail


class _Engine:
    """Reduction machinery bound to one ring; holds a term-key memo."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        K = ring.field
        self.K = K
        self._okey = ring.order.key
        self._pos = {}
        self._neg = {}

    # keys: ``pos`` sorts ascending with the term order, ``neg`` descending
    def pos(self, t):
        k = self._pos.get(t)
        if k is None:
            k = (-t[0],) + self._okey(t[1])
            self._pos[t] = k
        return k

    def neg(self, t):
        k = self._neg.get(t)
        if k is None:
            k = tuple(-x for x in self.pos(t))
            self._neg[t] = k
        return k

    def lead(self, vec):
        return max(vec, key=self.pos)

    def make_elem(self, vec) -> _Elem:
        t = self.lead(vec)
        c = vec[t]
        K = self.K
        if c != 1:
            vec = {k: K.div(v, c) for k, v in vec.items()}
        tail = [(k, v) for k, v in vec.items() if k != t]
        return _Elem(t[0], t[1], vec, tail)

    def reduce(self, vec, by_comp, full=True):
        """Normal form of ``vec`` modulo the monic elements in ``by_comp``."""
        if not vec:
            return {}
        K = self.K
        mul, sub, neg_ = K.mul, K.sub, K.neg
        f = dict(vec)
        negkey = self.neg
        heap = [(negkey(t), t) for t in f]
        heapq.heapify(heap)
        r = {}
        while heap:
            _, t = heapq.heappop(heap)
            c = f.pop(t, None)
            if c is None:
                continue
            comp, e = t
            for g in by_comp.get(comp, ()):
                ge = g.exp
                if _divides(ge, e):
                    q = tuple(map(_sub, e, ge))
                    for (gc, gexp), gv in g.tail:
                        key = (gc, tuple(map(_add, gexp, q)))
                        old = f.get(key)
                        if old is None:
                            f[key] = neg_(mul(c, gv))
                            heapq.heappush(heap, (negkey(key), key))
                        else:
                            nv = sub(old, mul(c, gv))
                            if nv == 0:
                                del f[key]
                            else:
                                f[key] = nv
                    break
            else:
                r[t] = c
                if not full:
                    r.update(f)
                    return r
        return r

    def spoly(self, a: _Elem, b: _Elem, lcm):
        qa = tuple(map(_sub, lcm, a.exp))
        qb = tuple(map(_sub, lcm, b.exp))
        K = self.K
        f = {}
        for (c, e), v in a.tail:
            f[(c, tuple(map(_add, e, qa)))] = v
        for (c, e), v in b.tail:
            key = (c, tuple(map(_add, e, qb)))
            old = f.get(key)
            nv = K.neg(v) if old is None else K.sub(old, v)
            if nv == 0:
                f.pop(key, None)
            else:
                f[key] = nv
        return f

    def groebner(self, vecs, product_criterion=False) -> list:
        """Reduced Groebner basis (monic, sorted by leading term, descending)."""
        elems: list[_Elem] = []
        active: list[int] = []
        pairs: list = []
        by_comp: dict = {}

        def rebuild():
            by_comp.clear()
            for i in active:
                by_comp.setdefault(elems[i].comp, []).append(elems[i])

        def update(hi):
            nonlocal pairs
            h = elems[hi]
            k, u = h.comp, h.exp
            cands = [(gi, tuple(map(max, u, elems[gi].exp))) for gi in active if elems[gi].comp == k]
            kept = []
            for idx, (gi, l) in enumerate(cands):
                cop = product_criterion and _coprime(u, elems[gi].exp)
                if cop:
                    kept.append((gi, l, True))
                    continue
                if any(_divides(l2, l) for _, l2 in cands[idx + 1 :]):
                    continue
                if any(_divides(l2, l) for _, l2, _c in kept):
                    continue
                kept.append((gi, l, False))
            survivors = []
            for entry in pairs:
                _, i, j, l, comp = entry
                if comp == k and _divides(u, l):
                    li = tuple(map(max, elems[i].exp, u))
                    lj = tuple(map(max, elems[j].exp, u))
                    if li != l and lj != l:
                        continue
                survivors.append(entry)
            for gi, l, cop in kept:
                if not cop:
                    survivors.append((self.pos((k, l)), gi, hi, l, k))
            heapq.heapify(survivors)
            pairs = survivors
            active[:] = [gi for gi in active if not (elems[gi].comp == k and _divides(u, elems[gi].exp))]
            active.append(hi)
            rebuild()

        def add(vec):
            e = self.make_elem(vec)
            elems.append(e)
            update(len(elems) - 1)
            return e

        start = sorted((v for v in vecs if v), key=lambda v: self.pos(self.lead(v)))
        for v in start:
            h = self.reduce(v, by_comp)
            if h:
                e = add(h)
                if product_criterion and not any(e.exp):
                    return [e]
        while pairs:
            _, i, j, l, _k = heapq.heappop(pairs)
            s = self.spoly(elems[i], elems[j], l)
            h = self.reduce(s, by_comp)
            if h:
                e = add(h)
                if product_criterion and not any(e.exp):
                    return [e]

        basis = [elems[i] for i in active]
        out = []
        for g in basis:
            others = {}
            for o in basis:
                if o is not g:
                    others.setdefault(o.comp, []).append(o)
            tail = self.reduce(dict(g.tail), others)
            terms = dict(tail)
            terms[(g.comp, g.exp)] = 1
            out.append(_Elem(g.comp, g.exp, terms, list(tail.items())))
        out.sort(key=lambda g: self.neg((g.comp, g.exp)))
        return out


def _by_comp(elems):
    d = {}
    for g in elems:
        d.setdefault(g.comp, []).append(g)
    return d


# ---------------------------------------------------------------------------
# polynomials <-> internal vectors
# ---------------------------------------------------------------------------


def poly_to_vec(f: Polynomial, comp: int = 0) -> dict:
    return {(comp, e): c for e, c in f.terms}


def vec_to_poly(ring: PolyRing, vec: dict) -> Polynomial:
    return Polynomial._from_dict(ring, {e: c for (_, e), c in vec.items()})


def column_to_vec(column) -> dict:
    v = {}
    for i, f in enumerate(column):
        for e, c in f.terms:
            v[(i, e)] = c
    return v


def vec_to_column(ring: PolyRing, vec: dict, rank: int, offset: int = 0) -> tuple:
    parts = [dict() for _ in range(rank)]
    for (i, e), c in vec.items():
        j = i - offset
        if 0 <= j < rank:
            parts[j][e] = c
    return tuple(Polynomial._from_dict(ring, p) for p in parts)


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis of an ideal: monic polynomials, leading term descending."""

    ring: PolyRing
    polys: tuple

    @property
    def order(self):
        return self.ring.order

    def lead_monomials(self) -> list:
        return [g.lead_monomial for g in self.polys]

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant()

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)


class Ideal:
    """An ideal given by generators, with a lazily cached reduced Groebner basis.

    Zero generators are dropped.  The cache is filled at most once in effect:
    concurrent fills compute the same reduced basis, so whichever lands last
    is indistinguishable from the first.
    """

    __slots__ = ("ring", "gens", "_gb", "_engine")

    def __init__(self, ring: PolyRing, gens=()):
        polys = []
        for g in gens:
            g = ring(g)
            if not g.is_zero():
                polys.append(g)
        self.ring = ring
        self.gens = tuple(polys)
        self._gb = None
        self._engine = None

    # -- Groebner data -----------------------------------------------------

    def engine(self) -> _Engine:
        if self._engine is None:
            self._engine = _Engine(self.ring)
        return self._engine

    def _elems(self):
        if self._gb is None:
            eng = self.engine()
            elems = eng.groebner([poly_to_vec(g) for g in self.gens], product_criterion=True)
            self._gb = (elems, _by_comp(elems))
        return self._gb

    def groebner(self) -> GroebnerBasis:
        elems, _ = self._elems()
        return GroebnerBasis(self.ring, tuple(vec_to_poly(self.ring, g.terms) for g in elems))

    def reduce(self, f) -> Polynomial:
        f = self.ring(f)
        _, by_comp = self._elems()
        return vec_to_poly(self.ring, self.engine().reduce(poly_to_vec(f), by_comp))

    def contains(self, f) -> bool:
        return self.reduce(f).is_zero()

    def __contains__(self, f):
        return self.contains(f)

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_zero(self) -> bool:
        return not self.gens

    def contains_ideal(self, other: "Ideal") -> bool:
        _check_same(self.ring, other.ring)
        return all(self.contains(g) for g in other.gens)

    def __le__(self, other: "Ideal") -> bool:
        return other.contains_ideal(self)

    def equals(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    # -- constructions -----------------------------------------------------

    def __add__(self, other: "Ideal") -> "Ideal":
        _check_same(self.ring, other.ring)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        _check_same(self.ring, other.ring)
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def power(self, k: int) -> "Ideal":
        out = Ideal(self.ring, [self.ring.one])
        for _ in range(k):
            out = out * self
        return out

    def is_monomial(self) -> bool:
        """Generated by terms (checked on the generators, then on the Groebner basis)."""
        if all(g.is_term() for g in self.gens):
            return True
        return all(g.is_term() for g in self.groebner().polys)

    def monomial_generators(self) -> list:
        if all(g.is_term() for g in self.gens):
            return [g.monic() for g in self.gens]
        gb = self.groebner().polys
        if all(g.is_term() for g in gb):
            return list(gb)
        raise NotMonomialError("ideal is not monomial")

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __repr__(self):
        return f"Ideal{self}"


def _check_same(r1, r2):
    if r1 != r2:
        raise RingMismatchError("ideals belong to different rings")


def buchberger(I: Ideal) -> GroebnerBasis:
    return I.groebner()


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of ``f`` on division by the Groebner basis ``G``."""
    if f.ring != G.ring:
        raise RingMismatchError("normal_form: polynomial and basis use different rings/orders")
    eng = _Engine(G.ring)
    elems = [eng.make_elem(poly_to_vec(g)) for g in G.polys]
    return vec_to_poly(G.ring, eng.reduce(poly_to_vec(f), _by_comp(elems)))


def ideal_member(f: Polynomial, I: Ideal) -> bool:
    return I.contains(f)


def radical_member(f: Polynomial, I: Ideal) -> bool:
    """Decide ``f in sqrt(I)`` by testing ``1 in I + (1 - t*f)`` over ``R[t]``."""
    f = I.ring(f)
    if f.is_zero() or I.contains(f):
        return True
    if I.is_zero():
        return False
    S = I.ring.with_variable("t", elimination=False)
    t = S.var(S.nvars - 1)
    gens = [g.map_to(S) for g in I.gens] + [S.one - t * f.map_to(S)]
    return Ideal(S, gens).is_unit()


def _eliminate_aux(S: PolyRing, R: PolyRing, gens) -> list:
    """Generators of ``(gens) ∩ R`` where the last variable of ``S`` is eliminated."""
    J = Ideal(S, gens)
    n = R.nvars
    out = []
    for g in J.groebner().polys:
        if all(e[n] == 0 for e, _ in g.terms):
            out.append(Polynomial(R, {e[:n]: c for e, c in g.terms}))
    return out


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` by eliminating ``t`` from ``t*I + (1-t)*J``."""
    _check_same(I.ring, J.ring)
    R = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(R)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    S = R.with_variable("t", elimination=True)
    t = S.var(S.nvars - 1)
    gens = [t * g.map_to(S) for g in I.gens] + [(S.one - t) * g.map_to(S) for g in J.gens]
    return Ideal(R, _eliminate_aux(S, R, gens))


def divide_exact(g: Polynomial, f: Polynomial) -> Polynomial:
    """Quotient ``g / f``; raises if ``f`` does not divide ``g``."""
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    R = g.ring
    K = R.field
    fl, fc = f.lead_monomial, f.lead_coeff
    q = R.zero
    while not g.is_zero():
        gl, gc = g.lead_monomial, g.lead_coeff
        if not _divides(fl, gl):
            raise ValueError(f"{f} does not divide the given polynomial")
        e = tuple(map(_sub, gl, fl))
        c = K.div(gc, fc)
        q = q + R.monomial(e, c)
        g = g - f.mul_term(e, c)
    return q


def ideal_quotient(I: Ideal, f: Polynomial) -> Ideal:
    """``(I : f)`` computed as ``(I ∩ (f)) / f``."""
    f = I.ring(f)
    if f.is_zero():
        raise PreconditionError("ideal_quotient: f must be nonzero")
    meet = ideal_intersect(I, Ideal(I.ring, [f]))
    return Ideal(I.ring, [divide_exact(g, f) for g in meet.gens])


def krull_dim(I: Ideal):
    """Dimension of ``R/I`` via independent variable sets; ``None`` for the unit ideal."""
    gb = I.groebner()
    if gb.is_unit():
        return None
    n = I.ring.nvars
    supports = [frozenset(i for i, a in enumerate(m) if a) for m in gb.lead_monomials()]
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            S = frozenset(S)
            if not any(sup <= S for sup in supports):
                return size
    return 0


def _minimal_transversals(families, n) -> list:
    covers = {frozenset()}
    for S in families:
        nxt = set()
        for P in covers:
            if P & S:
                nxt.add(P)
            else:
                for v in S:
                    nxt.add(P | {v})
        covers = {P for P in nxt if not any(Q < P for Q in nxt)}
    return sorted(covers, key=lambda P: (len(P), sorted(P)))


def minimal_primes_monomial(I: Ideal) -> list:
    """Minimal primes of a monomial ideal (each generated by variables)."""
    R = I.ring
    if not all(g.is_term() for g in I.gens):
        raise NotMonomialError("minimal_primes_monomial: generators must be single terms")
    supports = [frozenset(g.support()) for g in I.gens]
    if any(not s for s in supports):
        raise PreconditionError("minimal_primes_monomial: the unit ideal has no primes")
    return [Ideal(R, [R.var(i) for i in sorted(P)]) for P in _minimal_transversals(supports, R.nvars)]


def variable_prime(R: PolyRing, indices) -> Ideal:
    return Ideal(R, [R.var(i) for i in sorted(indices)])


# ---------------------------------------------------------------------------
# submodules of free modules
# ---------------------------------------------------------------------------


class ModuleGroebnerBasis:
    """Reduced Groebner basis of a submodule of ``R^rank`` (position over term)."""

    def __init__(self, ring: PolyRing, rank: int, vectors):
        self.ring = ring
        self.rank = rank
        self._engine = _Engine(ring)
        self._elems = self._engine.groebner([v for v in vectors if v])
        self._by_comp = _by_comp(self._elems)

    @classmethod
    def from_columns(cls, ring, rank, columns) -> "ModuleGroebnerBasis":
        return cls(ring, rank, [column_to_vec(c) for c in columns])

    def vectors(self) -> list:
        return [dict(g.terms) for g in self._elems]

    def columns(self) -> list:
        return [vec_to_column(self.ring, g.terms, self.rank) for g in self._elems]

    def leads(self) -> list:
        return [(g.comp, g.exp) for g in self._elems]

    def reduce_vec(self, vec: dict) -> dict:
        return self._engine.reduce(vec, self._by_comp)

    def normal_form(self, column) -> tuple:
        return vec_to_column(self.ring, self.reduce_vec(column_to_vec(column)), self.rank)

    def contains(self, column) -> bool:
        return not self.reduce_vec(column_to_vec(column))

    def contains_unit(self, i: int) -> bool:
        zero = (0,) * self.ring.nvars
        return not self.reduce_vec({(i, zero): self.ring.field.one})

    def __len__(self):
        return len(self._elems)


def groebner_columns(ring, rank, columns) -> ModuleGroebnerBasis:
    return ModuleGroebnerBasis.from_columns(ring, rank, columns)
