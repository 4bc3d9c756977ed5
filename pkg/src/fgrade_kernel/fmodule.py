"""Candidate-set classifier for (a, b)-f-modules and its necessary conditions.

A module is an (a, b)-f-module when ``f-grad(a, p, M) = dim M - dim R/p``
for every prime ``p`` of ``Supp(M/bM)`` outside ``V(a)``.  That set is
infinite in general, so the checker works on a finite candidate set: a
failing row is a genuine counterexample and a verdict of
``holds-on-candidates`` says nothing about primes that were not tried.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import EngineError, NotMonomialError, PreconditionError
from .filtergrade import (
    INFINITY,
    check_frs,
    depth_grade,
    fgrade_ext,
    module_dim,
    supp_in_V,
)
from .groebner import Ideal, krull_dim, minimal_primes_monomial, variable_prime
from .modules import FPModule, annihilator, is_zero, quotient_by_elements

HOLDS = "holds-on-candidates"
FAILS = "fails"
VACUOUS = "vacuous-infinite"


@dataclass
class PrimeRow:
    prime: Ideal
    fgrade: int
    bound: int
    equal: bool

    def as_dict(self):
        return {"prime": str(self.prime), "fgrade": self.fgrade, "bound": self.bound, "equal": self.equal}


@dataclass
class FModuleReport:
    verdict: str
    rows: list
    provenance: str
    skipped: list = field(default_factory=list)
    necessary: dict = field(default_factory=dict)
    note: str = ""

    @property
    def witness(self) -> PrimeRow | None:
        for row in self.rows:
            if row.fgrade < row.bound:
                return row
        return None


def _contains(p: Ideal, I: Ideal) -> bool:
    return all(p.contains(g) for g in I.gens)


def _monomial_part(I: Ideal) -> Ideal:
    return Ideal(I.ring, [g for g in I.groebner() if g.is_term()])


def auto_candidates(a: Ideal, b: Ideal, M: FPModule, exhaustive: bool = False) -> list:
    """Monomial candidate primes for ``check_fmodule``.

    By default these are the minimal primes of ``b`` plus the monomial part of
    ``ann M``; with ``exhaustive`` every variable prime containing that ideal is
    returned.  Filtering by ``Supp(M/bM)`` and ``V(a)`` happens in the caller.
    """
    if not b.is_monomial():
        raise NotMonomialError("automatic candidate primes need a monomial ideal b")
    R = b.ring
    base = Ideal(R, list(b.monomial_generators()) + list(_monomial_part(annihilator(M)).gens))
    if base.is_unit():
        return []
    if not exhaustive:
        return minimal_primes_monomial(base)
    out = []
    for k in range(R.nvars + 1):
        for idx in combinations(range(R.nvars), k):
            p = variable_prime(R, idx)
            if _contains(p, base):
                out.append(p)
    return out


def check_fmodule(a: Ideal, b: Ideal, M: FPModule, primes="auto") -> FModuleReport:
    """Compare ``f-grad(a, p, M)`` with ``dim M - dim R/p`` on candidate primes.

    ``primes`` is ``"auto"`` (minimal monomial candidates), ``"all"`` (every
    variable prime over ``b + ann M``) or an explicit list of ideals, which
    are trusted to be prime.
    """
    Q = quotient_by_elements(M, b.gens)
    annQ = annihilator(Q)
    if supp_in_V(Q, a, annQ).contained:
        return FModuleReport(VACUOUS, [], _provenance(primes), note="Supp(M/bM) lies in V(a)")
    if isinstance(primes, str):
        candidates = auto_candidates(a, b, M, exhaustive=(primes == "all"))
    else:
        candidates = list(primes)
    dim_M = module_dim(M)
    rows, skipped = [], []
    for p in candidates:
        if not _contains(p, annQ):
            skipped.append((p, "outside Supp(M/bM)"))
            continue
        if _contains(p, a):
            skipped.append((p, "inside V(a)"))
            continue
        g = fgrade_ext(a, p, M).value
        bound = dim_M - krull_dim(p)
        if g > bound:
            raise EngineError(f"f-grade {g} exceeds dim M - dim R/p = {bound} at {p}")
        rows.append(PrimeRow(p, g, bound, g == bound))
    necessary = necessary_conditions(a, b, M)
    if not rows:
        return FModuleReport(
            HOLDS, [], _provenance(primes), skipped, necessary, note="no candidate prime survived filtering"
        )
    verdict = HOLDS if all(r.equal for r in rows) else FAILS
    return FModuleReport(verdict, rows, _provenance(primes), skipped, necessary)


def _provenance(primes) -> str:
    return "monomial-derived" if isinstance(primes, str) else "user-supplied"


@dataclass
class DimEqualityCheck:
    holds: bool
    fgrade: int
    rhs: int

    def __bool__(self):
        return self.holds


def check_dim_equality(a: Ideal, b: Ideal, M: FPModule) -> DimEqualityCheck:
    """Test ``f-grad(a, b, M) = dim M - dim M/bM`` (a necessary condition)."""
    g = fgrade_ext(a, b, M).value
    if g == INFINITY:
        raise PreconditionError("check_dim_equality needs a finite f-grade")
    rhs = module_dim(M) - module_dim(quotient_by_elements(M, b.gens))
    return DimEqualityCheck(g == rhs, g, rhs)


def check_bcm(b: Ideal, M: FPModule) -> bool:
    """Test ``depth(b, M) + dim M/bM = dim M``."""
    Q = quotient_by_elements(M, b.gens)
    if is_zero(Q):
        raise PreconditionError("check_bcm needs M/bM != 0")
    return depth_grade(b, M) + module_dim(Q) == module_dim(M)


def necessary_conditions(a: Ideal, b: Ideal, M: FPModule) -> dict:
    out = {}
    p = check_dim_equality(a, b, M)
    out["dim_equality"] = {"holds": p.holds, "fgrade": p.fgrade, "rhs": p.rhs}
    if a.is_unit():
        out["bcm"] = check_bcm(b, M)
    return out


@dataclass
class QuotientStabilityReport:
    before: FModuleReport
    after: FModuleReport
    drops: list

    @property
    def agree(self) -> bool:
        if self.before.verdict == HOLDS:
            return self.after.verdict in (HOLDS, VACUOUS)
        return True

    @property
    def all_drop_by_one(self) -> bool:
        return all(d["after"] == d["before"] - 1 for d in self.drops)


def check_quotient_stability(a: Ideal, b: Ideal, M: FPModule, x, primes) -> QuotientStabilityReport:
    """Classify ``M`` and ``M/xM`` on the same primes and record per-prime drops.

    The statement over ``R/(x)`` is checked over ``R``: both the f-grade on
    ``M/xM`` and ``dim R/p`` are unchanged by passing to ``R/(x)``.
    """
    R = M.ring
    x = R(x)
    if not b.contains(x):
        raise PreconditionError(f"{x} is not in b")
    if x.is_zero() or not check_frs([x], a, M).valid:
        raise PreconditionError(f"{x} is not a-filter regular on M")
    g = fgrade_ext(a, b, M).value
    if g == INFINITY or g < 1:
        raise PreconditionError("check_quotient_stability needs a finite f-grade of at least 1")
    MxM = quotient_by_elements(M, [x])
    before = check_fmodule(a, b, M, primes)
    after = check_fmodule(a, b, MxM, primes)
    drops = []
    for row in before.rows:
        if row.prime.contains(x):
            drops.append(
                {"prime": str(row.prime), "before": row.fgrade, "after": fgrade_ext(a, row.prime, MxM).value}
            )
    return QuotientStabilityReport(before, after, drops)
