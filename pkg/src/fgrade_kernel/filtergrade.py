"""Supports, dimension, grade and the a-filter grade f-grad(a, b, M).

All computations happen over the polynomial ring itself.  For graded input
the relevant primes are graded, so support-escape verdicts agree with the
same questions asked over the localization at the irrelevant ideal.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

from .errors import EngineError, NotMonomialError, PreconditionError
from .groebner import Ideal, krull_dim, minimal_primes_monomial, radical_member
from .homological import ext_from_resolution, koszul_homology, quotient_resolution
from .modules import FPModule, annihilator, colon_submodule, is_zero, quotient_by_elements
from .ring import Polynomial

INFINITY = math.inf
NEG_INFINITY = -math.inf


@dataclass
class SuppQuery:
    """Verdict on ``Supp N ⊆ V(a)``; ``witness`` is a generator of ``a`` outside ``sqrt(ann N)``."""

    ideal: Ideal
    contained: bool
    witness: Polynomial | None = None
    annihilator: Ideal | None = None
    module: FPModule | None = field(default=None, repr=False)


def supp_in_V(N: FPModule, a: Ideal, ann: Ideal | None = None) -> SuppQuery:
    if ann is None:
        ann = annihilator(N)
    for g in a.gens:
        if not radical_member(g, ann):
            return SuppQuery(a, False, g, ann, N)
    return SuppQuery(a, True, None, ann, N)


def module_dim(N: FPModule):
    """``dim R/ann N``; ``-inf`` for the zero module."""
    d = krull_dim(annihilator(N))
    return NEG_INFINITY if d is None else d


@dataclass
class FGradeReport:
    value: float | int
    method: str
    witness_degree: int | None = None
    witness_generator: Polynomial | None = None
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def is_infinite(self) -> bool:
        return self.value == INFINITY


def _quotient_support(a: Ideal, b: Ideal, M: FPModule) -> SuppQuery:
    return supp_in_V(quotient_by_elements(M, b.gens), a)


def depth_grade(b: Ideal, M: FPModule):
    """Classical grade ``inf{r : Ext^r(R/b, M) != 0}``; ``inf`` iff ``M = bM``."""
    if is_zero(quotient_by_elements(M, b.gens)):
        return INFINITY
    cap = M.ring.nvars
    F = quotient_resolution(b, cap + 1)
    for r in range(cap + 1):
        if not is_zero(ext_from_resolution(r, F, M)):
            return r
    raise EngineError("depth search exceeded the number of variables")


def fgrade_ext(a: Ideal, b: Ideal, M: FPModule) -> FGradeReport:
    """``inf{r : Supp Ext^r(R/b, M) ⊄ V(a)}``, or ``inf`` when ``Supp(M/bM) ⊆ V(a)``."""
    t0 = time.perf_counter()
    if _quotient_support(a, b, M).contained:
        return FGradeReport(INFINITY, "ext", elapsed=time.perf_counter() - t0)
    cap = module_dim(M)
    F = quotient_resolution(b, cap + 1)
    for r in range(cap + 1):
        q = supp_in_V(ext_from_resolution(r, F, M), a)
        if not q.contained:
            return FGradeReport(r, "ext", r, q.witness, time.perf_counter() - t0)
    raise EngineError(f"no Ext module escaped V(a) up to degree dim M = {cap}")


def fgrade_koszul(a: Ideal, b_gens, M: FPModule) -> FGradeReport:
    """``n - sup{i : Supp H_i(y; M) ⊄ V(a)}`` for ``b = (y_1, ..., y_n)``."""
    t0 = time.perf_counter()
    R = M.ring
    ys = [R(y) for y in b_gens]
    ys = [y for y in ys if not y.is_zero()] or [R.zero]
    n = len(ys)
    verdicts = [supp_in_V(H, a) for H in koszul_homology(ys, M)]
    escaping = [i for i, q in enumerate(verdicts) if not q.contained]
    details = {"escapes": [not q.contained for q in verdicts]}
    if not escaping:
        return FGradeReport(INFINITY, "koszul", elapsed=time.perf_counter() - t0, details=details)
    top = escaping[-1]
    return FGradeReport(n - top, "koszul", top, verdicts[top].witness, time.perf_counter() - t0, details)


def fgrade_prime_min(a: Ideal, b: Ideal, M: FPModule) -> FGradeReport:
    """Minimum of ``fgrade_ext(a, p, M)`` over the minimal primes ``p`` of a monomial ``b``."""
    t0 = time.perf_counter()
    if not b.is_monomial():
        raise NotMonomialError("fgrade_prime_min needs a monomial ideal b")
    R = b.ring
    gens = b.monomial_generators()
    if any(g.is_constant() for g in gens):
        return FGradeReport(INFINITY, "prime-min", elapsed=time.perf_counter() - t0)
    best = None
    rows = []
    for p in minimal_primes_monomial(Ideal(R, gens)):
        rep = fgrade_ext(a, p, M)
        rows.append((p, rep.value))
        if best is None or rep.value < best[1].value:
            best = (p, rep)
    p, rep = best
    return FGradeReport(
        rep.value,
        "prime-min",
        rep.witness_degree,
        rep.witness_generator,
        time.perf_counter() - t0,
        {"prime": p, "rows": rows},
    )


# ---------------------------------------------------------------------------
# filter regular sequences
# ---------------------------------------------------------------------------


@dataclass
class FRSCertificate:
    sequence: list
    ideal: Ideal
    steps: list
    failure_index: int | None = None

    @property
    def valid(self) -> bool:
        return self.failure_index is None

    def __len__(self):
        return len(self.sequence)


def _unit_multiples(R, n, xs):
    return [tuple(x if i == j else R.zero for i in range(n)) for x in xs for j in range(n)]


def check_frs(xs, a: Ideal, M: FPModule) -> FRSCertificate:
    """Check ``Supp(((x_1..x_{i-1})M :_M x_i) / (x_1..x_{i-1})M) ⊆ V(a)`` for every ``i``."""
    R = M.ring
    xs = [R(x) for x in xs]
    steps = []
    for i, x in enumerate(xs):
        N_gens = _unit_multiples(R, M.rank, xs[:i])
        if x.is_zero():
            colon = quotient_by_elements(M, xs[:i])
        else:
            colon = colon_submodule(M, N_gens, x)
        q = supp_in_V(colon, a)
        steps.append(q)
        if not q.contained:
            return FRSCertificate(xs, a, steps, i)
    return FRSCertificate(xs, a, steps, None)


def _is_filter_regular(x, a, M) -> bool:
    return supp_in_V(colon_submodule(M, [], x), a).contained


def find_frs_element(a: Ideal, b: Ideal, M: FPModule, seed: int = 0, retries: int = 64):
    """An element ``x`` of ``b`` with ``Supp(0 :_M x) ⊆ V(a)``, or ``None``.

    Tries the generators of ``b`` first, then ``retries`` random combinations
    of them with small coefficients drawn from ``random.Random(seed)``.
    """
    gens = list(b.gens)
    if not gens:
        return None
    K = M.ring.field
    candidates = iter(gens)
    rng = random.Random(seed)
    tried = set()

    def random_candidates():
        for _ in range(retries):
            x = M.ring.zero
            for g in gens:
                x = x + g.scale(K.random_element(rng))
            yield x

    for x in list(candidates) + list(random_candidates()):
        if x.is_zero() or x in tried:
            continue
        tried.add(x)
        if _is_filter_regular(x, a, M):
            if not check_frs([x], a, M).valid:
                raise EngineError("filter-regular candidate failed re-verification")
            return x
    return None


def max_frs(a: Ideal, b: Ideal, M: FPModule, seed: int = 0, retries: int = 64, verify: bool = True) -> FRSCertificate:
    """Greedily build a maximal a-filter regular M-sequence in ``b``.

    With ``verify`` the length is checked against :func:`fgrade_ext`; a
    mismatch means the randomized search missed an element.
    """
    if _quotient_support(a, b, M).contained:
        raise PreconditionError("Supp(M/bM) ⊆ V(a): maximal sequences are unbounded (f-grade is infinite)")
    cap = module_dim(M)
    seq = []
    Q = M
    while True:
        x = find_frs_element(a, b, Q, seed=seed + len(seq), retries=retries)
        if x is None:
            break
        seq.append(x)
        if len(seq) > cap:
            raise EngineError("filter regular sequence longer than dim M")
        Q = quotient_by_elements(Q, [x])
    cert = check_frs(seq, a, M)
    if not cert.valid:
        raise EngineError("greedy sequence failed the filter-regularity check")
    if verify:
        expected = fgrade_ext(a, b, M).value
        if len(seq) != expected:
            raise EngineError(
                f"greedy sequence has length {len(seq)} but f-grade is {expected}; rerun with another seed"
            )
    return cert


def fgrade_quotient_step(a: Ideal, b: Ideal, M: FPModule, x):
    """``(f-grad(a, b, M), f-grad(a, b, M/xM))`` for an a-filter regular ``x`` in ``b``."""
    x = M.ring(x)
    if not b.contains(x):
        raise PreconditionError(f"{x} is not in b")
    if x.is_zero() or not check_frs([x], a, M).valid:
        raise PreconditionError(f"{x} is not a-filter regular on M")
    before = fgrade_ext(a, b, M)
    if before.is_infinite or before.value < 1:
        raise PreconditionError("f-grade must be finite and at least 1")
    after = fgrade_ext(a, b, quotient_by_elements(M, [x]))
    return before, after
