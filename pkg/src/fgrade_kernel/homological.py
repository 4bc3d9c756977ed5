"""Chain complexes, free resolutions, Koszul complexes, homology and Ext."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import EngineError, PreconditionError
from .groebner import Ideal
from .modules import FPModule, Matrix, block_diag, hstack, subquotient, syzygies


@dataclass(frozen=True)
class ChainComplex:
    """Free modules ``C_i`` (given by rank) with differentials ``d_i: C_i -> C_{i-1}``.

    When ``coefficient`` is set the complex stands for ``C ⊗ M``: spot ``i``
    is ``M^{ranks[i]}`` and ``d_i`` acts blockwise as ``d_i ⊗ I``.
    ``d_i ∘ d_{i+1} = 0`` is verified on construction.
    """

    ring: object
    ranks: dict
    differentials: dict
    coefficient: FPModule | None = None

    def __post_init__(self):
        lo, hi = self.window
        for i, d in self.differentials.items():
            if d.shape != (self.ranks.get(i - 1, 0), self.ranks[i]):
                raise ValueError(f"differential d_{i} has shape {d.shape}")
        for i in range(lo + 1, hi):
            a, b = self.differentials.get(i), self.differentials.get(i + 1)
            if a is not None and b is not None and not (a @ b).is_zero():
                raise EngineError(f"d_{i} ∘ d_{i + 1} != 0")

    @property
    def window(self):
        idx = sorted(self.ranks)
        return idx[0], idx[-1]

    def differential(self, i) -> Matrix | None:
        return self.differentials.get(i)

    def rank(self, i) -> int:
        return self.ranks.get(i, 0)


# ---------------------------------------------------------------------------
# homology over a coefficient module
# ---------------------------------------------------------------------------


def _copies(M: FPModule, k: int) -> Matrix:
    P = M.presentation
    return block_diag(M.ring, *([P] * k)) if k else Matrix.zero(M.ring, 0, 0)


def homology_over(M: FPModule, d_out: Matrix | None, d_in: Matrix | None, k: int) -> FPModule:
    """``ker(d_out ⊗ M) / im(d_in ⊗ M)`` at a spot ``M^k``.

    ``d_out`` maps ``M^k`` onward, ``d_in`` maps into ``M^k``; ``None`` or a
    matrix with zero rows/columns means the zero map.
    """
    R = M.ring
    r = M.rank
    n = k * r
    if n == 0:
        return FPModule.zero_module(R)
    rels = _copies(M, k)
    if d_in is not None and d_in.ncols:
        rels = hstack(R, n, d_in.kron_identity(r), rels)
    if d_out is None or d_out.nrows == 0 or d_out.is_zero():
        gens = Matrix.identity(R, n)
    else:
        out = d_out.kron_identity(r)
        S = syzygies(hstack(R, out.nrows, out, _copies(M, d_out.nrows)))
        gens = S.select_rows(range(n))
    return subquotient(gens, rels)


def homology_at(C: ChainComplex, i: int) -> FPModule:
    """``H_i = ker d_i / im d_{i+1}``, over the coefficient module when one is set."""
    lo, hi = C.window
    if not lo <= i <= hi:
        raise PreconditionError(f"homology index {i} outside the window [{lo}, {hi}]")
    M = C.coefficient if C.coefficient is not None else FPModule.free(C.ring, 1)
    return homology_over(M, C.differential(i), C.differential(i + 1), C.rank(i))


# ---------------------------------------------------------------------------
# resolutions and Koszul complexes
# ---------------------------------------------------------------------------


def free_resolution(N: FPModule, length: int) -> ChainComplex:
    """``F_L -> ... -> F_0 -> N`` with ``F_0`` the ambient module and ``d_1`` the presentation."""
    if length < 0:
        raise PreconditionError("resolution length must be nonnegative")
    R = N.ring
    ranks = {0: N.rank}
    diffs = {}
    d = N.presentation
    for i in range(1, length + 1):
        ranks[i] = d.ncols
        diffs[i] = d
        if d.ncols == 0:
            break
        d = syzygies(d) if i < length else None
    return ChainComplex(R, ranks, diffs)


def quotient_resolution(b: Ideal, length: int) -> ChainComplex:
    """Free resolution of ``R/b`` (``d_1`` is the row of generators of ``b``)."""
    return free_resolution(FPModule.cyclic(b.ring, b.gens), length)


def koszul_matrix(ys, i) -> Matrix:
    """``d_i: ∧^i -> ∧^{i-1}`` with ``d(e_J) = Σ_k (-1)^(k+1) y_{j_k} e_{J - j_k}``."""
    R = ys[0].ring
    n = len(ys)
    src = list(combinations(range(n), i))
    tgt = {J: t for t, J in enumerate(combinations(range(n), i - 1))}
    cols = []
    for J in src:
        col = [R.zero] * len(tgt)
        for k, j in enumerate(J):
            rest = J[:k] + J[k + 1 :]
            col[tgt[rest]] = ys[j] if k % 2 == 0 else -ys[j]
        cols.append(tuple(col))
    return Matrix._raw(R, len(tgt), cols)


def koszul_complex(ys, M: FPModule) -> ChainComplex:
    """``K(y_1, ..., y_n) ⊗ M``; spot ``i`` holds ``M^{C(n, i)}``."""
    ys = [M.ring(y) for y in ys]
    if not ys:
        raise PreconditionError("koszul_complex needs at least one element")
    n = len(ys)
    ranks = {i: len(list(combinations(range(n), i))) for i in range(n + 1)}
    diffs = {i: koszul_matrix(ys, i) for i in range(1, n + 1)}
    return ChainComplex(M.ring, ranks, diffs, coefficient=M)


def koszul_homology(ys, M: FPModule) -> list:
    C = koszul_complex(ys, M)
    return [homology_at(C, i) for i in range(len(ys) + 1)]


# ---------------------------------------------------------------------------
# Ext
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtModule:
    degree: int
    ideal: Ideal
    coefficient: FPModule
    module: FPModule

    def is_zero(self) -> bool:
        return self.module.is_zero()


def ext_from_resolution(r: int, F: ChainComplex, M: FPModule) -> FPModule:
    """``Ext^r(N, M)`` from a free resolution ``F`` of ``N`` reaching ``d_{r+1}``.

    ``Hom(F_j, M) = M^{rank F_j}`` and the coboundary out of spot ``j`` is
    ``d_{j+1}^T`` acting blockwise.
    """
    if r < 0:
        raise PreconditionError("Ext degree must be nonnegative")
    lo, hi = F.window
    if r + 1 > hi and F.rank(hi) != 0:
        raise PreconditionError(f"resolution too short for Ext^{r}")
    k = F.rank(r)
    d_next = F.differential(r + 1)
    d_out = d_next.transpose() if d_next is not None else None
    d_in = F.differential(r).transpose() if r >= 1 and F.differential(r) is not None else None
    return homology_over(M, d_out, d_in, k)


def ext_module(r: int, b: Ideal, M: FPModule) -> ExtModule:
    """``Ext^r_R(R/b, M)`` as a finitely presented module."""
    if r < 0:
        raise PreconditionError("Ext degree must be nonnegative")
    F = quotient_resolution(b, r + 1)
    return ExtModule(r, b, M, ext_from_resolution(r, F, M))
