"""Finitely presented modules and the submodule calculus.

A module is stored as the cokernel of a presentation matrix ``A: R^m -> R^n``;
every operation here returns a module in that shape.  Kernels, colon
submodules and homology are first computed as subquotients of a free module
and then converted with :func:`subquotient`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IllDefinedMapError, PreconditionError, RingMismatchError
from .groebner import (
    Ideal,
    ModuleGroebnerBasis,
    column_to_vec,
    ideal_intersect,
    vec_to_column,
)
from .ring import Polynomial, PolyRing


class Matrix:
    """Immutable matrix of polynomials stored column by column."""

    __slots__ = ("ring", "nrows", "columns")

    def __init__(self, ring: PolyRing, nrows: int, columns=()):
        cols = []
        for c in columns:
            c = tuple(ring(x) for x in c)
            if len(c) != nrows:
                raise ValueError(f"column of length {len(c)} in a matrix with {nrows} rows")
            cols.append(c)
        self.ring = ring
        self.nrows = nrows
        self.columns = tuple(cols)

    @classmethod
    def _raw(cls, ring, nrows, columns) -> "Matrix":
        m = cls.__new__(cls)
        m.ring, m.nrows, m.columns = ring, nrows, tuple(columns)
        return m

    @classmethod
    def from_rows(cls, ring, rows, ncols=None) -> "Matrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(ring, len(rows), [[rows[i][j] for i in range(len(rows))] for j in range(ncols)])

    @classmethod
    def identity(cls, ring, n) -> "Matrix":
        one, zero = ring.one, ring.zero
        return cls._raw(ring, n, [tuple(one if i == j else zero for i in range(n)) for j in range(n)])

    @classmethod
    def zero(cls, ring, n, m=0) -> "Matrix":
        return cls._raw(ring, n, [(ring.zero,) * n for _ in range(m)])

    @property
    def ncols(self) -> int:
        return len(self.columns)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def entry(self, i, j) -> Polynomial:
        return self.columns[j][i]

    def rows(self) -> list:
        return [[c[i] for c in self.columns] for i in range(self.nrows)]

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.ring, self.ncols, [tuple(c[i] for c in self.columns) for i in range(self.nrows)])

    def is_zero(self) -> bool:
        return all(x.is_zero() for c in self.columns for x in c)

    def apply(self, column) -> tuple:
        out = [self.ring.zero] * self.nrows
        for c, v in zip(self.columns, column):
            if v.is_zero():
                continue
            for i, a in enumerate(c):
                if not a.is_zero():
                    out[i] = out[i] + a * v
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Matrix._raw(self.ring, self.nrows, [self.apply(c) for c in other.columns])

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ring == other.ring
            and self.nrows == other.nrows
            and self.columns == other.columns
        )

    def __hash__(self):
        return hash((self.nrows, self.columns))

    def select_rows(self, idx) -> "Matrix":
        idx = list(idx)
        return Matrix._raw(self.ring, len(idx), [tuple(c[i] for i in idx) for c in self.columns])

    def select_columns(self, idx) -> "Matrix":
        return Matrix._raw(self.ring, self.nrows, [self.columns[j] for j in idx])

    def kron_identity(self, r: int) -> "Matrix":
        """``self ⊗ I_r``: entry ``(i, j)`` becomes the block ``a_ij * I_r``."""
        zero = self.ring.zero
        cols = []
        for c in self.columns:
            for s in range(r):
                col = [zero] * (self.nrows * r)
                for i, a in enumerate(c):
                    col[i * r + s] = a
                cols.append(tuple(col))
        return Matrix._raw(self.ring, self.nrows * r, cols)

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows()) + "]"

    def __repr__(self):
        return f"Matrix({self})"


def hstack(ring, nrows, *mats) -> Matrix:
    cols = []
    for m in mats:
        if m.nrows != nrows:
            raise ValueError("hstack: row count mismatch")
        cols.extend(m.columns)
    return Matrix._raw(ring, nrows, cols)


def block_diag(ring, *mats) -> Matrix:
    n = sum(m.nrows for m in mats)
    zero = ring.zero
    cols, off = [], 0
    for m in mats:
        for c in m.columns:
            col = [zero] * n
            col[off : off + m.nrows] = c
            cols.append(tuple(col))
        off += m.nrows
    return Matrix._raw(ring, n, cols)


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FreeModule:
    ring: PolyRing
    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")

    def basis(self) -> list:
        return [unit_vector(self.ring, self.rank, i) for i in range(self.rank)]


def unit_vector(ring, n, i) -> tuple:
    return tuple(ring.one if j == i else ring.zero for j in range(n))


class FPModule:
    """``coker(A)`` for a presentation matrix ``A`` with ``rank`` rows."""

    __slots__ = ("ring", "presentation")

    def __init__(self, presentation: Matrix):
        self.ring = presentation.ring
        self.presentation = presentation

    @property
    def rank(self) -> int:
        return self.presentation.nrows

    @property
    def ambient(self) -> FreeModule:
        return FreeModule(self.ring, self.rank)

    @classmethod
    def free(cls, ring, n=1) -> "FPModule":
        return cls(Matrix.zero(ring, n, 0))

    @classmethod
    def cyclic(cls, ring, gens) -> "FPModule":
        """``R/(gens)``."""
        gens = [ring(g) for g in (gens.gens if isinstance(gens, Ideal) else gens)]
        return cls(Matrix(ring, 1, [(g,) for g in gens if not g.is_zero()]))

    @classmethod
    def coker(cls, matrix: Matrix) -> "FPModule":
        return cls(matrix)

    @classmethod
    def zero_module(cls, ring) -> "FPModule":
        return cls(Matrix.zero(ring, 0, 0))

    def relations_gb(self) -> ModuleGroebnerBasis:
        return ModuleGroebnerBasis.from_columns(self.ring, self.rank, self.presentation.columns)

    def is_zero(self) -> bool:
        return is_zero(self)

    def annihilator(self) -> Ideal:
        return annihilator(self)

    def __add__(self, other: "FPModule") -> "FPModule":
        return direct_sum(self, other)

    def __str__(self):
        return f"coker{self.presentation}" if self.presentation.ncols else f"free({self.rank})"

    def __repr__(self):
        return f"FPModule(rank={self.rank}, relations={self.presentation.ncols})"


@dataclass(frozen=True)
class ModuleMap:
    """Map ``source -> target`` given on ambient generators by ``matrix``.

    The matrix must send every relation of the source into the relation
    span of the target; this is checked on construction.
    """

    source: FPModule
    target: FPModule
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.rank, self.source.rank):
            raise ValueError(
                f"map matrix has shape {self.matrix.shape}, expected {(self.target.rank, self.source.rank)}"
            )
        if self.source.presentation.ncols:
            gb = self.target.relations_gb()
            for col in self.source.presentation.columns:
                if not gb.contains(self.matrix.apply(col)):
                    raise IllDefinedMapError("matrix does not carry relations into relations")


def module_gb(S, F: FreeModule) -> ModuleGroebnerBasis:
    """Groebner basis of the submodule of ``F`` generated by the vectors ``S``."""
    return ModuleGroebnerBasis.from_columns(F.ring, F.rank, [tuple(F.ring(x) for x in v) for v in S])


def syzygies(A: Matrix) -> Matrix:
    """Generators of ``{v : A v = 0}`` as the columns of a matrix with ``A.ncols`` rows.

    Computed from a Groebner basis of the columns ``(a_j, e_j)`` of the
    augmented matrix ``[A; I]``.  Position-over-term puts the ``A`` block
    first, so the basis elements living entirely in the ``I`` block form a
    Groebner basis of the syzygy module.
    """
    R = A.ring
    n, m = A.nrows, A.ncols
    if m == 0:
        return Matrix.zero(R, 0, 0)
    if n == 0 or A.is_zero():
        return Matrix.identity(R, m)
    one = R.field.one
    zero_exp = (0,) * R.nvars
    vecs = []
    for j, col in enumerate(A.columns):
        v = column_to_vec(col)
        v[(n + j, zero_exp)] = one
        vecs.append(v)
    gb = ModuleGroebnerBasis(R, n + m, vecs)
    cols = [vec_to_column(R, v, m, offset=n) for (comp, _), v in zip(gb.leads(), gb.vectors()) if comp >= n]
    return Matrix._raw(R, m, cols)


def _blocks(P: Matrix):
    """Connected row/column blocks of a presentation (direct-sum splitting)."""
    n = P.nrows
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    col_rows = []
    for c in P.columns:
        rows = [i for i, x in enumerate(c) if not x.is_zero()]
        col_rows.append(rows)
        for i in rows[1:]:
            ra, rb = find(rows[0]), find(i)
            if ra != rb:
                parent[rb] = ra
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    col_groups = {}
    for j, rows in enumerate(col_rows):
        if rows:
            col_groups.setdefault(find(rows[0]), []).append(j)
    return [(rows, col_groups.get(root, [])) for root, rows in groups.items()]


def _block_modules(N: FPModule):
    P = N.presentation
    for rows, cols in _blocks(P):
        yield FPModule(P.select_columns(cols).select_rows(rows))


def prune(P: Matrix):
    """Drop generators killed by relations with a constant entry.

    Returns the simplified matrix and the indices of the surviving rows;
    ``coker`` of the result is isomorphic to ``coker(P)`` via those rows.
    """
    R = P.ring
    K = R.field
    cols = [list(c) for c in P.columns if any(not x.is_zero() for x in c)]
    rows = list(range(P.nrows))
    while True:
        pivot = None
        best = None
        for j, c in enumerate(cols):
            for i, x in enumerate(c):
                if not x.is_zero() and x.is_constant():
                    weight = sum(1 for y in c if not y.is_zero())
                    if best is None or weight < best:
                        pivot, best = (i, j), weight
                    break
        if pivot is None:
            break
        i, j = pivot
        pc = cols[j]
        inv = K.inv(pc[i].lead_coeff)
        new_cols = []
        for k, c in enumerate(cols):
            if k == j:
                continue
            a = c[i]
            if not a.is_zero():
                f = a.scale(inv)
                c = [x - f * y for x, y in zip(c, pc)]
            del c[i]
            if any(not x.is_zero() for x in c):
                new_cols.append(c)
        cols = new_cols
        del rows[i]
    return Matrix._raw(R, len(rows), [tuple(c) for c in cols]), rows


def pruned(M: FPModule) -> FPModule:
    P, _ = prune(M.presentation)
    return FPModule(P)


def subquotient(gens: Matrix, rels: Matrix, keep_rows=False):
    """``(im gens + im rels) / im rels`` as a cokernel presentation on the columns of ``gens``.

    With ``keep_rows`` also return which columns of ``gens`` survive pruning.
    """
    R = gens.ring
    k = gens.ncols
    if gens == Matrix.identity(R, gens.nrows):
        P = rels
    else:
        S = syzygies(hstack(R, gens.nrows, gens, rels))
        P = S.select_rows(range(k))
    P, kept = prune(P)
    M = FPModule(P)
    return (M, kept) if keep_rows else M


def kernel_with_inclusion(phi: ModuleMap):
    """``ker(phi)`` together with the matrix sending its generators into the source."""
    src, tgt = phi.source, phi.target
    R = src.ring
    n = src.rank
    if n == 0:
        return FPModule.zero_module(R), Matrix.zero(R, 0, 0)
    if tgt.rank == 0:
        K = Matrix.identity(R, n)
    else:
        S = syzygies(hstack(R, tgt.rank, phi.matrix, tgt.presentation))
        K = S.select_rows(range(n))
    M, kept = subquotient(K, src.presentation, keep_rows=True)
    return M, K.select_columns(kept)


def kernel(phi: ModuleMap) -> FPModule:
    return kernel_with_inclusion(phi)[0]


def multiplication_map(M: FPModule, f) -> ModuleMap:
    R = M.ring
    f = R(f)
    n = M.rank
    cols = [tuple(f if i == j else R.zero for i in range(n)) for j in range(n)]
    return ModuleMap(M, M, Matrix._raw(R, n, cols))


def colon_submodule(M: FPModule, N_gens, f) -> FPModule:
    """``(N :_M f) / N`` where ``N`` is the image of ``N_gens`` in ``M``."""
    R = M.ring
    f = R(f)
    if f.is_zero():
        raise PreconditionError("colon_submodule: f must be nonzero")
    n = M.rank
    G = Matrix(R, n, [tuple(R(x) for x in v) for v in N_gens])
    rels = hstack(R, n, G, M.presentation)
    if n == 0:
        return FPModule.zero_module(R)
    fI = Matrix._raw(R, n, [tuple(f if i == j else R.zero for i in range(n)) for j in range(n)])
    S = syzygies(hstack(R, n, fI, rels))
    K = S.select_rows(range(n))
    return subquotient(K, rels)


def annihilator(N: FPModule) -> Ideal:
    """``ann N``: intersection over ambient generators of ``(im A : e_i)``."""
    R = N.ring
    if N.rank == 0:
        return Ideal(R, [R.one])
    result = None
    for B in _block_modules(N):
        J = _block_annihilator(B)
        result = J if result is None else ideal_intersect(result, J)
        if result.is_zero():
            break
    return result


def _block_annihilator(N: FPModule) -> Ideal:
    R = N.ring
    P = N.presentation
    n = N.rank
    if n == 1:
        return Ideal(R, [c[0] for c in P.columns])
    result = None
    for i in range(n):
        perm = [j for j in range(n) if j != i] + [i]
        cols = [tuple(c[j] for j in perm) for c in P.columns]
        gb = ModuleGroebnerBasis.from_columns(R, n, cols)
        gens = [col[n - 1] for (comp, _), col in zip(gb.leads(), gb.columns()) if comp == n - 1]
        J = Ideal(R, gens)
        result = J if result is None else ideal_intersect(result, J)
        if result.is_zero():
            break
    return result


def quotient_by_elements(M: FPModule, xs) -> FPModule:
    """``M / (x_1, ..., x_k) M``."""
    R = M.ring
    xs = [R(x) for x in xs]
    n = M.rank
    extra = [
        tuple(x if i == j else R.zero for i in range(n)) for x in xs if not x.is_zero() for j in range(n)
    ]
    return FPModule(Matrix._raw(R, n, M.presentation.columns + tuple(extra)))


def direct_sum(M: FPModule, N: FPModule) -> FPModule:
    if M.ring != N.ring:
        raise RingMismatchError("direct_sum: modules over different rings")
    return FPModule(block_diag(M.ring, M.presentation, N.presentation))


def is_zero(N: FPModule) -> bool:
    """True iff every ambient generator lies in the relation span."""
    if N.rank == 0:
        return True
    for B in _block_modules(N):
        P = B.presentation
        if B.rank == 1:
            if not Ideal(B.ring, [c[0] for c in P.columns]).is_unit():
                return False
            continue
        gb = B.relations_gb()
        if not all(gb.contains_unit(i) for i in range(B.rank)):
            return False
    return True
