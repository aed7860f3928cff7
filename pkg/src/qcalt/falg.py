"""Dense linear algebra over a tower level, and linear codes on top of it.

Matrices are plain lists of int rows together with the GF they live in.
A LinearCode keeps its generator in reduced row echelon form, so row-space
equality, hashing and serialization all use that one canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import EmptyIndexSet, LengthMismatch, NotInSubfield
from .ff import GF

Matrix = list[list[int]]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(F: GF, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    Bt = transpose(B)
    return [[F.dot(row, col) for col in Bt] for row in A]


def matvec(F: GF, A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [F.dot(row, v) for row in A]


def _eliminate(F: GF, R: Matrix, ncols: int, full: bool) -> list[int]:
    """In-place Gauss(-Jordan) elimination; returns pivot columns."""
    exp, log, add, neg = F.exp, F.log, F.add, F.neg
    n1 = F.order - 1
    pivots: list[int] = []
    r = 0
    nrows = len(R)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        pr = R[r]
        li = n1 - log[pr[c]]
        if li != n1:
            pr[:] = [exp[log[v] + li] if v else 0 for v in pr]
        nz = [(j, log[pr[j]]) for j in range(c, ncols) if pr[j]]
        start = 0 if full else r + 1
        for i in range(start, nrows):
            if i == r:
                continue
            row = R[i]
            f = row[c]
            if not f:
                continue
            lf = log[neg(f)]
            for j, lv in nz:
                row[j] = add(row[j], exp[lf + lv])
        pivots.append(c)
        r += 1
    return pivots


def rref(F: GF, M: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form (zero rows dropped), rank and pivot columns."""
    R = [list(row) for row in M]
    if ncols is None:
        ncols = len(R[0]) if R else 0
    pivots = _eliminate(F, R, ncols, full=True)
    return R[: len(pivots)], len(pivots), pivots


def rank(F: GF, M: Sequence[Sequence[int]]) -> int:
    R = [list(row) for row in M]
    ncols = len(R[0]) if R else 0
    return len(_eliminate(F, R, ncols, full=False))


def kernel_from_rref(F: GF, R: Matrix, pivots: Sequence[int], ncols: int) -> Matrix:
    pset = set(pivots)
    free = [c for c in range(ncols) if c not in pset]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for row, pc in zip(R, pivots):
            if row[fcol]:
                v[pc] = F.neg(row[fcol])
        basis.append(v)
    return basis


def kernel(F: GF, M: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis (as rows) of the right null space {v : M v^T = 0}."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    R, _, piv = rref(F, M, ncols)
    return kernel_from_rref(F, R, piv, ncols)


def left_kernel(F: GF, M: Sequence[Sequence[int]], nrows: int | None = None) -> Matrix:
    """Basis of {u : u M = 0}."""
    if nrows is None:
        nrows = len(M)
    return kernel(F, transpose(M), nrows) if M and M[0] else identity(nrows)


@dataclass
class SolutionSet:
    """Affine solution space ``particular + span(basis)``; ``particular`` None if empty."""

    particular: list[int] | None
    basis: Matrix = dc_field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return self.particular is None

    @property
    def cardinality(self) -> str:
        if self.particular is None:
            return "0"
        return "1" if not self.basis else ">1"

    def unique(self) -> list[int] | None:
        return self.particular if self.cardinality == "1" else None


def solve_affine(F: GF, A: Sequence[Sequence[int]], b: Sequence[int], ncols: int | None = None) -> SolutionSet:
    """Solve ``A x = b``."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if len(b) != len(A):
        raise LengthMismatch("right-hand side length differs from row count")
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, _, piv = rref(F, aug, ncols + 1)
    if piv and piv[-1] == ncols:
        return SolutionSet(None)
    x = [0] * ncols
    for row, pc in zip(R, piv):
        x[pc] = row[ncols]
    Rk = [row[:ncols] for row in R]
    return SolutionSet(x, kernel_from_rref(F, Rk, piv, ncols))


# --- codes --------------------------------------------------------------------------


class LinearCode:
    """A linear code of length n over a GF, stored by its RREF generator."""

    __slots__ = ("field", "n", "gen", "pivots")

    def __init__(self, field: GF, n: int, rows: Sequence[Sequence[int]] = ()) -> None:
        for row in rows:
            if len(row) != n:
                raise LengthMismatch(f"row of length {len(row)} in a length-{n} code")
        self.field = field
        self.n = n
        R, _, piv = rref(field, rows, n)
        self.gen: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in R)
        self.pivots = tuple(piv)

    @property
    def dim(self) -> int:
        return len(self.gen)

    @property
    def k(self) -> int:
        return len(self.gen)

    def generator(self) -> Matrix:
        return [list(r) for r in self.gen]

    def parity_check(self) -> Matrix:
        return kernel_from_rref(self.field, [list(r) for r in self.gen], self.pivots, self.n)

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.n:
            raise LengthMismatch("vector length differs from code length")
        w = list(v)
        F = self.field
        for row, pc in zip(self.gen, self.pivots):
            c = w[pc]
            if c:
                nc = F.neg(c)
                w = [F.add(a, F.mul(nc, b)) for a, b in zip(w, row)]
        return not any(w)

    def contains_code(self, other: LinearCode) -> bool:
        return all(self.contains(r) for r in other.gen)

    def on_field(self, F: GF) -> LinearCode:
        """Same generator read in another level (lift, or descend if possible)."""
        if any(v >= F.order for r in self.gen for v in r):
            raise NotInSubfield(f"generator does not lie in {F.name}")
        return LinearCode(F, self.n, self.gen)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LinearCode) and self.n == other.n
                and self.field.p == other.field.p and self.gen == other.gen)

    def __hash__(self) -> int:
        return hash((self.field.p, self.n, self.gen))

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.dim}] over {self.field.name})"


def row_space_equal(C1: LinearCode, C2: LinearCode) -> bool:
    if C1.n != C2.n:
        raise LengthMismatch(f"lengths {C1.n} and {C2.n} differ")
    return C1.gen == C2.gen


def dual(C: LinearCode) -> LinearCode:
    return LinearCode(C.field, C.n, C.parity_check())


def full_space(F: GF, n: int) -> LinearCode:
    return LinearCode(F, n, identity(n))


def subfield_subcode(C: LinearCode, sub: GF) -> LinearCode:
    """``C`` intersected with ``sub^n``, by expanding parity checks over ``sub``."""
    F = C.field
    if sub.order == F.order:
        return LinearCode(sub, C.n, C.gen)
    H = C.parity_check()
    Q = sub.order
    count = 1
    while Q ** count < F.order:
        count += 1
    eqs = []
    for h in H:
        digs = [F.digits(v, Q, count) for v in h]
        for i in range(count):
            row = [d[i] for d in digs]
            if any(row):
                eqs.append(row)
    return LinearCode(sub, C.n, kernel(sub, eqs, C.n))


def puncture(C: LinearCode, idx: Sequence[int]) -> LinearCode:
    """Restrict to the coordinates ``idx`` (kept in the given order)."""
    if not idx:
        raise EmptyIndexSet("cannot puncture to an empty index set")
    if any(not 0 <= i < C.n for i in idx):
        raise IndexError("index outside the code length")
    return LinearCode(C.field, len(idx), [[r[i] for i in idx] for r in C.gen])


def permute_vector(v: Sequence[int], perm: Sequence[int]) -> list[int]:
    """``w[i] = v[perm[i]]``."""
    return [v[j] for j in perm]


def permute_columns(C: LinearCode, perm: Sequence[int]) -> LinearCode:
    if len(perm) != C.n or sorted(perm) != list(range(C.n)):
        raise LengthMismatch("permutation is not a bijection on the coordinates")
    return LinearCode(C.field, C.n, [permute_vector(r, perm) for r in C.gen])


def invert_permutation(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return inv


def compose_permutations(p1: Sequence[int], p2: Sequence[int]) -> list[int]:
    """Permutation acting as ``p2`` first then ``p1`` under ``permute_vector``."""
    return [p2[p1[i]] for i in range(len(p1))]


def permutation_cycles(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    cycles = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        cyc = []
        i = s
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = perm[i]
        cycles.append(cyc)
    return cycles


def permutation_from_cycles(n: int, cycles: Sequence[Sequence[int]]) -> list[int]:
    perm = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            perm[a] = b
    if sorted(perm) != list(range(n)):
        raise ValueError("cycles do not describe a permutation")
    return perm
