"""Exact integer linear algebra over finitely generated abelian groups.

Everything here works with Python's arbitrary-precision integers; no
floating point is ever involved.  The module provides Smith and Hermite
normal forms with unimodular transforms, saturated kernels in a canonical
basis, quotients of Z^n by a relation lattice (with torsion invariants,
projection and section maps), lattice intersections, and unimodularity
tests for pairing Gram matrices.

Canonical forms matter: kernels and quotient sections are normalized so
that repeated runs (and golden tests) see byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class RankMismatchError(ValueError):
    """A pairing Gram matrix relates lattices of different ranks."""


class InconsistentSystemError(ValueError):
    """An exact linear system has no integer solution."""


class IntMatrix:
    """Immutable integer matrix, row-major entries, exact arithmetic only."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(int(e) for e in entries)
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(entries) != rows * cols:
            raise ValueError(
                "entry count %d does not match %dx%d" % (len(entries), rows, cols)
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("IntMatrix is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise ValueError("ragged rows")
        else:
            cols = 0 if cols is None else cols
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        cols = [list(c) for c in cols]
        if cols:
            rows = len(cols[0])
            if any(len(c) != rows for c in cols):
                raise ValueError("ragged columns")
        else:
            rows = 0 if rows is None else rows
        return cls(rows, len(cols), [cols[j][i] for i in range(rows) for j in range(len(cols))])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    # -- access ----------------------------------------------------------------

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(idx)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_columns(self) -> list[list[int]]:
        return [list(self.column(j)) for j in range(self.cols)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    # -- arithmetic --------------------------------------------------------------

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        out = []
        orows = other.to_rows()
        for i in range(self.rows):
            r = self.row(i)
            acc = [0] * other.cols
            for k, a in enumerate(r):
                if a:
                    ork = orows[k]
                    for j in range(other.cols):
                        acc[j] += a * ork[j]
            out.extend(acc)
        return IntMatrix(self.rows, other.cols, out)

    def mul_vector(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length %d, expected %d" % (len(vec), self.cols))
        return tuple(sum(a * v for a, v in zip(self.row(i), vec)) for i in range(self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        ents = []
        for i in range(self.rows):
            ents.extend(self.row(i))
            ents.extend(other.row(i))
        return IntMatrix(self.rows, self.cols + other.cols, ents)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [-e for e in self.entries])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return "IntMatrix(%d, %d, %r)" % (self.rows, self.cols, list(self.entries))


@dataclass(frozen=True)
class FgAbelianGroup:
    """A finitely generated abelian group: Z^free_rank + sum Z/d_i.

    The torsion invariants form a divisibility chain d_1 | d_2 | ..., each
    at least 2.  The torsion part is carried for reporting but the rest of
    the library only ever consumes the free rank (everything downstream
    works modulo torsion).
    """

    free_rank: int
    torsion_invariants: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        prev = None
        for d in self.torsion_invariants:
            if d < 2:
                raise ValueError("torsion invariant %d < 2" % d)
            if prev is not None and d % prev != 0:
                raise ValueError("torsion invariants are not a divisibility chain")
            prev = d


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms: returns (U, S, V) with S = U*M*V.

    U and V are unimodular, S is diagonal with nonnegative entries in a
    divisibility chain d_i | d_{i+1}.  Total function; deterministic pivot
    choice (smallest absolute value, then lowest position).
    """
    U, S, V, _, _ = _snf_with_inverses(M, want_inverses=False)
    return U, S, V


def _snf_with_inverses(M: IntMatrix, want_inverses: bool = True):
    n, m = M.rows, M.cols
    A = M.to_rows()
    U = IntMatrix.identity(n).to_rows()
    V = IntMatrix.identity(m).to_rows()
    Uinv = IntMatrix.identity(n).to_rows() if want_inverses else None
    Vinv = IntMatrix.identity(m).to_rows() if want_inverses else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        if Uinv is not None:
            for r in Uinv:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        if Vinv is not None:
            Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        Asrc, Adst = A[src], A[dst]
        for k in range(m):
            Adst[k] += q * Asrc[k]
        Us, Ud = U[src], U[dst]
        for k in range(n):
            Ud[k] += q * Us[k]
        if Uinv is not None:
            for r in Uinv:
                r[src] -= q * r[dst]

    def add_col(src, dst, q):
        for r in A:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]
        if Vinv is not None:
            for k in range(m):
                Vinv[src][k] -= q * Vinv[dst][k]

    def negate_row(i):
        A[i] = [-e for e in A[i]]
        U[i] = [-e for e in U[i]]
        if Uinv is not None:
            for r in Uinv:
                r[i] = -r[i]

    size = min(n, m)
    for t in range(size):
        while True:
            # locate pivot: smallest nonzero |entry| in the trailing block
            piv = None
            for i in range(t, n):
                for j in range(t, m):
                    e = A[i][j]
                    if e and (piv is None or abs(e) < abs(A[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                break
            if piv[0] != t:
                swap_rows(t, piv[0])
            if piv[1] != t:
                swap_cols(t, piv[1])
            dirty = False
            for i in range(t + 1, n):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, m):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j]:
                        dirty = True
            if dirty:
                continue
            # divisibility: pivot must divide the rest of the block
            offender = None
            d = A[t][t]
            for i in range(t + 1, n):
                for j in range(t + 1, m):
                    if A[i][j] % d != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if t < n and t < m and A[t][t] < 0:
            negate_row(t)

    return (
        IntMatrix.from_rows(U, cols=n),
        IntMatrix.from_rows(A, cols=m),
        IntMatrix.from_rows(V, cols=m),
        IntMatrix.from_rows(Uinv, cols=n) if want_inverses else None,
        IntMatrix.from_rows(Vinv, cols=m) if want_inverses else None,
    )


def snf_diagonal(M: IntMatrix) -> tuple[int, ...]:
    """The nonzero Smith invariants of M, in chain order."""
    _, S, _ = smith_normal_form(M)
    out = []
    for t in range(min(S.rows, S.cols)):
        d = S[t, t]
        if d:
            out.append(d)
    return tuple(out)


def rank(M: IntMatrix) -> int:
    return len(snf_diagonal(M))


# ---------------------------------------------------------------------------
# Hermite normal form (row style) and canonical solving
# ---------------------------------------------------------------------------


def hermite_row_form(M: IntMatrix, with_transform: bool = False):
    """Row-style Hermite normal form H (zero rows dropped).

    Pivots are positive, strictly to the right as rows descend, and
    entries above a pivot are reduced into [0, pivot).  When
    ``with_transform`` is set, also returns a unimodular T (square, size =
    original row count) with H equal to the nonzero rows of T*M.
    """
    n, m = M.rows, M.cols
    A = M.to_rows()
    T = IntMatrix.identity(n).to_rows()
    prow = 0
    for col in range(m):
        # gcd-eliminate below prow in this column
        while True:
            piv = None
            for i in range(prow, n):
                if A[i][col] and (piv is None or abs(A[i][col]) < abs(A[piv][col])):
                    piv = i
            if piv is None:
                break
            if piv != prow:
                A[prow], A[piv] = A[piv], A[prow]
                T[prow], T[piv] = T[piv], T[prow]
            done = True
            for i in range(prow + 1, n):
                if A[i][col]:
                    q = A[i][col] // A[prow][col]
                    A[i] = [a - q * b for a, b in zip(A[i], A[prow])]
                    T[i] = [a - q * b for a, b in zip(T[i], T[prow])]
                    if A[i][col]:
                        done = False
            if done:
                break
        if prow < n and A[prow][col]:
            if A[prow][col] < 0:
                A[prow] = [-e for e in A[prow]]
                T[prow] = [-e for e in T[prow]]
            d = A[prow][col]
            for i in range(prow):
                q = A[i][col] // d  # floor brings the entry into [0, d)
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[prow])]
                    T[i] = [a - q * b for a, b in zip(T[i], T[prow])]
            prow += 1
        if prow == n:
            break
    H = IntMatrix.from_rows(A[:prow], cols=m)
    if with_transform:
        return H, IntMatrix.from_rows(T, cols=n)
    return H


def _reverse_columns(M: IntMatrix) -> IntMatrix:
    return IntMatrix.from_rows([list(M.row(i))[::-1] for i in range(M.rows)], cols=M.cols)


def canonical_basis_columns(columns: IntMatrix) -> IntMatrix:
    """Canonical basis of the lattice spanned by the given columns.

    The normal form is the row-HNF computed in reversed coordinate order:
    generators come out "solved for the leading coordinates", which is the
    reduced-echelon shape one writes when solving the defining equations
    by hand (free coordinates carry the identity block).
    """
    G = columns.transpose()
    H = hermite_row_form(_reverse_columns(G))
    rows = [list(H.row(i))[::-1] for i in range(H.rows)][::-1]
    return IntMatrix.from_rows(rows, cols=columns.rows).transpose()


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """Canonical basis (as columns) of the saturated kernel {x : Mx = 0}."""
    _, S, V = smith_normal_form(M)
    r = len([1 for t in range(min(S.rows, S.cols)) if S[t, t]])
    cols = [V.column(j) for j in range(r, M.cols)]
    K = IntMatrix.from_columns(cols, rows=M.cols)
    if K.cols == 0:
        return K
    return canonical_basis_columns(K)


def solve_exact(M: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """Canonical particular integer solution of M x = b, or None.

    Column-Hermite elimination with free variables set to zero; the
    gcd pivoting prefers small leading coefficients, which keeps golden
    outputs stable.
    """
    if len(b) != M.rows:
        raise ValueError("rhs length mismatch")
    Ht, T = hermite_row_form(M.transpose(), with_transform=True)
    # columns of M * T^t are the column-HNF of M (echelon by pivot row)
    H = Ht.transpose()  # M.rows x npiv, column echelon
    resid = list(b)
    z = [0] * M.cols
    for j in range(H.cols):
        p = None
        for i in range(M.rows):
            if H[i, j]:
                p = i
                break
        if p is None:
            continue
        if resid[p] % H[p, j] != 0:
            return None
        q = resid[p] // H[p, j]
        z[j] = q
        if q:
            for i in range(M.rows):
                resid[i] -= q * H[i, j]
    if any(resid):
        return None
    return tuple(
        sum(T[j, i] * z[j] for j in range(T.rows)) for i in range(T.cols)
    )


def intersect_column_lattices(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    """Canonical basis (columns) of (column span of A) n (column span of B)."""
    if A.rows != B.rows:
        raise ValueError("ambient dimension mismatch")
    stacked = A.hstack(-B)
    K = kernel_basis(stacked)
    cols = []
    for j in range(K.cols):
        u = K.column(j)[: A.cols]
        cols.append(A.mul_vector(u))
    L = IntMatrix.from_columns(cols, rows=A.rows)
    if L.cols == 0:
        return L
    # drop dependent generators and canonicalize
    H = hermite_row_form(L.transpose())
    return H.transpose()


# ---------------------------------------------------------------------------
# Quotients
# ---------------------------------------------------------------------------


def quotient(
    ambient_rank: int, relations: IntMatrix
) -> tuple[FgAbelianGroup, IntMatrix, IntMatrix]:
    """Z^ambient_rank modulo the column span of ``relations``.

    Returns the group (free rank plus torsion chain), a projection matrix
    mapping ambient coordinates onto the free-part coordinates, and a
    section lifting free generators back to the ambient lattice; the
    composite projection*section is the identity.  Section columns are
    reduced modulo the relation lattice so the lift is canonical.
    """
    if relations.rows != ambient_rank:
        raise ValueError(
            "relations have %d rows, ambient rank is %d" % (relations.rows, ambient_rank)
        )
    U, S, _, Uinv, _ = _snf_with_inverses(relations, want_inverses=True)
    diag = [S[t, t] for t in range(min(S.rows, S.cols)) if S[t, t]]
    t = len(diag)
    torsion = tuple(d for d in diag if d >= 2)
    free = ambient_rank - t
    projection = IntMatrix.from_rows(
        [list(U.row(i)) for i in range(t, ambient_rank)], cols=ambient_rank
    )
    section_cols = [list(Uinv.column(j)) for j in range(t, ambient_rank)]
    # canonical representatives: reduce modulo the relation lattice
    if relations.cols:
        rel_basis = hermite_row_form(relations.transpose()).to_rows()
        for c in section_cols:
            for h in rel_basis:
                p = next((i for i, e in enumerate(h) if e), None)
                if p is None:
                    continue
                q = c[p] // h[p]
                if q:
                    for i in range(ambient_rank):
                        c[i] -= q * h[i]
    section = IntMatrix.from_columns(section_cols, rows=ambient_rank)
    return FgAbelianGroup(free, torsion), projection, section


def pairing_is_unimodular(G: IntMatrix) -> bool:
    """True iff the pairing Gram matrix G is unimodular (all SNF invariants 1).

    A 0x0 pairing is vacuously unimodular.  Non-square input signals that
    the two paired lattices have different ranks, which can only come from
    a degenerate-subgroup computation bug upstream.
    """
    if not G.is_square():
        raise RankMismatchError(
            "pairing Gram is %dx%d; the paired lattices have different ranks"
            % (G.rows, G.cols)
        )
    if G.rows == 0:
        return True
    diag = snf_diagonal(G)
    return len(diag) == G.rows and all(d == 1 for d in diag)


def sign_normalize_column(col: Sequence[int]) -> tuple[int, ...]:
    """Flip the sign so the first nonzero coordinate is positive."""
    for e in col:
        if e:
            return tuple(col) if e > 0 else tuple(-x for x in col)
    return tuple(col)
