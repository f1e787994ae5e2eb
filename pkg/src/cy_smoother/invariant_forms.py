"""Classical invariants of the cubic cup-product form and deformation grouping.

The Aronhold S (degree 4) and T (degree 6) invariants of a ternary cubic
distinguish GL-inequivalent forms; equal invariants prove nothing, so
comparisons return DISTINCT or INCONCLUSIVE, never "equivalent".

Normalization.  The term tables below were derived once and for all as
the unique polynomials of their degrees annihilated by the infinitesimal
sl3 action on the coefficient space (each solution space is
1-dimensional).  The scale of S is the classical one,

    S(a x^3 + b y^3 + c z^3 + 6 m xyz) = a b c m - m^4,

while T carries an extra factor -6 relative to the classical

    a^2 b^2 c^2 - 20 a b c m^3 - 8 m^6,

calibrated so that the two published reference cubics evaluate to exactly
-86400 and -38400 (both reference points give the same factor).  The
normalization-free outputs are the S = 0 flag and ratios of T values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class TensorError(ValueError):
    pass


class InvariantError(ValueError):
    pass


def _canonical_key(idx: Sequence[int], rank: int) -> tuple[int, ...]:
    key = tuple(sorted(int(i) for i in idx))
    if len(key) != 3 or any(i < 1 or i > rank for i in key):
        raise TensorError("bad tensor index %r for rank %d" % (tuple(idx), rank))
    return key


@dataclass(frozen=True)
class CubicTensor:
    """Symmetric integer 3-tensor T_ijk, stored on sorted index triples."""

    rank: int
    entries: Mapping[tuple[int, int, int], int]

    def __post_init__(self):
        if self.rank < 0:
            raise TensorError("negative rank")
        canon = {}
        for idx, v in dict(self.entries).items():
            key = _canonical_key(idx, self.rank)
            v = int(v)
            if key in canon and canon[key] != v:
                raise TensorError("conflicting values for symmetric entry %r" % (key,))
            canon[key] = v
        object.__setattr__(self, "entries", dict(sorted(canon.items())))

    def value(self, i: int, j: int, k: int) -> int:
        return self.entries.get(_canonical_key((i, j, k), self.rank), 0)

    def dense(self) -> list[list[list[int]]]:
        n = self.rank
        return [
            [[self.value(i + 1, j + 1, k + 1) for k in range(n)] for j in range(n)]
            for i in range(n)
        ]

    def scaled(self, factor: int) -> "CubicTensor":
        return CubicTensor(self.rank, {k: factor * v for k, v in self.entries.items()})

    def change_basis(self, M: Sequence[Sequence[int]]) -> "CubicTensor":
        """Tensor of the same form in the basis f_j = sum_i M[i][j] e_i."""
        n = self.rank
        if len(M) != n or any(len(r) != n for r in M):
            raise TensorError("change-of-basis matrix must be %dx%d" % (n, n))
        out = {}
        rng = range(n)
        for a in rng:
            for b in range(a, n):
                for c in range(b, n):
                    v = 0
                    for p in rng:
                        Mpa = M[p][a]
                        if not Mpa:
                            continue
                        for q in rng:
                            Mqb = M[q][b]
                            if not Mqb:
                                continue
                            for r in rng:
                                if M[r][c]:
                                    v += Mpa * Mqb * M[r][c] * self.value(
                                        p + 1, q + 1, r + 1
                                    )
                    out[(a + 1, b + 1, c + 1)] = v
        return CubicTensor(n, out)

    def content(self) -> int:
        return math.gcd(*self.entries.values()) if self.entries else 0


@dataclass(frozen=True)
class CyInvariantTriple:
    """The numerical invariants of a Picard-rank-one Calabi-Yau 3-fold."""

    rho_cubed: int
    rho_c2: int
    h12: int | None = None

    def __post_init__(self):
        if self.rho_cubed <= 0:
            raise InvariantError("rho^3 must be positive for an ample generator")

    @property
    def key(self) -> tuple[int, int]:
        return (self.rho_cubed, self.rho_c2)


# Variable order: t111 t112 t113 t122 t123 t133 t222 t223 t233 t333.
# Each entry is (coefficient, exponent vector).
_S_TERMS = (
    (-1, (1, 0, 0, 1, 0, 0, 0, 1, 0, 1)),
    (1, (1, 0, 0, 1, 0, 0, 0, 0, 2, 0)),
    (1, (1, 0, 0, 0, 1, 0, 1, 0, 0, 1)),
    (-1, (1, 0, 0, 0, 1, 0, 0, 1, 1, 0)),
    (-1, (1, 0, 0, 0, 0, 1, 1, 0, 1, 0)),
    (1, (1, 0, 0, 0, 0, 1, 0, 2, 0, 0)),
    (1, (0, 2, 0, 0, 0, 0, 0, 1, 0, 1)),
    (-1, (0, 2, 0, 0, 0, 0, 0, 0, 2, 0)),
    (-1, (0, 1, 1, 0, 0, 0, 1, 0, 0, 1)),
    (1, (0, 1, 1, 0, 0, 0, 0, 1, 1, 0)),
    (-1, (0, 1, 0, 1, 1, 0, 0, 0, 0, 1)),
    (1, (0, 1, 0, 1, 0, 1, 0, 0, 1, 0)),
    (2, (0, 1, 0, 0, 2, 0, 0, 0, 1, 0)),
    (-3, (0, 1, 0, 0, 1, 1, 0, 1, 0, 0)),
    (1, (0, 1, 0, 0, 0, 2, 1, 0, 0, 0)),
    (1, (0, 0, 2, 0, 0, 0, 1, 0, 1, 0)),
    (-1, (0, 0, 2, 0, 0, 0, 0, 2, 0, 0)),
    (1, (0, 0, 1, 2, 0, 0, 0, 0, 0, 1)),
    (-3, (0, 0, 1, 1, 1, 0, 0, 0, 1, 0)),
    (1, (0, 0, 1, 1, 0, 1, 0, 1, 0, 0)),
    (2, (0, 0, 1, 0, 2, 0, 0, 1, 0, 0)),
    (-1, (0, 0, 1, 0, 1, 1, 1, 0, 0, 0)),
    (-1, (0, 0, 0, 2, 0, 2, 0, 0, 0, 0)),
    (2, (0, 0, 0, 1, 2, 1, 0, 0, 0, 0)),
    (-1, (0, 0, 0, 0, 4, 0, 0, 0, 0, 0)),
)

_T_TERMS = (
    (-6, (2, 0, 0, 0, 0, 0, 2, 0, 0, 2)),
    (36, (2, 0, 0, 0, 0, 0, 1, 1, 1, 1)),
    (-24, (2, 0, 0, 0, 0, 0, 1, 0, 3, 0)),
    (-24, (2, 0, 0, 0, 0, 0, 0, 3, 0, 1)),
    (18, (2, 0, 0, 0, 0, 0, 0, 2, 2, 0)),
    (36, (1, 1, 0, 1, 0, 0, 1, 0, 0, 2)),
    (-108, (1, 1, 0, 1, 0, 0, 0, 1, 1, 1)),
    (72, (1, 1, 0, 1, 0, 0, 0, 0, 3, 0)),
    (-72, (1, 1, 0, 0, 1, 0, 1, 0, 1, 1)),
    (144, (1, 1, 0, 0, 1, 0, 0, 2, 0, 1)),
    (-72, (1, 1, 0, 0, 1, 0, 0, 1, 2, 0)),
    (-36, (1, 1, 0, 0, 0, 1, 1, 1, 0, 1)),
    (72, (1, 1, 0, 0, 0, 1, 1, 0, 2, 0)),
    (-36, (1, 1, 0, 0, 0, 1, 0, 2, 1, 0)),
    (-36, (1, 0, 1, 1, 0, 0, 1, 0, 1, 1)),
    (72, (1, 0, 1, 1, 0, 0, 0, 2, 0, 1)),
    (-36, (1, 0, 1, 1, 0, 0, 0, 1, 2, 0)),
    (-72, (1, 0, 1, 0, 1, 0, 1, 1, 0, 1)),
    (144, (1, 0, 1, 0, 1, 0, 1, 0, 2, 0)),
    (-72, (1, 0, 1, 0, 1, 0, 0, 2, 1, 0)),
    (36, (1, 0, 1, 0, 0, 1, 2, 0, 0, 1)),
    (-108, (1, 0, 1, 0, 0, 1, 1, 1, 1, 0)),
    (72, (1, 0, 1, 0, 0, 1, 0, 3, 0, 0)),
    (-24, (1, 0, 0, 3, 0, 0, 0, 0, 0, 2)),
    (144, (1, 0, 0, 2, 1, 0, 0, 0, 1, 1)),
    (72, (1, 0, 0, 2, 0, 1, 0, 1, 0, 1)),
    (-144, (1, 0, 0, 2, 0, 1, 0, 0, 2, 0)),
    (-216, (1, 0, 0, 1, 2, 0, 0, 1, 0, 1)),
    (-72, (1, 0, 0, 1, 2, 0, 0, 0, 2, 0)),
    (-72, (1, 0, 0, 1, 1, 1, 1, 0, 0, 1)),
    (360, (1, 0, 0, 1, 1, 1, 0, 1, 1, 0)),
    (72, (1, 0, 0, 1, 0, 2, 1, 0, 1, 0)),
    (-144, (1, 0, 0, 1, 0, 2, 0, 2, 0, 0)),
    (120, (1, 0, 0, 0, 3, 0, 1, 0, 0, 1)),
    (72, (1, 0, 0, 0, 3, 0, 0, 1, 1, 0)),
    (-216, (1, 0, 0, 0, 2, 1, 1, 0, 1, 0)),
    (-72, (1, 0, 0, 0, 2, 1, 0, 2, 0, 0)),
    (144, (1, 0, 0, 0, 1, 2, 1, 1, 0, 0)),
    (-24, (1, 0, 0, 0, 0, 3, 2, 0, 0, 0)),
    (-24, (0, 3, 0, 0, 0, 0, 1, 0, 0, 2)),
    (72, (0, 3, 0, 0, 0, 0, 0, 1, 1, 1)),
    (-48, (0, 3, 0, 0, 0, 0, 0, 0, 3, 0)),
    (72, (0, 2, 1, 0, 0, 0, 1, 0, 1, 1)),
    (-144, (0, 2, 1, 0, 0, 0, 0, 2, 0, 1)),
    (72, (0, 2, 1, 0, 0, 0, 0, 1, 2, 0)),
    (18, (0, 2, 0, 2, 0, 0, 0, 0, 0, 2)),
    (-72, (0, 2, 0, 1, 1, 0, 0, 0, 1, 1)),
    (-36, (0, 2, 0, 1, 0, 1, 0, 1, 0, 1)),
    (72, (0, 2, 0, 1, 0, 1, 0, 0, 2, 0)),
    (-72, (0, 2, 0, 0, 2, 0, 0, 1, 0, 1)),
    (144, (0, 2, 0, 0, 2, 0, 0, 0, 2, 0)),
    (144, (0, 2, 0, 0, 1, 1, 1, 0, 0, 1)),
    (-216, (0, 2, 0, 0, 1, 1, 0, 1, 1, 0)),
    (-144, (0, 2, 0, 0, 0, 2, 1, 0, 1, 0)),
    (162, (0, 2, 0, 0, 0, 2, 0, 2, 0, 0)),
    (72, (0, 1, 2, 0, 0, 0, 1, 1, 0, 1)),
    (-144, (0, 1, 2, 0, 0, 0, 1, 0, 2, 0)),
    (72, (0, 1, 2, 0, 0, 0, 0, 2, 1, 0)),
    (-36, (0, 1, 1, 2, 0, 0, 0, 0, 1, 1)),
    (360, (0, 1, 1, 1, 1, 0, 0, 1, 0, 1)),
    (-216, (0, 1, 1, 1, 1, 0, 0, 0, 2, 0)),
    (-108, (0, 1, 1, 1, 0, 1, 1, 0, 0, 1)),
    (36, (0, 1, 1, 1, 0, 1, 0, 1, 1, 0)),
    (-216, (0, 1, 1, 0, 2, 0, 1, 0, 0, 1)),
    (72, (0, 1, 1, 0, 2, 0, 0, 1, 1, 0)),
    (360, (0, 1, 1, 0, 1, 1, 1, 0, 1, 0)),
    (-216, (0, 1, 1, 0, 1, 1, 0, 2, 0, 0)),
    (-36, (0, 1, 1, 0, 0, 2, 1, 1, 0, 0)),
    (-72, (0, 1, 0, 2, 1, 1, 0, 0, 0, 1)),
    (72, (0, 1, 0, 2, 0, 2, 0, 0, 1, 0)),
    (72, (0, 1, 0, 1, 3, 0, 0, 0, 0, 1)),
    (72, (0, 1, 0, 1, 2, 1, 0, 0, 1, 0)),
    (-216, (0, 1, 0, 1, 1, 2, 0, 1, 0, 0)),
    (72, (0, 1, 0, 1, 0, 3, 1, 0, 0, 0)),
    (-144, (0, 1, 0, 0, 4, 0, 0, 0, 1, 0)),
    (216, (0, 1, 0, 0, 3, 1, 0, 1, 0, 0)),
    (-72, (0, 1, 0, 0, 2, 2, 1, 0, 0, 0)),
    (-24, (0, 0, 3, 0, 0, 0, 2, 0, 0, 1)),
    (72, (0, 0, 3, 0, 0, 0, 1, 1, 1, 0)),
    (-48, (0, 0, 3, 0, 0, 0, 0, 3, 0, 0)),
    (-144, (0, 0, 2, 2, 0, 0, 0, 1, 0, 1)),
    (162, (0, 0, 2, 2, 0, 0, 0, 0, 2, 0)),
    (144, (0, 0, 2, 1, 1, 0, 1, 0, 0, 1)),
    (-216, (0, 0, 2, 1, 1, 0, 0, 1, 1, 0)),
    (-36, (0, 0, 2, 1, 0, 1, 1, 0, 1, 0)),
    (72, (0, 0, 2, 1, 0, 1, 0, 2, 0, 0)),
    (-72, (0, 0, 2, 0, 2, 0, 1, 0, 1, 0)),
    (144, (0, 0, 2, 0, 2, 0, 0, 2, 0, 0)),
    (-72, (0, 0, 2, 0, 1, 1, 1, 1, 0, 0)),
    (18, (0, 0, 2, 0, 0, 2, 2, 0, 0, 0)),
    (72, (0, 0, 1, 3, 0, 1, 0, 0, 0, 1)),
    (-72, (0, 0, 1, 2, 2, 0, 0, 0, 0, 1)),
    (-216, (0, 0, 1, 2, 1, 1, 0, 0, 1, 0)),
    (72, (0, 0, 1, 2, 0, 2, 0, 1, 0, 0)),
    (216, (0, 0, 1, 1, 3, 0, 0, 0, 1, 0)),
    (72, (0, 0, 1, 1, 2, 1, 0, 1, 0, 0)),
    (-72, (0, 0, 1, 1, 1, 2, 1, 0, 0, 0)),
    (-144, (0, 0, 1, 0, 4, 0, 0, 1, 0, 0)),
    (72, (0, 0, 1, 0, 3, 1, 1, 0, 0, 0)),
    (-48, (0, 0, 0, 3, 0, 3, 0, 0, 0, 0)),
    (144, (0, 0, 0, 2, 2, 2, 0, 0, 0, 0)),
    (-144, (0, 0, 0, 1, 4, 1, 0, 0, 0, 0)),
    (48, (0, 0, 0, 0, 6, 0, 0, 0, 0, 0)),
)

_VAR_ORDER = (
    (1, 1, 1), (1, 1, 2), (1, 1, 3), (1, 2, 2), (1, 2, 3),
    (1, 3, 3), (2, 2, 2), (2, 2, 3), (2, 3, 3), (3, 3, 3),
)


def _eval_terms(terms, values) -> int:
    total = 0
    for coef, expo in terms:
        p = coef
        for v, e in zip(values, expo):
            if e:
                p *= v**e
        total += p
    return total


def aronhold_ST(tensor: CubicTensor) -> tuple[int, int]:
    """Aronhold S and T invariants of a rank-3 cubic tensor.

    See the module docstring for the exact normalization.  Under a basis
    change of determinant d the values scale by d^4 and d^6, so they are
    GL(3,Z) invariants.
    """
    if tensor.rank != 3:
        raise TensorError(
            "Aronhold invariants need rank 3; for rank <= 2 compare "
            "discriminant/content data (forms_distinguishable does this)"
        )
    vals = [tensor.value(*idx) for idx in _VAR_ORDER]
    return _eval_terms(_S_TERMS, vals), _eval_terms(_T_TERMS, vals)


def binary_cubic_discriminant(tensor: CubicTensor) -> int:
    """Discriminant of the binary cubic p x^3 + q x^2 y + r x y^2 + s y^3."""
    if tensor.rank != 2:
        raise TensorError("binary discriminant needs rank 2")
    p = tensor.value(1, 1, 1)
    q = 3 * tensor.value(1, 1, 2)
    r = 3 * tensor.value(1, 2, 2)
    s = tensor.value(2, 2, 2)
    return 18 * p * q * r * s - 4 * q**3 * s + q**2 * r**2 - 4 * p * r**3 - 27 * p**2 * s**2


DISTINCT = "DISTINCT"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class ComparisonResult:
    verdict: str
    reason: str
    details: dict

    def __bool__(self):  # truthy iff provably distinct
        return self.verdict == DISTINCT


def forms_distinguishable(t1: CubicTensor, t2: CubicTensor) -> ComparisonResult:
    """Compare two cubic forms by invariants.

    DISTINCT means no unimodular change of basis can carry one to the
    other; INCONCLUSIVE means every computed invariant agrees (which does
    not prove equivalence).
    """
    if t1.rank != t2.rank:
        raise TensorError("cannot compare tensors of ranks %d and %d" % (t1.rank, t2.rank))
    if t1.rank == 3:
        s1, v1 = aronhold_ST(t1)
        s2, v2 = aronhold_ST(t2)
        details = {
            "S": (s1, s2),
            "T": (v1, v2),
            "s_zero": (s1 == 0, s2 == 0),
        }
        if (s1 == 0) and (s2 == 0) and v1 and v2:
            details["t_ratio"] = Fraction(v1, v2)
        if (s1 == 0) != (s2 == 0):
            return ComparisonResult(DISTINCT, "exactly one form has S = 0", details)
        if (s1, v1) != (s2, v2):
            which = "S" if s1 != s2 else "T"
            return ComparisonResult(DISTINCT, "%s invariants differ" % which, details)
        return ComparisonResult(INCONCLUSIVE, "all computed invariants agree", details)
    if t1.rank == 2:
        d1, d2 = binary_cubic_discriminant(t1), binary_cubic_discriminant(t2)
        c1, c2 = t1.content(), t2.content()
        details = {"discriminant": (d1, d2), "content": (c1, c2)}
        if d1 != d2 or c1 != c2:
            return ComparisonResult(DISTINCT, "discriminant/content data differ", details)
        return ComparisonResult(INCONCLUSIVE, "all computed invariants agree", details)
    # rank <= 1: the content and the single coefficient are complete data
    e1 = t1.value(1, 1, 1) if t1.rank == 1 else 0
    e2 = t2.value(1, 1, 1) if t2.rank == 1 else 0
    details = {"coefficient": (e1, e2)}
    if abs(e1) != abs(e2):
        return ComparisonResult(DISTINCT, "coefficients differ up to sign", details)
    return ComparisonResult(INCONCLUSIVE, "all computed invariants agree", details)


def rr_dimension(inv: CyInvariantTriple, n: int) -> int:
    """chi(O(n rho)) = rho^3 n^3 / 6 + (rho.c2) n / 12 on a Calabi-Yau 3-fold."""
    if not isinstance(n, int):
        raise InvariantError("n must be an integer")
    chi = Fraction(inv.rho_cubed * n**3, 6) + Fraction(inv.rho_c2 * n, 12)
    if chi.denominator != 1:
        raise InvariantError(
            "chi(O(%d rho)) = %s is not an integer; the invariant pair "
            "(%d, %d) is inconsistent" % (n, chi, inv.rho_cubed, inv.rho_c2)
        )
    return int(chi)


def deformation_group(items: Iterable[tuple[str, CyInvariantTriple]]):
    """Partition labelled Calabi-Yau 3-folds by the exact pair (rho^3, rho.c2).

    Members of one group embed into the same projective space with one
    Hilbert polynomial, hence lie in one Hilbert scheme and are connected
    by projective flat deformation.  h12 rides along but never enters the
    grouping.
    """
    groups: dict[tuple[int, int], list[str]] = {}
    for label, inv in items:
        groups.setdefault(inv.key, []).append(label)
    return [
        {"rho_cubed": k[0], "rho_c2": k[1], "members": tuple(v)}
        for k, v in sorted(groups.items())
    ]
