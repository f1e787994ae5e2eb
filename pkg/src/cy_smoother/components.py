"""Cohomological model of one half of the normal crossing.

A component is a rank-one Fano base blown up successively along an
ordered list of curves lying on the anticanonical K3.  Only the
cohomological shadow is built: the triple-product tensor on H^2, the
second-Chern-class covector, the restriction map to the K3 lattice, the
H^2 x H^4 pairing, and the degrees against the gluing surface.

Basis conventions.  H^2 has basis (H, e_1 ... e_s) where H pulls back the
primitive ample class of the base and e_i is the pullback to the final
stage of the step-i exceptional divisor.  H^4 has basis (g, M_1 ... M_s)
with g the class dual to H (H.g = 1) and M_i a fiber of the step-i
exceptional ruling.  Writing d_i = h.c_i for the polarization degree of a
center and m_ij = c_i.c_j, the nonzero products are

    H^3 = H_cubed            H.e_i^2 = -d_i
    e_i^3 = -r d_i + sum_{k<i} m_ki + 2 - 2 g_i
    e_j.e_i^2 = -m_ji (j < i)
    H.c2 = 24/r + sum d_i    e_i.c2 = r d_i - sum_{k<i} m_ki + sum_{k>i} m_ik
    H.g = 1                  e_i.M_i = -1
    g.D = r                  M_i.D = 1

with every other mixed product zero.  These rules are calibrated against
the full set of worked blow-up tables and conserve -K.c2 = 24 at every
stage.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact_lattice import IntMatrix
from .surface import CurveClass, K3Model, PicardVector, curve_genus, intersect


class ComponentError(ValueError):
    pass


class FullLatticeModeError(ComponentError):
    """Base has b2 > 1; only numeric invariants are available (fano_catalog)."""


@dataclass(frozen=True)
class BaseThreefold:
    """A rank-one Fano 3-fold base: -K = r*H with H primitive ample."""

    name: str
    b2: int
    index: int
    minus_K_cubed: int
    h12: int

    def __post_init__(self):
        if self.index < 1:
            raise ComponentError("Fano index must be positive")
        if self.minus_K_cubed <= 0:
            raise ComponentError("-K^3 must be positive")
        if self.b2 == 1:
            if self.minus_K_cubed % self.index**3 != 0:
                raise ComponentError(
                    "index^3 = %d does not divide -K^3 = %d"
                    % (self.index**3, self.minus_K_cubed)
                )
            if 24 % self.index != 0:
                raise ComponentError("index %d does not divide -K.c2 = 24" % self.index)
        if self.h12 < 0:
            raise ComponentError("h12 must be nonnegative")

    @property
    def H_cubed(self) -> int:
        return self.minus_K_cubed // self.index**3

    @property
    def euler(self) -> int:
        return 2 * (self.b2 - self.h12 + 1)


P3 = BaseThreefold("P3", b2=1, index=4, minus_K_cubed=64, h12=0)


@dataclass(frozen=True)
class BlownComponent:
    """One component Y of the normal crossing, fully populated."""

    base: BaseThreefold
    k3: K3Model
    centers: tuple[PicardVector, ...]
    degrees: tuple[int, ...]
    genera: tuple[int, ...]
    mutual: tuple[tuple[int, ...], ...]
    h2_labels: tuple[str, ...]
    h4_labels: tuple[str, ...]
    triple: tuple[tuple[tuple[int, ...], ...], ...]
    c2_covector: tuple[int, ...]
    D_class: PicardVector
    canonical_class: PicardVector
    restriction: IntMatrix
    h2_h4_pairing: IntMatrix
    d_degree_h4: tuple[int, ...]

    @property
    def h2_rank(self) -> int:
        return 1 + len(self.centers)

    @property
    def h12(self) -> int:
        return self.base.h12 + sum(self.genera)

    @property
    def euler(self) -> int:
        return self.base.euler + sum(2 - 2 * g for g in self.genera)


def build_component(base: BaseThreefold, D: K3Model, centers) -> BlownComponent:
    """Blow up the base along the given ordered curves on D."""
    if base.b2 != 1:
        raise FullLatticeModeError(
            "base %r has b2 = %d; full lattice mode needs b2 = 1 "
            "(use the fano_catalog closed forms instead)" % (base.name, base.b2)
        )
    coords = []
    for c in centers:
        v = c.coords if isinstance(c, CurveClass) else tuple(int(x) for x in c)
        if len(v) != D.rank:
            raise ComponentError(
                "center %r does not lie in the declared Pic(D) (rank %d)" % (v, D.rank)
            )
        coords.append(v)
    centers_t = tuple(coords)
    s = len(centers_t)
    r = base.index
    h = D.polarization

    degrees = tuple(intersect(D, h, c) for c in centers_t)
    genera = tuple(curve_genus(D, c) for c in centers_t)
    mutual = tuple(
        tuple(intersect(D, ci, cj) for cj in centers_t) for ci in centers_t
    )
    for i in range(s):
        for j in range(i + 1, s):
            if mutual[i][j] < 0:
                raise ComponentError(
                    "centers %d and %d meet negatively (m = %d)" % (i + 1, j + 1, mutual[i][j])
                )

    n = 1 + s
    T = [[[0] * n for _ in range(n)] for _ in range(n)]

    def put(i, j, k, val):
        for a, b, c in ((i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)):
            T[a][b][c] = val

    put(0, 0, 0, base.H_cubed)
    for i in range(1, n):
        ci = i - 1
        put(0, i, i, -degrees[ci])
        e3 = -r * degrees[ci] + sum(mutual[k][ci] for k in range(ci)) + 2 - 2 * genera[ci]
        put(i, i, i, e3)
        for j in range(1, i):
            cj = j - 1
            put(j, i, i, -mutual[cj][ci])
            # e_j^2 e_i (j earlier) and fully mixed products vanish; already zero

    c2 = [24 // r + sum(degrees)]
    for i in range(s):
        c2.append(
            r * degrees[i]
            - sum(mutual[k][i] for k in range(i))
            + sum(mutual[i][k] for k in range(i + 1, s))
        )

    D_class = tuple([r] + [-1] * s)
    canonical = tuple(-x for x in D_class)

    res_cols = [list(h)] + [list(c) for c in centers_t]
    restriction = IntMatrix.from_columns(res_cols, rows=D.rank)

    pairing = [[0] * n for _ in range(n)]
    pairing[0][0] = 1
    for i in range(1, n):
        pairing[i][i] = -1
    d_deg = tuple([r] + [1] * s)

    labels2 = ("H",) + tuple("e%d" % (i + 1) for i in range(s))
    labels4 = ("g",) + tuple("M%d" % (i + 1) for i in range(s))

    return BlownComponent(
        base=base,
        k3=D,
        centers=centers_t,
        degrees=degrees,
        genera=genera,
        mutual=mutual,
        h2_labels=labels2,
        h4_labels=labels4,
        triple=tuple(tuple(tuple(row) for row in plane) for plane in T),
        c2_covector=tuple(c2),
        D_class=D_class,
        canonical_class=canonical,
        restriction=restriction,
        h2_h4_pairing=IntMatrix.from_rows(pairing),
        d_degree_h4=d_deg,
    )


def _check_vec(Y: BlownComponent, a, what: str) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if len(a) != Y.h2_rank:
        raise ComponentError(
            "%s has length %d, component H^2 rank is %d" % (what, len(a), Y.h2_rank)
        )
    return a


def triple_product(Y: BlownComponent, a, b, c) -> int:
    """Cup product a.b.c on the component."""
    a = _check_vec(Y, a, "first vector")
    b = _check_vec(Y, b, "second vector")
    c = _check_vec(Y, c, "third vector")
    total = 0
    T = Y.triple
    for i, ai in enumerate(a):
        if not ai:
            continue
        Ti = T[i]
        for j, bj in enumerate(b):
            if not bj:
                continue
            Tij = Ti[j]
            for k, ck in enumerate(c):
                if ck:
                    total += ai * bj * ck * Tij[k]
    return total


def c2_pair(Y: BlownComponent, a) -> int:
    """a . c2(Y)."""
    a = _check_vec(Y, a, "vector")
    return sum(x * y for x, y in zip(a, Y.c2_covector))


def euler_number(Y: BlownComponent) -> int:
    """Topological Euler number: e(base) + sum (2 - 2 g_i)."""
    return Y.euler


def pair_h2_h4(Y: BlownComponent, a, u) -> int:
    """Pairing of a in H^2 with u in H^4 (bases (H, e_i) and (g, M_i))."""
    a = _check_vec(Y, a, "H^2 vector")
    u = tuple(int(x) for x in u)
    if len(u) != Y.h2_rank:
        raise ComponentError("H^4 vector length mismatch")
    total = 0
    for i, ai in enumerate(a):
        if not ai:
            continue
        row = Y.h2_h4_pairing.row(i)
        total += ai * sum(r * x for r, x in zip(row, u))
    return total
