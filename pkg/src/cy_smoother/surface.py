"""Arithmetic of the shared K3 surface: Picard lattice, curves, genus.

The Picard lattice of the gluing surface is declared by the user (generic
quartic: rank one, Gram [[4]]); nothing here tries to compute Picard
groups from equations.  Ample-cone membership of the polarization is
likewise declared, not verified.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact_lattice import IntMatrix

PicardVector = tuple[int, ...]


class SurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class K3Model:
    """Picard lattice of a polarized K3 surface.

    gram is the intersection form on the declared generators (symmetric,
    even diagonal); polarization is the coordinate vector of the ample
    class h, with h.h = 2n-2 > 0.
    """

    gram: IntMatrix
    class_names: tuple[str, ...]
    polarization: PicardVector

    def __post_init__(self):
        g = self.gram
        if not g.is_square():
            raise SurfaceError("Gram matrix must be square")
        n = g.rows
        if len(self.class_names) != n:
            raise SurfaceError("need one class name per lattice generator")
        if len(self.polarization) != n:
            raise SurfaceError("polarization length does not match lattice rank")
        for i in range(n):
            if g[i, i] % 2 != 0:
                raise SurfaceError("K3 intersection form must be even")
            for j in range(i + 1, n):
                if g[i, j] != g[j, i]:
                    raise SurfaceError("Gram matrix must be symmetric")
        h2 = intersect(self, self.polarization, self.polarization)
        if h2 <= 0 or h2 % 2 != 0:
            raise SurfaceError("polarization must have positive even square, got %d" % h2)

    @property
    def rank(self) -> int:
        return self.gram.rows

    @property
    def degree(self) -> int:
        """h.h = 2n-2 of the polarization."""
        return intersect(self, self.polarization, self.polarization)

    @classmethod
    def quartic(cls) -> "K3Model":
        """The generic quartic surface: rank one, Gram [[4]]."""
        return cls(IntMatrix.from_rows([[4]]), ("h",), (1,))


@dataclass(frozen=True)
class CurveClass:
    """A curve class on the K3, in the declared lattice basis."""

    coords: PicardVector

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))


def intersect(D: K3Model, a, b) -> int:
    """Evaluate the Gram form: a . b on Pic(D)."""
    a = tuple(a)
    b = tuple(b)
    if len(a) != D.gram.rows or len(b) != D.gram.rows:
        raise SurfaceError(
            "vector length mismatch: lattice rank %d, got %d and %d"
            % (D.gram.rows, len(a), len(b))
        )
    gb = D.gram.mul_vector(b)
    return sum(x * y for x, y in zip(a, gb))


def curve_genus(D: K3Model, c) -> int:
    """Genus of a smooth irreducible curve on a K3: g = c.c/2 + 1."""
    coords = c.coords if isinstance(c, CurveClass) else tuple(c)
    c2 = intersect(D, coords, coords)
    if c2 < -2 or c2 % 2 != 0:
        raise SurfaceError(
            "self-intersection %d is not that of a curve class on a K3" % c2
        )
    return c2 // 2 + 1
