"""Fano 3-fold catalog and the closed-form Calabi-Yau invariants of a pair.

Two Fano families can sit on opposite sides of an admissible normal
crossing exactly when they share the matching invariant

    delta = -K^3 / r^2,

the degree of the common polarized K3.  For such a pair the smoothed
Calabi-Yau has closed-form invariants (writing r1, r2 for the indices and
using -K.c2 = 24 on any Fano 3-fold):

    rho^3   = (1/r1 + 1/r2) delta
    rho.c2  = 24/r1 + 24/r2 + (r1 + r2) delta
    h12     = 22 + h12(V1) + h12(V2) + (r1 + r2)^2 delta / 2 - max(b2)

and it has Picard number one iff min(b2) = 1.

The shipped catalog contains the 17 rank-one deformation families plus
the specific higher-rank entries needed by the worked examples; h12 for
the higher-rank rows is back-solved from the target invariants and marked
for audit against the Mori-Mukai tables in the provenance column.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable

from .components import BaseThreefold
from .invariant_forms import CyInvariantTriple


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class FanoFamily:
    id: str
    b2: int
    index: int
    minus_K_cubed: int
    h12: int
    provenance: str = ""
    description: str = ""

    def __post_init__(self):
        if self.b2 < 1 or self.index < 1 or self.minus_K_cubed <= 0 or self.h12 < 0:
            raise CatalogError("invalid numeric data for family %r" % self.id)
        if self.minus_K_cubed % self.index**2 != 0:
            raise CatalogError(
                "family %r: -K^3 = %d is not divisible by index^2 = %d"
                % (self.id, self.minus_K_cubed, self.index**2)
            )

    @property
    def delta(self) -> int:
        return self.minus_K_cubed // self.index**2

    @property
    def rank_one(self) -> bool:
        return self.b2 == 1

    def as_base(self) -> BaseThreefold:
        return BaseThreefold(self.id, self.b2, self.index, self.minus_K_cubed, self.h12)


_COLUMNS = ("id", "b2", "index", "minus_K_cubed", "h12", "provenance", "description")


def default_catalog_path() -> Path:
    return Path(resources.files("cy_smoother").joinpath("data/fano_catalog.csv"))


def load_catalog(path=None) -> tuple[FanoFamily, ...]:
    """Load and validate a catalog file (CSV or JSON list of rows)."""
    path = Path(path) if path is not None else default_catalog_path()
    if not path.exists():
        raise CatalogError("catalog file %s does not exist" % path)
    text = path.read_text(encoding="utf-8")
    rows: list[dict]
    if path.suffix.lower() == ".json" or text.lstrip().startswith("["):
        try:
            raw = json.loads(text) if text.strip() else []
        except json.JSONDecodeError as exc:
            raise CatalogError("catalog JSON is malformed: %s" % exc) from exc
        if not isinstance(raw, list):
            raise CatalogError("catalog JSON must be a list of rows")
        rows = raw
    else:
        rows = list(csv.DictReader(text.splitlines()))
    families = []
    seen = set()
    for lineno, row in enumerate(rows, start=2 if path.suffix.lower() != ".json" else 1):
        try:
            fam = FanoFamily(
                id=str(row["id"]).strip(),
                b2=int(row["b2"]),
                index=int(row["index"]),
                minus_K_cubed=int(row["minus_K_cubed"]),
                h12=int(row["h12"]),
                provenance=str(row.get("provenance", "") or ""),
                description=str(row.get("description", "") or ""),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CatalogError("catalog row %d is malformed: %s" % (lineno, exc)) from exc
        if fam.id in seen:
            raise CatalogError("catalog row %d: duplicate id %r" % (lineno, fam.id))
        seen.add(fam.id)
        families.append(fam)
    return tuple(families)


def find_family(catalog: Iterable[FanoFamily], family_id: str) -> FanoFamily:
    wanted = family_id.strip().lower()
    for fam in catalog:
        if fam.id.lower() == wanted:
            return fam
    raise CatalogError("unknown Fano family id %r" % family_id)


def search_pairs(
    catalog: Iterable[FanoFamily], require_rank_one: bool = False
) -> tuple[tuple[FanoFamily, FanoFamily], ...]:
    """All unordered pairs (repetition allowed) with equal delta."""
    rows = [f for f in catalog if f.rank_one] if require_rank_one else list(catalog)
    by_delta: dict[int, list[FanoFamily]] = {}
    for f in rows:
        by_delta.setdefault(f.delta, []).append(f)
    pairs = []
    for delta in sorted(by_delta):
        group = sorted(by_delta[delta], key=lambda f: f.id)
        for i, f1 in enumerate(group):
            for f2 in group[i:]:
                pairs.append((f1, f2))
    return tuple(pairs)


def cy_invariants(v1: FanoFamily, v2: FanoFamily):
    """Closed-form invariants of the Calabi-Yau smoothed from the pair.

    Returns (CyInvariantTriple, picard_rank_one, note).  All divisions
    are checked to be exact; a failure indicates bad catalog data.
    """
    if v1.delta != v2.delta:
        raise CatalogError(
            "delta mismatch: %s has %d, %s has %d"
            % (v1.id, v1.delta, v2.id, v2.delta)
        )
    delta = v1.delta
    r1, r2 = v1.index, v2.index
    rho3 = Fraction(delta, r1) + Fraction(delta, r2)
    rho_c2 = Fraction(24, r1) + Fraction(24, r2) + (r1 + r2) * delta
    h12 = (
        Fraction(22)
        + v1.h12
        + v2.h12
        + Fraction((r1 + r2) ** 2 * delta, 2)
        - max(v1.b2, v2.b2)
    )
    for name, val in (("rho^3", rho3), ("rho.c2", rho_c2), ("h12", h12)):
        if val.denominator != 1:
            raise CatalogError(
                "pair (%s, %s): %s = %s is not an integer; catalog data error"
                % (v1.id, v2.id, name, val)
            )
    # cross-check against the component-side bookkeeping: the gluing curve
    # has genus (r1+r2)^2 delta / 2 + 1 and the joint restriction image has
    # rank max(b2), so 21 + h12(V1) + (h12(V2) + g) - max(b2) must agree.
    g = (r1 + r2) ** 2 * delta // 2 + 1
    alt = 21 + v1.h12 + v2.h12 + g - max(v1.b2, v2.b2)
    if alt != int(h12):
        raise CatalogError("h12 cross-check failed for pair (%s, %s)" % (v1.id, v2.id))
    rank_one = min(v1.b2, v2.b2) == 1
    if v1.b2 == 1 and v2.b2 == 1:
        note = ""
    elif v1.h12 == 0 or v2.h12 == 0:
        note = ""
    else:
        note = (
            "existence of a matching polarized K3 pair is assumed "
            "(moduli surjectivity needs one rigid side)"
        )
    triple = CyInvariantTriple(int(rho3), int(rho_c2), int(h12))
    return triple, rank_one, note


_KNOWN_CY = (
    ("X(8)", CyInvariantTriple(2, 44), "degree-8 hypersurface in P(1,1,1,1,4)"),
    ("X(6)", CyInvariantTriple(3, 42, 103), "degree-6 hypersurface in P(1,1,1,1,2)"),
    ("Z1", CyInvariantTriple(5, 50), "quintic 3-fold in P^4"),
    ("Z2", CyInvariantTriple(8, 56), "complete intersection (2,4) in P^5"),
    ("Z3", CyInvariantTriple(15, 66, 76), "rank-one Calabi-Yau with rho^3 = 15"),
    ("Z4", CyInvariantTriple(44, 92, 65), "rank-one Calabi-Yau with rho^3 = 44"),
)


def known_cy_table() -> tuple[tuple[str, CyInvariantTriple], ...]:
    """Reference Picard-rank-one Calabi-Yau 3-folds used for comparisons."""
    return tuple((label, triple) for label, triple, _ in _KNOWN_CY)


def known_cy_lookup(label: str) -> CyInvariantTriple | None:
    for name, triple, _ in _KNOWN_CY:
        if name.lower() == label.strip().lower():
            return triple
    return None


# The seven new rank-one examples: (label, id of V1, id of V2).
XI_PAIRS = (
    ("Xi1", "X22", "MM-12.3-15"),
    ("Xi2", "X22", "MM-12.3-16"),
    ("Xi3", "X22", "MM-12.4-6"),
    ("Xi4", "dP5", "MM-12.3-4"),
    ("Xi5", "Q", "MM-12.3-2"),
    ("Xi6", "Q", "P1xS1"),
    ("Xi7", "P3", "MM-12.3-1"),
)


def xi_examples(catalog: Iterable[FanoFamily]):
    """The seven constructed rank-one Calabi-Yau examples with their triples."""
    catalog = list(catalog)
    out = []
    for label, id1, id2 in XI_PAIRS:
        v1 = find_family(catalog, id1)
        v2 = find_family(catalog, id2)
        triple, rank_one, _ = cy_invariants(v1, v2)
        if not rank_one:
            raise CatalogError("example %s is not Picard rank one" % label)
        out.append((label, triple))
    return tuple(out)
