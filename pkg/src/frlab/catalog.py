"""The curated test corpus, organized in nested tiers.

Coverage is by structural phenomenon rather than by exhaustive order:
soluble critical groups, central extensions of simple groups, outer-action
witnesses, wreath products with higher-rank chief factors, and enough
direct products to exercise subdirect arguments.
"""

from __future__ import annotations

from dataclasses import dataclass

from .grouptable import GroupTable
from .recipes import build

TIERS = ("tiny", "small", "medium")

# the witness tag carries the large wreath products that the medium sweep
# needs for rank-2 non-abelian factors; they answer to the construction cap
# rather than the medium order bound
_TIER_BOUND = {"tiny": 60, "small": 200, "medium": 2000, "witness": 20000}

# order <= 60
_TINY: list[tuple[str, str]] = [
    ("C1", "cyclic(1)"),
    ("C2", "cyclic(2)"),
    ("C3", "cyclic(3)"),
    ("C4", "cyclic(4)"),
    ("C5", "cyclic(5)"),
    ("C6", "cyclic(6)"),
    ("C7", "cyclic(7)"),
    ("C8", "cyclic(8)"),
    ("C9", "cyclic(9)"),
    ("C10", "cyclic(10)"),
    ("C12", "cyclic(12)"),
    ("C30", "cyclic(30)"),
    ("C2xC2", "direct(cyclic(2), cyclic(2))"),
    ("C2xC2xC2", "direct(cyclic(2), cyclic(2), cyclic(2))"),
    ("C2xC4", "direct(cyclic(2), cyclic(4))"),
    ("C3xC3", "direct(cyclic(3), cyclic(3))"),
    ("C5xC5", "direct(cyclic(5), cyclic(5))"),
    ("C4xC4", "direct(cyclic(4), cyclic(4))"),
    ("C2xC2xC3", "direct(cyclic(2), cyclic(2), cyclic(3))"),
    ("S3", "symmetric(3)"),
    ("S4", "symmetric(4)"),
    ("A4", "alternating(4)"),
    ("A5", "alternating(5)"),
    ("D8", "dihedral(4)"),
    ("D10", "dihedral(5)"),
    ("D12", "dihedral(6)"),
    ("D14", "dihedral(7)"),
    ("D16", "dihedral(8)"),
    ("D18", "dihedral(9)"),
    ("D20", "dihedral(10)"),
    ("Q8", "quaternion(8)"),
    ("Q12", "quaternion(12)"),
    ("Q16", "quaternion(16)"),
    ("Q20", "quaternion(20)"),
    ("SL(2,3)", "sl2(3)"),
    ("C2xS3", "direct(cyclic(2), symmetric(3))"),
    ("C3xS3", "direct(cyclic(3), symmetric(3))"),
    ("C2xA4", "direct(cyclic(2), alternating(4))"),
    ("C2xD8", "direct(cyclic(2), dihedral(4))"),
    ("C2xQ8", "direct(cyclic(2), quaternion(8))"),
    ("C2xC2xS3", "direct(cyclic(2), cyclic(2), symmetric(3))"),
    ("C2xS4", "direct(cyclic(2), symmetric(4))"),
    ("C3xA4", "direct(cyclic(3), alternating(4))"),
    ("S3xS3", "direct(symmetric(3), symmetric(3))"),
    ("F20", "semidirect(cyclic(5), cyclic(4), pow(2))"),
    ("C7:C3", "semidirect(cyclic(7), cyclic(3), pow(2))"),
    ("C9:C3", "semidirect(cyclic(9), cyclic(3), pow(4))"),
    ("C13:C3", "semidirect(cyclic(13), cyclic(3), pow(3))"),
    ("C11:C5", "semidirect(cyclic(11), cyclic(5), pow(3))"),
    ("C7:C6", "semidirect(cyclic(7), cyclic(6), pow(3))"),
    ("C3wrC2", "wreath(cyclic(3), 2)"),
    ("C5wrC2", "wreath(cyclic(5), 2)"),
    ("C2wrS3", "wreath(cyclic(2), 3)"),
    ("C2wrregC3", "wreath_reg(cyclic(2), cyclic(3))"),
]

# 60 < order <= 200
_SMALL: list[tuple[str, str]] = [
    ("SL(2,5)", "sl2(5)"),
    ("S5", "symmetric(5)"),
    ("A5xC2", "direct(alternating(5), cyclic(2))"),
    ("PSL(2,7)", "psl2(7)"),
    ("C3xA5", "direct(cyclic(3), alternating(5))"),
    ("S3xS4", "direct(symmetric(3), symmetric(4))"),
    ("A4xA4", "direct(alternating(4), alternating(4))"),
    ("S3wrC2", "wreath(symmetric(3), 2)"),
    ("C3wrS3", "wreath(cyclic(3), 3)"),
    ("C2wrregV4", "wreath_reg(cyclic(2), direct(cyclic(2), cyclic(2)))"),
    ("Q8xQ8", "direct(quaternion(8), quaternion(8))"),
    ("D8xD8", "direct(dihedral(4), dihedral(4))"),
    ("D16xD8", "direct(dihedral(8), dihedral(4))"),
    ("C2xC2xS4", "direct(cyclic(2), cyclic(2), symmetric(4))"),
    ("C3xC3xD8", "direct(cyclic(3), cyclic(3), dihedral(4))"),
    ("C2xSL(2,3)xC2", "direct(cyclic(2), sl2(3), cyclic(2))"),
    ("D64", "dihedral(32)"),
    ("D100", "dihedral(50)"),
    ("Q64", "quaternion(64)"),
    ("C64", "cyclic(64)"),
    ("C100", "cyclic(100)"),
    ("C128", "cyclic(128)"),
    ("C17:C8", "semidirect(cyclic(17), cyclic(8), pow(2))"),
    ("C19:C9", "semidirect(cyclic(19), cyclic(9), pow(4))"),
    ("C25:C4", "semidirect(cyclic(25), cyclic(4), pow(7))"),
    ("C2xF20", "direct(cyclic(2), semidirect(cyclic(5), cyclic(4), pow(2)))"),
    ("S3xD10", "direct(symmetric(3), dihedral(5))"),
    ("A4xD10", "direct(alternating(4), dihedral(5))"),
    ("C7:C3xS3", "direct(semidirect(cyclic(7), cyclic(3), pow(2)), symmetric(3))"),
    ("S4xC8", "direct(symmetric(4), cyclic(8))"),
]

# 200 < order, within table caps
_MEDIUM: list[tuple[str, str]] = [
    ("A6", "alternating(6)"),
    ("S6", "symmetric(6)"),
    ("PSL(2,8)", "psl2(8)"),
    ("PSL(2,11)", "psl2(11)"),
    ("PSL(2,13)", "psl2(13)"),
    ("SL(2,7)", "sl2(7)"),
    ("PSL(2,7)xC2", "direct(psl2(7), cyclic(2))"),
    ("A5xS3", "direct(alternating(5), symmetric(3))"),
]

_WITNESS: list[tuple[str, str]] = [
    ("A5wrC2", "wreath(alternating(5), 2)"),
]


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    recipe: str
    tier: str
    group: GroupTable


class Catalog:
    def __init__(self, entries: list[CatalogEntry]):
        self.entries = entries
        labels = [e.label for e in entries]
        assert len(labels) == len(set(labels)), "catalog labels must be unique"

    def groups(self) -> list[GroupTable]:
        return [e.group for e in self.entries]

    def labelled(self) -> list[tuple[str, GroupTable]]:
        return [(e.label, e.group) for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def get(self, label: str) -> GroupTable:
        for e in self.entries:
            if e.label == label:
                return e.group
        raise KeyError(label)


_CACHE: dict[str, Catalog] = {}


def tier_recipes(tier: str) -> list[tuple[str, str, str]]:
    if tier not in TIERS:
        raise ValueError(f"tier must be one of {TIERS}, got {tier!r}")
    rows = [(label, rec, "tiny") for label, rec in _TINY]
    if tier in ("small", "medium"):
        rows += [(label, rec, "small") for label, rec in _SMALL]
    if tier == "medium":
        rows += [(label, rec, "medium") for label, rec in _MEDIUM]
        rows += [(label, rec, "witness") for label, rec in _WITNESS]
    return rows


def default_catalog(tier: str = "small") -> Catalog:
    got = _CACHE.get(tier)
    if got is None:
        entries = []
        for label, rec, row_tier in tier_recipes(tier):
            g = build(rec, label=label)
            bound = _TIER_BOUND[row_tier]
            assert g.order <= bound, \
                f"{label} has order {g.order}, beyond its {row_tier} bound"
            entries.append(CatalogEntry(label, rec, row_tier, g))
        got = Catalog(entries)
        _CACHE[tier] = got
    return got


def build_one(label: str, tier: str = "medium") -> GroupTable:
    """Build a single catalog group by label without caching the tier."""
    for lbl, rec, _ in tier_recipes(tier):
        if lbl == label:
            return build(rec, label=label)
    raise KeyError(label)
