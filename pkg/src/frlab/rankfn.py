"""Rank specifications on chief factors and the classes they carve out.

A RankSpec assigns to each simple isomorphism type a disjoint pair (A, B)
of admissible ranks.  A chief factor passes when its rank lies in A, or
lies in B and every group element fixing a composition factor of the
section induces an inner automorphism on it.  Combining a base class with
a RankSpec yields the derived class: members are the groups whose
base-eccentric chief factors all avoid the base and pass the rank test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .classes import (
    CentralityDecision,
    ClassFlags,
    ClassSpec,
    builtin,
    is_f_central,
)
from .errors import MissingFlag, UnsupportedBase
from .grouptable import GroupTable, Subgroup, center, quotient, subgroup_from_mask
from .lattice import (
    all_subgroups,
    intersect_all,
    join_all,
    minimal_normal_subgroups,
    normal_subgroups,
)
from .series import (
    ChiefFactorView,
    GrDecision,
    chief_series,
    chief_series_through,
    factors_below,
    gr_in_r,
)
from .structure import is_soluble, prime_divisors, socle
from .classes import e_closure, residual


# -- rank specifications ------------------------------------------------------


Selector = object  # 'abelian' | 'nonabelian' | 'default' | ('order', n)

_SELECTOR_RANK = {"exact": 0, "abelian": 1, "nonabelian": 1, "default": 2}


@dataclass(frozen=True)
class RankEntry:
    selector: object
    a_set: frozenset
    b_set: frozenset
    a_unbounded: bool = False  # declared "all ranks", stored as [1, bound]
    b_unbounded: bool = False

    def describe(self) -> str:
        sel = (f"order:{self.selector[1]}" if isinstance(self.selector, tuple)
               else str(self.selector))
        def slot(s, unb):
            return "all" if unb else "{" + ",".join(map(str, sorted(s))) + "}"
        return f"{sel} A={slot(self.a_set, self.a_unbounded)} B={slot(self.b_set, self.b_unbounded)}"


def _materialize(entry: RankEntry, bound: int) -> tuple[frozenset, frozenset]:
    full = frozenset(range(1, bound + 1))
    a = full if entry.a_unbounded else entry.a_set
    b = full - a if entry.b_unbounded else entry.b_set
    return a, b


class RankSpec:
    """Per-simple-type admissible rank pairs with a finite bound."""

    def __init__(self, bound: int, entries: Sequence[RankEntry]):
        if bound < 1:
            raise ValueError("bound must be at least 1")
        self.bound = bound
        self.entries = tuple(entries)
        kinds = {e.selector if isinstance(e.selector, str) else "exact"
                 for e in self.entries}
        if "default" not in kinds and not {"abelian", "nonabelian"} <= kinds:
            raise ValueError("rank spec does not resolve every simple type; "
                             "add a default entry or both abelian/nonabelian")
        seen = set()
        for e in self.entries:
            if e.selector in seen:
                raise ValueError(f"duplicate selector {e.selector!r}")
            seen.add(e.selector)
            a, b = _materialize(e, bound)
            if a & b:
                raise ValueError(f"A and B overlap for selector {e.selector!r}")
            if any(x < 1 or x > bound for x in a | b):
                raise ValueError("rank sets must lie within [1, bound]")

    def resolve(self, type_key) -> tuple[frozenset, frozenset]:
        exact = None
        kind = None
        default = None
        for e in self.entries:
            if isinstance(e.selector, tuple) and e.selector[1] == type_key.order:
                exact = e
            elif e.selector == ("nonabelian", "abelian")[type_key.abelian]:
                kind = e
            elif e.selector == "default":
                default = e
        entry = exact or kind or default
        assert entry is not None, "resolution is total by construction"
        return _materialize(entry, self.bound)

    @property
    def id(self) -> str:
        return f"rank[{self.bound}|" + ";".join(
            e.describe() for e in self.entries) + "]"

    def __repr__(self) -> str:
        return f"RankSpec({self.id})"


def rank_spec(bound: int = 8, *,
              abelian: Optional[tuple] = None,
              nonabelian: Optional[tuple] = None,
              default: Optional[tuple] = None,
              exact: Optional[dict] = None,
              unbounded_a: Sequence[object] = (),
              unbounded_b: Sequence[object] = ()) -> RankSpec:
    """Convenience constructor; each slot is a pair (A, B) of rank sets."""
    entries = []

    def add(selector, pair):
        a, b = pair
        entries.append(RankEntry(
            selector, frozenset(a), frozenset(b),
            a_unbounded=selector in unbounded_a,
            b_unbounded=selector in unbounded_b))

    if abelian is not None:
        add("abelian", abelian)
    if nonabelian is not None:
        add("nonabelian", nonabelian)
    if default is not None:
        add("default", default)
    for order, pair in (exact or {}).items():
        add(("order", order), pair)
    return RankSpec(bound, entries)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def is_good(R: RankSpec) -> bool:
    """A divisor-closed, B divisor-closed into the union."""
    for e in R.entries:
        a, b = _materialize(e, R.bound)
        for x in a:
            if not all(d in a for d in _divisors(x)):
                return False
        for x in b:
            if not all(d in a | b for d in _divisors(x)):
                return False
    return True


def is_very_good(R: RankSpec) -> bool:
    """A downward-closed, B downward-closed."""
    for e in R.entries:
        a, b = _materialize(e, R.bound)
        for x in a:
            if not all(d in a for d in range(1, x)):
                return False
        for x in b:
            if not all(d in b for d in range(1, x)):
                return False
    return True


# -- membership in the derived class -------------------------------------------


@dataclass(frozen=True)
class FactorLogEntry:
    factor_order: int
    rank: int
    central: bool
    in_base: Optional[bool]
    gr: Optional[GrDecision]
    ok: bool


@dataclass(frozen=True)
class InFrDecision:
    member: bool
    factor_log: tuple[FactorLogEntry, ...]


def _factor_ok(G: GroupTable, f: ChiefFactorView, base: ClassSpec,
               R: RankSpec, route: str) -> FactorLogEntry:
    dec = is_f_central(G, f, base, route=route)
    if dec.central:
        return FactorLogEntry(f.factor_order, f.rank, True, None, None, True)
    in_base = base.member(f.factor_group())
    if in_base:
        return FactorLogEntry(f.factor_order, f.rank, False, True, None, False)
    gr = gr_in_r(f, R)
    return FactorLogEntry(f.factor_order, f.rank, False, False, gr, gr.in_r)


def in_fr(G: GroupTable, base: ClassSpec, R: RankSpec,
          check_jh: bool = True, route: str = "both") -> InFrDecision:
    """Membership in the rank-filtered class over the base.

    Every base-eccentric chief factor must avoid the base and pass the rank
    condition.  The verdict is recomputed on an independently refined chief
    series and must agree (Jordan-Hoelder robustness).
    """
    log = tuple(_factor_ok(G, f, base, R, route)
                for f in chief_series(G, tie="min").factors())
    member = all(e.ok for e in log)
    if check_jh:
        log2 = [_factor_ok(G, f, base, R, route)
                for f in chief_series(G, tie="max").factors()]
        member2 = all(e.ok for e in log2)
        assert member == member2, (
            f"chief-series choice changed the verdict on {G.label}")
    return InFrDecision(member, log)


def _allows_rank_one(R: RankSpec, abelian: bool) -> bool:
    """No entry of the given kind admits some rank while excluding rank 1.

    An entry with empty A u B forbids its factor type outright, which is
    vacuously fine for rank-1 containment arguments.
    """
    kind = "abelian" if abelian else "nonabelian"
    for e in R.entries:
        if isinstance(e.selector, tuple) or e.selector in (kind, "default"):
            a, b = _materialize(e, R.bound)
            union = a | b
            if union and 1 not in union:
                return False
    return True


class FRClass(ClassSpec):
    """The class derived from a base class and a rank specification.

    Carries the canonical composition data: prime slots inherited from the
    canonical base, zero slot the class itself.
    """

    def __init__(self, base: ClassSpec, rank: RankSpec,
                 canonical_base: Optional[ClassSpec] = None,
                 label: str = ""):
        self.base = base
        self.rank = rank
        self.canonical_base = canonical_base if canonical_base is not None else base
        cid = f"fr({base.id},{rank.id})"
        flags = ClassFlags(
            formation=True,
            solubly_saturated=True,
            normally_hereditary=base.flags.normally_hereditary and is_good(rank),
            contains_nilpotent=(base.flags.contains_nilpotent
                                or _allows_rank_one(rank, abelian=True)),
            contains_own_composition_factors=(
                _allows_rank_one(rank, abelian=True)
                and _allows_rank_one(rank, abelian=False)),
        )
        local = (self.canonical_base._local_def
                 if self.canonical_base.has_local_def else None)
        super().__init__(cid, lambda G: in_fr(G, base, rank).member, flags,
                         local_def=local, comp_def_zero=self,
                         display=label or f"{base.display}({rank.id})")


def fr_class(base: ClassSpec, R: RankSpec, label: str = "") -> FRClass:
    return FRClass(base, R, label=label)


# -- the nine stock presets ------------------------------------------------------


@dataclass(frozen=True)
class PresetSpec:
    index: int
    name: str
    base: ClassSpec
    rank: RankSpec
    canonical_base: Optional[ClassSpec]
    fr: FRClass = field(compare=False)

    def pair(self) -> tuple[ClassSpec, RankSpec]:
        return (self.base, self.rank)


def _need_flags(base: ClassSpec, names: list[str], who: str) -> None:
    missing = [n for n in names if not getattr(base.flags, n)]
    if missing:
        raise UnsupportedBase(f"{who} needs base flags {missing} on {base.id}")


def preset(i: int, *, j_orders: Sequence[int] = (),
           abelian_ranks: Optional[dict] = None,
           default_abelian: tuple = (frozenset(), frozenset()),
           base: Optional[ClassSpec] = None,
           bound: int = 8) -> PresetSpec:
    """The stock rank-class constructions, numbered 1..9.

    1 the supersoluble identity, 2 all-chief-factors-simple, 3 simple
    factors restricted to a type list, 4 plain rank functions on abelian
    factors, 5 the nilpotent identity, 6 inner-action-everywhere, 7 central
    abelian factors with simple non-abelian ones, 8 the inner-action class
    over a bigger base, 9 the central-abelian variant over a soluble base.
    """
    E = builtin("E")
    one = frozenset({1})
    none: frozenset = frozenset()
    if i == 1:
        R = rank_spec(bound, abelian=(one, none), nonabelian=(none, none))
        return PresetSpec(1, "U-identity", E, R, builtin("U"),
                          FRClass(E, R, builtin("U"), label="E(R1)"))
    if i == 2:
        R = rank_spec(bound, default=(one, none))
        return PresetSpec(2, "Uc", E, R, builtin("U"),
                          FRClass(E, R, builtin("U"), label="Uc"))
    if i == 3:
        # listed types must be simple; everything else passes at any rank
        R = RankSpec(bound, [RankEntry("default", frozenset(range(1, bound + 1)),
                                       none, a_unbounded=True)]
                     + [RankEntry(("order", int(o)), one, none)
                        for o in j_orders])
        return PresetSpec(3, "Jc", E, R, None, FRClass(E, R, label="Jc"))
    if i == 4:
        exact = {int(p): (frozenset(v), none)
                 for p, v in (abelian_ranks or {}).items()}
        R = rank_spec(bound, abelian=default_abelian,
                      nonabelian=(none, none), exact=exact)
        return PresetSpec(4, "rank-function", E, R, None,
                          FRClass(E, R, label="E(rankfn)"))
    if i == 5:
        R = rank_spec(bound, abelian=(none, one), nonabelian=(none, none))
        return PresetSpec(5, "N-identity", E, R, builtin("N"),
                          FRClass(E, R, builtin("N"), label="E(R5)"))
    if i == 6:
        R = rank_spec(bound, default=(none, one))
        return PresetSpec(6, "Nstar", E, R, builtin("N"),
                          FRClass(E, R, builtin("N"), label="Nstar"))
    if i == 7:
        R = rank_spec(bound, abelian=(none, one), nonabelian=(one, none))
        return PresetSpec(7, "Nca", E, R, builtin("N"),
                          FRClass(E, R, builtin("N"), label="Nca"))
    if i == 8:
        b = base or builtin("N")
        _need_flags(b, ["formation", "normally_hereditary", "saturated",
                        "contains_nilpotent"], "preset 8")
        R = rank_spec(bound, default=(none, one))
        return PresetSpec(8, f"{b.id}star", b, R, b,
                          FRClass(b, R, b, label=f"{b.display}*"))
    if i == 9:
        b = base or builtin("U")
        _need_flags(b, ["formation", "hereditary", "saturated",
                        "contains_nilpotent"], "preset 9")
        R = rank_spec(bound, abelian=(none, none), nonabelian=(one, none))
        return PresetSpec(9, f"{b.id}ca", b, R, b,
                          FRClass(b, R, b, label=f"{b.display}ca"))
    raise ValueError(f"preset index {i} out of range 1..9")


# -- the bounded hypercenter-like subgroup ---------------------------------------


def _z_candidate_ok(G: GroupTable, N: Subgroup, R: RankSpec, base: ClassSpec,
                    n_floor: int) -> bool:
    for f in factors_below(G, N):
        dec = is_f_central(G, f, base)
        if dec.central:
            continue
        if base.member(f.factor_group()):
            return False
        if f.rank <= n_floor:
            return False
        if not gr_in_r(f, R).in_r:
            return False
    return True


def z_grfn(G: GroupTable, R: RankSpec, base: ClassSpec, n_floor: int) -> Subgroup:
    """Largest normal subgroup whose base-eccentric factors below it avoid
    the base, have rank above the floor, and pass the rank condition.

    Brute force over the normal lattice; the join of all candidates must
    itself be a candidate, which doubles as the existence certificate.
    """
    cands = [N for N in normal_subgroups(G)
             if _z_candidate_ok(G, N, R, base, n_floor)]
    best = join_all(G, cands)
    assert _z_candidate_ok(G, best, R, base, n_floor), \
        "join of candidates lost the defining property"
    return best


# -- the three-way structure report ----------------------------------------------


_KNOWN_SIMPLE_SECTIONS = {
    # simple non-abelian section orders of S_m for m beyond honest scanning
    6: (60, 360),
    7: (60, 168, 360, 2520),
    8: (60, 168, 360, 2520, 20160),
}


def simple_section_bound(base: ClassSpec) -> tuple[int, int]:
    """(section reading, subgroup reading) of the least n such that the
    symmetric group of degree n+1 has a simple part outside the base.

    Degrees up to 5 are scanned exhaustively; beyond that the well-known
    simple sections of small symmetric groups decide, and both readings
    agree on every supported base.
    """
    from .construct import alternating_group, symmetric_group
    n_section = None
    n_group = None
    for m in range(2, 6):
        S = symmetric_group(m)
        section_types = set()
        simple_subgroups = []
        for H in all_subgroups(S):
            Hg = H.as_group()
            for f in chief_series(Hg).factors():
                section_types.add(f.simple_factors()[0].as_group())
            if Hg.order > 1 and len(normal_subgroups(Hg)) == 2:
                simple_subgroups.append(Hg)
        if n_section is None and any(not base.member(t) for t in section_types):
            n_section = m - 1
        if n_group is None and any(not base.member(h) for h in simple_subgroups):
            n_group = m - 1
        if n_section is not None and n_group is not None:
            return n_section, n_group
    for m in range(6, 9):
        if n_section is None:
            orders = _KNOWN_SIMPLE_SECTIONS[m]
            if 60 in orders and not base.member(alternating_group(5)):
                n_section = m - 1
    if n_section is None or n_group is None:
        raise MissingFlag(
            f"cannot certify a simple-section bound for {base.id} below S_9")
    return n_section, n_group


@dataclass(frozen=True)
class T2Report:
    group_label: str
    verdict_member: bool
    verdict_bounded: bool
    verdict_residual: bool
    n_section: int
    n_group: int
    details: str

    @property
    def consistent(self) -> bool:
        return (self.verdict_member == self.verdict_bounded
                == self.verdict_residual)


def t2_structure(G: GroupTable, base: ClassSpec, R: RankSpec) -> T2Report:
    """Evaluate the three equivalent structure statements independently.

    (1) plain membership; (2) the bounded subgroup with floor 4 leaves only
    low-rank passing factors and a soluble base quotient above the socle;
    (3) residual equalities plus the bounded subgroup at the symmetric-
    group-section floor.
    """
    for flag in ("solubly_saturated", "contains_nilpotent",
                 "contains_own_composition_factors"):
        if not getattr(base.flags, flag):
            raise MissingFlag(f"base {base.id} lacks {flag}")
    details = []

    v1 = in_fr(G, base, R).member

    # (2): bounded subgroup with floor 4
    Z = z_grfn(G, R, base, 4)
    Q, _ = quotient(G, Z)
    v2 = True
    for nbar in minimal_normal_subgroups(Q):
        from .grouptable import trivial_subgroup
        f = ChiefFactorView(Q, nbar, trivial_subgroup(Q))
        if f.rank > 4 or not gr_in_r(f, R).in_r:
            v2 = False
            details.append(f"(2) fails on minimal normal of order {nbar.size}")
            break
    if v2:
        soc = socle(Q)
        QS, _ = quotient(Q, soc)
        v2 = is_soluble(QS) and base.member(QS)
        if not v2:
            details.append("(2) quotient above socle not a soluble base member")

    # (3a) residual agreement
    res_base = residual(G, base)
    res_e = residual(G, e_closure(base))
    v3 = res_base == res_e
    if not v3:
        details.append("(3a) base and composition-closure residuals differ")
    # (3b) radical equals center in every residual quotient
    if v3:
        Rg = res_base.as_group()
        pos = np.full(G.order, -1, dtype=np.int64)
        pos[res_base.elements()] = np.arange(res_base.size)
        ebase = e_closure(base)
        for N in normal_subgroups(G):
            if not res_base.contains(N):
                continue
            nmask = np.zeros(Rg.order, dtype=bool)
            nmask[pos[N.elements()]] = True
            Nin = subgroup_from_mask(Rg, nmask, check=False)
            H, _ = quotient(Rg, Nin)
            rad = join_all(H, [M for M in normal_subgroups(H)
                               if ebase.member(M.as_group())])
            if rad != center(H):
                v3 = False
                details.append(
                    f"(3b) radical/center mismatch at N of size {N.size}")
                break
    # (3c) bounded subgroup at the section floor
    n_section, n_group = simple_section_bound(base)
    if v3:
        T = res_base.meet(z_grfn(G, R, base, n_section))
        QT, piT = quotient(G, T)
        res_img = np.zeros(QT.order, dtype=bool)
        res_img[piT.image_of[res_base.elements()]] = True
        soc_mask = socle(QT).members
        if (res_img & ~soc_mask).any():
            v3 = False
            details.append("(3c) residual image not inside the socle")
        else:
            from .grouptable import trivial_subgroup
            for nbar in minimal_normal_subgroups(QT):
                if (nbar.members & ~res_img).any():
                    continue
                f = ChiefFactorView(QT, nbar, trivial_subgroup(QT))
                if (base.member(f.factor_group()) or f.rank > n_section
                        or not gr_in_r(f, R).in_r):
                    v3 = False
                    details.append(
                        f"(3c) fails on minimal normal of order {nbar.size}")
                    break
    return T2Report(G.label, v1, v2, v3, n_section, n_group,
                    "; ".join(details))
