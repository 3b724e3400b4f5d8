"""Rank specifications, derived classes, presets, bounded subgroup, reports."""

import pytest

from frlab.classes import builtin
from frlab.errors import UnsupportedBase
from frlab.rankfn import (
    FRClass,
    RankEntry,
    RankSpec,
    fr_class,
    in_fr,
    is_good,
    is_very_good,
    preset,
    rank_spec,
    simple_section_bound,
    t2_structure,
    z_grfn,
)
from frlab.recipes import build

ONE = frozenset({1})
NONE = frozenset()

A1 = rank_spec(default=(ONE, NONE))
B1 = rank_spec(default=(NONE, ONE))


def test_rank_spec_validation():
    with pytest.raises(ValueError):
        RankSpec(8, [RankEntry("abelian", ONE, NONE)])  # not total
    with pytest.raises(ValueError):
        rank_spec(default=(ONE, ONE))  # A and B overlap
    with pytest.raises(ValueError):
        rank_spec(bound=4, default=(frozenset({5}), NONE))  # out of range
    with pytest.raises(ValueError):
        RankSpec(8, [RankEntry("default", ONE, NONE),
                     RankEntry("default", NONE, ONE)])  # duplicate


def test_rank_spec_resolution_order():
    R = rank_spec(abelian=(ONE, NONE), nonabelian=(NONE, ONE),
                  exact={60: (frozenset({2}), NONE)})
    from frlab.series import SimpleTypeKey
    a5_key = SimpleTypeKey(60, False, ())
    c2_key = SimpleTypeKey(2, True, ())
    other_key = SimpleTypeKey(168, False, ())
    assert R.resolve(a5_key) == (frozenset({2}), NONE)
    assert R.resolve(c2_key) == (ONE, NONE)
    assert R.resolve(other_key) == (NONE, ONE)


def test_good_and_very_good_examples():
    assert is_good(A1) and is_very_good(A1)
    assert is_good(B1) and is_very_good(B1)
    bad = rank_spec(exact={60: (frozenset({4}), NONE)},
                    default=(NONE, NONE))
    assert not is_good(bad)  # 2 divides 4 but is missing
    divisors_only = rank_spec(default=(frozenset({1, 2, 4}), NONE))
    assert is_good(divisors_only)
    assert not is_very_good(divisors_only)  # 3 <= 4 missing
    mixed = rank_spec(default=(frozenset({1}), frozenset({2, 4})))
    assert is_good(mixed)
    assert not is_very_good(mixed)  # 3 <= 4 missing from B


def test_in_fr_examples(a5, s4, s5):
    E = builtin("E")
    uc = preset(2)
    assert in_fr(a5, uc.base, uc.rank).member
    dec = in_fr(s4, uc.base, uc.rank)
    assert not dec.member
    bad = [e for e in dec.factor_log if not e.ok]
    assert bad and bad[0].rank == 2  # the rank-2 abelian factor
    nstar = preset(6)
    assert not in_fr(s5, nstar.base, nstar.rank).member
    assert in_fr(build("sl2(5)"), nstar.base, nstar.rank).member


def test_preset_identities_pointwise(tiny_catalog):
    p1 = preset(1)
    p5 = preset(5)
    U, N = builtin("U"), builtin("N")
    for entry in tiny_catalog:
        assert p1.fr.member(entry.group) == U.member(entry.group), entry.label
        assert p5.fr.member(entry.group) == N.member(entry.group), entry.label


def test_preset_roster():
    for i in range(1, 10):
        p = preset(i)
        assert p.index == i
        assert p.fr.flags.formation and p.fr.flags.solubly_saturated
    # stock Jc preset: restricting the alternating type of order 60
    p3 = preset(3, j_orders=[60])
    assert p3.fr.member(build("alternating(5)"))
    assert p3.fr.member(build("symmetric(4)"))


def test_preset3_restricts_listed_types_only(s5):
    # with the A5 type listed, every A5-chief factor must be simple
    p3 = preset(3, j_orders=[60])
    w = build("wreath(alternating(5), 2)")
    assert not p3.fr.member(w)  # rank-2 A5 factor
    assert p3.fr.member(s5)  # rank-1 A5 factor, anything else free


def test_preset_8_9_reject_bad_bases():
    with pytest.raises(UnsupportedBase):
        preset(8, base=builtin("E"))
    with pytest.raises(UnsupportedBase):
        preset(9, base=builtin("0"))


def test_preset_8_on_supersoluble_base(tiny_catalog):
    p8 = preset(8, base=builtin("U"))
    # members must have all abelian factors U-central and non-abelian ones
    # with inner action; on S4 the V4 factor is U-eccentric, so S4 is out
    assert not p8.fr.member(build("symmetric(4)"))
    assert p8.fr.member(build("symmetric(3)"))
    assert p8.fr.member(build("direct(alternating(5), cyclic(2))"))


def test_preset_9_uca(s4):
    p9 = preset(9, base=builtin("U"))
    assert p9.fr.member(build("alternating(5)"))
    assert not p9.fr.member(s4)  # V4 factor is U-eccentric abelian
    assert p9.fr.member(build("symmetric(3)"))


def test_fr_class_flags():
    N = builtin("N")
    good = fr_class(N, B1)
    assert good.flags.normally_hereditary
    bad_rank = rank_spec(exact={60: (frozenset({4}), NONE)},
                         default=(NONE, ONE))
    assert not fr_class(N, bad_rank).flags.normally_hereditary
    assert fr_class(builtin("E"), A1).flags.formation


def test_quotient_closure_of_presets(tiny_catalog):
    from frlab.grouptable import quotient
    from frlab.lattice import normal_subgroups
    for p in (preset(2), preset(6), preset(7)):
        for entry in tiny_catalog:
            G = entry.group
            if G.order > 30 or not p.fr.member(G):
                continue
            for N in normal_subgroups(G):
                Q, _ = quotient(G, N)
                assert p.fr.member(Q), (entry.label, p.name)


def test_z_grfn_examples(s4, sl25):
    N = builtin("N")
    z = z_grfn(sl25, B1, N, 4)
    assert z.size == 2  # the center; the top factor has rank 1, not > 4
    assert z_grfn(s4, B1, N, 4).size == 1
    # members: the whole group qualifies at any floor
    d8 = build("dihedral(4)")
    assert z_grfn(d8, B1, N, 7).size == 8


def test_z_grfn_maximality_certified(small_catalog):
    from frlab.rankfn import _z_candidate_ok
    from frlab.lattice import normal_subgroups
    N = builtin("N")
    for entry in small_catalog:
        G = entry.group
        if G.order > 60:
            continue
        z = z_grfn(G, B1, N, 4)
        for cand in normal_subgroups(G):
            if cand.size > z.size or not z.contains(cand):
                if cand.contains(z) and cand.size > z.size:
                    assert not _z_candidate_ok(G, cand, B1, N, 4)


def test_simple_section_bound():
    assert simple_section_bound(builtin("N")) == (4, 4)
    assert simple_section_bound(builtin("U")) == (4, 4)
    assert simple_section_bound(builtin("S")) == (4, 4)


def test_t2_structure_examples(s5, sl25):
    N = builtin("N")
    rep = t2_structure(sl25, N, B1)
    assert rep.verdict_member and rep.verdict_bounded and rep.verdict_residual
    rep2 = t2_structure(s5, N, B1)
    assert not (rep2.verdict_member or rep2.verdict_bounded
                or rep2.verdict_residual)
    rep3 = t2_structure(build("dihedral(4)"), N, B1)
    assert rep3.consistent and rep3.verdict_member


def test_t2_structure_needs_flags():
    from frlab.errors import MissingFlag
    with pytest.raises(MissingFlag):
        t2_structure(build("cyclic(2)"), builtin("E"), B1)


def test_in_fr_jh_stability(small_catalog):
    p6 = preset(6)
    for entry in small_catalog:
        if entry.group.order > 120:
            continue
        in_fr(entry.group, p6.base, p6.rank, check_jh=True)
