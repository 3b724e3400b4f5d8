"""Chief series, factor structure, the rank condition, and its oracles."""

import itertools

import numpy as np
import pytest

from frlab.grouptable import Subgroup, quotient, subgroup_from_mask, p_core
from frlab.lattice import normal_subgroups
from frlab.recipes import build
from frlab.rankfn import rank_spec
from frlab.series import (
    ChiefFactorView,
    chief_series,
    chief_series_through,
    cp_subgroup,
    decompose_factor,
    factor_signature,
    gr_in_r,
    inner_action_profile,
)
from frlab.structure import derived_series

from conftest import subgroup_members

B1 = rank_spec(default=(frozenset(), frozenset({1})))
A1 = rank_spec(default=(frozenset({1}), frozenset()))


def test_chief_series_s4(s4):
    rec = chief_series(s4)
    assert [t.size for t in rec.terms] == [1, 4, 12, 24]
    # every factor is a minimal normal subgroup of the quotient
    for f in rec.factors():
        Q, pi = quotient(s4, f.lower)
        img = np.zeros(Q.order, dtype=bool)
        img[pi.image_of[f.upper.elements()]] = True
        from frlab.lattice import minimal_normal_subgroups
        assert any(np.array_equal(img, M.members)
                   for M in minimal_normal_subgroups(Q))


def test_chief_series_c6_either_refinement():
    c6 = build("cyclic(6)")
    lo = chief_series(c6, tie="min")
    hi = chief_series(c6, tie="max")
    assert {f.factor_order for f in lo.factors()} == {2, 3}
    assert {f.factor_order for f in hi.factors()} == {2, 3}
    assert [t.size for t in lo.terms] != [t.size for t in hi.terms]


def test_chief_series_sl25(sl25):
    rec = chief_series(sl25)
    assert [t.size for t in rec.terms] == [1, 2, 120]
    f_center, f_top = rec.factors()
    assert f_center.is_abelian and f_center.factor_order == 2
    assert not f_top.is_abelian
    assert f_top.rank == 1 and f_top.type_key.order == 60


def test_chief_series_through(s4, a5):
    a4 = derived_series(s4)[1]
    rec = chief_series_through(s4, a4)
    assert [t.size for t in rec.terms] == [1, 4, 12, 24]
    a5c2 = build("direct(alternating(5), cyclic(2))")
    mask = np.zeros(120, dtype=bool)
    # the A5 direct factor consists of the pairs (a, 0)
    mask[np.flatnonzero(np.arange(120) % 2 == 0)] = True
    a5part = subgroup_from_mask(a5c2, mask)
    rec2 = chief_series_through(a5c2, a5part)
    assert a5part in list(rec2.terms)
    whole = chief_series_through(s4, Subgroup(s4, np.ones(24, dtype=bool),
                                              check=False))
    assert [t.size for t in whole.terms] == [1, 4, 12, 24]


def test_decompose_factor_examples(s4, sl25):
    f_v4 = chief_series(s4).factors()[0]
    parts = decompose_factor(f_v4)
    assert len(parts) == 2 and all(p.size == 2 for p in parts)
    f_a5 = chief_series(sl25).factors()[1]
    assert len(decompose_factor(f_a5)) == 1


def test_decompose_wreath_base_rank_two():
    w = build("wreath(alternating(5), 2)")
    f = chief_series(w).factors()[0]
    assert f.factor_order == 3600
    parts = decompose_factor(f)
    assert len(parts) == 2 and all(p.size == 60 for p in parts)


def test_rank_multiplicativity(small_catalog):
    for entry in small_catalog:
        for f in chief_series(entry.group).factors():
            assert f.factor_order == f.type_key.order ** f.rank


def test_nonabelian_decomposition_matches_minimal_normals(sl25):
    f = chief_series(sl25).factors()[1]
    F = f.factor_group()
    from frlab.lattice import minimal_normal_subgroups
    mins = minimal_normal_subgroups(F)
    assert {m.key for m in mins} == {p.key for p in decompose_factor(f)}


def test_gr_a_route(s3):
    f_c3 = chief_series(s3).factors()[0]
    dec = gr_in_r(f_c3, A1)
    assert dec.in_r and dec.via == "A" and dec.rank == 1


def test_gr_b_route_fails_on_s5(s5):
    f = chief_series(s5).factors()[0]
    assert f.type_key.order == 60
    dec = gr_in_r(f, B1)
    assert not dec.in_r and dec.via is None
    assert dec.witness is not None
    # the witness element must be an odd permutation (outside A5)
    assert not f.upper.members[dec.witness.element]


def test_gr_b_route_succeeds_on_sl25(sl25):
    f = chief_series(sl25).factors()[1]
    dec = gr_in_r(f, B1)
    assert dec.in_r and dec.via == "B"


def test_gr_rank_outside_sets(s4):
    f_v4 = chief_series(s4).factors()[0]
    dec = gr_in_r(f_v4, A1)  # rank 2, A = {1}
    assert not dec.in_r and dec.rank == 2


def _abelian_inner_oracle(cf):
    """Exhaustive scan over x-invariant index-p section pairs."""
    Q, pi = cf.bar()
    hbar = cf.hbar()
    helems = hbar.elements().tolist()
    p = cf.char_prime
    subgroups = []
    for r in range(len(helems) + 1):
        for combo in itertools.combinations(helems, r):
            s = set(combo)
            if 0 not in s:
                continue
            if any(int(Q.mul[a, b]) not in s for a in s for b in s):
                continue
            subgroups.append(s)
    ok = np.ones(Q.order, dtype=bool)
    for x in range(Q.order):
        perm = Q.conj_perm(x)
        inv_subs = [s for s in subgroups if {int(perm[a]) for a in s} == s]
        for upper in inv_subs:
            for lower in inv_subs:
                if not lower < upper or len(upper) != p * len(lower):
                    continue
                # trivial induced action: x-conjugate stays in the same coset
                for h in upper:
                    moved = int(perm[h])
                    if int(Q.mul[moved, Q.inv[h]]) not in lower:
                        ok[x] = False
                        break
                if not ok[x]:
                    break
            if not ok[x]:
                break
    return ok


@pytest.mark.parametrize("recipe", [
    "symmetric(4)", "wreath(cyclic(3), 2)", "direct(cyclic(3), cyclic(3))",
    "semidirect(cyclic(7), cyclic(3), pow(2))", "dihedral(5)",
])
def test_abelian_inner_profile_matches_exhaustive_oracle(recipe):
    G = build(recipe)
    for f in chief_series(G).factors():
        if not f.is_abelian or f.factor_order > 32:
            continue
        _, _, ok = inner_action_profile(f)
        oracle = _abelian_inner_oracle(f)
        assert np.array_equal(ok, oracle), (recipe, f.factor_order)


def test_gr_monotone_in_rank_sets(small_catalog):
    bigger = rank_spec(default=(frozenset({1, 2, 3}), frozenset({4})))
    smaller = rank_spec(default=(frozenset({1}), frozenset()))
    for entry in small_catalog:
        if entry.group.order > 60:
            continue
        for f in chief_series(entry.group).factors():
            if gr_in_r(f, smaller).in_r:
                assert gr_in_r(f, bigger).in_r


def test_cp_subgroup_examples(s4):
    assert cp_subgroup(s4, 2).size == 4  # V4 itself
    assert cp_subgroup(s4, 3).size == 12  # centralizer of the order-3 factor
    assert cp_subgroup(s4, 5).size == 24  # no abelian 5-chief factors


def test_cp_subgroup_series_independent(small_catalog):
    for entry in small_catalog:
        G = entry.group
        if G.order > 100:
            continue
        for p in (2, 3):
            assert cp_subgroup(G, p, tie="min") == cp_subgroup(G, p, tie="max")


def test_signature_multisets_jordan_hoelder(tiny_catalog):
    for entry in tiny_catalog:
        G = entry.group
        lo = [factor_signature(f) for f in chief_series(G, "min").factors()]
        hi = [factor_signature(f) for f in chief_series(G, "max").factors()]
        assert sorted(map(repr, lo)) == sorted(map(repr, hi)), entry.label


def test_signature_differs_between_ranks(s4):
    f_v4, f_c3, _ = chief_series(s4).factors()
    assert factor_signature(f_v4) != factor_signature(f_c3)


def test_signature_multiset_c2c2s3():
    g = build("direct(cyclic(2), cyclic(2), symmetric(3))")
    lo = [factor_signature(f) for f in chief_series(g, "min").factors()]
    hi = [factor_signature(f) for f in chief_series(g, "max").factors()]
    assert sorted(map(repr, lo)) == sorted(map(repr, hi))


def test_type_keys_separate_isomorphism_types(small_catalog):
    from frlab.construct import is_isomorphic
    reps = {}
    for entry in small_catalog:
        for f in chief_series(entry.group).factors():
            S = f.simple_factors()[0].as_group()
            if S.order > 120:
                continue
            key = f.type_key
            if key in reps:
                assert is_isomorphic(reps[key], S)
            else:
                reps[key] = S
