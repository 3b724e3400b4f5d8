"""Subgroup lattice enumeration against exhaustive subset oracles."""

import numpy as np
import pytest

from frlab import caps
from frlab.errors import OrderCapExceeded
from frlab.grouptable import Subgroup
from frlab.lattice import (
    all_subgroups,
    frattini_subgroup,
    maximal_subgroups,
    minimal_normal_subgroups,
    normal_subgroups,
)
from frlab.recipes import build

from conftest import oracle_all_subgroups, oracle_is_normal, subgroup_members


def test_s3_subgroups_match_oracle(s3):
    subs = all_subgroups(s3)
    assert len(subs) == 6
    assert {frozenset(subgroup_members(h)) for h in subs} \
        == oracle_all_subgroups(s3)


def test_c4_subgroup_per_divisor():
    c4 = build("cyclic(4)")
    assert len(all_subgroups(c4)) == 3


def test_q8_subgroups_match_oracle(q8):
    subs = all_subgroups(q8)
    assert len(subs) == 6
    assert {frozenset(subgroup_members(h)) for h in subs} \
        == oracle_all_subgroups(q8)


def test_subgroup_list_sorted_and_unique(s4):
    subs = all_subgroups(s4)
    keys = [s.sort_key() for s in subs]
    assert keys == sorted(keys)
    assert len(set(k[1] for k in keys)) == len(subs)
    assert len(subs) == 30


def test_subgroup_cap(sl25):
    with caps.scoped(subgroup_enum=100):
        with pytest.raises(OrderCapExceeded):
            all_subgroups(build("sl2(5)"))


def test_normal_subgroups_s4_oracle(s4):
    normals = normal_subgroups(s4)
    assert sorted(n.size for n in normals) == [1, 4, 12, 24]
    expected = {frozenset(s) for s in oracle_all_subgroups(s4)
                if oracle_is_normal(s4, set(s))}
    assert {frozenset(subgroup_members(n)) for n in normals} == expected


def test_normal_subgroups_simple(a5):
    assert sorted(n.size for n in normal_subgroups(a5)) == [1, 60]


def test_abelian_all_subgroups_normal(c2xc2):
    assert len(normal_subgroups(c2xc2)) == len(all_subgroups(c2xc2)) == 5


def test_minimal_normal_subgroups(s4, a5):
    assert [n.size for n in minimal_normal_subgroups(s4)] == [4]
    assert [n.size for n in minimal_normal_subgroups(a5)] == [60]
    c2s3 = build("direct(cyclic(2), symmetric(3))")
    sizes = sorted(n.size for n in minimal_normal_subgroups(c2s3))
    assert sizes == [2, 3]


def test_maximal_subgroups_s4(s4):
    sizes = sorted(h.size for h in maximal_subgroups(s4))
    assert sizes == [6, 6, 6, 6, 8, 8, 8, 12]


def test_frattini_q8_and_s4(q8, s4):
    assert frattini_subgroup(q8).size == 2
    assert frattini_subgroup(s4).size == 1


def test_every_lattice_member_is_closed(s4):
    for H in all_subgroups(s4):
        elems = H.elements()
        assert H.members[s4.mul[np.ix_(elems, elems)]].all()
        assert s4.order % H.size == 0


def test_normals_are_conjugation_invariant(small_catalog):
    for entry in small_catalog:
        G = entry.group
        if G.order > 120:
            continue
        for N in normal_subgroups(G):
            assert N.is_normal()
