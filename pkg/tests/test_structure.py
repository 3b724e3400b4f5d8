"""Characteristic subgroups and structural predicates."""

import numpy as np
import pytest

from frlab.grouptable import Subgroup, quotient
from frlab.lattice import normal_subgroups
from frlab.recipes import build
from frlab.structure import (
    ascending_central_series,
    characteristic_subgroups,
    derived_series,
    fitting_subgroup,
    is_nilpotent,
    is_semisimple,
    is_soluble,
    soluble_radical,
    socle,
)


def test_s4_characteristic_sizes(s4):
    ch = characteristic_subgroups(s4)
    assert ch.frattini.size == 1
    assert ch.socle.size == 4
    assert ch.soluble_radical.size == 24
    assert ch.center.size == 1
    assert ch.fitting.size == 4
    assert ch.derived.size == 12
    assert ch.hypercenter_classical.size == 1


def test_q8_frattini_center_derived_coincide(q8):
    ch = characteristic_subgroups(q8)
    assert ch.frattini.size == 2
    assert ch.frattini == ch.center == ch.derived


def test_a5_characteristic(a5):
    ch = characteristic_subgroups(a5)
    assert ch.soluble_radical.size == 1
    assert ch.socle.size == 60
    assert ch.generalized_fitting_tilde.size == 60
    assert ch.fitting.size == 1


def test_sl25_generalized_fitting(sl25):
    ch = characteristic_subgroups(sl25)
    assert ch.center.size == 2
    assert ch.frattini.size == 2
    assert ch.fitting.size == 2
    # the quotient by Frattini is simple, so the tilde subgroup is everything
    assert ch.generalized_fitting_tilde.size == 120


def test_fitting_matches_normal_scan_oracle(s4, q8, sl25):
    # independent route: join of all nilpotent normal subgroups
    for G in (s4, q8, sl25):
        nil = [N for N in normal_subgroups(G) if is_nilpotent(N.as_group())]
        join = nil[0]
        for N in nil[1:]:
            join = join.join(N)
        assert fitting_subgroup(G) == join
        assert is_nilpotent(join.as_group())


def test_derived_series_and_solubility(s4, a5, sl25):
    assert [t.size for t in derived_series(s4)] == [24, 12, 4, 1]
    assert is_soluble(s4)
    assert not is_soluble(a5)
    assert not is_soluble(sl25)
    # derived series of SL(2,5) stabilizes at the perfect group itself
    assert derived_series(sl25)[-1].size == 120


def test_nilpotency_oracle_cross_check(tiny_catalog):
    # all Sylow normal must agree with "ascending central series reaches G"
    for entry in tiny_catalog:
        G = entry.group
        classical = ascending_central_series(G)[-1].size == G.order
        assert is_nilpotent(G) == classical, entry.label


def test_hypercenter_classical_examples():
    c2s3 = build("direct(cyclic(2), symmetric(3))")
    assert characteristic_subgroups(c2s3).hypercenter_classical.size == 2
    d8 = build("dihedral(4)")
    assert characteristic_subgroups(d8).hypercenter_classical.size == 8


def test_socle_of_direct_product():
    g = build("direct(symmetric(3), symmetric(3))")
    assert socle(g).size == 9  # C3 x C3


def test_is_semisimple(a5, s4, sl25):
    assert is_semisimple(a5)
    assert not is_semisimple(s4)
    assert not is_semisimple(sl25)
    assert is_semisimple(build("cyclic(1)"))
    assert is_semisimple(build("direct(alternating(5), alternating(5))"))


def test_soluble_radical_examples(s4, a5, sl25):
    assert soluble_radical(s4).size == 24
    assert soluble_radical(a5).size == 1
    assert soluble_radical(sl25).size == 2
    mixed = build("direct(alternating(5), symmetric(3))")
    assert soluble_radical(mixed).size == 6
