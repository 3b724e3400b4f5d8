"""Core table, subgroup, quotient, and section machinery."""

import numpy as np
import pytest

from frlab import caps
from frlab.errors import InvalidPermutation, NotASection, NotNormal, OrderCapExceeded
from frlab.grouptable import (
    GroupHom,
    Subgroup,
    centralizer_of_section,
    conjugation_hom,
    from_permutations,
    identity_hom,
    is_inner,
    normal_closure,
    perm_from_cycles,
    p_core,
    quotient,
    subgroup_generated,
    sylow_subgroup,
    trivial_subgroup,
)

from conftest import (
    oracle_center,
    oracle_centralizer_of_section,
    oracle_element_order,
    subgroup_members,
)


def test_from_permutations_s3():
    g = from_permutations(3, [perm_from_cycles(3, [(1, 2, 3)]),
                              perm_from_cycles(3, [(1, 2)])])
    assert g.order == 6


def test_from_permutations_trivial():
    g = from_permutations(1, [])
    assert g.order == 1
    assert g.element_orders.tolist() == [1]


def test_from_permutations_a5_order():
    g = from_permutations(5, [perm_from_cycles(5, [(1, 2, 3, 4, 5)]),
                              perm_from_cycles(5, [(1, 2, 3)])])
    # closure enumeration must agree with 5!/2
    assert g.order == 120 // 2


def test_from_permutations_rejects_bad_input():
    with pytest.raises(InvalidPermutation):
        from_permutations(3, [(0, 0, 1)])
    with pytest.raises(InvalidPermutation):
        perm_from_cycles(3, [(1, 4)])
    with pytest.raises(InvalidPermutation):
        perm_from_cycles(3, [(1, 2), (2, 3)])


def test_order_cap_enforced():
    with caps.scoped(table_order=10):
        with pytest.raises(OrderCapExceeded):
            from_permutations(4, [(1, 2, 3, 0), (1, 0, 2, 3)])


def test_identity_and_inverses(s4):
    n = s4.order
    assert s4.mul[0].tolist() == list(range(n))
    for x in range(n):
        assert s4.op(x, int(s4.inv[x])) == 0


def test_element_orders_match_oracle(s4, q8):
    for G in (s4, q8):
        for x in range(G.order):
            assert G.element_orders[x] == oracle_element_order(G, x)


def test_full_associativity_small_tables(s4, q8, d8):
    for G in (s4, q8, d8):
        for a in range(G.order):
            for b in range(G.order):
                for c in (0, 1, G.order - 1):
                    assert G.op(G.op(a, b), c) == G.op(a, G.op(b, c))
        m = G.mul
        assert np.array_equal(m[m], m[:, m])


def test_subgroup_lagrange_and_closure(s4):
    for x in range(s4.order):
        H = subgroup_generated(s4, [x])
        assert s4.order % H.size == 0
        elems = H.elements()
        assert H.members[s4.mul[np.ix_(elems, elems)]].all()
        assert H.members[s4.inv[elems]].all()


def test_subgroup_rejects_non_closed(s4):
    mask = np.zeros(s4.order, dtype=bool)
    mask[0] = True
    mask[1] = True  # a single non-involution cannot close
    if s4.element_orders[1] != 2:
        with pytest.raises(ValueError):
            Subgroup(s4, mask)


def test_quotient_s4_by_a4(s4):
    from frlab.structure import derived_series
    a4 = derived_series(s4)[1]
    Q, pi = quotient(s4, a4)
    assert Q.order == 2
    assert pi.is_homomorphism()


def test_quotient_by_trivial_is_identity(s4):
    Q, pi = quotient(s4, trivial_subgroup(s4))
    assert Q.order == s4.order
    assert pi.is_bijective()
    assert np.array_equal(pi.image_of, np.arange(s4.order))


def test_quotient_s4_by_v4_is_s3(s4, s3):
    from frlab.construct import is_isomorphic
    v4 = p_core(s4, 2)
    assert v4.size == 4
    Q, _ = quotient(s4, v4)
    assert is_isomorphic(Q, s3)


def test_quotient_requires_normality(s4):
    H = subgroup_generated(s4, [int(np.flatnonzero(s4.element_orders == 2)[0])])
    if not H.is_normal():
        with pytest.raises(NotNormal):
            quotient(s4, H)


def test_centralizer_of_section_examples(s4, s3):
    v4 = p_core(s4, 2)
    c = centralizer_of_section(s4, v4, trivial_subgroup(s4))
    assert c == v4
    full = Subgroup(s4, np.ones(s4.order, dtype=bool), check=False)
    assert centralizer_of_section(s4, full, full).size == s4.order
    c3 = p_core(s3, 3)
    cc = centralizer_of_section(s3, c3, trivial_subgroup(s3))
    assert subgroup_members(cc) == oracle_centralizer_of_section(
        s3, subgroup_members(c3), {0})
    assert cc == c3


def test_centralizer_of_section_validates(s4):
    v4 = p_core(s4, 2)
    t = trivial_subgroup(s4)
    with pytest.raises(NotASection):
        centralizer_of_section(s4, t, v4)


def test_center_matches_oracle(q8, s4, d8):
    from frlab.grouptable import center
    for G in (q8, s4, d8):
        assert subgroup_members(center(G)) == oracle_center(G)


def test_normal_closure_of_transposition_is_whole(s4):
    t = int(np.flatnonzero(~p_core(s4, 2).members
                           & (s4.element_orders == 2))[0])
    assert normal_closure(s4, [t]).size == 24


def test_sylow_subgroups(s4, sl25):
    assert sylow_subgroup(s4, 2).size == 8
    assert sylow_subgroup(s4, 3).size == 3
    assert sylow_subgroup(s4, 5).size == 1
    assert sylow_subgroup(sl25, 2).size == 8
    assert sylow_subgroup(sl25, 5).size == 5


def test_is_inner_witness_on_a5(a5):
    g = 7 % a5.order
    phi = conjugation_hom(a5, g)
    w = is_inner(a5, phi)
    assert w is not None
    assert np.array_equal(a5.conj_perm(w), phi.image_of)


def test_is_inner_outer_automorphism_absent(s5):
    # conjugation by a transposition of S5, restricted to A5, is outer
    from frlab.structure import derived_series
    a5sub = derived_series(s5)[1]
    assert a5sub.size == 60
    elems = a5sub.elements()
    pos = np.full(s5.order, -1, dtype=np.int64)
    pos[elems] = np.arange(60)
    t = int(np.flatnonzero(~a5sub.members & (s5.element_orders == 2))[0])
    conj = s5.conj_perm(t)
    inside = a5sub.as_group()
    phi = GroupHom(inside, inside, pos[conj[elems]])
    assert phi.is_homomorphism() and phi.is_bijective()
    assert is_inner(inside, phi) is None  # exhausts all 60 candidates


def test_is_inner_identity_on_abelian(c2xc2):
    assert is_inner(c2xc2, identity_hom(c2xc2)) == 0


def test_hom_compose_and_kernel(s4):
    a4 = p_core(s4, 2)
    Q, pi = quotient(s4, a4)
    assert pi.kernel_mask().sum() == a4.size
    ident = identity_hom(s4)
    assert np.array_equal(pi.compose(ident).image_of, pi.image_of)


def test_action_validation(s3):
    from frlab.grouptable import GroupAction
    perms = np.stack([_perm_of_element(s3, g) for g in range(s3.order)])
    act = GroupAction(s3, s3.order, perms)
    assert act.is_action()
    bad = perms.copy()
    bad[1] = perms[2]
    assert not GroupAction(s3, s3.order, bad).is_action()


def _perm_of_element(G, g):
    return G.mul[:, g].astype(np.int64)
