"""Both kernel implementations must agree on shared workloads."""

import numpy as np
import pytest

from frlab.kernels import pyops

try:
    from frlab.kernels import _fast
    IMPLS = [pyops, _fast]
except ImportError:
    IMPLS = [pyops]

from frlab.recipes import build


def _workload_groups():
    return [build(r) for r in ("symmetric(4)", "quaternion(8)",
                               "dihedral(6)", "cyclic(12)",
                               "semidirect(cyclic(7), cyclic(3), pow(2))")]


@pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.IMPL)
def test_element_orders_match_definition(impl):
    for G in _workload_groups():
        orders = impl.element_orders(G.mul)
        for x in range(G.order):
            k, acc = 1, x
            while acc != 0:
                acc = int(G.mul[acc, x])
                k += 1
            assert orders[x] == k


@pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.IMPL)
def test_closure_generates_subgroups(impl):
    for G in _workload_groups():
        for x in range(0, G.order, 3):
            mask = impl.closure(G.mul, [x])
            elems = np.flatnonzero(mask)
            assert mask[0]
            prods = G.mul[np.ix_(elems, elems)]
            assert mask[prods].all()


def test_implementations_agree_pairwise():
    if len(IMPLS) < 2:
        pytest.skip("compiled kernel not built")
    a, b = IMPLS
    for G in _workload_groups():
        assert np.array_equal(a.element_orders(G.mul), b.element_orders(G.mul))
        for seeds in ([1], [1, 2], [G.order - 1]):
            assert np.array_equal(a.closure(G.mul, seeds),
                                  b.closure(G.mul, seeds))
        base = np.flatnonzero(a.closure(G.mul, [1]))
        assert np.array_equal(
            a.extend_subgroup(G.mul, base, [1], [2]),
            b.extend_subgroup(G.mul, base, [1], [2]))
        perms = [G.conj_perm(g) for g in (1, 2)]
        assert np.array_equal(a.orbits(perms, G.order),
                              b.orbits(perms, G.order))
        h = np.flatnonzero(a.closure(G.mul, [1]))
        k = np.zeros(G.order, dtype=bool)
        k[0] = True
        assert np.array_equal(
            a.centralizer_section(G.mul, G.inv, h, k),
            b.centralizer_section(G.mul, G.inv, h, k))
        ia, ra = a.coset_ids(G.mul, a.closure(G.mul, [1]))
        ib, rb = b.coset_ids(G.mul, b.closure(G.mul, [1]))
        assert np.array_equal(ia, ib) and list(ra) == list(rb)
        assert np.array_equal(a.subgroup_table(G.mul, h),
                              b.subgroup_table(G.mul, h))


@pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.IMPL)
def test_hom_extend_detects_non_homomorphisms(impl):
    G = build("symmetric(3)")
    gens = [1, 2]
    # identity assignment extends; a bad one does not
    res = impl.hom_extend(G.mul, G.mul, gens, gens)
    assert res is not None
    domain, image = res
    assert domain.all() and np.array_equal(image, np.arange(6))
    orders = G.element_orders
    bad = [int(np.flatnonzero(orders == 2)[0]),
           int(np.flatnonzero(orders == 2)[0])]

    res2 = impl.hom_extend(G.mul, G.mul, gens, bad)
    if res2 is not None:
        domain2, image2 = res2
        # a map sending both generators to involutions cannot be bijective
        assert len(np.unique(image2[np.flatnonzero(domain2)])) < G.order


@pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.IMPL)
def test_extend_subgroup_walks_cosets(impl):
    G = build("symmetric(4)")
    base = impl.closure(G.mul, [1])
    base_elems = np.flatnonzero(base)
    full = impl.extend_subgroup(G.mul, base_elems, [1], [2])
    elems = np.flatnonzero(full)
    prods = G.mul[np.ix_(elems, elems)]
    assert full[prods].all()
    assert full.sum() % base.sum() == 0
