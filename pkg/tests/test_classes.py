"""Class membership oracles, operators, centrality, criticality."""

import pytest

from frlab.classes import (
    abelian_exponent_dividing,
    builtin,
    e_closure,
    is_f_central,
    np_extend,
    residual,
    s_critical,
    saturated_subformation_check,
)
from frlab.errors import MissingDefinition, NotAFormation, UnknownClass
from frlab.grouptable import quotient
from frlab.lattice import maximal_subgroups, normal_subgroups
from frlab.recipes import build
from frlab.series import chief_series
from frlab.structure import frattini, soluble_radical
import numpy as np


def test_builtin_membership_examples(d8, s4, sl25, s3, a5):
    N, U, S = builtin("N"), builtin("U"), builtin("S")
    assert N.member(d8)
    assert not U.member(s4)
    assert not S.member(sl25)
    assert U.member(s3)
    assert S.member(s4)
    assert not N.member(s3)
    assert builtin("G").member(a5)
    assert not builtin("E").member(s3)
    assert builtin("E").member(build("cyclic(1)"))


def test_builtin_parameterized():
    assert builtin("p_groups(2)").member(build("cyclic(8)"))
    assert not builtin("p_groups(2)").member(build("cyclic(6)"))
    assert builtin("pi_groups(2,3)").member(build("symmetric(4)"))
    assert not builtin("pi_groups(2,3)").member(build("cyclic(5)"))
    A4cls = abelian_exponent_dividing(4)
    assert A4cls.member(build("cyclic(4)"))
    assert A4cls.member(build("direct(cyclic(2), cyclic(4))"))
    assert not A4cls.member(build("cyclic(8)"))
    assert not A4cls.member(build("symmetric(3)"))
    with pytest.raises(UnknownClass):
        builtin("widely_supersoluble")


def test_np_extend_examples(d8, s3):
    assert np_extend(2, builtin("E")).member(d8)
    assert not np_extend(2, abelian_exponent_dividing(1)).member(s3)
    assert np_extend(3, abelian_exponent_dividing(2)).member(s3)


def test_np_absorption_on_catalog(tiny_catalog):
    X = abelian_exponent_dividing(4)
    once = np_extend(2, X)
    twice = np_extend(2, once)
    for entry in tiny_catalog:
        assert once.member(entry.group) == twice.member(entry.group)


def test_np_requires_formation_flag():
    bad = builtin("N").with_flags(formation=False)
    with pytest.raises(NotAFormation):
        np_extend(2, bad)


def test_e_closure_examples(s4, a5):
    EU = e_closure(builtin("U"))
    assert EU.member(s4)
    assert not EU.member(a5)


def test_e_closure_of_u_equals_soluble_on_catalog(tiny_catalog):
    EU = e_closure(builtin("U"))
    S = builtin("S")
    for entry in tiny_catalog:
        assert EU.member(entry.group) == S.member(entry.group), entry.label


def test_supersoluble_iff_rank_one_abelian_factors(small_catalog):
    U = builtin("U")
    for entry in small_catalog:
        G = entry.group
        via_factors = all(f.is_abelian and f.rank == 1
                          for f in chief_series(G).factors())
        assert U.member(G) == via_factors, entry.label


def test_supersoluble_iff_prime_index_maximals(tiny_catalog):
    # independent classical criterion: every maximal subgroup of prime index
    U = builtin("U")
    from frlab.structure import prime_divisors
    for entry in tiny_catalog:
        G = entry.group
        if G.order == 1:
            continue
        crit = all(prime_divisors(G.order // M.size) == [G.order // M.size]
                   for M in maximal_subgroups(G))
        assert U.member(G) == crit, entry.label


def test_is_f_central_examples(s3, s4):
    U = builtin("U")
    f_c3 = chief_series(s3).factors()[0]
    dec = is_f_central(s3, f_c3, U)
    assert dec.central and dec.route == "both"
    f_v4 = chief_series(s4).factors()[0]
    dec2 = is_f_central(s4, f_v4, U)
    assert not dec2.central
    assert is_f_central(s4, f_v4, builtin("G")).central


def test_centrality_routes_agree_everywhere(small_catalog):
    for entry in small_catalog:
        G = entry.group
        if G.order > 120:
            continue
        for f in chief_series(G).factors():
            for name in ("N", "U", "S"):
                is_f_central(G, f, builtin(name), route="both")


def test_s_critical_examples(s3, s4):
    N = builtin("N")
    assert s_critical(s3, N)
    assert not s_critical(s4, N)  # S3 sits inside S4
    assert not s_critical(s3, builtin("U"))
    a4 = build("alternating(4)")
    assert s_critical(a4, builtin("U"))


def test_residual_examples(s4):
    N, U = builtin("N"), builtin("U")
    rn = residual(s4, N)
    assert rn.size == 12
    ru = residual(s4, U)
    assert ru.size == 4
    s3 = build("symmetric(3)")
    assert residual(s3, U).size == 1


def test_residual_formation_axiom_on_catalog(tiny_catalog):
    for name in ("N", "U", "S"):
        X = builtin(name)
        for entry in tiny_catalog:
            res = residual(entry.group, X)  # asserts quotient membership inside
            assert entry.group.order % res.size == 0


def test_residual_needs_formation_flag(s4):
    bad = builtin("N").with_flags(formation=False)
    with pytest.raises(NotAFormation):
        residual(s4, bad)


def test_formation_closure_spot_checks(tiny_catalog):
    # G/M, G/N in X implies G/(M meet N) in X
    for name in ("N", "U"):
        X = builtin(name)
        for entry in tiny_catalog:
            G = entry.group
            if G.order > 30:
                continue
            normals = normal_subgroups(G)
            for i, M in enumerate(normals):
                for Nn in normals[i + 1:]:
                    if X.member(quotient(G, M)[0]) and \
                            X.member(quotient(G, Nn)[0]):
                        meet = M.meet(Nn)
                        assert X.member(quotient(G, meet)[0])


def test_solubly_saturated_spot_check(small_catalog):
    # membership of G/Phi(soluble radical) forces membership
    for name in ("N", "U", "S"):
        X = builtin(name)
        for entry in small_catalog:
            G = entry.group
            if G.order > 120:
                continue
            rad = soluble_radical(G)
            phi = frattini(rad.as_group())
            mask = np.zeros(G.order, dtype=bool)
            mask[rad.elements()[phi.elements()]] = True
            from frlab.grouptable import subgroup_from_mask
            Q, _ = quotient(G, subgroup_from_mask(G, mask, check=False))
            if X.member(Q):
                assert X.member(G), (entry.label, name)


def test_saturated_subformation_check(s3, s4, d8, a5):
    U = builtin("U")
    lf = saturated_subformation_check(U)
    for g in (s3, s4, d8, a5):
        assert lf.member(g) == U.member(g)
    with pytest.raises(MissingDefinition):
        saturated_subformation_check(abelian_exponent_dividing(4))
