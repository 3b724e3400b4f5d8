"""Characteristic subgroups and basic structural predicates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OrderCapExceeded
from . import caps
from .grouptable import (
    GroupTable,
    Subgroup,
    center,
    derived_subgroup,
    full_subgroup,
    p_core,
    quotient,
    subgroup_from_mask,
    sylow_subgroup,
    trivial_subgroup,
)
from .lattice import (
    frattini_subgroup,
    join_all,
    minimal_normal_subgroups,
    normal_subgroups,
)


def prime_divisors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def derived_series(G: GroupTable) -> list[Subgroup]:
    """Descending derived series, stopping when it stabilizes."""
    series = [full_subgroup(G)]
    while True:
        H = series[-1]
        D = derived_subgroup(H.as_group())
        elems = H.elements()[D.elements()]
        mask = np.zeros(G.order, dtype=bool)
        mask[elems] = True
        nxt = subgroup_from_mask(G, mask, check=False)
        if nxt.size == H.size:
            return series
        series.append(nxt)


def is_soluble(G: GroupTable) -> bool:
    flag = G._memo.get("soluble")
    if flag is None:
        flag = derived_series(G)[-1].size == 1
        G._memo["soluble"] = flag
    return flag


def is_nilpotent(G: GroupTable) -> bool:
    """Every Sylow subgroup normal."""
    flag = G._memo.get("nilpotent")
    if flag is None:
        flag = all(sylow_subgroup(G, p).is_normal()
                   for p in prime_divisors(G.order))
        G._memo["nilpotent"] = flag
    return flag


def ascending_central_series(G: GroupTable) -> list[Subgroup]:
    series = [trivial_subgroup(G)]
    while True:
        Z = series[-1]
        Q, pi = quotient(G, Z)
        ZQ = center(Q)
        mask = ZQ.members[pi.image_of]
        nxt = subgroup_from_mask(G, mask, check=False)
        if nxt.size == Z.size:
            return series
        series.append(nxt)


def fitting_subgroup(G: GroupTable) -> Subgroup:
    """Largest normal nilpotent subgroup: the product of the p-cores."""
    got = G._memo.get("fitting")
    if got is None:
        cores = [p_core(G, p) for p in prime_divisors(G.order)]
        got = join_all(G, cores) if cores else full_subgroup(G)
        G._memo["fitting"] = got
    return got


def soluble_radical(G: GroupTable) -> Subgroup:
    """Largest normal soluble subgroup (scan of the normal lattice)."""
    got = G._memo.get("soluble_radical")
    if got is None:
        soluble = [N for N in normal_subgroups(G) if is_soluble(N.as_group())]
        got = join_all(G, soluble)
        assert is_soluble(got.as_group()), "join of soluble normals not soluble"
        G._memo["soluble_radical"] = got
    return got


def socle(G: GroupTable) -> Subgroup:
    if G.order == 1:
        return full_subgroup(G)
    return join_all(G, minimal_normal_subgroups(G))


def frattini(G: GroupTable) -> Subgroup:
    """Frattini subgroup.

    Needs the maximal subgroups, so it enumerates the lattice; when the
    Fitting subgroup is already trivial the answer is forced (Phi <= F) and
    no enumeration is attempted, which keeps simple/fitting-free groups
    above the enumeration cap workable.
    """
    got = G._memo.get("frattini")
    if got is None:
        if G.order > caps.current().subgroup_enum:
            if fitting_subgroup(G).size == 1:
                got = trivial_subgroup(G)
            else:
                raise OrderCapExceeded("frattini via maximal subgroups",
                                       G.order, caps.current().subgroup_enum)
        else:
            got = frattini_subgroup(G)
        G._memo["frattini"] = got
    return got


def generalized_fitting_tilde(G: GroupTable) -> Subgroup:
    """The subgroup whose quotient by Frattini is the socle of G/Frattini."""
    phi = frattini(G)
    Q, pi = quotient(G, phi)
    soc = socle(Q)
    mask = soc.members[pi.image_of]
    return subgroup_from_mask(G, mask, check=False)


@dataclass(frozen=True)
class CharacteristicSubgroups:
    center: Subgroup
    derived: Subgroup
    fitting: Subgroup
    frattini: Subgroup
    soluble_radical: Subgroup
    socle: Subgroup
    generalized_fitting_tilde: Subgroup
    hypercenter_classical: Subgroup


def characteristic_subgroups(G: GroupTable) -> CharacteristicSubgroups:
    got = G._memo.get("characteristic")
    if got is None:
        got = CharacteristicSubgroups(
            center=center(G),
            derived=derived_subgroup(G),
            fitting=fitting_subgroup(G),
            frattini=frattini(G),
            soluble_radical=soluble_radical(G),
            socle=socle(G),
            generalized_fitting_tilde=generalized_fitting_tilde(G),
            hypercenter_classical=ascending_central_series(G)[-1],
        )
        G._memo["characteristic"] = got
    return got


def is_semisimple(G: GroupTable) -> bool:
    """Trivial, or a direct product of non-abelian simple groups."""
    if G.order == 1:
        return True
    if soluble_radical(G).size > 1:
        return False
    return socle(G).size == G.order
