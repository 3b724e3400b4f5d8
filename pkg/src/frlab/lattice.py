"""Subgroup and normal-subgroup enumeration.

The full lattice starts from the cyclic subgroups and closes under joins
with cyclic subgroups (every subgroup is reached this way).  Normal
subgroups need no size cap: they are joins of normal closures of conjugacy
classes.
"""

from __future__ import annotations

import numpy as np

from . import caps
from .grouptable import (
    GroupTable,
    Subgroup,
    full_subgroup,
    normal_closure,
    subgroup_generated,
    trivial_subgroup,
)


def cyclic_subgroups(G: GroupTable) -> list[Subgroup]:
    got = G._memo.get("cyclic_subgroups")
    if got is None:
        seen: dict[bytes, Subgroup] = {}
        for x in range(G.order):
            H = subgroup_generated(G, [x]) if x else trivial_subgroup(G)
            seen.setdefault(H.key, H)
        got = sorted(seen.values(), key=Subgroup.sort_key)
        G._memo["cyclic_subgroups"] = got
    return got


def all_subgroups(G: GroupTable) -> list[Subgroup]:
    """Complete duplicate-free subgroup list, sorted by (size, mask)."""
    got = G._memo.get("all_subgroups")
    if got is not None:
        return got
    caps.current().check("subgroup enumeration", G.order, "subgroup_enum")
    cyclics = cyclic_subgroups(G)
    seen: dict[bytes, Subgroup] = {H.key: H for H in cyclics}
    queue = list(cyclics)
    while queue:
        H = queue.pop()
        for C in cyclics:
            if C.size == 1 or H.contains(C):
                continue
            J = H.join(C)
            if J.key not in seen:
                seen[J.key] = J
                queue.append(J)
    got = sorted(seen.values(), key=Subgroup.sort_key)
    G._memo["all_subgroups"] = got
    return got


def _class_atoms(G: GroupTable) -> list[Subgroup]:
    """Normal closures of single conjugacy classes, deduplicated."""
    got = G._memo.get("class_atoms")
    if got is None:
        reps = sorted(set(G.class_reps().tolist()) - {0})
        seen: dict[bytes, Subgroup] = {}
        for r in reps:
            N = normal_closure(G, [r])
            seen.setdefault(N.key, N)
        got = sorted(seen.values(), key=Subgroup.sort_key)
        G._memo["class_atoms"] = got
    return got


def normal_subgroups(G: GroupTable) -> list[Subgroup]:
    """All normal subgroups: join-closure of the class atoms, plus 1."""
    got = G._memo.get("normal_subgroups")
    if got is not None:
        return got
    atoms = _class_atoms(G)
    seen: dict[bytes, Subgroup] = {trivial_subgroup(G).key: trivial_subgroup(G)}
    for N in atoms:
        seen.setdefault(N.key, N)
    queue = list(atoms)
    while queue:
        H = queue.pop()
        for N in atoms:
            if H.contains(N):
                continue
            J = H.join(N)
            if J.key not in seen:
                seen[J.key] = J
                queue.append(J)
    got = sorted(seen.values(), key=Subgroup.sort_key)
    G._memo["normal_subgroups"] = got
    return got


def minimal_normal_subgroups(G: GroupTable) -> list[Subgroup]:
    """Inclusion-minimal nontrivial normal subgroups (always class atoms)."""
    atoms = _class_atoms(G)
    out = []
    for N in atoms:
        if not any(M is not N and N.contains(M) for M in atoms):
            out.append(N)
    return out


def maximal_subgroups(G: GroupTable) -> list[Subgroup]:
    subs = all_subgroups(G)
    proper = [H for H in subs if H.size < G.order]
    out = []
    for H in proper:
        if not any(K is not H and K.size > H.size and K.contains(H)
                   for K in proper):
            out.append(H)
    return out


def intersect_all(G: GroupTable, groups: list[Subgroup]) -> Subgroup:
    mask = np.ones(G.order, dtype=bool)
    for H in groups:
        mask &= H.members
    return Subgroup(G, mask, check=False)


def join_all(G: GroupTable, groups: list[Subgroup]) -> Subgroup:
    acc = trivial_subgroup(G)
    for H in groups:
        if not acc.contains(H):
            acc = acc.join(H)
    return acc


def frattini_subgroup(G: GroupTable) -> Subgroup:
    """Intersection of the maximal subgroups (trivial group: whole group)."""
    if G.order == 1:
        return full_subgroup(G)
    return intersect_all(G, maximal_subgroups(G))
