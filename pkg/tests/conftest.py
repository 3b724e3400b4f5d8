"""Shared fixtures and independent brute-force oracles.

The oracles intentionally avoid the library's production code paths: they
enumerate subsets, scan all elements, or recompute by definition, so the
fast implementations are tested against something genuinely different.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from frlab.catalog import default_catalog
from frlab.recipes import build


@pytest.fixture(scope="session")
def tiny_catalog():
    return default_catalog("tiny")


@pytest.fixture(scope="session")
def small_catalog():
    return default_catalog("small")


def group(recipe: str, label: str = ""):
    return build(recipe, label=label or recipe)


@pytest.fixture(scope="session")
def s3():
    return group("symmetric(3)", "S3")


@pytest.fixture(scope="session")
def s4():
    return group("symmetric(4)", "S4")


@pytest.fixture(scope="session")
def s5():
    return group("symmetric(5)", "S5")


@pytest.fixture(scope="session")
def a4():
    return group("alternating(4)", "A4")


@pytest.fixture(scope="session")
def a5():
    return group("alternating(5)", "A5")


@pytest.fixture(scope="session")
def q8():
    return group("quaternion(8)", "Q8")


@pytest.fixture(scope="session")
def d8():
    return group("dihedral(4)", "D8")


@pytest.fixture(scope="session")
def c2xc2():
    return group("direct(cyclic(2), cyclic(2))", "C2xC2")


@pytest.fixture(scope="session")
def sl25():
    return group("sl2(5)", "SL(2,5)")


# -- oracles -----------------------------------------------------------------


def oracle_all_subgroups(G) -> set[frozenset]:
    """Exhaustive subset filter; only sane for order <= 16 or so."""
    elems = list(range(G.order))
    out = set()
    for r in range(1, G.order + 1):
        if G.order % r:
            continue
        for sub in itertools.combinations(elems, r):
            s = set(sub)
            if 0 not in s:
                continue
            if any(int(G.inv[x]) not in s for x in s):
                continue
            if any(int(G.mul[x, y]) not in s for x in s for y in s):
                continue
            out.add(frozenset(s))
    return out


def oracle_is_normal(G, members: set[int]) -> bool:
    return all(G.conj(x, g) in members for x in members for g in range(G.order))


def oracle_centralizer_of_section(G, h_elems, k_members) -> set[int]:
    out = set()
    for g in range(G.order):
        if all(int(G.mul[G.conj(h, g), G.inv[h]]) in k_members for h in h_elems):
            out.add(g)
    return out


def oracle_center(G) -> set[int]:
    return {g for g in range(G.order)
            if all(G.op(g, x) == G.op(x, g) for x in range(G.order))}


def oracle_element_order(G, x: int) -> int:
    k, acc = 1, x
    while acc != 0:
        acc = G.op(acc, x)
        k += 1
    return k


def oracle_automorphisms_by_bijection(G) -> list[tuple]:
    """All automorphisms by filtering every bijection; order <= 8 only."""
    n = G.order
    out = []
    for perm in itertools.permutations(range(n)):
        if perm[0] != 0:
            continue
        if all(perm[G.op(a, b)] == G.op(perm[a], perm[b])
               for a in range(n) for b in range(n)):
            out.append(perm)
    return out


def subgroup_members(sub) -> set[int]:
    return set(np.flatnonzero(sub.members).tolist())
