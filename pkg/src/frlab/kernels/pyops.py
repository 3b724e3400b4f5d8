"""Pure-Python/numpy implementations of the hot table kernels.

These are the reference semantics; the optional compiled module
``frlab.kernels._fast`` mirrors them exactly.  All functions operate on a
dense multiplication table ``mul`` (n x n, int32, ``mul[a, b]`` = index of
the product) with identity at index 0, and on membership masks (bool arrays
of length n).
"""

from __future__ import annotations

import numpy as np

IMPL = "python"


def element_orders(mul: np.ndarray) -> np.ndarray:
    n = mul.shape[0]
    orders = np.zeros(n, dtype=np.int32)
    for x in range(n):
        k = 1
        acc = x
        while acc != 0:
            acc = mul[acc, x]
            k += 1
        orders[x] = k
    return orders


def closure(mul: np.ndarray, seeds) -> np.ndarray:
    """Member mask of the subgroup generated by ``seeds``.

    Breadth-first from the identity, multiplying on the right by the seeds
    in their given order; finite order makes inverses reachable.
    """
    n = mul.shape[0]
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    queue = [0]
    seeds = [int(s) for s in seeds]
    while queue:
        nxt = []
        for x in queue:
            row = mul[x]
            for s in seeds:
                y = int(row[s])
                if not mask[y]:
                    mask[y] = True
                    nxt.append(y)
        queue = nxt
    return mask


def extend_subgroup(
    mul: np.ndarray, base_elems: np.ndarray, base_gens, extra_gens
) -> np.ndarray:
    """Member mask of the subgroup generated by a known subgroup and extras.

    ``base_elems`` lists the elements of a subgroup A (identity included);
    ``base_gens`` generate A.  Walks the right cosets of A: each new coset is
    materialized as ``{a * t}``, costing one table lookup per element of the
    result plus one per (coset, generator) edge.
    """
    n = mul.shape[0]
    base_elems = np.asarray(base_elems, dtype=np.int64)
    gens = [int(g) for g in base_gens] + [int(g) for g in extra_gens]
    coset_of = np.full(n, -1, dtype=np.int64)
    coset_of[mul[base_elems, 0]] = 0
    coset_of[base_elems] = 0
    reps = [0]
    head = 0
    n_cosets = 1
    while head < len(reps):
        r = reps[head]
        head += 1
        row = mul[r]
        for s in gens:
            t = int(row[s])
            if coset_of[t] < 0:
                coset_of[mul[base_elems, t]] = n_cosets
                reps.append(t)
                n_cosets += 1
    return coset_of >= 0


def orbits(perms, n: int) -> np.ndarray:
    """Orbit representative (smallest member) per point under ``perms``."""
    rep = np.full(n, -1, dtype=np.int64)
    perms = [np.asarray(p) for p in perms]
    for start in range(n):
        if rep[start] >= 0:
            continue
        frontier = np.array([start], dtype=np.int64)
        rep[start] = start
        while frontier.size:
            new = []
            for p in perms:
                img = p[frontier]
                fresh = img[rep[img] < 0]
                if fresh.size:
                    rep[fresh] = start
                    new.append(fresh)
            frontier = np.concatenate(new) if new else np.empty(0, dtype=np.int64)
    return rep


def centralizer_section(
    mul: np.ndarray, inv: np.ndarray, h_elems: np.ndarray, k_mask: np.ndarray
) -> np.ndarray:
    """Mask of {g : g^-1 h g h^-1 in K for all h in H}."""
    n = mul.shape[0]
    h_elems = np.asarray(h_elems, dtype=np.int64)
    inv_h = inv[h_elems].astype(np.int64)
    out = np.zeros(n, dtype=bool)
    chunk = max(1, (1 << 22) // max(1, h_elems.size))
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        gs = np.arange(lo, hi, dtype=np.int64)
        t1 = mul[np.ix_(inv[gs].astype(np.int64), h_elems)]
        t2 = mul[t1, gs[:, None]]
        c = mul[t2, inv_h[None, :]]
        out[lo:hi] = k_mask[c].all(axis=1)
    return out


def hom_extend(
    mul_src: np.ndarray, mul_dst: np.ndarray, gens, imgs
):
    """Extend a generator assignment to a homomorphism by closure.

    Returns ``(domain_mask, image_array)`` for the subgroup generated by
    ``gens``; ``image_array`` is -1 off the domain.  Returns None when the
    assignment is inconsistent with the two tables.
    """
    n = mul_src.shape[0]
    image = np.full(n, -1, dtype=np.int64)
    image[0] = 0
    gens = [int(g) for g in gens]
    imgs = [int(i) for i in imgs]
    queue = [0]
    while queue:
        nxt = []
        for x in queue:
            fx = image[x]
            row = mul_src[x]
            frow = mul_dst[fx]
            for g, fg in zip(gens, imgs):
                y = int(row[g])
                fy = int(frow[fg])
                cur = image[y]
                if cur < 0:
                    image[y] = fy
                    nxt.append(y)
                elif cur != fy:
                    return None
        queue = nxt
    return image >= 0, image


def coset_ids(mul: np.ndarray, members: np.ndarray):
    """Right-coset decomposition for a normal subgroup mask.

    Returns ``(ids, reps)``: coset id per element and the list of coset
    representatives; the representative is the least element of each coset
    and the identity coset comes first.
    """
    n = mul.shape[0]
    elems = np.flatnonzero(members).astype(np.int64)
    ids = np.full(n, -1, dtype=np.int64)
    reps = []
    for x in range(n):
        if ids[x] >= 0:
            continue
        ids[mul[elems, x]] = len(reps)
        reps.append(x)
    return ids, reps


def subgroup_table(mul: np.ndarray, elems: np.ndarray) -> np.ndarray:
    """Relabelled multiplication table of a subgroup (elements ascending)."""
    elems = np.asarray(elems, dtype=np.int64)
    n = mul.shape[0]
    pos = np.full(n, -1, dtype=np.int64)
    pos[elems] = np.arange(elems.size)
    sub = pos[mul[np.ix_(elems, elems)]]
    return sub.astype(np.int32)
