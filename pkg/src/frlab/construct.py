"""External constructions: products, wreaths, automorphism groups, isomorphism."""

from __future__ import annotations

from typing import Callable, Optional, Sequence

import numpy as np

from . import caps, kernels
from .errors import InvalidAction, OrderCapExceeded
from .grouptable import GroupHom, GroupTable, from_permutations


def direct_product(A: GroupTable, B: GroupTable, label: str = "") -> GroupTable:
    n = A.order * B.order
    caps.current().check("direct product", n, "construction")
    nb = B.order
    mul = (A.mul[:, None, :, None].astype(np.int64) * nb
           + B.mul[None, :, None, :]).reshape(n, n)
    return GroupTable(mul.astype(np.int32),
                      label=label or f"{A.label}x{B.label}",
                      provenance=f"direct({A.label}, {B.label})")


def _check_automorphism_perm(A: GroupTable, phi: np.ndarray) -> bool:
    if phi[0] != 0 or len(np.unique(phi)) != A.order:
        return False
    return bool(np.array_equal(phi[A.mul], A.mul[np.ix_(phi, phi)]))


def semidirect_product(A: GroupTable, Q: GroupTable,
                       act: Sequence[np.ndarray] | Callable[[int], np.ndarray],
                       label: str = "") -> GroupTable:
    """(a1,q1)(a2,q2) = (a1 * act(q1)(a2), q1 q2); act(q1 q2) = act(q1) o act(q2).

    ``act`` gives one permutation of A per element of Q; it must be a
    homomorphism of Q into Aut(A) for the table to be a group.
    """
    n = A.order * Q.order
    caps.current().check("semidirect product", n, "construction")
    if callable(act):
        perms = np.stack([np.asarray(act(q), dtype=np.int64) for q in range(Q.order)])
    else:
        perms = np.stack([np.asarray(p, dtype=np.int64) for p in act])
    if perms.shape != (Q.order, A.order):
        raise InvalidAction("need one permutation of A per element of Q")
    for q in range(Q.order):
        if not _check_automorphism_perm(A, perms[q]):
            raise InvalidAction(f"act({q}) is not an automorphism of A")
    for q1 in range(Q.order):
        for q2 in range(Q.order):
            if not np.array_equal(perms[Q.mul[q1, q2]], perms[q1][perms[q2]]):
                raise InvalidAction("act is not a homomorphism into Aut(A)")
    nq = Q.order
    mul = np.empty((n, n), dtype=np.int32)
    a2_of = np.arange(n) // nq
    q2_of = np.arange(n) % nq
    for a1 in range(A.order):
        arow = A.mul[a1]
        for q1 in range(nq):
            x = a1 * nq + q1
            mul[x] = arow[perms[q1][a2_of]] * nq + Q.mul[q1, q2_of]
    return GroupTable(mul, label=label or f"{A.label}:{Q.label}",
                      provenance=f"semidirect({A.label}, {Q.label})")


def _wreath(N: GroupTable, P: GroupTable, point_perms: np.ndarray,
            label: str, provenance: str) -> GroupTable:
    """N^d x| P with P permuting coordinates through ``point_perms``.

    Element index = (tuple code, base |N|, little-endian) * |P| + p.
    """
    d = point_perms.shape[1]
    nn, npp = N.order, P.order
    size = nn ** d * npp
    caps.current().check("wreath product", size, "construction")
    codes = np.arange(nn ** d)
    coords = np.empty((d, nn ** d), dtype=np.int64)
    rest = codes.copy()
    for i in range(d):
        coords[i] = rest % nn
        rest //= nn
    y_code = np.arange(size) // npp
    y_p = np.arange(size) % npp
    g_coord = coords[:, y_code]  # g_coord[i, y]
    mul = np.empty((size, size), dtype=np.int32)
    weights = nn ** np.arange(d)
    for code in range(nn ** d):
        f = coords[:, code]
        for sigma in range(npp):
            x = code * npp + sigma
            # h_i = f_i * g_{sigma(i)}
            h_code = np.zeros(size, dtype=np.int64)
            pp = point_perms[sigma]
            for i in range(d):
                h_code += N.mul[f[i], g_coord[pp[i]]] * weights[i]
            mul[x] = h_code * npp + P.mul[sigma, y_p]
    return GroupTable(mul, label=label, provenance=provenance)


def symmetric_group(n: int, label: str = "") -> GroupTable:
    if n <= 1:
        return from_permutations(1, [], label=label or f"S{n}")
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return from_permutations(n, gens, label=label or f"S{n}",
                             provenance=f"symmetric({n})")


def alternating_group(n: int, label: str = "") -> GroupTable:
    if n <= 2:
        return from_permutations(max(n, 1), [], label=label or f"A{n}")
    gens = [tuple([1, 2, 0] + list(range(3, n)))]
    if n > 3:
        if n % 2:
            gens.append(tuple(list(range(1, n)) + [0]))
        else:
            gens.append(tuple([0] + list(range(2, n)) + [1]))
    return from_permutations(n, gens, label=label or f"A{n}",
                             provenance=f"alternating({n})")


def wreath_natural(N: GroupTable, n: int, label: str = "") -> GroupTable:
    """N wr S_n: base N^n with S_n permuting the coordinates."""
    P = symmetric_group(n)
    degree, elems = P._memo["perm_rep"]
    perms = np.array(elems, dtype=np.int64)
    return _wreath(N, P, perms, label or f"{N.label}wrS{n}",
                   f"wreath({N.label}, {n})")


def wreath_regular(S: GroupTable, G: GroupTable, label: str = "") -> GroupTable:
    """S wr_reg G: base S^|G| with G permuting coordinates regularly."""
    perms = np.stack([G.mul[:, g].astype(np.int64) for g in range(G.order)])
    return _wreath(S, G, perms, label or f"{S.label}wrreg{G.label}",
                   f"wreath_reg({S.label}, {G.label})")


# -- automorphisms and isomorphism -------------------------------------------


def _element_invariants(G: GroupTable) -> np.ndarray:
    """(order, conjugacy class size) per element, packed for fast compare."""
    reps = G.class_reps()
    _, inverse_idx, counts = np.unique(reps, return_inverse=True, return_counts=True)
    sizes = counts[inverse_idx]
    return G.element_orders.astype(np.int64) * (G.order + 1) + sizes


def _image_candidates(A: GroupTable, B: GroupTable) -> Optional[list[np.ndarray]]:
    """Per-generator candidate images in B, matched on cheap invariants."""
    inv_a = _element_invariants(A)
    inv_b = _element_invariants(B)
    cands = []
    for g in A.generators():
        c = np.flatnonzero(inv_b == inv_a[g])
        if c.size == 0:
            return None
        cands.append(c)
    return cands


def _search_homs(A: GroupTable, B: GroupTable, first_only: bool,
                 limit: Optional[int] = None) -> list[np.ndarray]:
    """Backtracking search for bijective homomorphisms A -> B."""
    gens = A.generators()
    if not gens:
        return [np.zeros(1, dtype=np.int64)] if A.order == B.order == 1 else []
    cands = _image_candidates(A, B)
    if cands is None:
        return []
    found: list[np.ndarray] = []

    def descend(depth: int, chosen: list[int]) -> bool:
        if depth == len(gens):
            res = kernels.hom_extend(A.mul, B.mul, gens, chosen)
            if res is None:
                return False
            domain, image = res
            if len(np.unique(image[domain])) == A.order:
                found.append(image.copy())
                if limit is not None and len(found) > limit:
                    raise OrderCapExceeded("automorphism enumeration",
                                           len(found), limit)
                return first_only
            return False
        for img in cands[depth]:
            res = kernels.hom_extend(A.mul, B.mul, gens[: depth + 1],
                                     chosen + [int(img)])
            if res is None:
                continue
            domain, image = res
            dom_idx = np.flatnonzero(domain)
            if len(np.unique(image[dom_idx])) != dom_idx.size:
                continue  # not injective on the partial subgroup
            if descend(depth + 1, chosen + [int(img)]):
                return True
        return False

    descend(0, [])
    return found


def is_isomorphic(A: GroupTable, B: GroupTable) -> bool:
    """Generator-image search behind cheap invariant pre-filters."""
    if A.order != B.order:
        return False
    if A.order_profile() != B.order_profile():
        return False
    from .grouptable import center, derived_subgroup
    if center(A).size != center(B).size:
        return False
    if derived_subgroup(A).size != derived_subgroup(B).size:
        return False
    cap = caps.current().automorphism
    if A.order > cap:
        raise OrderCapExceeded("isomorphism search", A.order, cap)
    return bool(_search_homs(A, B, first_only=True))


def find_isomorphism(A: GroupTable, B: GroupTable) -> Optional[GroupHom]:
    if A.order != B.order or A.order_profile() != B.order_profile():
        return None
    cap = caps.current().automorphism
    if A.order > cap:
        raise OrderCapExceeded("isomorphism search", A.order, cap)
    homs = _search_homs(A, B, first_only=True)
    return GroupHom(A, B, homs[0]) if homs else None


def automorphism_group(G: GroupTable) -> tuple[GroupTable, list[GroupHom]]:
    """Aut(G) as a table plus the automorphisms, ordered identity-first.

    Composition is left-to-right: (ab)(x) = b(a(x)).
    """
    cap = caps.current().automorphism
    if G.order > cap:
        raise OrderCapExceeded("automorphism search", G.order, cap)
    build_cap = caps.current().construction
    images = _search_homs(G, G, first_only=False, limit=build_cap)
    ident = np.arange(G.order, dtype=np.int64)
    rest = sorted((im for im in images if not np.array_equal(im, ident)),
                  key=lambda im: im.tobytes())
    ordered = [ident] + rest
    pos = {im.tobytes(): i for i, im in enumerate(ordered)}
    k = len(ordered)
    caps.current().check("automorphism table", k, "construction")
    mul = np.empty((k, k), dtype=np.int32)
    for i, a in enumerate(ordered):
        for j, b in enumerate(ordered):
            mul[i, j] = pos[b[a].tobytes()]
    aut = GroupTable(mul, label=f"Aut({G.label})", provenance=f"aut({G.label})")
    return aut, [GroupHom(G, G, im) for im in ordered]
