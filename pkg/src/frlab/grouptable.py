"""Dense Cayley-table groups and the elementary subgroup machinery.

A group of order n lives as an n x n multiplication table with elements
0..n-1 and identity 0.  Everything downstream (chief series, formations,
hypercenters) works over these tables, so quotients, centralizers and
section arithmetic stay exact and cheap at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import caps, kernels
from .errors import (
    InvalidPermutation,
    NotASection,
    NotAutomorphism,
    NotNormal,
)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class GroupTable:
    """A concrete finite group: multiplication table plus element metadata.

    Immutable after construction; derived data (generators, conjugacy
    classes, ...) is memoized on the instance.
    """

    __slots__ = ("order", "mul", "inv", "identity", "element_orders", "label",
                 "provenance", "_memo")

    def __init__(self, mul: np.ndarray, label: str = "G", provenance: str = "",
                 validate: bool = False):
        mul = np.ascontiguousarray(mul, dtype=np.int32)
        n = mul.shape[0]
        if mul.shape != (n, n):
            raise ValueError("multiplication table must be square")
        self.order = n
        self.mul = _readonly(mul)
        self.identity = 0
        if not (np.array_equal(mul[0], np.arange(n)) and
                np.array_equal(mul[:, 0], np.arange(n))):
            raise ValueError("element 0 is not an identity")
        inv = np.full(n, -1, dtype=np.int32)
        rows, cols = np.nonzero(mul == 0)
        inv[rows] = cols
        if (inv < 0).any() or len(rows) != n:
            raise ValueError("table has no unique inverses")
        self.inv = _readonly(inv)
        if validate:
            _check_associativity(mul)
        self.element_orders = _readonly(kernels.element_orders(self.mul))
        self.label = label
        self.provenance = provenance
        self._memo = {}

    # -- basic arithmetic ------------------------------------------------

    def op(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def conj(self, x: int, g: int) -> int:
        """g^-1 x g."""
        return int(self.mul[self.mul[self.inv[g], x], g])

    def comm(self, x: int, y: int) -> int:
        """x^-1 y^-1 x y."""
        m = self.mul
        return int(m[m[m[self.inv[x], self.inv[y]], x], y])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        acc, base = 0, x
        while k:
            if k & 1:
                acc = int(self.mul[acc, base])
            base = int(self.mul[base, base])
            k >>= 1
        return acc

    def conj_perm(self, g: int) -> np.ndarray:
        """The permutation x -> g^-1 x g as an index array."""
        return self.mul[self.mul[int(self.inv[g])], g]

    # -- memoized structure ------------------------------------------------

    def generators(self) -> list[int]:
        """A small generating set, greedy over ascending element index."""
        gens = self._memo.get("gens")
        if gens is None:
            _, gens = _greedy_closure(self, np.arange(self.order))
            self._memo["gens"] = gens
        return gens

    def class_reps(self) -> np.ndarray:
        """Conjugacy class representative (least member) per element."""
        reps = self._memo.get("class_reps")
        if reps is None:
            perms = [self.conj_perm(g) for g in self.generators()]
            reps = _readonly(kernels.orbits(perms, self.order))
            self._memo["class_reps"] = reps
        return reps

    def order_profile(self) -> tuple:
        """Sorted multiset of element orders; cheap isomorphism invariant."""
        prof = self._memo.get("order_profile")
        if prof is None:
            values, counts = np.unique(self.element_orders, return_counts=True)
            prof = tuple(zip(values.tolist(), counts.tolist()))
            self._memo["order_profile"] = prof
        return prof

    def is_abelian(self) -> bool:
        flag = self._memo.get("abelian")
        if flag is None:
            flag = bool(np.array_equal(self.mul, self.mul.T))
            self._memo["abelian"] = flag
        return flag

    def relabel(self, label: str) -> "GroupTable":
        g = GroupTable.__new__(GroupTable)
        for slot in ("order", "mul", "inv", "identity", "element_orders",
                     "provenance", "_memo"):
            object.__setattr__(g, slot, getattr(self, slot))
        object.__setattr__(g, "label", label)
        return g

    def __repr__(self) -> str:
        return f"GroupTable({self.label}, order={self.order})"


def _check_associativity(mul: np.ndarray, sample: int = 4096) -> None:
    """Full check up to order 200, random spot checks above."""
    n = mul.shape[0]
    if n <= 200:
        # lhs[a,b,c] = (ab)c, rhs[a,b,c] = a(bc)
        lhs = mul[mul]
        rhs = mul[:, mul]
        if not np.array_equal(lhs, rhs):
            raise ValueError("table is not associative")
    else:
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, sample))
        if not np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]):
            raise ValueError("table failed associativity spot check")


class Subgroup:
    """A subgroup of a parent GroupTable, stored as a membership mask."""

    __slots__ = ("parent", "members", "size", "_memo")

    def __init__(self, parent: GroupTable, members: np.ndarray,
                 gens: Optional[list[int]] = None, check: bool = True):
        members = np.asarray(members, dtype=bool)
        if members.shape != (parent.order,):
            raise ValueError("mask length does not match parent order")
        self.parent = parent
        self.members = _readonly(members.copy())
        self.size = int(members.sum())
        if check:
            if not members[0]:
                raise ValueError("subgroup must contain the identity")
            elems = np.flatnonzero(members)
            if not members[parent.inv[elems]].all():
                raise ValueError("subgroup not closed under inversion")
            prods = parent.mul[np.ix_(elems, elems)]
            if not members[prods].all():
                raise ValueError("subgroup not closed under multiplication")
        if parent.order % self.size != 0:
            raise AssertionError("Lagrange violated: subgroup size must divide order")
        self._memo = {}
        if gens is not None:
            self._memo["gens"] = list(gens)

    @property
    def key(self) -> bytes:
        k = self._memo.get("key")
        if k is None:
            k = np.packbits(self.members).tobytes()
            self._memo["key"] = k
        return k

    def sort_key(self) -> tuple:
        return (self.size, self.key)

    def elements(self) -> np.ndarray:
        e = self._memo.get("elems")
        if e is None:
            e = _readonly(np.flatnonzero(self.members))
            self._memo["elems"] = e
        return e

    def generators(self) -> list[int]:
        gens = self._memo.get("gens")
        if gens is None:
            _, gens = _greedy_closure(self.parent, self.elements())
            self._memo["gens"] = gens
        return gens

    def contains(self, other: "Subgroup") -> bool:
        return bool((self.members | ~other.members).all())

    def is_normal(self) -> bool:
        flag = self._memo.get("normal")
        if flag is None:
            G = self.parent
            flag = all(
                self.members[G.conj_perm(g)[self.elements()]].all()
                for g in G.generators()
            )
            self._memo["normal"] = flag
        return flag

    def as_group(self) -> GroupTable:
        """This subgroup as a standalone GroupTable (elements ascending)."""
        g = self._memo.get("group")
        if g is None:
            sub = kernels.subgroup_table(self.parent.mul, self.elements())
            g = GroupTable(sub, label=f"{self.parent.label}<{self.size}>",
                           provenance=f"subgroup of {self.parent.label}")
            self._memo["group"] = g
        return g

    def join(self, other: "Subgroup") -> "Subgroup":
        """Subgroup generated by the union."""
        big, small = (self, other) if self.size >= other.size else (other, self)
        mask = kernels.extend_subgroup(
            self.parent.mul, big.elements(), big.generators(), small.generators())
        return Subgroup(self.parent, mask,
                        gens=big.generators() + small.generators(), check=False)

    def meet(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.members & other.members, check=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and self.parent is other.parent
                and self.key == other.key)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.key))

    def __repr__(self) -> str:
        return f"Subgroup(size={self.size} of {self.parent.label})"


def trivial_subgroup(G: GroupTable) -> Subgroup:
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    return Subgroup(G, mask, gens=[], check=False)


def full_subgroup(G: GroupTable) -> Subgroup:
    return Subgroup(G, np.ones(G.order, dtype=bool), gens=G.generators(),
                    check=False)


def subgroup_generated(G: GroupTable, seeds: Iterable[int]) -> Subgroup:
    seeds = [int(s) for s in seeds]
    mask = kernels.closure(G.mul, seeds)
    return Subgroup(G, mask, gens=seeds, check=False)


def subgroup_from_mask(G: GroupTable, mask: np.ndarray, check: bool = True) -> Subgroup:
    return Subgroup(G, mask, check=check)


# -- permutation input -------------------------------------------------------


def perm_from_cycles(degree: int, cycles: Sequence[Sequence[int]]) -> tuple:
    """Build a 0-based permutation tuple from 1-based disjoint cycles."""
    img = list(range(degree))
    seen = set()
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + type(cyc)(cyc[:1])):
            if not (1 <= a <= degree and 1 <= b <= degree):
                raise InvalidPermutation(f"point {a} outside 1..{degree}")
            if a in seen:
                raise InvalidPermutation(f"point {a} repeated across cycles")
            seen.add(a)
            img[a - 1] = b - 1
    if sorted(img) != list(range(degree)):
        raise InvalidPermutation("cycles do not define a permutation")
    return tuple(img)


def _check_perm(degree: int, p: Sequence[int]) -> tuple:
    t = tuple(int(x) for x in p)
    if len(t) != degree or sorted(t) != list(range(degree)):
        raise InvalidPermutation(f"not a permutation of 0..{degree - 1}: {p!r}")
    return t


def from_permutations(degree: int, generators: Sequence[Sequence[int]],
                      label: str = "", provenance: str = "") -> GroupTable:
    """Cayley table of the permutation group generated by 0-based mappings.

    Elements are ordered by breadth-first closure from the identity,
    multiplying by the generators in input order; permutations compose
    left-to-right (x^(pq) = (x^p)^q).
    """
    if degree < 1:
        raise InvalidPermutation("degree must be positive")
    gens = [_check_perm(degree, p) for p in generators]
    ident = tuple(range(degree))
    index = {ident: 0}
    elems = [ident]
    queue = [ident]
    cap = caps.current().table_order
    while queue:
        nxt = []
        for p in queue:
            for g in gens:
                q = tuple(g[p[i]] for i in range(degree))
                if q not in index:
                    if len(elems) >= cap:
                        raise caps.OrderCapExceeded(
                            "permutation closure", len(elems) + 1, cap)
                    index[q] = len(elems)
                    elems.append(q)
                    nxt.append(q)
        queue = nxt
    n = len(elems)
    mul = np.empty((n, n), dtype=np.int32)
    arr = np.array(elems, dtype=np.int64)
    for j, q in enumerate(elems):
        qa = np.asarray(q, dtype=np.int64)
        mul[:, j] = _index_rows(qa[arr], index, degree)
    g = GroupTable(mul, label=label or f"perm{degree}:{n}",
                   provenance=provenance or f"from_permutations(degree={degree})")
    g._memo["perm_rep"] = (degree, elems)
    return g


def _index_rows(images: np.ndarray, index: dict, degree: int) -> np.ndarray:
    return np.fromiter(
        (index[tuple(row)] for row in images.tolist()),
        dtype=np.int32, count=images.shape[0])


# -- homomorphisms and actions -----------------------------------------------


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism carried as the per-element image array."""

    source: GroupTable
    target: GroupTable
    image_of: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "image_of",
                           _readonly(np.asarray(self.image_of, dtype=np.int64).copy()))

    def __call__(self, x: int) -> int:
        return int(self.image_of[x])

    def is_homomorphism(self) -> bool:
        src, dst, img = self.source.mul, self.target.mul, self.image_of
        if img[0] != 0:
            return False
        return bool(np.array_equal(img[src], dst[np.ix_(img, img)]))

    def is_bijective(self) -> bool:
        return (self.source.order == self.target.order
                and len(np.unique(self.image_of)) == self.source.order)

    def kernel_mask(self) -> np.ndarray:
        return self.image_of == 0

    def compose(self, earlier: "GroupHom") -> "GroupHom":
        """self after earlier:  x -> self(earlier(x))."""
        return GroupHom(earlier.source, self.target, self.image_of[earlier.image_of])


def identity_hom(G: GroupTable) -> GroupHom:
    return GroupHom(G, G, np.arange(G.order))


def conjugation_hom(G: GroupTable, g: int) -> GroupHom:
    return GroupHom(G, G, G.conj_perm(g))


@dataclass(frozen=True)
class GroupAction:
    """An action of ``actor`` on 0..domain_size-1 (right-action convention)."""

    actor: GroupTable
    domain_size: int
    perm_of: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "perm_of",
                           _readonly(np.asarray(self.perm_of, dtype=np.int64).copy()))

    def is_action(self) -> bool:
        G, P = self.actor, self.perm_of
        if P.shape != (G.order, self.domain_size):
            return False
        if not np.array_equal(P[0], np.arange(self.domain_size)):
            return False
        for p in P:
            if len(np.unique(p)) != self.domain_size:
                return False
        rows = range(G.order) if G.order <= 256 else G.generators()
        for a in rows:
            # x^(ab) = (x^a)^b, row by row: P[mul[a,b], x] == P[b, P[a, x]]
            if not np.array_equal(P[G.mul[a]], P[:, P[a]]):
                return False
        return True


# -- elementary operations on one group ---------------------------------------


def quotient(G: GroupTable, N: Subgroup) -> tuple[GroupTable, GroupHom]:
    """Coset group and canonical projection; coset reps are least elements."""
    cached = G._memo.get(("quotient", N.key))
    if cached is not None:
        return cached
    if not N.is_normal():
        raise NotNormal(f"{N!r} not normal in {G.label}")
    ids, reps = kernels.coset_ids(G.mul, N.members)
    reps = np.asarray(reps, dtype=np.int64)
    k = len(reps)
    qmul = ids[G.mul[np.ix_(reps, reps)]].astype(np.int32)
    Q = GroupTable(qmul, label=f"{G.label}/{N.size}",
                   provenance=f"quotient of {G.label} by subgroup of size {N.size}")
    result = (Q, GroupHom(G, Q, ids))
    G._memo[("quotient", N.key)] = result
    return result


def centralizer_of_section(G: GroupTable, H: Subgroup, K: Subgroup) -> Subgroup:
    """{g : [g, h] in K for all h in H} for normal K <= H <= G."""
    if not H.contains(K):
        raise NotASection("lower subgroup not contained in upper")
    if not (H.is_normal() and K.is_normal()):
        raise NotASection("section terms must be normal")
    mask = kernels.centralizer_section(G.mul, G.inv, H.elements(), K.members)
    return Subgroup(G, mask, check=False)


def centralizer(G: GroupTable, H: Subgroup) -> Subgroup:
    """Pointwise centralizer of any subgroup (no normality needed)."""
    k_mask = np.zeros(G.order, dtype=bool)
    k_mask[0] = True
    mask = kernels.centralizer_section(G.mul, G.inv, H.elements(), k_mask)
    return Subgroup(G, mask, check=False)


def normalizer(G: GroupTable, H: Subgroup) -> Subgroup:
    gens = H.generators()
    n = G.order
    ok = np.ones(n, dtype=bool)
    for h in gens:
        # g^-1 h g must land in H for every generator h
        col = G.mul[G.mul[G.inv, h], np.arange(n)]
        ok &= H.members[col]
    return Subgroup(G, ok, check=False)


def center(G: GroupTable) -> Subgroup:
    mask = (G.mul == G.mul.T).all(axis=1)
    return Subgroup(G, mask, check=False)


def derived_subgroup(G: GroupTable) -> Subgroup:
    """Commutator subgroup; the commutator set is conjugation-closed, so a
    plain multiplicative closure of it suffices."""
    n = G.order
    seeds = set()
    inv = G.inv.astype(np.int64)
    for x in range(n):
        row = G.mul[G.mul[G.mul[inv[x], inv], x], np.arange(n)]
        seeds.update(row.tolist())
    mask = kernels.closure(G.mul, sorted(seeds - {0}))
    return Subgroup(G, mask, check=False)


def _greedy_closure(G: GroupTable, candidates: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Mask and a small generating set for the subgroup the candidates generate."""
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    gens: list[int] = []
    candidates = np.asarray(candidates)
    while True:
        fresh = candidates[~mask[candidates]]
        if fresh.size == 0:
            return mask, gens
        x = int(fresh[0])
        mask = kernels.extend_subgroup(G.mul, np.flatnonzero(mask), gens, [x])
        gens = gens + [x]


def normal_closure(G: GroupTable, seeds: Iterable[int]) -> Subgroup:
    """Smallest normal subgroup containing the seeds.

    The union of the seeds' conjugacy classes is conjugation-invariant, so
    the subgroup it generates is already normal.
    """
    reps = G.class_reps()
    seed_reps = sorted({int(reps[int(s)]) for s in seeds})
    union = np.flatnonzero(np.isin(reps, seed_reps))
    mask, gens = _greedy_closure(G, union)
    return Subgroup(G, mask, gens=gens, check=False)


def sylow_subgroup(G: GroupTable, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown through normalizers (deterministic)."""
    n = G.order
    target = 1
    while n % (target * p) == 0:
        target *= p
    if target == 1:
        return trivial_subgroup(G)
    orders = G.element_orders
    # least element whose order has maximal p-part seeds the tower
    P = trivial_subgroup(G)
    while P.size < target:
        N = normalizer(G, P) if P.size > 1 else full_subgroup(G)
        cand = np.flatnonzero(N.members & ~P.members)
        cand_orders = orders[cand]
        is_p_power = np.array([_is_p_power(int(o), p) for o in cand_orders])
        cand = cand[is_p_power & (cand_orders > 1)]
        if cand.size == 0:
            raise AssertionError("Sylow growth stalled; table is corrupt")
        x = int(cand[0])
        P = P.join(subgroup_generated(G, [x]))
    return P


def _is_p_power(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1


def p_core(G: GroupTable, p: int) -> Subgroup:
    """O_p(G): the core of a Sylow p-subgroup."""
    key = ("p_core", p)
    got = G._memo.get(key)
    if got is None:
        P = sylow_subgroup(G, p)
        mask = P.members.copy()
        for g in range(G.order):
            if not mask.any():
                break
            perm = G.conj_perm(g)
            conj = np.zeros(G.order, dtype=bool)
            conj[perm[P.elements()]] = True
            mask &= conj
        got = Subgroup(G, mask, check=False)
        G._memo[key] = got
    return got


def is_inner(G: GroupTable, phi: GroupHom) -> Optional[int]:
    """A witness g with phi = conjugation by g, or None."""
    if phi.source is not G or phi.target is not G:
        raise NotAutomorphism("map is not an endomorphism of this group")
    if not (phi.is_bijective() and phi.is_homomorphism()):
        raise NotAutomorphism("map is not an automorphism")
    gens = G.generators()
    if not gens:
        return 0
    n = G.order
    ok = np.ones(n, dtype=bool)
    for h in gens:
        col = G.mul[G.mul[G.inv, h], np.arange(n)]
        ok &= col == phi.image_of[h]
    hits = np.flatnonzero(ok)
    return int(hits[0]) if hits.size else None
