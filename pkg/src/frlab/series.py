"""Chief series, chief factor structure, and rank conditions on factors.

A chief factor H/K of G is handled through a view that caches the quotient
G/K, the factor group, its decomposition into isomorphic simple direct
factors (the rank), the centralizer, and an isomorphism-type key.  The rank
condition of a rank specification is decided here: membership of the plain
rank in the A-set, or membership in the B-set combined with the requirement
that every group element fixing a composition factor of the section induces
an inner automorphism on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import caps
from .errors import NotASection, NotNormal
from .grouptable import (
    GroupHom,
    GroupTable,
    Subgroup,
    centralizer,
    centralizer_of_section,
    full_subgroup,
    identity_hom,
    normalizer,
    quotient,
    subgroup_from_mask,
    subgroup_generated,
    trivial_subgroup,
)
from .lattice import minimal_normal_subgroups
from .structure import prime_divisors


@dataclass(frozen=True, order=True)
class SimpleTypeKey:
    """Isomorphism type of a simple group: order, abelianness, order profile.

    Sufficient below order 10000; the first order-ambiguous simple pair
    (order 20160) sits far above every cap here.
    """

    order: int
    abelian: bool
    profile: tuple

    @staticmethod
    def of_group(S: GroupTable) -> "SimpleTypeKey":
        return SimpleTypeKey(S.order, S.is_abelian(), S.order_profile())


class ChiefFactorView:
    """A section H/K of a chief series with cached factor structure."""

    def __init__(self, group: GroupTable, upper: Subgroup, lower: Subgroup):
        if not upper.contains(lower):
            raise NotASection("lower term not contained in upper term")
        if not (upper.is_normal() and lower.is_normal()):
            raise NotNormal("section terms must be normal in the group")
        self.group = group
        self.upper = upper
        self.lower = lower
        self.factor_order = upper.size // lower.size
        self._memo: dict = {}

    # -- quotient plumbing -------------------------------------------------

    def bar(self) -> tuple[GroupTable, GroupHom]:
        """G/K and the projection; G itself when K is trivial."""
        got = self._memo.get("bar")
        if got is None:
            if self.lower.size == 1:
                got = (self.group, identity_hom(self.group))
            else:
                got = quotient(self.group, self.lower)
            self._memo["bar"] = got
        return got

    def hbar(self) -> Subgroup:
        """Image of the upper term in G/K."""
        got = self._memo.get("hbar")
        if got is None:
            Q, pi = self.bar()
            mask = np.zeros(Q.order, dtype=bool)
            mask[pi.image_of[self.upper.elements()]] = True
            got = subgroup_from_mask(Q, mask, check=False)
            self._memo["hbar"] = got
        return got

    def factor_group(self) -> GroupTable:
        got = self._memo.get("factor_group")
        if got is None:
            got = self.hbar().as_group()
            self._memo["factor_group"] = got
        return got

    # -- structure ---------------------------------------------------------

    @property
    def is_abelian(self) -> bool:
        return self.factor_group().is_abelian()

    @property
    def char_prime(self) -> Optional[int]:
        if not self.is_abelian:
            return None
        return prime_divisors(self.factor_order)[0]

    def simple_factors(self) -> list[Subgroup]:
        """Simple direct factors, as subgroups of the factor group.

        Non-abelian: the minimal normal subgroups of the factor group.
        Abelian: cyclic factors over a deterministic greedy basis.
        """
        got = self._memo.get("simple_factors")
        if got is not None:
            return got
        F = self.factor_group()
        if F.is_abelian():
            p = self.char_prime
            basis: list[int] = []
            span = trivial_subgroup(F)
            for x in range(F.order):
                if not span.members[x]:
                    basis.append(x)
                    span = span.join(subgroup_generated(F, [x]))
            assert p is not None and p ** len(basis) == F.order, \
                "abelian chief factor is not elementary abelian"
            got = [subgroup_generated(F, [b]) for b in basis]
        else:
            got = minimal_normal_subgroups(F)
            sizes = {S.size for S in got}
            assert len(sizes) == 1, "simple factors of a chief factor must agree"
            size = sizes.pop()
            assert size ** len(got) == F.order, \
                "factor order must be |simple|^rank"
        self._memo["simple_factors"] = got
        return got

    @property
    def rank(self) -> int:
        return len(self.simple_factors())

    @property
    def centralizer(self) -> Subgroup:
        got = self._memo.get("centralizer")
        if got is None:
            got = centralizer_of_section(self.group, self.upper, self.lower)
            self._memo["centralizer"] = got
        return got

    @property
    def type_key(self) -> SimpleTypeKey:
        got = self._memo.get("type_key")
        if got is None:
            S = self.simple_factors()[0]
            got = SimpleTypeKey.of_group(S.as_group())
            self._memo["type_key"] = got
        return got

    def lift_to_bar(self, sub_of_factor: Subgroup) -> Subgroup:
        """Map a subgroup of the factor group back into G/K."""
        helems = self.hbar().elements()
        Q, _ = self.bar()
        mask = np.zeros(Q.order, dtype=bool)
        mask[helems[sub_of_factor.elements()]] = True
        return subgroup_from_mask(Q, mask, check=False)

    def __repr__(self) -> str:
        return (f"ChiefFactorView({self.group.label}: {self.upper.size}/"
                f"{self.lower.size})")


@dataclass(frozen=True)
class ChiefSeriesRec:
    group: GroupTable
    terms: tuple[Subgroup, ...]  # ascending, 1 = terms[0] < ... < terms[-1] = G

    def factors(self) -> list[ChiefFactorView]:
        key = ("factor_views",) + tuple(t.key for t in self.terms)
        got = self.group._memo.get(key)
        if got is None:
            got = [ChiefFactorView(self.group, self.terms[i + 1], self.terms[i])
                   for i in range(len(self.terms) - 1)]
            self.group._memo[key] = got
        return got


def _pick(minimals: list[Subgroup], tie: str) -> Subgroup:
    ordered = sorted(minimals, key=Subgroup.sort_key)
    return ordered[0] if tie == "min" else ordered[-1]


def _pull_back(G: GroupTable, pi: GroupHom, nbar: Subgroup) -> Subgroup:
    return subgroup_from_mask(G, nbar.members[pi.image_of], check=False)


def chief_series(G: GroupTable, tie: str = "min") -> ChiefSeriesRec:
    """Ascending chief series, deterministic for each tie-breaking rule."""
    key = ("chief_series", tie)
    got = G._memo.get(key)
    if got is not None:
        return got
    terms = [trivial_subgroup(G)]
    while terms[-1].size < G.order:
        K = terms[-1]
        Q, pi = quotient(G, K)
        nbar = _pick(minimal_normal_subgroups(Q), tie)
        terms.append(_pull_back(G, pi, nbar))
    got = ChiefSeriesRec(G, tuple(terms))
    G._memo[key] = got
    return got


def chief_series_through(G: GroupTable, N: Subgroup,
                         tie: str = "min") -> ChiefSeriesRec:
    """A chief series having N among its terms."""
    if not N.is_normal():
        raise NotNormal("series can only pass through a normal subgroup")
    key = ("chief_series_through", N.key, tie)
    got = G._memo.get(key)
    if got is not None:
        return got
    terms = [trivial_subgroup(G)]
    while terms[-1].size < N.size:
        K = terms[-1]
        Q, pi = quotient(G, K)
        nmask = np.zeros(Q.order, dtype=bool)
        nmask[pi.image_of[N.elements()]] = True
        inside = [M for M in minimal_normal_subgroups(Q)
                  if bool((nmask | ~M.members).all())]
        assert inside, "no minimal normal subgroup below the target"
        terms.append(_pull_back(G, pi, _pick(inside, tie)))
    while terms[-1].size < G.order:
        K = terms[-1]
        Q, pi = quotient(G, K)
        terms.append(_pull_back(G, pi, _pick(minimal_normal_subgroups(Q), tie)))
    got = ChiefSeriesRec(G, tuple(terms))
    G._memo[key] = got
    return got


def factors_below(G: GroupTable, N: Subgroup, tie: str = "min"
                  ) -> list[ChiefFactorView]:
    rec = chief_series_through(G, N, tie=tie)
    return [f for f in rec.factors() if N.contains(f.upper)]


def decompose_factor(cf: ChiefFactorView) -> list[Subgroup]:
    return cf.simple_factors()


# -- the rank condition --------------------------------------------------------


@dataclass(frozen=True)
class GrWitness:
    """A failing (element, section) pair for the inner-action requirement."""

    element: int  # element of G
    section_upper: tuple  # elements of the factor group, upper term
    section_lower: tuple
    detail: str


@dataclass(frozen=True)
class GrDecision:
    in_r: bool
    via: Optional[str]  # 'A' | 'B' | None
    rank: int
    witness: Optional[GrWitness]


def _lift_witness(cf: ChiefFactorView, xbar: int) -> int:
    """Least preimage in G of an element of G/K."""
    _, pi = cf.bar()
    return int(np.flatnonzero(pi.image_of == xbar)[0])


def inner_action_profile(cf: ChiefFactorView) -> tuple[bool, Optional[GrWitness], np.ndarray]:
    """Per-element verdicts for the fixed-composition-factor inner condition.

    Returns (all_ok, witness, ok_mask over G/K elements): ok_mask[x] is True
    when every composition factor of the section fixed by x receives an
    inner automorphism from x.
    """
    got = cf._memo.get("inner_profile")
    if got is not None:
        return got
    Q, _ = cf.bar()
    if cf.is_abelian:
        got = _abelian_inner_profile(cf, Q)
    else:
        got = _nonabelian_inner_profile(cf, Q)
    cf._memo["inner_profile"] = got
    return got


def _nonabelian_inner_profile(cf: ChiefFactorView, Q: GroupTable):
    """x fixing a simple factor S (setwise) must conjugate inside S C(S).

    Sub-products of the simple factors exhaust the invariant subnormal
    subgroups of the section, and the automorphism induced on an invariant
    pair (P, P S) does not depend on P, so per-factor setwise stabilizers
    tell the whole story.
    """
    ok = np.ones(Q.order, dtype=bool)
    witness = None
    for S in cf.simple_factors():
        Sbar = cf.lift_to_bar(S)
        stab = normalizer(Q, Sbar)
        cent = centralizer(Q, Sbar)
        prod = np.zeros(Q.order, dtype=bool)
        prod[np.unique(Q.mul[np.ix_(Sbar.elements(), cent.elements())])] = True
        bad = stab.members & ~prod
        if bad.any():
            ok &= ~bad
            if witness is None:
                xbar = int(np.flatnonzero(bad)[0])
                witness = GrWitness(
                    element=_lift_witness(cf, xbar),
                    section_upper=tuple(S.elements().tolist()),
                    section_lower=(0,),
                    detail="fixes a simple factor but induces an outer automorphism",
                )
    return (witness is None, witness, ok)


def _abelian_inner_profile(cf: ChiefFactorView, Q: GroupTable):
    """Inner on an order-p section means trivial; scan eigenvalues != 1.

    An invariant index-p section with nontrivial action exists exactly when
    the conjugation matrix over F_p has an eigenvalue outside {1}; the
    eigenvector spans a witness section.  (Exhaustive section enumeration is
    the test oracle for this shortcut.)
    """
    caps.current().check("abelian section scan", cf.factor_order,
                         "abelian_section")
    p = cf.char_prime
    basis_subs = cf.simple_factors()
    basis = [int(cf.lift_to_bar(S).elements()[
        np.flatnonzero(cf.lift_to_bar(S).elements() != 0)[0]]) for S in basis_subs]
    r = len(basis)
    hbar = cf.hbar()
    helems = hbar.elements()
    coord = _coordinate_table(Q, helems, basis, p)
    cent = cf.centralizer
    _, pi = cf.bar()
    cent_bar = np.zeros(Q.order, dtype=bool)
    cent_bar[pi.image_of[cent.elements()]] = True
    ok = np.ones(Q.order, dtype=bool)
    witness = None
    lambdas = list(range(2, p))
    for x in range(Q.order):
        if cent_bar[x]:
            continue
        perm = Q.conj_perm(x)
        mat = np.stack([coord[int(perm[b])] for b in basis], axis=1) % p
        bad_lambda = None
        for lam in lambdas:
            m = (mat - lam * np.eye(r, dtype=np.int64)) % p
            if _det_mod_p(m, p) == 0:
                bad_lambda = lam
                break
        if bad_lambda is not None:
            ok[x] = False
            if witness is None:
                v = _kernel_vector_mod_p((mat - bad_lambda * np.eye(r, dtype=np.int64)) % p, p)
                elem = _element_from_coords(Q, basis, v, p)
                witness = GrWitness(
                    element=_lift_witness(cf, x),
                    section_upper=(0, elem),
                    section_lower=(0,),
                    detail=f"acts with eigenvalue {bad_lambda} (mod {p}) on an invariant section",
                )
    return (witness is None, witness, ok)


def _coordinate_table(Q: GroupTable, helems: np.ndarray, basis: list[int],
                      p: int) -> dict[int, np.ndarray]:
    """Element of the section -> F_p coordinates over the greedy basis."""
    r = len(basis)
    coord: dict[int, np.ndarray] = {}
    elems = [0]
    coord[0] = np.zeros(r, dtype=np.int64)
    for i, b in enumerate(basis):
        cur = list(elems)
        cur_coords = [coord[e] for e in cur]
        acc = 0
        for k in range(1, p):
            acc = int(Q.mul[acc, b])
            for e, c in zip(cur, cur_coords):
                x = int(Q.mul[e, acc])
                v = c.copy()
                v[i] = k
                coord[x] = v
                elems.append(x)
    assert len(coord) == helems.size, "basis does not span the section"
    return coord


def _det_mod_p(m: np.ndarray, p: int) -> int:
    m = m.copy() % p
    r = m.shape[0]
    det = 1
    for col in range(r):
        piv = None
        for row in range(col, r):
            if m[row, col] % p:
                piv = row
                break
        if piv is None:
            return 0
        if piv != col:
            m[[col, piv]] = m[[piv, col]]
            det = -det
        det = (det * m[col, col]) % p
        inv = pow(int(m[col, col]), p - 2, p)
        m[col] = (m[col] * inv) % p
        for row in range(col + 1, r):
            m[row] = (m[row] - m[row, col] * m[col]) % p
    return det % p


def _kernel_vector_mod_p(m: np.ndarray, p: int) -> np.ndarray:
    """A nonzero solution of m v = 0 over F_p (m is singular here)."""
    m = m.copy() % p
    r = m.shape[0]
    pivots = {}
    row = 0
    for col in range(r):
        piv = None
        for rr in range(row, r):
            if m[rr, col] % p:
                piv = rr
                break
        if piv is None:
            continue
        m[[row, piv]] = m[[piv, row]]
        inv = pow(int(m[row, col]), p - 2, p)
        m[row] = (m[row] * inv) % p
        for rr in range(r):
            if rr != row and m[rr, col] % p:
                m[rr] = (m[rr] - m[rr, col] * m[row]) % p
        pivots[col] = row
        row += 1
    free = [c for c in range(r) if c not in pivots]
    assert free, "matrix is nonsingular; no kernel vector"
    v = np.zeros(r, dtype=np.int64)
    v[free[0]] = 1
    for col, rw in pivots.items():
        v[col] = (-m[rw, free[0]]) % p
    return v


def _element_from_coords(Q: GroupTable, basis: list[int], v: np.ndarray,
                         p: int) -> int:
    acc = 0
    for b, e in zip(basis, v.tolist()):
        for _ in range(int(e) % p):
            acc = int(Q.mul[acc, b])
    return acc


def gr_in_r(cf: ChiefFactorView, rank_spec) -> GrDecision:
    """Decide the generalized-rank condition for one chief factor."""
    a_set, b_set = rank_spec.resolve(cf.type_key)
    r = cf.rank
    if r in a_set:
        return GrDecision(True, "A", r, None)
    if r in b_set:
        ok, witness, _ = inner_action_profile(cf)
        if ok:
            return GrDecision(True, "B", r, None)
        return GrDecision(False, None, r, witness)
    return GrDecision(False, None, r, None)


def cp_subgroup(G: GroupTable, p: int, tie: str = "min") -> Subgroup:
    """Intersection of centralizers of the abelian p-chief factors."""
    mask = np.ones(G.order, dtype=bool)
    for f in chief_series(G, tie=tie).factors():
        if f.is_abelian and f.char_prime == p:
            mask &= f.centralizer.members
    return subgroup_from_mask(G, mask, check=False)


def factor_signature(cf: ChiefFactorView, with_profile: bool = True) -> tuple:
    """Signature equal across G-isomorphic chief factors.

    (type key, rank, centralizer mask, per-element inner/outer profile);
    the profile is lifted to G so signatures from different series of the
    same group are comparable.
    """
    key = cf.type_key
    cent = cf.centralizer.key
    if not with_profile:
        return (key, cf.rank, cent)
    _, _, ok_bar = inner_action_profile(cf)
    _, pi = cf.bar()
    profile = ok_bar[pi.image_of]
    return (key, cf.rank, cent, profile.tobytes())
