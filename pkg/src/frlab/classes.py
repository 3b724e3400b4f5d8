"""Group classes: membership oracles, closure flags, centrality of factors.

A ClassSpec is a predicate on GroupTables plus declared closure flags.
Flags are declarations, spot-verified over the catalog in the test suite;
operations whose correctness depends on a flag refuse to run without it.
When available, a class carries its canonical prime-indexed definition
F(p) (with F(p) = N_p F(p)) and a zero slot for the non-abelian route, so
factor centrality can be decided without building semidirect products.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from . import caps
from .construct import semidirect_product
from .errors import (
    MissingDefinition,
    MissingFlag,
    NotAFormation,
    OrderCapExceeded,
    Undecidable,
    UnknownClass,
)
from .grouptable import GroupTable, Subgroup, quotient, subgroup_from_mask, p_core
from .lattice import all_subgroups, intersect_all, normal_subgroups
from .series import ChiefFactorView, chief_series
from .structure import is_nilpotent, is_soluble, prime_divisors


@dataclass(frozen=True)
class ClassFlags:
    formation: bool = False
    hereditary: bool = False
    normally_hereditary: bool = False
    saturated: bool = False
    solubly_saturated: bool = False
    contains_nilpotent: bool = False
    contains_own_composition_factors: bool = False


class ClassSpec:
    """A class of groups: id, membership predicate, flags, definition data."""

    def __init__(self, class_id: str, member_fn: Callable[[GroupTable], bool],
                 flags: ClassFlags,
                 local_def: Optional[Callable[[int], "ClassSpec"]] = None,
                 comp_def_zero: Optional["ClassSpec"] = None,
                 display: str = ""):
        self.id = class_id
        self._member_fn = member_fn
        self.flags = flags
        self._local_def = local_def
        self._comp_def_zero = comp_def_zero
        self.display = display or class_id

    def member(self, G: GroupTable) -> bool:
        key = ("member", self.id)
        got = G._memo.get(key)
        if got is None:
            got = bool(self._member_fn(G))
            G._memo[key] = got
        return got

    def local_value(self, p: int) -> "ClassSpec":
        if self._local_def is None:
            raise MissingDefinition(f"{self.id} has no canonical local values")
        return self._local_def(p)

    @property
    def has_local_def(self) -> bool:
        return self._local_def is not None

    def comp_zero(self) -> "ClassSpec":
        """The zero slot of the canonical composition definition.

        For a class built from local values this is the class itself.
        """
        if self._comp_def_zero is not None:
            return self._comp_def_zero
        if self._local_def is not None and self.flags.saturated:
            return self
        raise MissingDefinition(f"{self.id} has no composition definition")

    @property
    def has_comp_def(self) -> bool:
        return self._comp_def_zero is not None or (
            self._local_def is not None and self.flags.saturated)

    def with_flags(self, **updates) -> "ClassSpec":
        clone = ClassSpec(self.id, self._member_fn,
                          replace(self.flags, **updates),
                          self._local_def, self._comp_def_zero, self.display)
        return clone

    def __repr__(self) -> str:
        return f"ClassSpec({self.id})"


_ALL_FLAGS = ClassFlags(True, True, True, True, True, True, True)
_REGISTRY: dict[str, ClassSpec] = {}


def _register(spec: ClassSpec) -> ClassSpec:
    return _REGISTRY.setdefault(spec.id, spec)


def empty_class() -> ClassSpec:
    return _register(ClassSpec(
        "0", lambda G: False,
        ClassFlags(formation=True, hereditary=True, normally_hereditary=True),
        display="(empty)"))


def _local_const(spec: ClassSpec) -> Callable[[int], ClassSpec]:
    return lambda p: spec


def trivial_class() -> ClassSpec:
    return _register(ClassSpec(
        "E", lambda G: G.order == 1,
        ClassFlags(formation=True, hereditary=True, normally_hereditary=True,
                   saturated=True, solubly_saturated=True,
                   contains_own_composition_factors=True),
        local_def=_local_const(empty_class()), display="E"))


def nilpotent_class() -> ClassSpec:
    return _register(ClassSpec(
        "N", is_nilpotent, _ALL_FLAGS,
        local_def=lambda p: p_groups_class(p), display="N"))


def soluble_class() -> ClassSpec:
    spec = ClassSpec("S", is_soluble, _ALL_FLAGS, display="S")
    spec._local_def = _local_const(spec)
    return _register(spec)


def _is_supersoluble(G: GroupTable) -> bool:
    return all(_is_prime(f.factor_order)
               for f in chief_series(G).factors())


def _is_prime(n: int) -> bool:
    return n > 1 and prime_divisors(n) == [n]


def supersoluble_class() -> ClassSpec:
    return _register(ClassSpec(
        "U", _is_supersoluble, _ALL_FLAGS,
        local_def=lambda p: np_extend(p, abelian_exponent_dividing(p - 1)),
        display="U"))


def all_groups_class() -> ClassSpec:
    spec = ClassSpec("G", lambda G: True, _ALL_FLAGS, display="G")
    spec._local_def = _local_const(spec)
    return _register(spec)


def p_groups_class(p: int) -> ClassSpec:
    def member(G: GroupTable) -> bool:
        n = G.order
        while n % p == 0:
            n //= p
        return n == 1

    spec = ClassSpec(
        f"p({p})", member,
        ClassFlags(formation=True, hereditary=True, normally_hereditary=True,
                   saturated=True, solubly_saturated=True,
                   contains_own_composition_factors=True),
        display=f"p-groups({p})")
    spec._local_def = lambda q: spec if q == p else empty_class()
    return _register(spec)


def pi_groups_class(primes: tuple[int, ...]) -> ClassSpec:
    pset = tuple(sorted(set(primes)))

    def member(G: GroupTable) -> bool:
        return all(q in pset for q in prime_divisors(G.order))

    spec = ClassSpec(
        f"pi({','.join(map(str, pset))})", member,
        ClassFlags(formation=True, hereditary=True, normally_hereditary=True,
                   saturated=True, solubly_saturated=True,
                   contains_own_composition_factors=True),
        display=f"pi-groups{pset}")
    spec._local_def = lambda q: spec if q in pset else empty_class()
    return _register(spec)


def abelian_exponent_dividing(d: int) -> ClassSpec:
    def member(G: GroupTable) -> bool:
        if not G.is_abelian():
            return False
        return bool((d % np.asarray(G.element_orders) == 0).all())

    return _register(ClassSpec(
        f"A({d})", member,
        ClassFlags(formation=True, hereditary=True, normally_hereditary=True,
                   contains_own_composition_factors=True),
        display=f"Ab(exp|{d})"))


_BUILTIN_PLAIN = {
    "E": trivial_class, "trivial": trivial_class,
    "N": nilpotent_class, "nilpotent": nilpotent_class,
    "S": soluble_class, "soluble": soluble_class,
    "U": supersoluble_class, "supersoluble": supersoluble_class,
    "G": all_groups_class, "all": all_groups_class,
    "0": empty_class, "empty": empty_class,
}

def builtin(name: str) -> ClassSpec:
    """Built-in class by name: E, N, S, U, G, p_groups(p), pi_groups(..),
    abelian_exponent_dividing(d)."""
    name = name.strip()
    if name in _BUILTIN_PLAIN:
        return _BUILTIN_PLAIN[name]()
    m = re.match(r"^(\w+)\((.*)\)$", name)
    if m:
        fn, raw = m.group(1), m.group(2)
        try:
            args = [int(a) for a in raw.split(",")] if raw.strip() else []
        except ValueError:
            raise UnknownClass(f"bad arguments in {name!r}")
        if fn in ("p_groups", "p") and len(args) == 1:
            return p_groups_class(args[0])
        if fn in ("pi_groups", "pi") and args:
            return pi_groups_class(tuple(args))
        if fn in ("abelian_exponent_dividing", "A") and len(args) == 1:
            return abelian_exponent_dividing(args[0])
    raise UnknownClass(f"unknown class name {name!r}")


# -- class operators -----------------------------------------------------------


def np_extend(p: int, X: ClassSpec) -> ClassSpec:
    """N_p X: groups whose quotient by the p-core lies in X."""
    if not X.flags.formation:
        raise NotAFormation(f"{X.id} is not flagged as a formation")
    cid = f"np({p},{X.id})"
    if cid in _REGISTRY:
        return _REGISTRY[cid]

    def member(G: GroupTable) -> bool:
        Q, _ = quotient(G, p_core(G, p))
        return X.member(Q)

    return _register(ClassSpec(
        cid, member,
        ClassFlags(formation=True, hereditary=X.flags.hereditary,
                   normally_hereditary=X.flags.normally_hereditary),
        display=f"N_{p}{X.display}"))


def e_closure(X: ClassSpec) -> ClassSpec:
    """E X: groups all of whose composition factors lie in X."""
    cid = f"e({X.id})"
    if cid in _REGISTRY:
        return _REGISTRY[cid]

    def member(G: GroupTable) -> bool:
        for f in chief_series(G).factors():
            if not X.member(f.simple_factors()[0].as_group()):
                return False
        return True

    return _register(ClassSpec(
        cid, member,
        ClassFlags(formation=True, normally_hereditary=True,
                   contains_nilpotent=X.flags.contains_nilpotent,
                   contains_own_composition_factors=True),
        display=f"E{X.display}"))


# -- centrality of chief factors ----------------------------------------------


@dataclass(frozen=True)
class CentralityDecision:
    central: bool
    route: str  # 'semidirect' | 'canonical' | 'both'
    details: str


def _semidirect_of_factor(cf: ChiefFactorView) -> GroupTable:
    """The factor group extended by G/C acting through conjugation."""
    Q, _ = cf.bar()
    F = cf.factor_group()
    helems = cf.hbar().elements()
    cent = cf.centralizer
    _, pi = cf.bar()
    cmask = np.zeros(Q.order, dtype=bool)
    cmask[pi.image_of[cent.elements()]] = True
    Cbar = subgroup_from_mask(Q, cmask, check=False)
    QC, rho = quotient(Q, Cbar)
    pos = np.full(Q.order, -1, dtype=np.int64)
    pos[helems] = np.arange(helems.size)
    perms = []
    for q in range(QC.order):
        rep = int(np.flatnonzero(rho.image_of == q)[0])
        # left action: act(q) = conjugation by rep^-1, so act(q1 q2) composes
        # as act(q1) after act(q2)
        perms.append(pos[Q.conj_perm(int(Q.inv[rep]))[helems]])
    return semidirect_product(F, QC, perms,
                              label=f"[{cf.upper.size}/{cf.lower.size}]:G/C")


def is_f_central(G: GroupTable, cf: ChiefFactorView, X: ClassSpec,
                 route: str = "both") -> CentralityDecision:
    """Is the chief factor X-central (factor extended by G/C lies in X)?

    The explicit semidirect construction runs when the product is small
    enough; classes with canonical definition data also get the quotient
    test (abelian p-factor: G/C in F(p); non-abelian: G/C in the zero slot
    for composition classes, or in every relevant F(p) for local ones).
    Both routes must agree when both run.
    """
    semi_verdict = None
    canon_verdict = None
    details = []
    product_size = cf.factor_order * (G.order // cf.centralizer.size)
    if route in ("both", "semidirect", "auto"):
        if product_size <= caps.current().central_semidirect:
            M = _semidirect_of_factor(cf)
            semi_verdict = X.member(M)
            details.append(f"semidirect[{M.order}]={semi_verdict}")
        elif route == "semidirect":
            raise Undecidable(
                f"semidirect route needs order {product_size}, cap "
                f"{caps.current().central_semidirect}")
    if route in ("both", "canonical", "auto") and not (
            route == "auto" and semi_verdict is not None):
        canon_verdict = _canonical_centrality(G, cf, X)
        if canon_verdict is not None:
            details.append(f"canonical={canon_verdict}")
    if semi_verdict is not None and canon_verdict is not None:
        assert semi_verdict == canon_verdict, (
            f"centrality routes disagree on {cf!r} for {X.id}")
        return CentralityDecision(semi_verdict, "both", "; ".join(details))
    if semi_verdict is not None:
        return CentralityDecision(semi_verdict, "semidirect", "; ".join(details))
    if canon_verdict is not None:
        return CentralityDecision(canon_verdict, "canonical", "; ".join(details))
    raise Undecidable(
        f"no centrality route for factor of order {cf.factor_order} in "
        f"{G.label} under {X.id} (product size {product_size})")


def _canonical_centrality(G: GroupTable, cf: ChiefFactorView,
                          X: ClassSpec) -> Optional[bool]:
    if not X.has_local_def:
        return None
    GC, _ = quotient(G, cf.centralizer)
    if cf.is_abelian:
        return X.local_value(cf.char_prime).member(GC)
    if X.flags.saturated:
        return all(X.local_value(p).member(GC)
                   for p in prime_divisors(cf.factor_order))
    if X.has_comp_def:
        return X.comp_zero().member(GC)
    return None


# -- misc class operations ------------------------------------------------------


def residual(G: GroupTable, X: ClassSpec) -> Subgroup:
    """Smallest normal subgroup with X-quotient (X must be a formation)."""
    if not X.flags.formation:
        raise NotAFormation(f"{X.id} is not flagged as a formation")
    hits = [N for N in normal_subgroups(G) if X.member(quotient(G, N)[0])]
    if not hits:
        raise NotAFormation(f"{X.id} admits no quotient of {G.label}; "
                            "residual undefined for empty classes")
    res = intersect_all(G, hits)
    assert X.member(quotient(G, res)[0]), \
        "formation axiom violated: intersection quotient left the class"
    return res


def s_critical(G: GroupTable, X: ClassSpec) -> bool:
    """G outside X with every proper subgroup inside X."""
    if X.member(G):
        return False
    return all(X.member(H.as_group())
               for H in all_subgroups(G) if H.size < G.order)


def saturated_subformation_check(X: ClassSpec) -> ClassSpec:
    """The class locally defined by the prime slots of X's canonical data."""
    if not X.has_local_def:
        raise MissingDefinition(
            f"{X.id} carries no canonical composition definition")
    cid = f"lf({X.id})"

    def member(G: GroupTable) -> bool:
        for f in chief_series(G).factors():
            GC, _ = quotient(G, f.centralizer)
            if not all(X.local_value(p).member(GC)
                       for p in prime_divisors(f.factor_order)):
                return False
        return True

    return ClassSpec(cid, member,
                     ClassFlags(formation=True, saturated=True,
                                solubly_saturated=True),
                     display=f"LF({X.display})")
