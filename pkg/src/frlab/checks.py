"""Corpus-wide verification checks and witness searches.

Each check id maps to a per-group verdict function; the runner sweeps a
catalog tier, optionally across a worker pool, and aggregates a
CheckReport.  Verification checks treat any failure as an implementation
bug (the statements they test are proven); searches treat witnesses as
neutral findings.
"""

from __future__ import annotations

import time
from dataclasses import asdict
from typing import Callable, Optional

import numpy as np

from . import caps
from .catalog import default_catalog, tier_recipes
from .centerint import (
    c1_constant,
    c2_constant,
    hypercenter,
    hypercenter_ascending,
    int_x,
    out_group_of_simple,
    shemetkov_check,
    t3_condition,
    verify_out_entry,
    x_maximal_subgroups,
    OUT_FACTS,
)
from .classes import (
    ClassSpec,
    builtin,
    e_closure,
    is_f_central,
    s_critical,
    saturated_subformation_check,
)
from .errors import (
    MissingFlag,
    OrderCapExceeded,
    Undecidable,
    UnknownCheck,
    UnknownPredicate,
)
from .formats import parse_rank_spec, resolve_class
from .grouptable import GroupTable, Subgroup, quotient, subgroup_from_mask
from .lattice import normal_subgroups
from .rankfn import RankSpec, _materialize, preset, rank_spec, t2_structure
from .recipes import build
from .reports import CheckReport
from .series import factors_below
from .structure import (
    characteristic_subgroups,
    frattini_subgroup,
    is_semisimple,
    soluble_radical,
)

Verdict = tuple[str, dict]  # status, detail


# -- environment shared by the per-group functions --------------------------------


def _resolve_env(check_id: str, params: dict) -> dict:
    env: dict = dict(params)
    if "class" in params:
        env["cls"] = resolve_class(params["class"],
                                   rank_env=_rank_env(params))
    if "rank" in params and params["rank"]:
        env["rank_spec"] = parse_rank_spec(params["rank"])
    if check_id in ("t2_equiv",):
        env["base"] = builtin(params.get("base", "N"))
        env.setdefault("rank_spec",
                       rank_spec(default=(frozenset(), frozenset({1}))))
    if check_id == "example1":
        item = int(params.get("item", 1))
        env["preset"] = preset(item)
        env["reference"] = {1: builtin("U"), 5: builtin("N")}[item]
    if check_id in ("c21",):
        env["preset"] = preset(6)
    if check_id == "t32":
        p = preset(int(params.get("preset", 6)))
        env["preset"] = p
        env["lf"] = saturated_subformation_check(p.fr)
    if check_id == "c31":
        R = env.get("rank_spec")
        if R is None:
            R = rank_spec(default=(frozenset(), frozenset({1})))
            env["rank_spec"] = R
        _check_c31_conditions(R)
        from .rankfn import FRClass
        env["cls"] = FRClass(builtin("E"), R, builtin("N"),
                             label=f"N({R.id})")
    if check_id == "t3_forward":
        cls = env.get("cls") or preset(6).fr
        env["cls"] = cls
        env["lf"] = saturated_subformation_check(cls)
    return env


def _rank_env(params: dict) -> dict:
    from .formats import builtin_rank_specs
    env = builtin_rank_specs()
    if params.get("rank"):
        env["FILE"] = parse_rank_spec(params["rank"])
    return env


def _check_c31_conditions(R: RankSpec) -> None:
    """The three conditions on A-sets of non-abelian simple types."""
    from .structure import is_nilpotent, prime_divisors
    for order in sorted(OUT_FACTS):
        key = _StubKey(order)
        a_set, b_set = R.resolve(key)
        if any(x > 2 for x in a_set | b_set):
            raise MissingFlag(
                f"rank sets for simple order {order} leave [0, 2]")
        out = out_group_of_simple(order)
        if 1 in a_set and not is_nilpotent(out):
            raise MissingFlag(
                f"1 admitted for simple order {order} but its outer group "
                "is not nilpotent")
        if 2 in a_set and prime_divisors(out.order) != [2]:
            raise MissingFlag(
                f"2 admitted for simple order {order} but its outer group "
                "is not a 2-group")


class _StubKey:
    def __init__(self, order: int):
        self.order = order
        self.abelian = False
        self.profile = ()


# -- per-group verdict functions ---------------------------------------------------


def _chk_baer(G: GroupTable, env: dict) -> Verdict:
    N = builtin("N")
    try:
        ix = int_x(G, N)
    except OrderCapExceeded as exc:
        return "undecided", {"reason": str(exc)}
    z = hypercenter(G, N)
    zc = characteristic_subgroups(G).hypercenter_classical
    ok = ix == z == zc
    return ("pass" if ok else "fail",
            {"int": ix.size, "z": z.size, "z_classical": zc.size})


def _chk_example1(G: GroupTable, env: dict) -> Verdict:
    lhs = env["preset"].fr.member(G)
    rhs = env["reference"].member(G)
    return ("pass" if lhs == rhs else "fail",
            {"rank_class": lhs, "reference": rhs})


def _chk_c21(G: GroupTable, env: dict) -> Verdict:
    lhs = env["preset"].fr.member(G)
    zc = characteristic_subgroups(G).hypercenter_classical
    Q, _ = quotient(G, zc)
    rhs = is_semisimple(Q)
    return ("pass" if lhs == rhs else "fail",
            {"member": lhs, "semisimple_quotient": rhs})


def _soluble_radical_frattini(G: GroupTable) -> Subgroup:
    rad = soluble_radical(G)
    R = rad.as_group()
    phi = frattini_subgroup(R)
    mask = np.zeros(G.order, dtype=bool)
    mask[rad.elements()[phi.elements()]] = True
    return subgroup_from_mask(G, mask, check=False)


def _chk_mt1_closure(G: GroupTable, env: dict) -> Verdict:
    cls: ClassSpec = env["cls"]
    detail: dict = {}
    member = cls.member(G)
    normals = normal_subgroups(G)
    if member:
        for N in normals:
            Q, _ = quotient(G, N)
            if not cls.member(Q):
                return "fail", {"quotient_by": N.size}
    else:
        for i, M in enumerate(normals):
            for N in normals[i + 1:]:
                if (M.members & N.members).sum() == 1:
                    if cls.member(quotient(G, M)[0]) and \
                            cls.member(quotient(G, N)[0]):
                        return "fail", {"subdirect_pair": [M.size, N.size]}
        phi = _soluble_radical_frattini(G)
        if cls.member(quotient(G, phi)[0]):
            return "fail", {"soluble_saturation_kernel": phi.size}
    detail["member"] = member
    return "pass", detail


def _chk_mt1_hered(G: GroupTable, env: dict) -> Verdict:
    cls: ClassSpec = env["cls"]
    if not cls.member(G):
        return "pass", {"member": False}
    for N in normal_subgroups(G):
        if not cls.member(N.as_group()):
            return "fail", {"normal_subgroup": N.size}
    return "pass", {"member": True}


def _chk_p7(G: GroupTable, env: dict) -> Verdict:
    cls: ClassSpec = env["cls"]
    try:
        ix = int_x(G, cls)
    except OrderCapExceeded as exc:
        return "undecided", {"reason": str(exc)}
    z = hypercenter(G, cls)
    ok = ix.contains(z)
    return ("pass" if ok else "fail", {"z": z.size, "int": ix.size})


def _chk_t2_equiv(G: GroupTable, env: dict) -> Verdict:
    rep = t2_structure(G, env["base"], env["rank_spec"])
    status = "pass" if rep.consistent else "fail"
    return status, {"verdicts": [rep.verdict_member, rep.verdict_bounded,
                                 rep.verdict_residual],
                    "n_section": rep.n_section, "detail": rep.details}


def _chk_t32(G: GroupTable, env: dict) -> Verdict:
    lhs = env["lf"].member(G)
    rhs = env["preset"].canonical_base.member(G)
    return ("pass" if lhs == rhs else "fail",
            {"locally_defined": lhs, "base": rhs})


def _chk_shemetkov(G: GroupTable, env: dict) -> Verdict:
    cls: ClassSpec = env["cls"]
    try:
        v = shemetkov_check(G, cls)
    except OrderCapExceeded as exc:
        return "undecided", {"reason": str(exc)}
    return ("pass" if v.equal else "fail",
            {"z": v.z.size, "int": v.int_.size, "z_leq_int": v.z_leq_int})


def _chk_c31(G: GroupTable, env: dict) -> Verdict:
    return _chk_shemetkov(G, env)


def _chk_t3_forward(G: GroupTable, env: dict) -> Verdict:
    cls: ClassSpec = env["cls"]
    lf: ClassSpec = env["lf"]
    try:
        ix = int_x(G, cls)
    except OrderCapExceeded as exc:
        return "undecided", {"reason": str(exc)}
    for f in factors_below(G, ix):
        relevant = f.is_abelian
        if not relevant and hasattr(cls, "rank"):
            a, b = cls.rank.resolve(f.type_key)
            relevant = not (a | b)
        if relevant and not is_f_central(G, f, lf).central:
            return "fail", {"factor_order": f.factor_order}
    return "pass", {"int": ix.size}


def _chk_oracles(G: GroupTable, env: dict) -> Verdict:
    """Cross-checks: centrality routes agree, ascending hypercenter agrees."""
    from .series import chief_series
    for cls_name in ("N", "U"):
        cls = builtin(cls_name)
        for f in chief_series(G).factors():
            is_f_central(G, f, cls, route="both")  # asserts agreement inside
        if hypercenter(G, cls) != hypercenter_ascending(G, cls):
            return "fail", {"class": cls_name}
    return "pass", {}


CHECKS: dict[str, Callable[[GroupTable, dict], Verdict]] = {
    "baer": _chk_baer,
    "example1": _chk_example1,
    "c21": _chk_c21,
    "mt1_closure": _chk_mt1_closure,
    "mt1_hered": _chk_mt1_hered,
    "p7": _chk_p7,
    "t2_equiv": _chk_t2_equiv,
    "t32": _chk_t32,
    "shemetkov": _chk_shemetkov,
    "c31": _chk_c31,
    "t3_forward": _chk_t3_forward,
    "oracles": _chk_oracles,
}


# -- searches ----------------------------------------------------------------------


def _srch_int_ne_z(G: GroupTable, env: dict) -> Verdict:
    cls: ClassSpec = env["cls"]
    try:
        v = shemetkov_check(G, cls)
    except OrderCapExceeded as exc:
        return "undecided", {"reason": str(exc)}
    if not v.equal:
        return "fail", {"z": v.z.size, "int": v.int_.size}
    return "pass", {}


def _srch_s_critical(G: GroupTable, env: dict) -> Verdict:
    cls: ClassSpec = env["cls"]
    try:
        hit = s_critical(G, cls)
    except OrderCapExceeded as exc:
        return "undecided", {"reason": str(exc)}
    return ("fail" if hit else "pass", {"s_critical": hit})


SEARCHES: dict[str, Callable[[GroupTable, dict], Verdict]] = {
    "int-ne-z": _srch_int_ne_z,
    "s-critical": _srch_s_critical,
}


# -- the runner --------------------------------------------------------------------


_WORKER: dict = {}


def _init_worker(kind: str, check_id: str, tier: str, params: dict) -> None:
    fn = (CHECKS if kind == "check" else SEARCHES)[check_id]
    _WORKER.update(kind=kind, fn=fn, tier=tier,
                   env=_resolve_env(check_id, params))


def _run_label(entry: tuple[str, str]) -> tuple[str, str, dict]:
    label, recipe = entry
    G = build(recipe, label=label)
    try:
        status, detail = _WORKER["fn"](G, _WORKER["env"])
    except Undecidable as exc:
        status, detail = "undecided", {"reason": str(exc)}
    return label, status, detail


def _sweep(kind: str, check_id: str, tier: str, params: dict,
           jobs: int, max_order: Optional[int] = None) -> CheckReport:
    table = CHECKS if kind == "check" else SEARCHES
    if check_id not in table:
        err = UnknownCheck if kind == "check" else UnknownPredicate
        raise err(f"unknown {kind} id {check_id!r}")
    rows = [(label, rec) for label, rec, _ in tier_recipes(tier)]
    if max_order is not None:
        kept = []
        for label, rec in rows:
            g = build(rec, label=label)
            if g.order <= max_order:
                kept.append((label, rec))
        rows = kept
    start = time.monotonic()
    results: list[tuple[str, str, dict]] = []
    if jobs <= 1:
        _init_worker(kind, check_id, tier, params)
        try:
            for entry in rows:
                results.append(_run_label(entry))
        finally:
            _WORKER.clear()
    else:
        import multiprocessing as mp
        ctx = mp.get_context("spawn")
        with ctx.Pool(jobs, initializer=_init_worker,
                      initargs=(kind, check_id, tier, params)) as pool:
            results = list(pool.imap_unordered(_run_label, rows))
    results.sort(key=lambda r: r[0])
    counts = {"pass": 0, "fail": 0, "undecided": 0}
    witnesses = []
    for label, status, detail in results:
        counts[status] += 1
        if status != "pass":
            witnesses.append((label, {"status": status, **detail}))
    report = CheckReport(
        check_id=check_id, params=dict(params),
        universe={"tier": tier, "size": len(rows),
                  "caps": asdict(caps.current())},
        pass_count=counts["pass"], fail_count=counts["fail"],
        undecided_count=counts["undecided"], witnesses=witnesses,
        wall_time_s=time.monotonic() - start)
    report.validate()
    return report


def run_check(check_id: str, tier: str = "small", params: Optional[dict] = None,
              jobs: int = 1) -> CheckReport:
    return _sweep("check", check_id, tier, dict(params or {}), jobs)


def run_search(pred_id: str, tier: str = "small", params: Optional[dict] = None,
               jobs: int = 1, max_order: Optional[int] = None) -> CheckReport:
    return _sweep("search", pred_id, tier, dict(params or {}), jobs,
                  max_order=max_order)


def verify_out_table(limit_order: Optional[int] = None) -> dict[int, bool]:
    """Brute-force the outer-automorphism facts at or below the search cap."""
    cap = limit_order or caps.current().automorphism
    out = {}
    from .construct import alternating_group
    builders = {60: lambda: alternating_group(5)}
    for order, make in builders.items():
        if order <= cap:
            out[order] = verify_out_entry(make())
    return out
