"""Command-line interface: analyze, verify, search, catalog.

Exit codes: 0 success, 1 check failure, 2 input error, 3 cap exceedance.
Caps can be overridden through the FRLAB_CAPS environment variable.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import caps
from .catalog import TIERS, default_catalog, tier_recipes
from .centerint import hypercenter, int_x
from .checks import CHECKS, SEARCHES, run_check, run_search
from .classes import residual
from .errors import (
    FrlabError,
    OrderCapExceeded,
    RecipeSyntaxError,
    UnknownCheck,
    UnknownClass,
    UnknownConstructor,
    UnknownPredicate,
)
from .formats import load_group, resolve_class
from .grouptable import GroupTable
from .recipes import build, parse_recipe
from .series import chief_series
from .structure import characteristic_subgroups


def _load_source(src: str) -> GroupTable:
    path = Path(src)
    if path.exists():
        return load_group(path)
    try:
        parse_recipe(src)
    except (RecipeSyntaxError, UnknownConstructor):
        for label, rec, _ in tier_recipes("medium"):
            if label == src:
                return build(rec, label=label)
        raise
    return build(src, label=src)


def _analyze_payload(G: GroupTable, class_ids: list[str]) -> dict:
    series = chief_series(G)
    factors = []
    for f in series.factors():
        factors.append({
            "order": f.factor_order,
            "rank": f.rank,
            "abelian": f.is_abelian,
            "type_order": f.type_key.order,
            "centralizer_order": f.centralizer.size,
        })
    ch = characteristic_subgroups(G)
    payload = {
        "label": G.label,
        "order": G.order,
        "provenance": G.provenance,
        "chief_series_orders": [t.size for t in series.terms],
        "factors": factors,
        "characteristic": {
            "center": ch.center.size,
            "derived": ch.derived.size,
            "fitting": ch.fitting.size,
            "frattini": ch.frattini.size,
            "soluble_radical": ch.soluble_radical.size,
            "socle": ch.socle.size,
            "generalized_fitting_tilde": ch.generalized_fitting_tilde.size,
            "hypercenter_classical": ch.hypercenter_classical.size,
        },
        "classes": {},
    }
    for cid in class_ids:
        cls = resolve_class(cid)
        entry: dict = {"member": cls.member(G)}
        entry["hypercenter"] = hypercenter(G, cls).size
        try:
            entry["intersection_of_maximal"] = int_x(G, cls).size
        except OrderCapExceeded as exc:
            entry["intersection_of_maximal"] = f"undecided: {exc}"
        if cls.flags.formation:
            entry["residual"] = residual(G, cls).size
        payload["classes"][cid] = entry
    return payload


def _print_analysis(payload: dict) -> None:
    print(f"group {payload['label']} of order {payload['order']}")
    if payload["provenance"]:
        print(f"  built from: {payload['provenance']}")
    sizes = payload["chief_series_orders"]
    print("  chief series subgroup orders: " + " < ".join(map(str, sizes)))
    for i, f in enumerate(payload["factors"], start=1):
        kind = "abelian" if f["abelian"] else "non-abelian"
        print(f"  factor {i}: order {f['order']}, rank {f['rank']}, {kind}, "
              f"simple type order {f['type_order']}, "
              f"centralizer order {f['centralizer_order']}")
    ch = payload["characteristic"]
    print("  characteristic subgroup orders: "
          + ", ".join(f"{k}={v}" for k, v in ch.items()))
    for cid, entry in payload["classes"].items():
        parts = [f"member={entry['member']}",
                 f"hypercenter={entry['hypercenter']}",
                 f"Int={entry['intersection_of_maximal']}"]
        if "residual" in entry:
            parts.append(f"residual={entry['residual']}")
        print(f"  class {cid}: " + ", ".join(parts))


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        G = _load_source(args.source)
    except OrderCapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except (FrlabError, OSError) as exc:
        print(f"cannot load group: {exc}", file=sys.stderr)
        return 2
    try:
        payload = _analyze_payload(G, args.classes or [])
    except OrderCapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except UnknownClass as exc:
        print(str(exc), file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        _print_analysis(payload)
    return 0


def _collect_params(args: argparse.Namespace) -> dict:
    params: dict = {}
    if getattr(args, "cls", None):
        params["class"] = args.cls
    if getattr(args, "rank", None):
        params["rank"] = Path(args.rank).read_text()
    if getattr(args, "item", None) is not None:
        params["item"] = args.item
    if getattr(args, "preset", None) is not None:
        params["preset"] = args.preset
    if getattr(args, "base", None):
        params["base"] = args.base
    return params


def cmd_verify(args: argparse.Namespace) -> int:
    params = _collect_params(args)
    reports = []
    for check_id in args.checks:
        try:
            rep = run_check(check_id, tier=args.tier, params=params,
                            jobs=args.jobs)
        except OrderCapExceeded as exc:
            print(f"cap exceeded: {exc}", file=sys.stderr)
            return 3
        except (UnknownCheck, UnknownClass, FrlabError) as exc:
            print(str(exc), file=sys.stderr)
            return 2
        reports.append(rep)
        if args.format == "json":
            print(rep.to_json())
        else:
            print(rep.summary_line())
            for label, detail in rep.witnesses:
                print(f"    {label}: {detail}")
    if args.out:
        Path(args.out).write_text(json.dumps(
            [r.to_dict() for r in reports], indent=2, sort_keys=True))
    return 0 if all(r.fail_count == 0 for r in reports) else 1


def cmd_search(args: argparse.Namespace) -> int:
    params = _collect_params(args)
    try:
        rep = run_search(args.predicate, tier=args.tier, params=params,
                         jobs=args.jobs, max_order=args.max_order)
    except OrderCapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except (UnknownPredicate, UnknownClass, FrlabError) as exc:
        print(str(exc), file=sys.stderr)
        return 2
    if args.format == "json":
        print(rep.to_json())
    else:
        found = [w for w in rep.witnesses if w[1].get("status") == "fail"]
        if found:
            print(f"witnesses ({len(found)}):")
            for label, detail in found:
                print(f"  {label}: {detail}")
        else:
            print("none <= cap")
        print(rep.summary_line())
    if args.out:
        Path(args.out).write_text(rep.to_json())
    return 0


def cmd_catalog(args: argparse.Namespace) -> int:
    cat = default_catalog(args.tier)
    for entry in cat:
        print(f"{entry.label:16s} order {entry.group.order:6d}  "
              f"[{entry.tier}]  {entry.recipe}")
    print(f"{len(cat)} groups in tier {args.tier}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frlab",
        description="Finite-group chief-series and formation laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="analyze one group")
    pa.add_argument("source", help="group file, recipe text, or catalog label")
    pa.add_argument("--class", dest="classes", action="append", metavar="ID",
                    help="also report membership/hypercenter/Int/residual")
    pa.add_argument("--format", choices=("text", "json"), default="text")
    pa.set_defaults(func=cmd_analyze)

    pv = sub.add_parser("verify", help="run corpus-wide checks")
    pv.add_argument("checks", nargs="+", choices=sorted(CHECKS),
                    metavar="check", help=f"one of {sorted(CHECKS)}")
    pv.add_argument("--tier", choices=TIERS, default="small")
    pv.add_argument("--class", dest="cls", metavar="ID")
    pv.add_argument("--rank", metavar="FILE", help="rank-spec file")
    pv.add_argument("--item", type=int, help="example1 item number")
    pv.add_argument("--preset", type=int, help="preset index for t32")
    pv.add_argument("--base", metavar="ID", help="base class for t2_equiv")
    pv.add_argument("--jobs", type=int, default=1)
    pv.add_argument("--out", metavar="FILE", help="write JSON report(s)")
    pv.add_argument("--format", choices=("text", "json"), default="text")
    pv.set_defaults(func=cmd_verify)

    ps = sub.add_parser("search", help="scan a tier for witnesses")
    ps.add_argument("predicate", choices=sorted(SEARCHES))
    ps.add_argument("--tier", choices=TIERS, default="small")
    ps.add_argument("--class", dest="cls", metavar="ID")
    ps.add_argument("--rank", metavar="FILE")
    ps.add_argument("--max-order", type=int, default=None)
    ps.add_argument("--jobs", type=int, default=1)
    ps.add_argument("--out", metavar="FILE")
    ps.add_argument("--format", choices=("text", "json"), default="text")
    ps.set_defaults(func=cmd_search)

    pc = sub.add_parser("catalog", help="list the group corpus")
    pc.add_argument("--tier", choices=TIERS, default="small")
    pc.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
