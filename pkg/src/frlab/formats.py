"""Text formats: group files, rank-spec files, class configuration.

Group file: first meaningful line is ``perm <degree>`` followed by one
generator per line in disjoint-cycle notation ``(1 2 3)(4 5)``, or
``table <n>`` followed by n rows of n zero-based indices.  ``#`` starts a
comment anywhere; tokens are whitespace-separated.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Optional

import numpy as np

from . import caps
from .classes import ClassSpec, builtin, e_closure, np_extend
from .errors import (
    InvalidPermutation,
    RecipeSyntaxError,
    UnknownClass,
)
from .grouptable import GroupTable, from_permutations, perm_from_cycles
from .rankfn import RankEntry, RankSpec, preset


def _meaningful_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield lineno, line


_CYCLE_TOKEN = re.compile(r"\(([^()]*)\)|(\S)")


def _parse_cycles(line: str, lineno: int) -> list[tuple[int, ...]]:
    cycles = []
    pos = 0
    for m in _CYCLE_TOKEN.finditer(line):
        if m.group(2) is not None:
            raise RecipeSyntaxError(
                f"unexpected character {m.group(2)!r} in cycle notation",
                lineno, m.start() + 1)
        body = m.group(1).strip()
        pos = m.end()
        if not body:
            continue
        try:
            cycles.append(tuple(int(t) for t in body.split()))
        except ValueError:
            raise RecipeSyntaxError(f"non-integer point in cycle {body!r}",
                                    lineno, m.start() + 1)
    if "(" in line[pos:]:
        raise RecipeSyntaxError("unbalanced parenthesis in cycle notation",
                                lineno, line.index("(", pos) + 1)
    return cycles


def load_group_text(text: str, label: str = "", provenance: str = "") -> GroupTable:
    lines = list(_meaningful_lines(text))
    if not lines:
        raise RecipeSyntaxError("empty group file", 1, 1)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] not in ("perm", "table"):
        raise RecipeSyntaxError(
            "header must be 'perm <degree>' or 'table <n>'", lineno, 1)
    try:
        n = int(parts[1])
    except ValueError:
        raise RecipeSyntaxError(f"bad size {parts[1]!r}", lineno,
                                len(parts[0]) + 2)
    if n < 1:
        raise RecipeSyntaxError("size must be positive", lineno, 1)
    if parts[0] == "perm":
        gens = []
        for lineno, line in lines[1:]:
            cycles = _parse_cycles(line.strip(), lineno)
            gens.append(perm_from_cycles(n, cycles))
        return from_permutations(n, gens, label=label, provenance=provenance)
    rows = []
    for lineno, line in lines[1:]:
        try:
            row = [int(t) for t in line.split()]
        except ValueError:
            raise RecipeSyntaxError("non-integer table entry", lineno, 1)
        if len(row) != n:
            raise RecipeSyntaxError(
                f"table row has {len(row)} entries, expected {n}", lineno, 1)
        if any(x < 0 or x >= n for x in row):
            raise RecipeSyntaxError("table entry out of range", lineno, 1)
        rows.append(row)
    if len(rows) != n:
        raise RecipeSyntaxError(f"table has {len(rows)} rows, expected {n}",
                                lines[-1][0], 1)
    caps.current().check("table file", n, "table_order")
    try:
        return GroupTable(np.asarray(rows, dtype=np.int32), label=label,
                          provenance=provenance, validate=True)
    except ValueError as exc:
        raise InvalidPermutation(f"table is not a group: {exc}") from exc


def load_group(path: str | Path, label: str = "") -> GroupTable:
    path = Path(path)
    return load_group_text(path.read_text(), label=label or path.stem,
                           provenance=f"from_file({path})")


# -- rank-spec files ------------------------------------------------------------


def _parse_rank_set(token: str, bound: int, lineno: int
                    ) -> tuple[frozenset, bool]:
    token = token.strip()
    if token.startswith("{") and token.endswith("}"):
        token = token[1:-1].strip()
    if not token:
        return frozenset(), False
    m = re.fullmatch(r"(\d+)\s*\.\.\s*(\d+|M)", token)
    if m:
        lo = int(m.group(1))
        hi = bound if m.group(2) == "M" else int(m.group(2))
        values = frozenset(range(lo, hi + 1))
        return values, (lo == 1 and hi >= bound)
    try:
        return frozenset(int(t) for t in token.split(",")), False
    except ValueError:
        raise RecipeSyntaxError(f"bad rank set {token!r}", lineno, 1)


def parse_rank_spec(text: str) -> RankSpec:
    bound: Optional[int] = None
    entries = []
    for lineno, line in _meaningful_lines(text):
        words = line.split(None, 1)
        if words[0] == "bound":
            try:
                bound = int(words[1])
            except (IndexError, ValueError):
                raise RecipeSyntaxError("bound needs one integer", lineno, 1)
            continue
        if words[0] != "type":
            raise RecipeSyntaxError(f"expected 'bound' or 'type', got "
                                    f"{words[0]!r}", lineno, 1)
        if bound is None:
            raise RecipeSyntaxError("bound must come before type lines",
                                    lineno, 1)
        m = re.fullmatch(
            r"(abelian|nonabelian|default|order:\d+)\s+A=(\S+)\s+B=(\S+)",
            words[1].strip())
        if not m:
            raise RecipeSyntaxError(
                "type line must be 'type <key> A=<set> B=<set>'", lineno, 1)
        key = m.group(1)
        selector = (("order", int(key.split(":")[1]))
                    if key.startswith("order:") else key)
        a_set, a_unb = _parse_rank_set(m.group(2), bound, lineno)
        b_set, b_unb = _parse_rank_set(m.group(3), bound, lineno)
        entries.append(RankEntry(selector, a_set, b_set,
                                 a_unbounded=a_unb, b_unbounded=b_unb))
    if bound is None:
        raise RecipeSyntaxError("missing 'bound' line", 1, 1)
    return RankSpec(bound, entries)


def print_rank_spec(R: RankSpec) -> str:
    def fmt(values: frozenset, unbounded: bool) -> str:
        if unbounded:
            return "1..M"
        return "{" + ",".join(map(str, sorted(values))) + "}"

    lines = [f"bound {R.bound}"]
    for e in R.entries:
        key = (f"order:{e.selector[1]}" if isinstance(e.selector, tuple)
               else e.selector)
        lines.append(f"type {key} A={fmt(e.a_set, e.a_unbounded)} "
                     f"B={fmt(e.b_set, e.b_unbounded)}")
    return "\n".join(lines) + "\n"


def load_rank_spec(path: str | Path) -> RankSpec:
    return parse_rank_spec(Path(path).read_text())


# -- class expressions and config files ------------------------------------------


_UNICODE_ALIASES = {
    "𝔈": "E", "𝔑": "N", "𝔖": "S", "𝔘": "U", "𝔊": "G",
    "𝔑*": "Nstar", "𝔘*": "Ustar", "𝔑_ca": "Nca", "𝔘_c": "Uc",
    "𝔘_ca": "Uca",
}

_PRESET_NAMES = {
    "Uc": lambda: preset(2).fr,
    "Nstar": lambda: preset(6).fr,
    "Nca": lambda: preset(7).fr,
    "Ustar": lambda: preset(8, base=builtin("U")).fr,
    "Uca": lambda: preset(9, base=builtin("U")).fr,
}
_PRESET_NAMES.update({f"preset{i}": (lambda i=i: preset(i).fr)
                      for i in (1, 2, 5, 6, 7, 8, 9)})


def builtin_rank_specs() -> dict[str, RankSpec]:
    one = frozenset({1})
    none: frozenset = frozenset()
    from .rankfn import rank_spec
    return {
        "A1": rank_spec(default=(one, none)),
        "B1": rank_spec(default=(none, one)),
        "NCA": rank_spec(abelian=(none, one), nonabelian=(one, none)),
        "CA": rank_spec(abelian=(none, none), nonabelian=(one, none)),
    }


def resolve_class(expr: str, *, rank_env: Optional[dict] = None,
                  class_env: Optional[dict] = None) -> ClassSpec:
    """Class expression: builtin name/alias, preset name, np(p, X), e(X),
    fr(base, rank-id), or builtin(name)."""
    expr = expr.strip()
    expr = _UNICODE_ALIASES.get(expr, expr)
    if class_env and expr in class_env:
        return class_env[expr]
    if expr in _PRESET_NAMES:
        return _PRESET_NAMES[expr]()
    m = re.fullmatch(r"(\w+)\((.*)\)", expr)
    if m:
        head, body = m.group(1), m.group(2)
        if head == "builtin":
            return builtin(body.strip())
        if head == "np":
            p_str, sub = _split_two(body, expr)
            return np_extend(int(p_str), resolve_class(
                sub, rank_env=rank_env, class_env=class_env))
        if head == "e":
            return e_closure(resolve_class(body, rank_env=rank_env,
                                           class_env=class_env))
        if head == "fr":
            base_str, rank_id = _split_two(body, expr)
            base = resolve_class(base_str, rank_env=rank_env,
                                 class_env=class_env)
            env = dict(builtin_rank_specs())
            env.update(rank_env or {})
            rank_id = rank_id.strip()
            if rank_id not in env:
                raise UnknownClass(f"unknown rank spec id {rank_id!r}")
            from .rankfn import fr_class
            return fr_class(base, env[rank_id])
        try:
            return builtin(expr)
        except UnknownClass:
            raise UnknownClass(f"unknown class expression {expr!r}")
    try:
        return builtin(expr)
    except UnknownClass:
        raise UnknownClass(f"unknown class expression {expr!r}")


def _split_two(body: str, whole: str) -> tuple[str, str]:
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i].strip(), body[i + 1:].strip()
    raise UnknownClass(f"expected two arguments in {whole!r}")


_FLAG_NAMES = ("formation", "hereditary", "normally_hereditary", "saturated",
               "solubly_saturated", "contains_nilpotent",
               "contains_own_composition_factors")


def parse_class_config(text: str,
                       rank_env: Optional[dict] = None) -> dict[str, ClassSpec]:
    """Config lines: ``class <id> = <expr>`` with optional following
    ``flags: name, name, ...`` overrides applying to the latest class."""
    out: dict[str, ClassSpec] = {}
    last: Optional[str] = None
    for lineno, line in _meaningful_lines(text):
        line = line.strip()
        if line.startswith("class "):
            m = re.fullmatch(r"class\s+(\S+)\s*=\s*(.+)", line)
            if not m:
                raise RecipeSyntaxError("expected 'class <id> = <expr>'",
                                        lineno, 1)
            cid, expr = m.group(1), m.group(2)
            out[cid] = resolve_class(expr, rank_env=rank_env, class_env=out)
            last = cid
        elif line.startswith("flags:"):
            if last is None:
                raise RecipeSyntaxError("flags line before any class",
                                        lineno, 1)
            updates = {}
            for name in line[len("flags:"):].split(","):
                name = name.strip()
                if not name:
                    continue
                if name not in _FLAG_NAMES:
                    raise RecipeSyntaxError(f"unknown flag {name!r}", lineno, 1)
                updates[name] = True
            out[last] = out[last].with_flags(**updates)
        else:
            raise RecipeSyntaxError("expected 'class' or 'flags:' line",
                                    lineno, 1)
    return out
