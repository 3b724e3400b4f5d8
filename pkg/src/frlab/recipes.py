"""Group construction recipes: a tiny expression language plus evaluator.

Grammar (recursive descent): EXPR := NAME '(' ARGS ')' | NAME, with
arguments that are integers, nested expressions, bare words (action names,
file paths) or quoted paths.  Constructors: cyclic, dihedral, symmetric,
alternating, quaternion, sl2, psl2, direct, semidirect, wreath,
wreath_reg, from_file.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from . import caps
from .construct import (
    alternating_group,
    direct_product,
    semidirect_product,
    symmetric_group,
    wreath_natural,
    wreath_regular,
)
from .errors import InvalidAction, RecipeSyntaxError, UnknownConstructor
from .grouptable import GroupTable, from_permutations
from . import formats

Arg = Union[int, str, "GroupRecipe"]

_CONSTRUCTORS = ("cyclic", "dihedral", "symmetric", "alternating",
                 "quaternion", "sl2", "psl2", "direct", "semidirect",
                 "wreath", "wreath_reg", "from_file")

_ACTION_NAMES = ("trivial", "invert", "pow", "aut")


@dataclass(frozen=True)
class GroupRecipe:
    name: str
    args: tuple

    def __str__(self) -> str:
        if not self.args and self.name in _ACTION_NAMES:
            return self.name
        return f"{self.name}({', '.join(_format_arg(a) for a in self.args)})"


def _format_arg(a: Arg) -> str:
    if isinstance(a, GroupRecipe):
        return str(a)
    if isinstance(a, str) and any(c in a for c in " ,()"):
        return f'"{a}"'
    return str(a)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        line = self.text.count("\n", 0, self.pos) + 1
        col = self.pos - (self.text.rfind("\n", 0, self.pos) + 1) + 1
        raise RecipeSyntaxError(message, line, col)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()
                                             or self.text[self.pos] in "_"):
            self.pos += 1
        if self.pos == start:
            self.error("expected a name")
        return self.text[start:self.pos]

    def expr(self) -> GroupRecipe:
        name = self.word()
        self.skip_ws()
        if self.peek() != "(":
            if name in _ACTION_NAMES:
                return GroupRecipe(name, ())
            self.error(f"constructor {name!r} needs parentheses")
        self.pos += 1
        args = []
        self.skip_ws()
        if self.peek() == ")":
            self.pos += 1
            return GroupRecipe(name, ())
        while True:
            args.append(self.arg())
            self.skip_ws()
            ch = self.peek()
            if ch == ",":
                self.pos += 1
                continue
            if ch == ")":
                self.pos += 1
                return GroupRecipe(name, tuple(args))
            self.error("expected ',' or ')'")

    def arg(self) -> Arg:
        self.skip_ws()
        ch = self.peek()
        if ch == '"':
            self.pos += 1
            end = self.text.find('"', self.pos)
            if end < 0:
                self.error("unterminated quoted string")
            value = self.text[self.pos:end]
            self.pos = end + 1
            return value
        if ch.isdigit() or (ch == "-" and self.text[self.pos + 1:self.pos + 2].isdigit()):
            start = self.pos
            if ch == "-":
                self.pos += 1
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return int(self.text[start:self.pos])
        # a name: either a nested expression, an action word, or a bare path
        save = self.pos
        if ch.isalpha() or ch == "_":
            name = self.word()
            self.skip_ws()
            if self.peek() == "(":
                self.pos = save
                return self.expr()
            return name
        # bare path token (for from_file): up to comma or close paren
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in ",)":
            self.pos += 1
        token = self.text[start:self.pos].strip()
        if not token:
            self.error("expected an argument")
        return token


def parse_recipe(text: str) -> GroupRecipe:
    parser = _Parser(text)
    parser.skip_ws()
    rec = parser.expr()
    parser.skip_ws()
    if parser.pos != len(parser.text):
        parser.error("trailing input after recipe")
    _validate(rec)
    return rec


def _validate(rec: GroupRecipe) -> None:
    if rec.name not in _CONSTRUCTORS and rec.name not in _ACTION_NAMES:
        raise UnknownConstructor(f"unknown constructor {rec.name!r}")
    for a in rec.args:
        if isinstance(a, GroupRecipe):
            _validate(a)


def print_recipe(rec: GroupRecipe) -> str:
    return str(rec)


# -- evaluation -----------------------------------------------------------------


def _cyclic(n: int) -> GroupTable:
    if n < 1:
        raise UnknownConstructor("cyclic order must be positive")
    caps.current().check("cyclic group", n, "table_order")
    idx = np.arange(n)
    mul = (idx[:, None] + idx[None, :]) % n
    return GroupTable(mul.astype(np.int32), label=f"C{n}",
                      provenance=f"cyclic({n})")


def _dihedral(n: int) -> GroupTable:
    """Dihedral group of order 2n (the symmetries of the n-gon)."""
    if n < 1:
        raise UnknownConstructor("dihedral parameter must be positive")
    if n == 1:
        return _cyclic(2).relabel("D2")
    if n == 2:
        g = direct_product(_cyclic(2), _cyclic(2), label="D4")
        return g
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return from_permutations(n, [rot, ref], label=f"D{2 * n}",
                             provenance=f"dihedral({n})")


def _quaternion(n: int) -> GroupTable:
    """Generalized quaternion (dicyclic) group of order n = 4k."""
    if n % 4 != 0 or n < 8:
        raise UnknownConstructor("quaternion order must be a multiple of 4, >= 8")
    caps.current().check("quaternion group", n, "table_order")
    half = n // 2

    def code(i, j):
        return i + half * j

    mul = np.empty((n, n), dtype=np.int32)
    for i1 in range(half):
        for j1 in range(2):
            for i2 in range(half):
                for j2 in range(2):
                    if j1 == 0:
                        i, j = (i1 + i2) % half, j2
                    else:
                        # a^i1 b a^i2 = a^(i1 - i2) b ; b^2 = a^(half/2)
                        i = (i1 - i2) % half
                        j = 1 - j2
                        if j2 == 1:
                            i = (i + half // 2) % half
                    mul[code(i1, j1), code(i2, j2)] = code(i, j)
    return GroupTable(mul, label=f"Q{n}", provenance=f"quaternion({n})")


def _packaged_group(stem: str, label: str) -> GroupTable:
    ref = importlib.resources.files("frlab.data").joinpath(f"{stem}.grp")
    g = formats.load_group_text(ref.read_text(), label=label,
                                provenance=f"{label} from packaged data")
    return g


def _sl2(p: int) -> GroupTable:
    try:
        return _packaged_group(f"sl2_{p}", f"SL(2,{p})")
    except FileNotFoundError:
        raise UnknownConstructor(f"no packaged generators for sl2({p})")


def _psl2(q: int) -> GroupTable:
    try:
        return _packaged_group(f"psl2_{q}", f"PSL(2,{q})")
    except FileNotFoundError:
        raise UnknownConstructor(f"no packaged generators for psl2({q})")


def _action_perm(A: GroupTable, spec: Arg) -> np.ndarray:
    if isinstance(spec, GroupRecipe):
        name, args = spec.name, spec.args
    elif isinstance(spec, str):
        name, args = spec, ()
    else:
        raise InvalidAction(f"bad action spec {spec!r}")
    if name == "trivial":
        return np.arange(A.order, dtype=np.int64)
    if name == "invert":
        if not A.is_abelian():
            raise InvalidAction("inversion is only an automorphism of an "
                                "abelian group")
        return A.inv.astype(np.int64)
    if name == "pow":
        if len(args) != 1 or not isinstance(args[0], int):
            raise InvalidAction("pow action needs one integer")
        if not A.is_abelian():
            raise InvalidAction("power maps act on abelian groups only")
        k = args[0]
        return np.asarray([A.power(x, k) for x in range(A.order)],
                          dtype=np.int64)
    if name == "aut":
        from . import kernels
        gens = A.generators()
        if len(args) != len(gens):
            raise InvalidAction(
                f"aut(...) needs {len(gens)} generator images for {A.label}")
        res = kernels.hom_extend(A.mul, A.mul, gens, [int(a) for a in args])
        if res is None:
            raise InvalidAction("generator images do not extend to an "
                                "endomorphism")
        domain, image = res
        if not domain.all() or len(np.unique(image)) != A.order:
            raise InvalidAction("generator images do not give an automorphism")
        return image
    raise InvalidAction(f"unknown action {name!r}")


def _semidirect_cyclic(A: GroupTable, Q: GroupTable, spec: Arg) -> GroupTable:
    orders = Q.element_orders
    gens = np.flatnonzero(orders == Q.order)
    if gens.size == 0:
        raise InvalidAction("semidirect recipes need a cyclic acting group")
    g = int(gens[0])
    phi = _action_perm(A, spec)
    perms = np.empty((Q.order, A.order), dtype=np.int64)
    perms[0] = np.arange(A.order)
    acc = np.arange(A.order)
    x = 0
    for k in range(1, Q.order):
        x = int(Q.mul[x, g])
        acc = phi[acc]
        perms[x] = acc
    if not np.array_equal(phi[acc], np.arange(A.order)):
        raise InvalidAction("action order does not divide the cyclic order")
    return semidirect_product(A, Q, perms)


def evaluate(rec: GroupRecipe, label: str = "") -> GroupTable:
    """Evaluate a recipe; labels are display-only."""
    g = _evaluate(rec)
    return g.relabel(label) if label else g


def _evaluate(rec: GroupRecipe) -> GroupTable:
    name, args = rec.name, rec.args

    def intarg(i: int) -> int:
        if i >= len(args) or not isinstance(args[i], int):
            raise UnknownConstructor(f"{name} needs integer argument {i + 1}")
        return args[i]

    def recarg(i: int) -> GroupTable:
        if i >= len(args) or not isinstance(args[i], GroupRecipe):
            raise UnknownConstructor(f"{name} needs a recipe argument {i + 1}")
        return _evaluate(args[i])

    if name == "cyclic":
        return _cyclic(intarg(0))
    if name == "dihedral":
        return _dihedral(intarg(0))
    if name == "symmetric":
        caps.current().check("symmetric group", _factorial(intarg(0)),
                             "table_order")
        return symmetric_group(intarg(0))
    if name == "alternating":
        caps.current().check("alternating group",
                             max(_factorial(intarg(0)) // 2, 1), "table_order")
        return alternating_group(intarg(0))
    if name == "quaternion":
        return _quaternion(intarg(0))
    if name == "sl2":
        return _sl2(intarg(0))
    if name == "psl2":
        return _psl2(intarg(0))
    if name == "direct":
        if len(args) < 2:
            raise UnknownConstructor("direct needs at least two factors")
        acc = recarg(0)
        for i in range(1, len(args)):
            acc = direct_product(acc, recarg(i))
        return acc
    if name == "semidirect":
        if len(args) != 3:
            raise UnknownConstructor("semidirect(A, Q, action) needs 3 args")
        return _semidirect_cyclic(recarg(0), recarg(1), args[2])
    if name == "wreath":
        return wreath_natural(recarg(0), intarg(1))
    if name == "wreath_reg":
        return wreath_regular(recarg(0), recarg(1))
    if name == "from_file":
        if len(args) != 1 or not isinstance(args[0], str):
            raise UnknownConstructor("from_file needs one path")
        return formats.load_group(args[0])
    raise UnknownConstructor(f"unknown constructor {name!r}")


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def build(text: str, label: str = "") -> GroupTable:
    """Parse and evaluate in one step."""
    rec = parse_recipe(text)
    g = _evaluate(rec)
    if label:
        g = g.relabel(label)
    return g
