"""Parser for the plain-text group specification format.

One definition per line (a line continues while brackets are open)::

    # comment
    group F = product(C2, C2)
    group C2 = cyclic(2)
    subgroup M = gen(F, [1])
    hom phi = proj(F, 0)
    problem E = ep(phi, alpha)

Every name must be defined before use.  Construction errors are reported as
``ParseError`` with the offending line number; cap errors pass through.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field

from . import constructions as C
from .config import check_order
from .embedding import make_ep
from .errors import NotSurjective, OrderCapExceeded, ParseError, SearchCapExceeded, WreathlabError
from .groups import (
    GroupAction,
    GroupHom,
    Subgroup,
    intersection,
    normal_core,
    quotient,
    subgroup_generated,
)
from .transfer import TransferTower, derive_tower
from .wreath import twisted_wreath

KINDS = ("group", "action", "subgroup", "hom", "problem", "tower", "family")

_LINE = re.compile(r"^(\w+)\s+([A-Za-z_][\w']*)\s*=\s*([A-Za-z_]\w*)\s*\((.*)\)\s*$", re.S)


@dataclass
class Family:
    ambient: object  # FiniteGroup or Subgroup
    members: list


@dataclass
class SpecFile:
    """Parsed definitions by kind, each in file order."""

    path: str = "<string>"
    groups: dict = field(default_factory=dict)
    actions: dict = field(default_factory=dict)
    subgroups: dict = field(default_factory=dict)
    homs: dict = field(default_factory=dict)
    problems: dict = field(default_factory=dict)
    towers: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)
    semidirects: dict = field(default_factory=dict, repr=False)
    wreaths: dict = field(default_factory=dict, repr=False)
    quotients: dict = field(default_factory=dict, repr=False)

    def table(self, kind):
        return getattr(self, kind + "s" if kind != "family" else "families")


def _split_args(text):
    args, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            args.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail or args:
        args.append(tail)
    return args


def _logical_lines(text):
    """Yield ``(line_number, text)`` joining lines while brackets are unbalanced."""
    buf, start, depth = [], None, 0
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip() and not buf:
            continue
        if not buf:
            start = no
        buf.append(line)
        depth += line.count("(") + line.count("[") - line.count(")") - line.count("]")
        if depth <= 0:
            yield start, " ".join(s.strip() for s in buf)
            buf, depth = [], 0
    if buf:
        raise ParseError("unbalanced brackets at end of file", start)


class _Parser:
    def __init__(self, spec: SpecFile):
        self.s = spec

    # lookups -------------------------------------------------------------
    def group(self, name):
        if name in self.s.groups:
            return self.s.groups[name]
        if name in self.s.subgroups:
            return self.s.subgroups[name].as_group()[0]
        raise ParseError(f"unknown group {name!r}")

    def subgroup(self, name):
        if name not in self.s.subgroups:
            raise ParseError(f"unknown subgroup {name!r}")
        return self.s.subgroups[name]

    def group_or_subgroup(self, name):
        if name in self.s.subgroups:
            return self.s.subgroups[name]
        return self.group(name)

    def hom(self, name):
        if name not in self.s.homs:
            raise ParseError(f"unknown hom {name!r}")
        return self.s.homs[name]

    def action(self, name):
        if name not in self.s.actions:
            raise ParseError(f"unknown action {name!r}")
        return self.s.actions[name]

    @staticmethod
    def integer(text):
        try:
            v = int(text)
        except ValueError:
            raise ParseError(f"expected an integer, got {text!r}") from None
        return v

    @staticmethod
    def literal(text):
        try:
            v = ast.literal_eval(text)
        except (ValueError, SyntaxError):
            raise ParseError(f"malformed list literal {text[:40]!r}") from None
        if not isinstance(v, (list, tuple)):
            raise ParseError("expected a bracketed list")
        return v

    @staticmethod
    def arity(args, *counts):
        if len(args) not in counts:
            want = " or ".join(str(c) for c in counts)
            raise ParseError(f"expected {want} argument(s), got {len(args)}")

    # definitions ---------------------------------------------------------
    def def_group(self, name, func, args):
        if func in ("cyclic", "symmetric", "dihedral"):
            self.arity(args, 1)
            G = C.make_group(func, self.integer(args[0]))
        elif func == "product":
            if not args:
                raise ParseError("product needs at least one factor")
            G = C.direct_product(*[self.group(a) for a in args])
        elif func == "semidirect":
            self.arity(args, 3)
            A, G0, act = self.group(args[0]), self.group(args[1]), self.action(args[2])
            sd = C.semidirect_product(A, G0, act)
            self.s.semidirects[name] = sd
            G = sd.group
        elif func == "wreath":
            self.arity(args, 4)
            A, Gb = self.group(args[0]), self.group(args[1])
            tw = twisted_wreath(A, Gb, self.subgroup(args[2]), self.action(args[3]))
            self.s.wreaths[name] = tw
            G = tw.total
        elif func == "table":
            self.arity(args, 1)
            rows = self.literal(args[0])
            check_order(len(rows))
            G = C.make_group("table", table=rows)
        elif func == "quotient":
            self.arity(args, 2)
            G, _ = self._quotient(args[0], args[1])
        elif func == "subgroup":
            self.arity(args, 1)
            G = self.subgroup(args[0]).as_group()[0]
        else:
            raise ParseError(f"unknown group constructor {func!r}")
        G.name = name
        return G

    def _quotient(self, fname, nname):
        key = (fname, nname)
        if key not in self.s.quotients:
            F, N = self.group(fname), self.subgroup(nname)
            if not N.parent.same_as(F):
                raise ParseError(f"{nname} is not a subgroup of {fname}")
            self.s.quotients[key] = quotient(F, N)
        return self.s.quotients[key]

    def def_action(self, name, func, args):
        if func == "trivial":
            self.arity(args, 2)
            return GroupAction.trivial(self.group(args[0]), self.group(args[1]))
        if func == "inversion":
            self.arity(args, 2, 3)
            sign = self.hom(args[2]) if len(args) == 3 else None
            return C.inversion_action(self.group(args[0]), self.group(args[1]), sign)
        if func == "table":
            self.arity(args, 3)
            return GroupAction(self.group(args[0]), self.group(args[1]), self.literal(args[2]))
        if func == "via":
            self.arity(args, 2)
            return self.action(args[0]).pullback(self.hom(args[1]))
        raise ParseError(f"unknown action constructor {func!r}")

    def def_subgroup(self, name, func, args):
        if func == "gen":
            self.arity(args, 2)
            F = self.group(args[0])
            gens = [int(x) for x in self.literal(args[1])]
            if any(not 0 <= x < F.order for x in gens):
                raise ParseError(f"generator out of range for {args[0]}")
            return subgroup_generated(F, gens)
        if func == "kernel":
            self.arity(args, 1)
            return self.hom(args[0]).kernel()
        if func == "image":
            self.arity(args, 1)
            return self.hom(args[0]).image()
        if func == "core":
            self.arity(args, 1)
            return normal_core(self.subgroup(args[0]))
        if func == "intersect":
            if not args:
                raise ParseError("intersect needs at least one subgroup")
            return intersection(*[self.subgroup(a) for a in args])
        if func == "whole":
            self.arity(args, 1)
            return Subgroup.whole(self.group(args[0]))
        if func == "trivial":
            self.arity(args, 1)
            return Subgroup.trivial(self.group(args[0]))
        if func == "preimage":
            self.arity(args, 2)
            return self.hom(args[0]).preimage(self.subgroup(args[1]))
        raise ParseError(f"unknown subgroup constructor {func!r}")

    def def_hom(self, name, func, args):
        if func == "map":
            self.arity(args, 3)
            dom, cod = self.group(args[0]), self.group(args[1])
            images = [int(x) for x in self.literal(args[2])]
            if len(images) != dom.order:
                raise ParseError(f"map lists {len(images)} images for a group of order {dom.order}")
            if any(not 0 <= x < cod.order for x in images):
                raise ParseError("image index out of range")
            return GroupHom(dom, cod, images)
        if func == "identity":
            self.arity(args, 1)
            return GroupHom.identity(self.group(args[0]))
        if func == "trivial":
            self.arity(args, 2)
            return GroupHom.trivial(self.group(args[0]), self.group(args[1]))
        if func == "compose":
            self.arity(args, 2)
            return self.hom(args[0]).compose(self.hom(args[1]))
        if func == "proj":
            self.arity(args, 2)
            P, i = self.group(args[0]), self.integer(args[1])
            if not P.factors or not 0 <= i < len(P.factors):
                raise ParseError(f"{args[0]} has no factor {i}")
            return C.projection(P, i)
        if func == "semiproj":
            self.arity(args, 1)
            if args[0] in self.s.semidirects:
                return self.s.semidirects[args[0]].projection
            if args[0] in self.s.wreaths:
                return self.s.wreaths[args[0]].alpha
            raise ParseError(f"{args[0]} is not a semidirect or wreath product")
        if func == "quotient":
            self.arity(args, 2)
            return self._quotient(args[0], args[1])[1]
        if func == "inclusion":
            self.arity(args, 1)
            return self.subgroup(args[0]).as_group()[1]
        if func == "restrict":
            self.arity(args, 2)
            return self.hom(args[0]).restrict(self.subgroup(args[1]))
        raise ParseError(f"unknown hom constructor {func!r}")

    def def_problem(self, name, func, args):
        if func != "ep":
            raise ParseError(f"unknown problem constructor {func!r}")
        self.arity(args, 2)
        return make_ep(self.hom(args[0]), self.hom(args[1]))

    def def_tower(self, name, func, args):
        if func != "tower":
            raise ParseError(f"unknown tower constructor {func!r}")
        self.arity(args, 4, 7)
        M, mu, act = self.subgroup(args[0]), self.hom(args[1]), self.action(args[2])
        if len(args) == 4:
            if args[3] != "auto":
                raise ParseError("four-argument tower must end with 'auto'")
            return derive_tower(M.parent, M, mu, act, name=name)
        D, F0, L, N = (self.subgroup(a) for a in args[3:])
        return TransferTower(M.parent, M, mu, act, D, F0, L, N, name=name)

    def def_family(self, name, func, args):
        if func != "family":
            raise ParseError(f"unknown family constructor {func!r}")
        self.arity(args, 2)
        amb = self.group_or_subgroup(args[0])
        inner = args[1].strip()
        if not (inner.startswith("[") and inner.endswith("]")):
            raise ParseError("family members must be a bracketed list of subgroup names")
        members = [self.subgroup(m) for m in _split_args(inner[1:-1])]
        return Family(amb, members)


def parse_text(text: str, path: str = "<string>") -> SpecFile:
    spec = SpecFile(path)
    p = _Parser(spec)
    defined = set()
    for no, line in _logical_lines(text):
        m = _LINE.match(line)
        try:
            if not m:
                raise ParseError("expected '<kind> <name> = <constructor>(...)'")
            kind, name, func, argtext = m.groups()
            if kind not in KINDS:
                raise ParseError(f"unknown definition kind {kind!r}")
            if name in defined:
                raise ParseError(f"{name!r} is already defined")
            args = _split_args(argtext)
            for a in args:
                if not a:
                    raise ParseError("empty argument")
            obj = getattr(p, "def_" + kind)(name, func, args)
        except ParseError as e:
            raise ParseError(e.bare, no) from None
        except (OrderCapExceeded, SearchCapExceeded):
            raise
        except NotSurjective as e:
            raise NotSurjective(f"line {no}: {e}", e.missed) from None
        except (WreathlabError, ValueError, TypeError, IndexError) as e:
            raise ParseError(f"{type(e).__name__}: {e}", no) from None
        spec.table(kind)[name] = obj
        defined.add(name)
    return spec


def parse_file(path) -> SpecFile:
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read(), str(path))
