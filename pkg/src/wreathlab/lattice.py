"""Subgroup lattices of small groups by closure of joins with cyclic subgroups."""

from __future__ import annotations

import numpy as np

from .config import limits
from .errors import SearchCapExceeded
from .groups import FiniteGroup, Subgroup, closure, is_normal, normal_closure

_CACHE_ATTR = "_wreathlab_lattice"


def _cache(F):
    c = F.__dict__.get(_CACHE_ATTR)
    if c is None:
        c = {}
        setattr(F, _CACHE_ATTR, c)
    return c


def _sort(subs):
    return sorted(subs, key=lambda s: (s.order, s.elements))


def _joins(F, seeds, cap):
    trivial = Subgroup.trivial(F)
    found = {trivial.mask: trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for S in frontier:
            for x in seeds:
                if S.flags[x]:
                    continue
                J = closure(F, [x], base=S)
                if J.mask not in found:
                    found[J.mask] = J
                    nxt.append(J)
                    if len(found) > cap:
                        raise SearchCapExceeded(f"more than {cap} subgroups")
        frontier = nxt
    return _sort(found.values())


def cyclic_subgroups(F: FiniteGroup) -> list[Subgroup]:
    seen = {}
    for x in range(F.order):
        C = closure(F, [x])
        seen.setdefault(C.mask, C)
    return _sort(seen.values())


def all_subgroups(F: FiniteGroup) -> list[Subgroup]:
    """Every subgroup of ``F``, sorted by (order, elements)."""
    cache = _cache(F)
    if "all" not in cache:
        seeds = []
        for C in cyclic_subgroups(F):
            # a generator of C: smallest element of maximal order
            ords = F.element_orders[list(C.elements)]
            seeds.append(C.elements[int(np.argmax(ords == C.order))])
        cache["all"] = _joins(F, seeds, limits.subgroup_cap)
    return list(cache["all"])


def conjugacy_classes(F: FiniteGroup) -> list[tuple[int, ...]]:
    seen = np.zeros(F.order, dtype=bool)
    out = []
    for x in range(F.order):
        if seen[x]:
            continue
        cls = np.unique(F.conjugation[:, x])
        seen[cls] = True
        out.append(tuple(int(c) for c in cls))
    return out


def normal_subgroups(F: FiniteGroup) -> list[Subgroup]:
    """Every normal subgroup, generated from normal closures of conjugacy classes."""
    cache = _cache(F)
    if "normal" not in cache:
        if "all" in cache:
            cache["normal"] = [S for S in cache["all"] if is_normal(S)]
        else:
            closures = {}
            for cls in conjugacy_classes(F):
                C = normal_closure(F, [cls[0]])
                closures.setdefault(C.mask, cls[0])
            trivial = Subgroup.trivial(F)
            found = {trivial.mask: trivial}
            frontier = [trivial]
            seeds = sorted(closures.values())
            while frontier:
                nxt = []
                for S in frontier:
                    for x in seeds:
                        if S.flags[x]:
                            continue
                        J = normal_closure(F, list(S.generators) + [x])
                        if J.mask not in found:
                            found[J.mask] = J
                            nxt.append(J)
                            if len(found) > limits.subgroup_cap:
                                raise SearchCapExceeded("too many normal subgroups")
                frontier = nxt
            cache["normal"] = _sort(found.values())
    return list(cache["normal"])


def subgroups_containing(F: FiniteGroup, M: Subgroup) -> list[Subgroup]:
    return [S for S in all_subgroups(F) if M.issubset(S)]
