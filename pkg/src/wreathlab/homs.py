"""Homomorphism search: enumeration, sections, isomorphisms, automorphisms.

All searches assign images to the generator list of the domain (the greedy
generating set in index order) and extend the partial map over the subgroup
generated so far, rejecting a branch as soon as multiplicativity fails.
Results come out in lexicographic order of generator-image tuples.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from .config import limits
from .errors import NonCommonBase, SearchCapExceeded
from .groups import FiniteGroup, GroupHom


def _candidates(F, H, alpha, phi, exact_order):
    ordF = F.element_orders
    ordH = H.element_orders
    out = []
    for g in F.generators:
        if exact_order:
            ok = ordH == ordF[g]
        else:
            ok = ordF[g] % ordH == 0
        if alpha is not None:
            ok = ok & (alpha.map == phi.map[g])
        out.append(np.nonzero(ok)[0].tolist())
    return out


def iter_homs(
    F: FiniteGroup,
    H: FiniteGroup,
    alpha: GroupHom | None = None,
    phi: GroupHom | None = None,
    *,
    injective: bool = False,
    budget: int | None = None,
):
    """Yield every homomorphism ``F -> H`` (with ``alpha ∘ psi = phi`` if given)."""
    if (alpha is None) != (phi is None):
        raise ValueError("alpha and phi must be given together")
    if alpha is not None:
        if not alpha.domain.same_as(H) or not phi.domain.same_as(F):
            raise NonCommonBase("constraint maps do not match the search groups")
        if not alpha.codomain.same_as(phi.codomain):
            raise NonCommonBase("alpha and phi have different codomains")
    if injective and F.order > H.order:
        return
    budget = limits.search_budget if budget is None else budget
    gens = F.generators
    k = len(gens)
    cands = _candidates(F, H, alpha, phi, exact_order=injective)
    Frows, Hrows = F.rows, H.rows
    img = [-1] * F.order
    img[0] = 0
    used = bytearray(H.order)
    used[0] = 1
    nodes = 0

    def extend(elems, level, h):
        g = gens[level]
        if injective and used[h]:
            return None
        img[g] = h
        if injective:
            used[h] = 1
        assigned = [g]
        active = [(s, img[s]) for s in gens[: level + 1]]
        newpair = [(g, h)]
        queue = list(elems)
        old = len(queue)
        queue.append(g)
        i = 0
        while i < len(queue):
            x = queue[i]
            pairs = newpair if i < old else active
            i += 1
            rx = Frows[x]
            hx = Hrows[img[x]]
            for s, hs in pairs:
                y = rx[s]
                hy = hx[hs]
                iy = img[y]
                if iy == -1:
                    if injective:
                        if used[hy]:
                            undo(assigned)
                            return None
                        used[hy] = 1
                    img[y] = hy
                    assigned.append(y)
                    queue.append(y)
                elif iy != hy:
                    undo(assigned)
                    return None
        return assigned

    def undo(assigned):
        for x in assigned:
            if injective:
                used[img[x]] = 0
            img[x] = -1

    def rec(level, elems):
        nonlocal nodes
        if level == k:
            yield GroupHom(F, H, img, check=False)
            return
        for h in cands[level]:
            nodes += 1
            if nodes > budget:
                raise SearchCapExceeded(f"homomorphism search exceeded {budget} nodes")
            assigned = extend(elems, level, h)
            if assigned is None:
                continue
            yield from rec(level + 1, elems + assigned)
            undo(assigned)

    yield from rec(0, [0])


def enumerate_homs(F, H, alpha=None, phi=None, *, budget=None) -> list[GroupHom]:
    return list(iter_homs(F, H, alpha, phi, budget=budget))


def find_section(alpha: GroupHom) -> GroupHom | None:
    """Some homomorphism ``beta`` with ``alpha ∘ beta = id``, or None."""
    G = alpha.codomain
    for beta in iter_homs(G, alpha.domain, alpha, GroupHom.identity(G)):
        return beta
    return None


def hom_calc(op: str, *args):
    """Dispatch by name: ``kernel``, ``image``, ``is_surjective``, ``compose``
    (outer, inner) or ``section_search`` (None when alpha does not split)."""
    if op == "kernel":
        return args[0].kernel()
    if op == "image":
        return args[0].image()
    if op == "is_surjective":
        return args[0].is_surjective()
    if op == "compose":
        return args[0].compose(args[1])
    if op == "section_search":
        return find_section(args[0])
    raise ValueError(f"unknown hom operation {op!r}")


def order_profile(G: FiniteGroup):
    return sorted(Counter(G.element_orders.tolist()).items())


def find_isomorphism(G: FiniteGroup, H: FiniteGroup, *, budget=None) -> GroupHom | None:
    if G.order != H.order or G.is_abelian != H.is_abelian:
        return None
    if order_profile(G) != order_profile(H):
        return None
    for h in iter_homs(G, H, injective=True, budget=budget):
        return h
    return None


def is_isomorphic(G: FiniteGroup, H: FiniteGroup, *, budget=None):
    """Return ``(True, witness)`` or ``(False, None)``."""
    w = find_isomorphism(G, H, budget=budget)
    return w is not None, w


def automorphism_group(A: FiniteGroup, *, budget=None) -> list[GroupHom]:
    return list(iter_homs(A, A, injective=True, budget=budget))
