"""Independence of subgroup families.

A family ``M_1..M_n`` of subgroups of ``F`` is ``F``-independent when
``(F : ∩ M_i) = ∏ (F : M_i)``.  The ambient ``F`` may itself be a subgroup
of a larger parent (e.g. the kernel of an epimorphism), in which case every
member must lie inside it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import limits
from .errors import MixedParents, SearchCapExceeded
from .groups import Subgroup, intersection, left_cosets


@dataclass(frozen=True, eq=False)
class IndependenceReport:
    family: tuple
    intersection_index: int
    index_product: int

    @property
    def independent(self) -> bool:
        return self.intersection_index == self.index_product

    def __bool__(self):
        return self.independent


def _ambient(F):
    if isinstance(F, Subgroup):
        return F.parent, F
    return F, Subgroup.whole(F)


def _check_family(F, family):
    parent, amb = _ambient(F)
    for M in family:
        if not parent.same_as(M.parent):
            raise MixedParents("family member belongs to a different group")
        if M.mask & amb.mask != M.mask:
            raise MixedParents("family member is not contained in the ambient group")
    return parent, amb


def is_independent(F, family) -> IndependenceReport:
    """Compare ``(F : ∩M_i)`` with ``∏(F : M_i)``; the empty family is independent."""
    family = tuple(family)
    _, amb = _check_family(F, family)
    if not family:
        return IndependenceReport(family, 1, 1)
    inter = intersection(*family)
    prod = math.prod(amb.order // M.order for M in family)
    return IndependenceReport(family, amb.order // inter.order, prod)


def independent_by_order(ambient_order: int, orders, intersection_order: int) -> bool:
    """The same test from raw orders (used by batched suites)."""
    prod = 1
    for o in orders:
        prod *= ambient_order // o
    return ambient_order // intersection_order == prod


def is_independent_transitive(F, family) -> bool:
    """Decide independence by transitivity of ``F`` on ``∏ F/M_i``.

    Materializes the tuple space (guarded by ``limits.tuple_cap``) and
    walks the orbit of the base tuple ``(M_1, ..., M_n)`` under the
    diagonal left-multiplication action.
    """
    family = tuple(family)
    parent, amb = _check_family(F, family)
    if not family:
        return True
    sizes = []
    actions = []
    gens = amb.generators
    for M in family:
        els, labels = left_cosets(amb, M)
        k = int(labels.max()) + 1
        sizes.append(k)
        label_of = np.full(parent.order, -1, dtype=np.int64)
        label_of[els] = labels
        reps = np.full(k, parent.order, dtype=np.int64)
        np.minimum.at(reps, labels, els)
        # acting element g sends coset x M to g x M
        actions.append([label_of[parent.mul[g, reps]].tolist() for g in gens])
    total = math.prod(sizes)
    if total > limits.tuple_cap:
        raise SearchCapExceeded(f"coset tuple space of size {total} exceeds cap {limits.tuple_cap}")
    visited = bytearray(total)
    radix = [math.prod(sizes[i + 1:]) for i in range(len(sizes))]

    def code(t):
        return sum(c * r for c, r in zip(t, radix))

    base = tuple(0 for _ in family)  # coset 0 contains the identity
    visited[code(base)] = 1
    queue = [base]
    i = 0
    while i < len(queue):
        t = queue[i]
        i += 1
        for j in range(len(gens)):
            u = tuple(actions[m][j][t[m]] for m in range(len(family)))
            c = code(u)
            if not visited[c]:
                visited[c] = 1
                queue.append(u)
    return len(queue) == total
