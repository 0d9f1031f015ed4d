"""Finite embedding problems, their solutions and independence of solutions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import limits
from .errors import DomainMismatch, NonCommonBase, NotASolution, NotSurjective, SearchCapExceeded
from .groups import GroupHom, Subgroup
from .homs import find_section, iter_homs
from .independence import is_independent


@dataclass(eq=False)
class EmbeddingProblem:
    """A pair of epimorphisms ``phi: F -> G`` and ``alpha: H -> G``."""

    phi: GroupHom
    alpha: GroupHom
    section: GroupHom | None = None

    @property
    def F(self):
        return self.phi.domain

    @property
    def G(self):
        return self.phi.codomain

    @property
    def H(self):
        return self.alpha.domain

    @property
    def is_split(self):
        return self.section is not None

    @property
    def is_trivial(self):
        return self.alpha.is_bijective()

    def is_solution(self, psi: GroupHom) -> bool:
        return (
            psi.domain.same_as(self.F)
            and psi.codomain.same_as(self.H)
            and np.array_equal(self.alpha.map[psi.map], self.phi.map)
        )


def make_ep(phi: GroupHom, alpha: GroupHom, *, search_section=True) -> EmbeddingProblem:
    if not phi.codomain.same_as(alpha.codomain):
        raise NonCommonBase("phi and alpha have different codomains")
    for name, h in (("phi", phi), ("alpha", alpha)):
        if not h.is_surjective():
            missed = h.missed()
            raise NotSurjective(f"{name} is not surjective; misses {missed}", missed)
    section = find_section(alpha) if search_section else None
    return EmbeddingProblem(phi, alpha, section)


@dataclass(eq=False)
class SolutionSet:
    problem: EmbeddingProblem
    weak: tuple
    proper: tuple
    independence_matrix: tuple
    kernel: Subgroup = field(repr=False, default=None)

    def proper_solutions(self):
        return [self.weak[i] for i in self.proper]

    def independent_pairs(self):
        p = len(self.proper)
        return sum(
            1 for i in range(p) for j in range(i + 1, p) if self.independence_matrix[i][j]
        )


def solutions_independent(problem: EmbeddingProblem, solutions) -> bool:
    """Joint ``Ker phi``-independence of the kernels."""
    K = problem.phi.kernel()
    return is_independent(K, [psi.kernel() for psi in solutions]).independent


def solve(ep: EmbeddingProblem, *, budget=None) -> SolutionSet:
    weak = tuple(iter_homs(ep.F, ep.H, ep.alpha, ep.phi, budget=budget))
    proper = tuple(i for i, psi in enumerate(weak) if psi.is_surjective())
    K = ep.phi.kernel()
    kernels = [weak[i].kernel() for i in proper]
    p = len(proper)
    matrix = [[True] * p for _ in range(p)]
    for i in range(p):
        for j in range(i + 1, p):
            ok = is_independent(K, [kernels[i], kernels[j]]).independent
            matrix[i][j] = matrix[j][i] = ok
    return SolutionSet(ep, weak, proper, tuple(tuple(r) for r in matrix), K)


def max_independent_family(ss: SolutionSet, *, budget=None) -> list[int]:
    """Largest set of proper solutions with jointly independent kernels.

    Returns indices into ``ss.weak``; among families of maximal size the
    lexicographically smallest is returned.
    """
    budget = limits.search_budget if budget is None else budget
    p = len(ss.proper)
    if p == 0:
        return []
    K = ss.kernel
    kernels = [ss.weak[i].kernel() for i in ss.proper]
    masks = [k.mask for k in kernels]
    step = K.order // kernels[0].order  # every proper kernel has index |Ker alpha| in K
    # (K : ∩) <= |K| bounds the family size by log_step |K|
    if step == 1:
        bound = p
    else:
        bound = 0
        while step ** (bound + 1) <= K.order:
            bound += 1
    best: list[int] = []
    nodes = 0

    def rec(chosen, inter_mask, cands):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise SearchCapExceeded("independent-family search exceeded its budget")
        if len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) == bound:
            return
        for pos, c in enumerate(cands):
            if len(chosen) + len(cands) - pos <= len(best):
                return
            m = inter_mask & masks[c]
            # independence of the enlarged family: |K|/|∩| = step^(size)
            if K.order // m.bit_count() != step ** (len(chosen) + 1):
                continue
            rest = [d for d in cands[pos + 1:] if ss.independence_matrix[c][d]]
            rec(chosen + [c], m, rest)

    rec([], K.mask, list(range(p)))
    return [ss.proper[i] for i in best]


def shapiro_restrict(tw, ep: EmbeddingProblem, M: Subgroup, psi: GroupHom) -> GroupHom:
    """``pi ∘ psi|_M``, a weak solution of ``(phi|_M: M -> G0, A ⋊ G0 -> G0)``."""
    if not (ep.alpha.domain.same_as(tw.total) and np.array_equal(ep.alpha.map, tw.alpha.map)):
        raise DomainMismatch("embedding problem is not over this wreath product")
    if not ep.is_solution(psi):
        raise NotASolution("psi is not a weak solution")
    if not M.parent.same_as(ep.F):
        raise DomainMismatch("M is not a subgroup of F")
    G0 = tw.G0
    if ep.phi.image_of(M) != G0:
        raise DomainMismatch("phi(M) differs from G0")
    dom = tw.g0_preimage
    images = psi.map[list(M.elements)]
    if not dom.flags[images].all():
        raise NotASolution("psi(M) is not inside Ind ⋊ G0")
    Mgrp = M.as_group()[0]
    nu = GroupHom(Mgrp, tw.base.group, tw.shapiro.map[dom.position[images]])
    alpha0 = tw.base.projection
    phi_M = G0.position[ep.phi.map[list(M.elements)]]
    if not np.array_equal(alpha0.map[nu.map], phi_M):
        raise NotASolution("pi ∘ psi|_M does not lift phi|_M")
    return nu


@dataclass(frozen=True)
class Summary:
    weak: int
    proper: int
    max_independent: int


def count_summary(ss: SolutionSet) -> Summary:
    return Summary(len(ss.weak), len(ss.proper), len(max_independent_family(ss)))
