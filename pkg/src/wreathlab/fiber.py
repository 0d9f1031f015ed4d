"""Fiber products of epimorphisms onto a common base group."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .config import check_order
from .constructions import encode
from .errors import NonCommonBase, NotAHomomorphism, NotASolution, NotSurjective
from .groups import FiniteGroup, GroupHom
from .homs import find_section
from .independence import is_independent


@dataclass(eq=False)
class FiberProduct:
    """Tuples ``(h_1..h_n)`` with ``alpha_i(h_i)`` all equal, in lexicographic order."""

    base: FiniteGroup
    factors: tuple
    total: FiniteGroup
    projections: tuple
    canonical: GroupHom
    tuples: np.ndarray
    codes: np.ndarray
    given_sections: tuple | None = None

    @property
    def n(self):
        return len(self.factors)

    @property
    def radices(self):
        return [a.domain.order for a in self.factors]

    def lookup(self, columns):
        """Indices in ``total`` of tuples given coordinate-wise (vectorized)."""
        code = encode(columns, self.radices)
        pos = np.searchsorted(self.codes, code)
        pos = np.minimum(pos, len(self.codes) - 1)
        if not (self.codes[pos] == code).all():
            raise NotASolution("tuple does not lie in the fiber product")
        return pos

    @cached_property
    def section(self) -> GroupHom | None:
        """Section of ``canonical`` assembled from factor sections, if all split."""
        sects = self.given_sections
        if sects is None:
            sects = []
            for a in self.factors:
                s = find_section(a)
                if s is None:
                    return None
                sects.append(s)
        cols = [s.map for s in sects]
        return GroupHom(self.base, self.total, self.lookup(cols))


def fiber_product(factors, sections=None) -> FiberProduct:
    factors = tuple(factors)
    if not factors:
        raise ValueError("fiber product needs at least one factor")
    G = factors[0].codomain
    for a in factors:
        if not a.codomain.same_as(G):
            raise NonCommonBase("factors do not share a codomain")
        if not a.is_surjective():
            raise NotSurjective("fiber product factor is not surjective", a.missed())
    fibres = [[np.nonzero(a.map == g)[0] for g in range(G.order)] for a in factors]
    order = sum(math.prod(len(f[g]) for f in fibres) for g in range(G.order))
    check_order(order, "fiber product")
    radices = [a.domain.order for a in factors]
    blocks = []
    for g in range(G.order):
        grids = np.meshgrid(*[f[g] for f in fibres], indexing="ij")
        blocks.append(np.stack([x.reshape(-1) for x in grids], axis=1))
    tuples = np.concatenate(blocks, axis=0)
    codes = encode([tuples[:, i] for i in range(len(factors))], radices)
    perm = np.argsort(codes, kind="stable")
    tuples, codes = tuples[perm], codes[perm]
    comps = [
        a.domain.mul[tuples[:, i][:, None], tuples[:, i][None, :]] for i, a in enumerate(factors)
    ]
    table = np.searchsorted(codes, encode(comps, radices))
    labels = None
    if all(a.domain.labels is not None for a in factors) and order <= 5000:
        labels = [
            "(" + ",".join(a.domain.labels[t[i]] for i, a in enumerate(factors)) + ")"
            for t in tuples
        ]
    total = FiniteGroup(table, labels=labels, name=f"fib{len(factors)}_{G.name}")
    projections = tuple(
        GroupHom(total, a.domain, tuples[:, i], check=False) for i, a in enumerate(factors)
    )
    canonical = factors[0].compose(projections[0])
    tuples.setflags(write=False)
    codes.setflags(write=False)
    return FiberProduct(
        G, factors, total, projections, canonical, tuples, codes,
        tuple(sections) if sections is not None else None,
    )


def power_fiber(alpha: GroupHom, n: int, section=None) -> FiberProduct:
    if n < 1:
        raise ValueError("power fiber needs n >= 1")
    return fiber_product([alpha] * n, None if section is None else [section] * n)


def _common_phi(fp, solutions):
    if len(solutions) != fp.n:
        raise NotASolution(f"expected {fp.n} solutions, got {len(solutions)}")
    phi = None
    for a, psi in zip(fp.factors, solutions):
        if not psi.codomain.same_as(a.domain):
            raise NotASolution("solution does not land in its factor")
        p = a.compose(psi)
        if phi is None:
            phi = p
        elif not (psi.domain.same_as(phi.domain) and np.array_equal(p.map, phi.map)):
            raise NotASolution("solutions do not lift a common map")
    return phi


def combine_solutions(fp: FiberProduct, solutions, phi: GroupHom | None = None) -> GroupHom:
    """The product solution ``x -> (psi_1(x), ..., psi_n(x))`` into the fiber product."""
    common = _common_phi(fp, solutions)
    if phi is not None and not np.array_equal(common.map, phi.map):
        raise NotASolution("solutions do not lift the given map")
    pos = fp.lookup([psi.map for psi in solutions])
    return GroupHom(solutions[0].domain, fp.total, pos, check=False)


def check_fiber_independence(fp: FiberProduct, solutions, phi: GroupHom | None = None):
    """Return ``(combined_proper, all_proper_and_independent)`` computed separately."""
    combined = combine_solutions(fp, solutions, phi)
    combined_proper = combined.is_surjective()
    phi = _common_phi(fp, solutions)
    K = phi.kernel()
    proper = all(psi.is_surjective() for psi in solutions)
    indep = proper and is_independent(K, [psi.kernel() for psi in solutions]).independent
    return combined_proper, indep


def verify_associativity(factors, beta: GroupHom):
    """Check ``(⨉_{G0} H_i) ×_{G0} G ≅ ⨉_G (H_i ×_{G0} G)`` via the natural map.

    Returns ``(ok, witness)`` where ``witness`` is the natural map as a
    GroupHom (None if it is not a homomorphism).
    """
    factors = tuple(factors)
    inner = fiber_product(factors)
    lhs = fiber_product([inner.canonical, beta])
    pairs = [fiber_product([a, beta]) for a in factors]
    rhs = fiber_product([p.projections[1] for p in pairs])
    u = lhs.tuples[:, 0]
    g = lhs.tuples[:, 1]
    cols = [p.lookup([inner.tuples[u, i], g]) for i, p in enumerate(pairs)]
    images = rhs.lookup(cols)
    try:
        witness = GroupHom(lhs.total, rhs.total, images)
    except NotAHomomorphism:
        return False, None
    return witness.is_bijective(), witness
