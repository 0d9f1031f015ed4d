"""Induced modules, twisted wreath products and Shapiro maps.

For ``G0 <= G`` acting on ``A`` from the right, ``Ind(A)`` is the group of
functions ``f: G -> A`` with ``f(s t) = f(s)^t`` for ``t`` in ``G0``.  A
function is stored by its values on the left transversal of ``G0`` (one
representative per coset ``rG0``, the smallest index, so the identity
represents ``G0``).  ``G`` acts by ``f^s(r) = f(s r)`` and the twisted wreath
product is ``Ind(A) ⋊ G`` with element index ``f * |G| + s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .config import check_order
from .constructions import (
    Semidirect,
    coordinates,
    direct_power,
    encode,
    product_action,
    semidirect_product,
)
from .errors import InvalidAction, MixedParents, NotAHomomorphism
from .fiber import FiberProduct, fiber_product
from .groups import FiniteGroup, GroupAction, GroupHom, Subgroup, left_cosets


class InducedModule:
    def __init__(self, A: FiniteGroup, G: FiniteGroup, G0: Subgroup, action: GroupAction):
        if not G0.parent.same_as(G):
            raise MixedParents("G0 is not a subgroup of G")
        G0grp = G0.as_group()[0]
        if not action.actor.same_as(G0grp):
            raise InvalidAction("action must be by the materialized subgroup G0")
        if not action.space.same_as(A):
            raise InvalidAction("action does not act on A")
        els, labels = left_cosets(G, G0)
        k = int(labels.max()) + 1
        check_order(A.order ** k, "induced module")
        reps = np.full(k, G.order, dtype=np.int64)
        np.minimum.at(reps, labels, els)
        coset_of = labels
        # x = r_j * tau  =>  tau = r_j^-1 x
        tau_el = G.mul[G.inv[reps[coset_of]], np.arange(G.order)]
        tau_of = G0.position[tau_el]
        assert (tau_of >= 0).all()

        self.A, self.G, self.G0, self.G0grp, self.action = A, G, G0, G0grp, action
        self.index = k
        self.transversal = tuple(int(r) for r in reps)
        self.coset_of = coset_of
        self.tau_of = tau_of
        self.as_group = direct_power(A, k)
        self.values = coordinates(self.as_group)
        self.order = self.as_group.order
        self.g_action = GroupAction(G, self.as_group, self._g_action_table())
        self.verify_laws()

    def _g_action_table(self):
        G, k, act = self.G, self.index, self.action.table
        radices = [self.A.order] * k
        table = np.empty((G.order, self.order), dtype=np.int64)
        for s in range(G.order):
            y = G.mul[s, list(self.transversal)]
            cols = [act[self.tau_of[y[i]], self.values[:, self.coset_of[y[i]]]] for i in range(k)]
            table[s] = encode(cols, radices)
        return table

    def evaluate(self, f, x):
        """``f(x)`` for any ``x`` in ``G`` via ``x = r tau``."""
        return int(self.action.table[self.tau_of[x], self.values[f, self.coset_of[x]]])

    def encode_values(self, vals):
        """Index of the function with the given values on the transversal."""
        return int(encode(list(vals), [self.A.order] * self.index))

    @cached_property
    def expanded(self):
        """Array ``E[f, x] = f(x)`` over the whole of ``G``."""
        return self.action.table[self.tau_of[None, :], self.values[:, self.coset_of]]

    def verify_laws(self):
        E = self.expanded
        G = self.G
        for p, t in enumerate(self.G0.elements):
            if not (E[:, G.mul[:, t]] == self.action.table[p][E]).all():
                raise InvalidAction("functional law f(st) = f(s)^t fails")
        for s in range(G.order):
            if not (E[self.g_action.table[s]] == E[:, G.mul[s]]).all():
                raise InvalidAction("G-action does not realize f^s(r) = f(sr)")
        return True


def induced_module(A, G, G0, action) -> InducedModule:
    return InducedModule(A, G, G0, action)


@dataclass(eq=False)
class TwistedWreath:
    ind: InducedModule
    semidirect: Semidirect
    total: FiniteGroup
    alpha: GroupHom
    section: GroupHom
    ind_embed: GroupHom

    @property
    def A(self):
        return self.ind.A

    @property
    def G(self):
        return self.ind.G

    @property
    def G0(self):
        return self.ind.G0

    def pair(self, x):
        """``(f, s)`` for a total element index."""
        return divmod(int(x), self.G.order)

    @cached_property
    def g0_preimage(self) -> Subgroup:
        """``alpha^-1(G0) = Ind ⋊ G0`` as a subgroup of ``total``."""
        return self.alpha.preimage(self.G0)

    @cached_property
    def base(self) -> Semidirect:
        """``A ⋊ G0`` built from the same action."""
        return semidirect_product(self.A, self.ind.G0grp, self.ind.action)

    @cached_property
    def shapiro(self) -> GroupHom:
        """``f t -> f(1) t`` from ``g0_preimage.as_group()`` onto ``A ⋊ G0``."""
        dom, incl = self.g0_preimage.as_group()
        f, s = np.divmod(incl.map, self.G.order)
        images = self.ind.values[f, 0] * self.ind.G0grp.order + self.G0.position[s]
        return GroupHom(dom, self.base.group, images)

    @cached_property
    def ind_subgroup(self) -> Subgroup:
        return self.ind_embed.image()


def twisted_wreath(A, G, G0, action) -> TwistedWreath:
    ind = InducedModule(A, G, G0, action)
    check_order(ind.order * G.order, "twisted wreath product")
    sd = semidirect_product(ind.as_group, G, ind.g_action)
    return TwistedWreath(ind, sd, sd.group, sd.projection, sd.section, sd.inclusion)


def shapiro(tw: TwistedWreath) -> GroupHom:
    return tw.shapiro


def shapiro_fiber(tw: TwistedWreath):
    """``B = pi^-1(G0)`` with its index and whether it contains ``Ind``."""
    pi = tw.shapiro
    a_part = pi.map // tw.ind.G0grp.order
    dom_incl = tw.g0_preimage.as_group()[1]
    B = Subgroup(tw.total, dom_incl.map[a_part == 0].tolist())
    idx = tw.total.order // B.order
    contains_ind = tw.ind_subgroup.issubset(B)
    return B, idx, contains_ind


def wreath_fiber_map(tws, big: TwistedWreath) -> tuple[FiberProduct, GroupHom]:
    """Natural map from the fiber product of the ``alpha_i`` into ``(∏A_i) ≀ G``.

    Sends ``((f_1, s), ..., (f_n, s))`` to ``((f_1, ..., f_n), s)``.
    """
    G = tws[0].G
    fp = fiber_product([tw.alpha for tw in tws])
    f_idx, s = np.divmod(fp.tuples, G.order)
    s = s[:, 0]
    radA = [tw.A.order for tw in tws]
    k = big.ind.index
    cols = []
    for j in range(k):
        cols.append(encode([tw.ind.values[f_idx[:, i], j] for i, tw in enumerate(tws)], radA))
    big_f = encode(cols, [big.A.order] * k)
    images = big_f * G.order + s
    return fp, GroupHom(fp.total, big.total, images)


def wreath_fiber_iso(As, G, G0, actions):
    """Build both sides and verify the natural map is an isomorphism.

    Returns ``(ok, witness)``.
    """
    tws = [twisted_wreath(A, G, G0, act) for A, act in zip(As, actions)]
    P, pact = product_action(list(actions))
    big = twisted_wreath(P, G, G0, pact)
    try:
        _, witness = wreath_fiber_map(tws, big)
    except NotAHomomorphism:
        return False, None
    return witness.is_bijective(), witness
