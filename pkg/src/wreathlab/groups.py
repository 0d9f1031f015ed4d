"""Finite groups, subgroups, homomorphisms and actions on element indices.

Every group has elements ``0..order-1`` with ``0`` the identity.  Higher
structures (subgroups, maps, actions) refer to elements by index only.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .config import check_order
from .errors import (
    InvalidAction,
    InvalidTable,
    MixedParents,
    NotAHomomorphism,
    NotComposable,
    NotNormal,
)


def _frozen(arr):
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


def _greedy_generators(rows, n):
    """Greedy generating set: scan elements by index, keep those not yet reached."""
    seen = bytearray(n)
    seen[0] = 1
    reached = [0]
    gens = []
    for x in range(1, n):
        if seen[x]:
            continue
        gens.append(x)
        i = 0
        while i < len(reached):
            r = rows[reached[i]]
            i += 1
            for g in gens:
                y = r[g]
                if not seen[y]:
                    seen[y] = 1
                    reached.append(y)
    return tuple(gens)


class FiniteGroup:
    """A finite group given by its full multiplication table.

    The table is validated on construction: closure, identity at index 0,
    two-sided inverses and associativity (Light's test over a generating set,
    which is exhaustive because right translations by generators reach every
    element).
    """

    def __init__(self, mul, labels=None, name=None):
        table = np.array(mul, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise InvalidTable("multiplication table must be a non-empty square array")
        n = table.shape[0]
        check_order(n)
        if table.min() < 0 or table.max() >= n:
            raise InvalidTable("table entry outside 0..order-1 (closure)")
        ar = np.arange(n)
        if not (table[0] == ar).all() or not (table[:, 0] == ar).all():
            raise InvalidTable("element 0 is not a two-sided identity")
        has_one = table == 0
        missing = np.nonzero(~has_one.any(axis=1))[0]
        if missing.size:
            raise InvalidTable(f"element {int(missing[0])} has no inverse")
        inv = has_one.argmax(axis=1)
        bad = np.nonzero(table[inv, ar] != 0)[0]
        if bad.size:
            raise InvalidTable(f"element {int(bad[0])} has no two-sided inverse")
        rows = table.tolist()
        gens = _greedy_generators(rows, n)
        for g in gens:
            col = table[:, g]
            lhs = col[table]  # (xy)g
            rhs = table[ar[:, None], col[None, :]]  # x(yg)
            diff = np.argwhere(lhs != rhs)
            if diff.size:
                x, y = (int(v) for v in diff[0])
                raise InvalidTable(f"associativity fails for ({x}, {y}, {g})")
        self.mul = _frozen(table)
        self.inv = _frozen(inv)
        self.order = n
        self.generators = gens
        self.rows = rows
        self.labels = None if labels is None else tuple(str(s) for s in labels)
        if self.labels is not None and len(self.labels) != n:
            raise InvalidTable("labels must match the group order")
        self.name = name or f"G{n}"
        self.factors = ()

    identity = 0

    def __repr__(self):
        return f"<FiniteGroup {self.name} order={self.order}>"

    def __len__(self):
        return self.order

    def m(self, x, y):
        return self.rows[x][y]

    def label(self, x):
        return self.labels[x] if self.labels is not None else str(x)

    def same_as(self, other):
        return self is other or (
            self.order == other.order and np.array_equal(self.mul, other.mul)
        )

    @cached_property
    def element_orders(self):
        n = self.order
        ar = np.arange(n)
        out = np.zeros(n, dtype=np.int64)
        p = ar.copy()
        k = 1
        while (out == 0).any():
            out[(p == 0) & (out == 0)] = k
            p = self.mul[p, ar]
            k += 1
        out.setflags(write=False)
        return out

    @cached_property
    def is_abelian(self):
        return bool((self.mul == self.mul.T).all())

    @cached_property
    def conjugation(self):
        """Array ``c[g, x] = g x g^-1``."""
        return _frozen(self.mul[self.mul, self.inv[:, None]])

    def power(self, x, k):
        r = 0
        for _ in range(k % self.element_orders[x]):
            r = self.rows[r][x]
        return r


def same_group(a: FiniteGroup, b: FiniteGroup) -> bool:
    return a.same_as(b)


class Subgroup:
    """An element subset of ``parent`` closed under multiplication and inverses."""

    def __init__(self, parent: FiniteGroup, elements, check=True):
        els = sorted({int(e) for e in elements})
        n = parent.order
        if els and (els[0] < 0 or els[-1] >= n):
            raise InvalidTable("subgroup element outside parent")
        flags = np.zeros(n, dtype=bool)
        flags[els] = True
        if check:
            if not els or els[0] != 0:
                raise InvalidTable("subgroup must contain the identity")
            idx = np.asarray(els)
            if not flags[parent.mul[np.ix_(idx, idx)]].all():
                raise InvalidTable("subset is not closed under multiplication")
            if not flags[parent.inv[idx]].all():
                raise InvalidTable("subset is not closed under inverses")
        flags.setflags(write=False)
        self.parent = parent
        self.elements = tuple(els)
        self.flags = flags
        self.mask = int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")

    @classmethod
    def from_flags(cls, parent, flags, check=False):
        return cls(parent, np.nonzero(flags)[0].tolist(), check=check)

    @classmethod
    def whole(cls, parent):
        return cls(parent, range(parent.order), check=False)

    @classmethod
    def trivial(cls, parent):
        return cls(parent, [0], check=False)

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return bool(self.flags[x])

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent.same_as(other.parent) and self.mask == other.mask

    def __hash__(self):
        return hash((self.parent.order, self.mask))

    def __repr__(self):
        return f"<Subgroup of {self.parent.name} order={self.order}>"

    def issubset(self, other: Subgroup) -> bool:
        _same_parent(self, other)
        return self.mask & other.mask == self.mask

    def is_whole(self):
        return self.order == self.parent.order

    def is_trivial(self):
        return self.order == 1

    def is_normal(self):
        return is_normal(self)

    @cached_property
    def _materialized(self):
        idx = np.asarray(self.elements)
        pos = np.full(self.parent.order, -1, dtype=np.int64)
        pos[idx] = np.arange(len(idx))
        table = pos[self.parent.mul[np.ix_(idx, idx)]]
        labels = None
        if self.parent.labels is not None:
            labels = [self.parent.labels[e] for e in self.elements]
        grp = FiniteGroup(table, labels=labels, name=f"{self.parent.name}_sub{self.order}")
        incl = GroupHom(grp, self.parent, idx, check=False)
        pos.setflags(write=False)
        return grp, incl, pos

    def as_group(self):
        """Return ``(group, inclusion)``; element ``i`` of the group is ``elements[i]``."""
        grp, incl, _ = self._materialized
        return grp, incl

    @property
    def position(self):
        """Array mapping parent elements to their index in ``as_group()`` (or -1)."""
        return self._materialized[2]

    def lift(self, sub_of_group: Subgroup) -> Subgroup:
        """Transport a subgroup of ``as_group()`` back into the parent."""
        idx = np.asarray(self.elements)
        return Subgroup(self.parent, idx[list(sub_of_group.elements)].tolist(), check=False)

    def restrict(self, sub: Subgroup) -> Subgroup:
        """View ``sub`` (a subgroup of the parent inside self) as a subgroup of ``as_group()``."""
        if not sub.issubset(self):
            raise MixedParents("subgroup is not contained in the ambient subgroup")
        grp = self.as_group()[0]
        return Subgroup(grp, self.position[list(sub.elements)].tolist(), check=False)

    @cached_property
    def generators(self):
        grp = self.as_group()[0]
        return tuple(self.elements[g] for g in grp.generators)


def _same_parent(*subs):
    first = subs[0].parent
    for s in subs[1:]:
        if not first.same_as(s.parent):
            raise MixedParents("subgroups belong to different parent groups")


def closure(F: FiniteGroup, gens, base: Subgroup | None = None) -> Subgroup:
    """Smallest subgroup containing ``gens`` (and ``base`` when given)."""
    rows = F.rows
    seen = bytearray(F.order)
    if base is not None:
        reached = list(base.elements)
        active = list(base.generators)
    else:
        reached = [0]
        active = []
    for x in reached:
        seen[x] = 1
    new = [int(g) for g in gens if not seen[int(g)]]
    if not new:
        return base if base is not None else Subgroup.trivial(F)
    old_count = len(reached)
    i = 0
    gens_all = active + new
    while i < len(reached):
        x = reached[i]
        r = rows[x]
        use = new if i < old_count else gens_all
        i += 1
        for g in use:
            y = r[g]
            if not seen[y]:
                seen[y] = 1
                reached.append(y)
    return Subgroup(F, reached, check=False)


def subgroup_generated(F: FiniteGroup, gens) -> Subgroup:
    return closure(F, list(gens))


def intersection(*subs: Subgroup) -> Subgroup:
    _same_parent(*subs)
    flags = subs[0].flags.copy()
    for s in subs[1:]:
        flags &= s.flags
    return Subgroup.from_flags(subs[0].parent, flags)


def product_set(M1: Subgroup, M2: Subgroup):
    """Return ``(elements, is_subgroup)`` for the set ``M1 M2``."""
    _same_parent(M1, M2)
    F = M1.parent
    prod = np.unique(F.mul[np.ix_(np.asarray(M1.elements), np.asarray(M2.elements))])
    flags = np.zeros(F.order, dtype=bool)
    flags[prod] = True
    closed = bool(flags[F.mul[np.ix_(prod, prod)]].all())
    return tuple(int(x) for x in prod), closed


def index(ambient, M: Subgroup) -> int:
    """Index of ``M`` in ``ambient`` (a FiniteGroup or a Subgroup containing M)."""
    if isinstance(ambient, FiniteGroup):
        if not ambient.same_as(M.parent):
            raise MixedParents("subgroup does not belong to this group")
        return ambient.order // M.order
    if not M.issubset(ambient):
        raise MixedParents("subgroup is not contained in the ambient subgroup")
    return ambient.order // M.order


def is_normal(M: Subgroup) -> bool:
    F = M.parent
    idx = np.asarray(M.elements)
    for g in F.generators:
        if not M.flags[F.conjugation[g, idx]].all():
            return False
    return True


def is_normal_in(M: Subgroup, ambient: Subgroup) -> bool:
    if not M.issubset(ambient):
        return False
    F = M.parent
    idx = np.asarray(M.elements)
    return all(M.flags[F.conjugation[g, idx]].all() for g in ambient.generators)


def normal_core(M: Subgroup) -> Subgroup:
    """Largest normal subgroup of the parent contained in ``M``."""
    F = M.parent
    flags = M.flags[F.conjugation].all(axis=0)
    return Subgroup.from_flags(F, flags)


def subgroup_calc(op: str, *args):
    """Dispatch by name to ``intersection``, ``product_set``, ``index``,
    ``is_normal`` or ``normal_core``."""
    ops = {"intersection": intersection, "product_set": product_set, "index": index,
           "is_normal": is_normal, "normal_core": normal_core}
    if op not in ops:
        raise ValueError(f"unknown subgroup operation {op!r}")
    return ops[op](*args)


def normal_closure(F: FiniteGroup, gens) -> Subgroup:
    cls = np.unique(F.conjugation[:, list(gens)]) if len(gens) else []
    return closure(F, [int(c) for c in cls])


def conjugate(M: Subgroup, g: int) -> Subgroup:
    """``g^-1 M g``."""
    F = M.parent
    gi = int(F.inv[g])
    return Subgroup(F, F.conjugation[gi, list(M.elements)].tolist(), check=False)


def left_cosets(ambient, M: Subgroup):
    """Label left cosets ``xM`` for ``x`` in ``ambient``.

    Returns ``(elements, labels)`` where ``labels[i]`` is the coset number of
    ``elements[i]``; cosets are numbered by their smallest element.
    """
    F = M.parent
    if isinstance(ambient, Subgroup):
        els = np.asarray(ambient.elements)
    else:
        els = np.arange(F.order)
    reps = F.mul[np.ix_(els, np.asarray(M.elements))].min(axis=1)
    uniq, labels = np.unique(reps, return_inverse=True)
    return els, labels.astype(np.int64)


def quotient(F: FiniteGroup, N: Subgroup):
    """``F/N`` with its natural projection; cosets numbered by smallest element."""
    if not F.same_as(N.parent):
        raise MixedParents("normal subgroup belongs to another group")
    if not is_normal(N):
        raise NotNormal("cannot form a quotient by a non-normal subgroup")
    _, labels = left_cosets(F, N)
    k = int(labels.max()) + 1
    reps = np.zeros(k, dtype=np.int64)
    # smallest element of each coset is the representative
    for x in range(F.order - 1, -1, -1):
        reps[labels[x]] = x
    table = labels[F.mul[np.ix_(reps, reps)]]
    names = None
    if F.labels is not None:
        names = [F.labels[r] + ("N" if N.order > 1 else "") for r in reps]
    Q = FiniteGroup(table, labels=names, name=f"{F.name}/N{N.order}")
    return Q, GroupHom(F, Q, labels, check=False)


class GroupHom:
    """A homomorphism stored as the full element map ``domain -> codomain``."""

    def __init__(self, domain: FiniteGroup, codomain: FiniteGroup, images, check=True):
        arr = np.array(images, dtype=np.int64).reshape(-1)
        if arr.shape[0] != domain.order:
            raise NotAHomomorphism(
                f"map has {arr.shape[0]} images for a domain of order {domain.order}"
            )
        if arr.size and (arr.min() < 0 or arr.max() >= codomain.order):
            raise NotAHomomorphism("image outside codomain")
        if check:
            if arr[0] != 0:
                raise NotAHomomorphism("identity is not mapped to identity")
            for s in domain.generators:
                lhs = arr[domain.mul[:, s]]
                rhs = codomain.mul[arr, arr[s]]
                bad = np.nonzero(lhs != rhs)[0]
                if bad.size:
                    raise NotAHomomorphism(
                        f"map fails multiplicativity at ({int(bad[0])}, {s})"
                    )
        self.domain = domain
        self.codomain = codomain
        self.map = _frozen(arr)

    def __call__(self, x):
        return int(self.map[x])

    def __repr__(self):
        return f"<GroupHom {self.domain.name} -> {self.codomain.name}>"

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (
            self.domain.same_as(other.domain)
            and self.codomain.same_as(other.codomain)
            and np.array_equal(self.map, other.map)
        )

    def __hash__(self):
        return hash(self.map.tobytes())

    def compose(self, inner: GroupHom) -> GroupHom:
        """``self ∘ inner``."""
        if not inner.codomain.same_as(self.domain):
            raise NotComposable("codomain of the inner map is not the domain of the outer map")
        return GroupHom(inner.domain, self.codomain, self.map[inner.map], check=False)

    def kernel(self) -> Subgroup:
        return Subgroup.from_flags(self.domain, self.map == 0)

    def image(self) -> Subgroup:
        flags = np.zeros(self.codomain.order, dtype=bool)
        flags[self.map] = True
        return Subgroup.from_flags(self.codomain, flags)

    def image_of(self, sub: Subgroup) -> Subgroup:
        flags = np.zeros(self.codomain.order, dtype=bool)
        flags[self.map[list(sub.elements)]] = True
        return Subgroup.from_flags(self.codomain, flags)

    def preimage(self, sub: Subgroup) -> Subgroup:
        return Subgroup.from_flags(self.domain, sub.flags[self.map])

    def missed(self):
        flags = np.zeros(self.codomain.order, dtype=bool)
        flags[self.map] = True
        return np.nonzero(~flags)[0].tolist()

    def is_surjective(self) -> bool:
        return np.unique(self.map).size == self.codomain.order

    def is_injective(self) -> bool:
        return np.unique(self.map).size == self.domain.order

    def is_bijective(self) -> bool:
        return self.domain.order == self.codomain.order and self.is_injective()

    def restrict(self, sub: Subgroup) -> GroupHom:
        """Restriction to ``sub``, as a map out of ``sub.as_group()``."""
        if not sub.parent.same_as(self.domain):
            raise NotComposable("subgroup does not live in the domain")
        grp, incl = sub.as_group()
        return self.compose(incl)

    @classmethod
    def identity(cls, G: FiniteGroup) -> GroupHom:
        return cls(G, G, np.arange(G.order), check=False)

    @classmethod
    def trivial(cls, F: FiniteGroup, H: FiniteGroup) -> GroupHom:
        return cls(F, H, np.zeros(F.order, dtype=np.int64), check=False)


def kernel(h: GroupHom) -> Subgroup:
    return h.kernel()


def image(h: GroupHom) -> Subgroup:
    return h.image()


def compose(outer: GroupHom, inner: GroupHom) -> GroupHom:
    return outer.compose(inner)


class GroupAction:
    """Right action of ``actor`` on ``space`` by automorphisms.

    ``table[t, a]`` is ``a^t``; the laws are ``a^1 = a`` and
    ``(a^s)^t = a^(st)``.
    """

    def __init__(self, actor: FiniteGroup, space: FiniteGroup, table, check=True):
        tab = np.array(table, dtype=np.int64)
        if tab.shape != (actor.order, space.order):
            raise InvalidAction(
                f"action table must have shape ({actor.order}, {space.order}), got {tab.shape}"
            )
        if check:
            _validate_action(actor, space, tab)
        self.actor = actor
        self.space = space
        self.table = _frozen(tab)

    def __call__(self, a, t):
        return int(self.table[t, a])

    def __repr__(self):
        return f"<GroupAction {self.actor.name} on {self.space.name}>"

    @classmethod
    def trivial(cls, actor, space):
        tab = np.broadcast_to(np.arange(space.order), (actor.order, space.order))
        return cls(actor, space, tab, check=False)

    def pullback(self, h: GroupHom) -> GroupAction:
        """The action ``a^x = a^(h(x))`` of ``h.domain``."""
        if not h.codomain.same_as(self.actor):
            raise InvalidAction("homomorphism does not land in the acting group")
        return GroupAction(h.domain, self.space, self.table[h.map], check=False)

    def is_trivial(self):
        return bool((self.table == np.arange(self.space.order)).all())


def _validate_action(actor, space, tab):
    n = space.order
    if tab.size == 0 or tab.min() < 0 or tab.max() >= n:
        raise InvalidAction("action value outside the acted-on group")
    if not (tab[0] == np.arange(n)).all():
        raise InvalidAction("identity does not act trivially")
    for t in range(actor.order):
        if np.unique(tab[t]).size != n:
            raise InvalidAction(f"element {t} does not act bijectively")
    for s in space.generators:
        lhs = tab[:, space.mul[:, s]]
        rhs = space.mul[tab, tab[:, s][:, None]]
        if (lhs != rhs).any():
            raise InvalidAction("some element does not act by a homomorphism")
    for t in actor.generators:
        lhs = tab[actor.mul[:, t]]  # a^(st)
        rhs = tab[t][tab]  # (a^s)^t
        if (lhs != rhs).any():
            raise InvalidAction("action is not a right action: (a^s)^t != a^(st)")
