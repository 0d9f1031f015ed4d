"""Group constructors: named families, direct and semidirect products."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .config import check_order
from .errors import InvalidAction, OrderCapExceeded
from .groups import FiniteGroup, GroupAction, GroupHom

SYMMETRIC_MAX_DEGREE = 6


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    check_order(n)
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, labels=[str(i) for i in ar], name=f"C{n}")


def _cycle_label(p):
    n = len(p)
    seen = [False] * n
    parts = []
    for i in range(n):
        if seen[i] or p[i] == i:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(str(j + 1))
            j = p[j]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


def symmetric(n: int) -> FiniteGroup:
    """Symmetric group on ``{1..n}``; ``i^(xy) = (i^x)^y`` (apply x first)."""
    if n < 1:
        raise ValueError("symmetric group needs n >= 1")
    if n > SYMMETRIC_MAX_DEGREE:
        raise OrderCapExceeded(f"symmetric degree {n} exceeds {SYMMETRIC_MAX_DEGREE}")
    check_order(math.factorial(n))
    perms = list(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    table = [[pos[tuple(q[p[i]] for i in range(n))] for q in perms] for p in perms]
    return FiniteGroup(table, labels=[_cycle_label(p) for p in perms], name=f"S{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n``; element ``i + n*j`` is ``r^i s^j``."""
    if n < 1:
        raise ValueError("dihedral group needs n >= 1")
    check_order(2 * n)
    idx = np.arange(2 * n)
    i, j = idx % n, idx // n
    sign = np.where(j == 1, -1, 1)
    rot = (i[:, None] + sign[:, None] * i[None, :]) % n
    ref = (j[:, None] + j[None, :]) % 2
    labels = [("r%d" % a if a else "") + ("s" if b else "") or "1" for a, b in zip(i, j)]
    return FiniteGroup(rot + n * ref, labels=labels, name=f"D{n}")


def from_table(rows, labels=None, name=None) -> FiniteGroup:
    return FiniteGroup(rows, labels=labels, name=name)


def make_group(kind: str, n: int | None = None, table=None, **kw) -> FiniteGroup:
    if kind == "cyclic":
        return cyclic(n)
    if kind == "symmetric":
        return symmetric(n)
    if kind == "dihedral":
        return dihedral(n)
    if kind == "table":
        return from_table(table, **kw)
    raise ValueError(f"unknown group kind {kind!r}")


def digits(index, radices):
    """Mixed-radix digits (first factor most significant) of an index array."""
    index = np.asarray(index, dtype=np.int64)
    out = []
    for r in reversed(radices):
        out.append(index % r)
        index = index // r
    return np.stack(out[::-1], axis=-1)


def encode(digit_arrays, radices):
    code = np.zeros_like(np.asarray(digit_arrays[0]), dtype=np.int64)
    for d, r in zip(digit_arrays, radices):
        code = code * r + np.asarray(d, dtype=np.int64)
    return code


def direct_product(*groups: FiniteGroup) -> FiniteGroup:
    """Direct product; element index is the mixed-radix code of its coordinates."""
    if not groups:
        raise ValueError("direct product needs at least one factor")
    radices = [G.order for G in groups]
    n = math.prod(radices)
    check_order(n)
    idx = np.arange(n)
    d = digits(idx, radices)
    comps = [G.mul[d[:, k][:, None], d[:, k][None, :]] for k, G in enumerate(groups)]
    table = encode(comps, radices)
    labels = None
    if all(G.labels is not None for G in groups) and len(groups) > 1:
        labels = [
            "(" + ",".join(G.labels[d[x, k]] for k, G in enumerate(groups)) + ")" for x in idx
        ]
    elif len(groups) == 1:
        labels = groups[0].labels
    P = FiniteGroup(table, labels=labels, name="x".join(G.name for G in groups))
    P.factors = tuple(groups)
    return P


def direct_power(A: FiniteGroup, n: int) -> FiniteGroup:
    return direct_product(*([A] * n))


def coordinates(P: FiniteGroup):
    """Coordinate array ``(order, k)`` of a direct product built here."""
    if not P.factors:
        raise ValueError("group was not built as a direct product")
    return digits(np.arange(P.order), [G.order for G in P.factors])


def projection(P: FiniteGroup, i: int) -> GroupHom:
    """Projection onto factor ``i`` (0-based) of a direct product."""
    return GroupHom(P, P.factors[i], coordinates(P)[:, i], check=False)


def injection(P: FiniteGroup, i: int) -> GroupHom:
    G = P.factors[i]
    radices = [H.order for H in P.factors]
    cols = [np.zeros(G.order, dtype=np.int64) for _ in radices]
    cols[i] = np.arange(G.order)
    return GroupHom(G, P, encode(cols, radices), check=False)


def product_action(actions) -> tuple[FiniteGroup, GroupAction]:
    """Componentwise action of a common actor on the direct product of the spaces."""
    actor = actions[0].actor
    for a in actions[1:]:
        if not a.actor.same_as(actor):
            raise InvalidAction("componentwise action needs a common acting group")
    P = direct_product(*[a.space for a in actions])
    radices = [a.space.order for a in actions]
    d = coordinates(P)
    table = encode([a.table[:, d[:, k]] for k, a in enumerate(actions)], radices)
    return P, GroupAction(actor, P, table, check=False)


@dataclass(frozen=True, eq=False)
class Semidirect:
    """``A ⋊ G0`` with element index ``a * |G0| + t`` standing for the pair ``(a, t)``.

    Multiplication is ``(a1, t1)(a2, t2) = (a1 * a2^(t1^-1), t1 t2)`` for the
    right action ``a^t``.
    """

    group: FiniteGroup
    base: FiniteGroup
    actor: FiniteGroup
    action: GroupAction
    projection: GroupHom
    section: GroupHom
    inclusion: GroupHom

    def pair(self, x):
        return divmod(int(x), self.actor.order)

    def element(self, a, t):
        return int(a) * self.actor.order + int(t)


def semidirect_product(A: FiniteGroup, G0: FiniteGroup, act: GroupAction) -> Semidirect:
    if not (act.actor.same_as(G0) and act.space.same_as(A)):
        raise InvalidAction("action does not match the given groups")
    g = G0.order
    n = A.order * g
    check_order(n)
    idx = np.arange(n)
    a, t = idx // g, idx % g
    twisted = act.table[G0.inv[t][:, None], a[None, :]]
    table = A.mul[a[:, None], twisted] * g + G0.mul[t[:, None], t[None, :]]
    labels = None
    if A.labels is not None and G0.labels is not None and n <= 5000:
        labels = [f"({A.labels[a[x]]},{G0.labels[t[x]]})" for x in idx]
    S = FiniteGroup(table, labels=labels, name=f"{A.name}:{G0.name}")
    proj = GroupHom(S, G0, t, check=False)
    sect = GroupHom(G0, S, np.arange(g), check=False)
    incl = GroupHom(A, S, np.arange(A.order) * g, check=False)
    return Semidirect(S, A, G0, act, proj, sect, incl)


def inversion_action(actor: FiniteGroup, space: FiniteGroup, sign: GroupHom | None = None):
    """Elements with nontrivial sign act on an abelian group by inversion.

    ``sign`` is a homomorphism ``actor -> C2``; if omitted the actor must have
    order 2 (its non-identity element inverts).
    """
    if not space.is_abelian:
        raise InvalidAction("inversion is an automorphism only of abelian groups")
    if sign is None:
        if actor.order != 2:
            raise InvalidAction("inversion action without a sign map needs an actor of order 2")
        flips = np.array([0, 1])
    else:
        flips = sign.map
    ar = np.arange(space.order)
    table = np.where(flips[:, None] == 1, space.inv[None, :], ar[None, :])
    return GroupAction(actor, space, table)
