"""Built-in instance catalogue used by the verification suites.

Everything here is deterministic: groups, embedding problems, wreath data and
towers come out in a fixed order so reports are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .constructions import (
    cyclic,
    dihedral,
    direct_product,
    from_table,
    inversion_action,
    product_action,
    semidirect_product,
    symmetric,
)
from .embedding import EmbeddingProblem
from .groups import FiniteGroup, GroupAction, GroupHom, Subgroup, quotient, subgroup_generated
from .homs import find_isomorphism, find_section
from .lattice import normal_subgroups
from .transfer import TransferTower
from .wreath import twisted_wreath


def _quaternion():
    # elements s*u with s in {+1,-1}, u in {1,i,j,k}; index = 4*(s<0) + u
    unit = [[(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)]]
    table = np.zeros((8, 8), dtype=np.int64)
    for x in range(8):
        for y in range(8):
            s = (-1) ** (x // 4 + y // 4)
            t, u = unit[x % 4][y % 4]
            table[x, y] = (0 if s * t > 0 else 4) + u
    labels = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    return from_table(table, labels=labels, name="Q8")


def _alternating4():
    S4 = symmetric(4)
    A = _sub(S4, np.nonzero(S4.element_orders == 3)[0].tolist())
    G = A.as_group()[0]
    G.name = "A4"
    return G


def _dicyclic3():
    C3, C4 = cyclic(3), cyclic(4)
    sign = GroupHom(C4, cyclic(2), [0, 1, 0, 1])
    G = semidirect_product(C3, C4, inversion_action(C4, C3, sign)).group
    G.name = "Dic3"
    return G


def _named(G, name):
    G.name = name
    return G


_BUILDERS = {
    "C1": lambda: cyclic(1),
    "C2": lambda: cyclic(2),
    "C3": lambda: cyclic(3),
    "C4": lambda: cyclic(4),
    "C2^2": lambda: _named(direct_product(cyclic(2), cyclic(2)), "C2^2"),
    "C5": lambda: cyclic(5),
    "S3": lambda: symmetric(3),
    "C6": lambda: cyclic(6),
    "C7": lambda: cyclic(7),
    "C8": lambda: cyclic(8),
    "C4xC2": lambda: _named(direct_product(cyclic(4), cyclic(2)), "C4xC2"),
    "C2^3": lambda: _named(direct_product(cyclic(2), cyclic(2), cyclic(2)), "C2^3"),
    "D4": lambda: dihedral(4),
    "Q8": _quaternion,
    "C9": lambda: cyclic(9),
    "C3^2": lambda: _named(direct_product(cyclic(3), cyclic(3)), "C3^2"),
    "C10": lambda: cyclic(10),
    "D5": lambda: dihedral(5),
    "C12": lambda: cyclic(12),
    "C6xC2": lambda: _named(direct_product(cyclic(6), cyclic(2)), "C6xC2"),
    "D6": lambda: dihedral(6),
    "A4": _alternating4,
    "Dic3": _dicyclic3,
    "C16": lambda: cyclic(16),
    "C4^2": lambda: _named(direct_product(cyclic(4), cyclic(4)), "C4^2"),
    "C8xC2": lambda: _named(direct_product(cyclic(8), cyclic(2)), "C8xC2"),
    "C4xC2^2": lambda: _named(direct_product(cyclic(4), cyclic(2), cyclic(2)), "C4xC2^2"),
    "C2^4": lambda: _named(direct_product(*[cyclic(2)] * 4), "C2^4"),
    "D8": lambda: dihedral(8),
    "D4xC2": lambda: _named(direct_product(dihedral(4), cyclic(2)), "D4xC2"),
    "Q8xC2": lambda: _named(direct_product(_quaternion(), cyclic(2)), "Q8xC2"),
    "S3xC3": lambda: _named(direct_product(symmetric(3), cyclic(3)), "S3xC3"),
    "C2xA4": lambda: _named(direct_product(cyclic(2), _alternating4()), "C2xA4"),
    "D12": lambda: dihedral(12),
    "S4": lambda: symmetric(4),
    "S4xC2": lambda: _named(direct_product(symmetric(4), cyclic(2)), "S4xC2"),
    "D24": lambda: dihedral(24),
    "A4xC4": lambda: _named(direct_product(_alternating4(), cyclic(4)), "A4xC4"),
    "C3^2xC4": lambda: _named(direct_product(cyclic(3), cyclic(3), cyclic(4)), "C3^2xC4"),
}

# order 25..48, used only by the randomized independence sweeps
LARGE_GROUP_NAMES = ("S4xC2", "D24", "A4xC4", "C3^2xC4")
GROUP_NAMES = tuple(n for n in _BUILDERS if n not in LARGE_GROUP_NAMES)


@lru_cache(maxsize=None)
def group(name: str) -> FiniteGroup:
    return _BUILDERS[name]()


def groups(max_order: int = 24, names=GROUP_NAMES):
    """Catalogue groups of order at most ``max_order`` in catalogue order."""
    return [(n, group(n)) for n in names if group(n).order <= max_order]


# groups feeding the embedding-problem catalogue; kept to sizes where every
# subset of three weak solutions can be enumerated
EP_GROUPS = ("C1", "C2", "C3", "C4", "C2^2", "S3", "C6", "C8", "C4xC2", "C2^3", "D4", "Q8",
             "C3^2", "D6", "A4", "C16", "D8")


@dataclass(eq=False)
class CatalogueEP:
    name: str
    problem: EmbeddingProblem


@lru_cache(maxsize=None)
def quotients_of(name: str):
    """``(K, Q, proj)`` for every normal ``K`` of a catalogue group."""
    F = group(name)
    return [(K,) + quotient(F, K) for K in normal_subgroups(F)]


def embedding_problems(max_order: int = 16, names=EP_GROUPS):
    """Every ``(F -> F/K, H -> H/N)`` with ``H/N ≅ F/K`` over the named groups.

    ``alpha`` is ``H -> H/N`` followed by the first isomorphism ``H/N -> F/K``
    found by the canonical search.
    """
    out = []
    pool = [n for n in names if group(n).order <= max_order]
    for fname in pool:
        for ki, (K, G, phi) in enumerate(quotients_of(fname)):
            for hname in pool:
                H = group(hname)
                if H.order % G.order:
                    continue
                for ni, (N, Q, proj) in enumerate(quotients_of(hname)):
                    if Q.order != G.order:
                        continue
                    iso = find_isomorphism(Q, G)
                    if iso is None:
                        continue
                    alpha = iso.compose(proj)
                    ep = EmbeddingProblem(phi, alpha, find_section(alpha))
                    out.append(CatalogueEP(f"{fname}/K{ki} <- {hname}/N{ni}", ep))
    return out


@dataclass(eq=False)
class WreathInstance:
    name: str
    A: FiniteGroup
    G: FiniteGroup
    G0: Subgroup
    action: GroupAction

    def build(self):
        return twisted_wreath(self.A, self.G, self.G0, self.action)


def _trivial_subgroup(G):
    return Subgroup.trivial(G)


def _sub(G, gens):
    return subgroup_generated(G, gens)


def wreath_instances():
    """Catalogue of ``(A, G, G0, action)`` data for twisted wreath products."""
    C1, C2, C3, C4 = group("C1"), group("C2"), group("C3"), group("C4")
    S3, D4, V = group("S3"), group("D4"), group("C2^2")
    out = []

    def add(name, A, G, G0, make_action):
        G0grp = G0.as_group()[0]
        out.append(WreathInstance(name, A, G, G0, make_action(G0grp, A)))

    triv = GroupAction.trivial
    transposition = _sub(S3, [_first_of_order(S3, 2)])
    add("C2 wr_1 C2", C2, C2, _trivial_subgroup(C2), triv)
    add("C2 wr_<(12)> S3", C2, S3, transposition, triv)
    add("C3 wr_C2 C2 (inversion)", C3, C2, Subgroup.whole(C2), lambda a, s: inversion_action(a, s))
    add("C2 wr_C2 C2", C2, C2, Subgroup.whole(C2), triv)
    add("C3 wr_1 C2", C3, C2, _trivial_subgroup(C2), triv)
    add("C1 wr_<(12)> S3", C1, S3, transposition, triv)
    add("C2^2 wr_1 C2", V, C2, _trivial_subgroup(C2), triv)
    add("C3 wr_<(12)> S3 (inversion)", C3, S3, transposition, lambda a, s: inversion_action(a, s))
    add("C2 wr_A3 S3", C2, S3, _sub(S3, [_first_of_order(S3, 3)]), triv)
    add("C2 wr_C2 C4", C2, C4, _sub(C4, [2]), triv)
    add("S3 wr_1 C2", S3, C2, _trivial_subgroup(C2), triv)
    add("C2 wr_<s> D4", C2, D4, _sub(D4, [4]), triv)
    add("C4 wr_C2 C2 (inversion)", C4, C2, Subgroup.whole(C2), lambda a, s: inversion_action(a, s))
    add("C2 wr_1 C3", C2, C3, _trivial_subgroup(C3), triv)
    return out


def _first_of_order(G, k):
    return int(np.nonzero(G.element_orders == k)[0][0])


def fiber_instances():
    """Lists of surjections onto a common base used for the order formula and associativity."""
    out = []
    names = ("C2", "C4", "C2^2", "S3", "C6", "D4", "C4xC2", "C2^3", "Q8", "D6", "A4", "S4")
    by_base = {}
    for hname in names:
        for K, Q, proj in quotients_of(hname):
            by_base.setdefault(Q.order, []).append((hname, Q, proj))
    for base_order in sorted(by_base):
        entries = by_base[base_order]
        ref_name, ref_Q, _ = entries[0]
        maps = []
        for hname, Q, proj in entries:
            iso = find_isomorphism(Q, ref_Q)
            if iso is None:
                continue
            maps.append((hname, iso.compose(proj)))
        out.append((ref_Q, maps))
    return out


@dataclass(eq=False)
class CatalogueTower:
    name: str
    tower: TransferTower
    n_values: tuple
    kind: str  # "positive", "negative" or "plain"


def wreath_tower(A, G, G0, action1, n, name):
    """``F = A^n wr_{G0} G`` with ``M = F0 = Ind ⋊ G0``, ``D = L = N = Ind`` and ``mu = alpha|_M``."""
    An, actn = product_action([action1] * n)
    tw = twisted_wreath(An, G, G0, actn)
    M = tw.g0_preimage
    Mg, incl = M.as_group()
    mu = GroupHom(Mg, tw.ind.G0grp, G0.position[tw.alpha.map[incl.map]])
    D = tw.ind_subgroup
    return TransferTower(tw.total, M, mu, action1, D, M, D, D, name=name)


def extended_wreath_tower(A, G, G0, action1, name, extra="C2"):
    """``F = (A wr_{G0} G) x E``; ``D = Ind x E`` so that ``F0 = MD`` is larger than ``M``.

    ``N = Ind x 1`` leaves ``F/N = G x E``, which the quotient check must search.
    """
    tw = twisted_wreath(A, G, G0, action1)
    E = group(extra)
    F = direct_product(tw.total, E)
    g = E.order

    def up(S, cs):
        return Subgroup(F, [x * g + c for x in S.elements for c in cs])

    M = up(tw.g0_preimage, (0,))
    Mg, incl = M.as_group()
    mu = GroupHom(Mg, tw.ind.G0grp, G0.position[tw.alpha.map[incl.map // g]])
    D = up(tw.ind_subgroup, range(g))
    F0 = up(tw.g0_preimage, range(g))
    N = up(tw.ind_subgroup, (0,))
    return TransferTower(F, M, mu, action1, D, F0, D, N, name=name)


def negative_tower():
    """``F = C2 wr_1 C2``, ``M`` the order-2 subgroup of ``Ind`` vanishing at 1, ``G1 = 1``.

    The quotient hypothesis fails for ``n = 1`` and the identity solution
    induces a trivial, hence non-proper, ``nu``.
    """
    C1, C2 = group("C1"), group("C2")
    tw = twisted_wreath(C2, C2, Subgroup.trivial(C2), GroupAction.trivial(C1, C2))
    F = tw.total
    f = tw.ind.encode_values([0, 1])
    m = int(tw.ind_embed.map[f])
    M = Subgroup(F, [0, m])
    D = tw.ind_subgroup
    mu = GroupHom.trivial(M.as_group()[0], C1)
    return TransferTower(F, M, mu, GroupAction.trivial(C1, C2), D, D, D, Subgroup.trivial(F),
                         name="C2 wr_1 C2 over <f>, f(1)=0")


def elementary_towers():
    """``F = C2^3``, ``M = C2 x C2 x 0``, ``mu`` the first coordinate, ``A = C2``."""
    C2 = group("C2")
    F = group("C2^3")
    M = Subgroup(F, [0, 2, 4, 6])  # (a, b, 0)
    Mg, incl = M.as_group()
    mu = GroupHom(Mg, C2, incl.map // 4)
    act = GroupAction.trivial(C2, C2)
    D = Subgroup(F, [0, 1, 2, 3])  # (0, b, c)
    e2 = Subgroup(F, [0, 2])
    t1 = TransferTower(F, M, mu, act, D, Subgroup.whole(F), D, e2, name="C2^3, F0 = F")
    t2 = TransferTower(F, M, mu, act, D, M, e2, e2, name="C2^3, F0 = M")
    return [t1, t2]


def towers():
    """Catalogue towers with the values of ``n`` they are exercised at."""
    C1, C2, C3 = group("C1"), group("C2"), group("C3")
    S3 = group("S3")
    out = []
    triv1 = Subgroup.trivial(C2)
    act_c1 = GroupAction.trivial(C1, C2)
    out.append(CatalogueTower("C2 wr_1 C2", wreath_tower(C2, C2, triv1, act_c1, 1, "C2 wr_1 C2"),
                              (1,), "positive"))
    out.append(CatalogueTower("C2^2 wr_1 C2", wreath_tower(C2, C2, triv1, act_c1, 2, "C2^2 wr_1 C2"),
                              (1, 2), "positive"))
    whole = Subgroup.whole(C2)
    inv = inversion_action(C2, C3)
    out.append(CatalogueTower("C3^2 wr_C2 C2", wreath_tower(C3, C2, whole, inv, 2, "C3^2 wr_C2 C2"),
                              (1, 2), "positive"))
    tr = _sub(S3, [_first_of_order(S3, 2)])
    act_tr = GroupAction.trivial(tr.as_group()[0], C2)
    out.append(CatalogueTower("C2 wr_<(12)> S3", wreath_tower(C2, S3, tr, act_tr, 1, "C2 wr_<(12)> S3"),
                              (1,), "positive"))
    out.append(CatalogueTower("(C2 wr_1 C2) x C2",
                              extended_wreath_tower(C2, C2, triv1, act_c1, "(C2 wr_1 C2) x C2"),
                              (1,), "positive"))
    out.append(CatalogueTower("(C3 wr_C2 C2) x C2",
                              extended_wreath_tower(C3, C2, whole, inv, "(C3 wr_C2 C2) x C2"),
                              (1,), "positive"))
    out.append(CatalogueTower("(C3 wr_C2 C2) x C3",
                              extended_wreath_tower(C3, C2, whole, inv, "(C3 wr_C2 C2) x C3", "C3"),
                              (1, 2), "positive"))
    for t in elementary_towers():
        out.append(CatalogueTower(t.name, t, (1, 2), "plain"))
    neg = negative_tower()
    out.append(CatalogueTower(neg.name, neg, (1,), "negative"))
    return out
