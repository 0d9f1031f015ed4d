"""Transfer of independent proper solutions from a wreath-product problem to a subgroup.

Given ``M <= F``, a split problem ``E1 = (mu: M -> G1, A ⋊ G1 -> G1)`` and a
tower of subgroups ``D, F0, L, N`` of ``F``, build the problem
``E = (F -> F/L, A ≀_{F0/L} F/L -> F/L)`` and push its solutions down to
``E1`` by ``nu = rho ∘ pi ∘ psi|_M``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .constructions import Semidirect, coordinates, product_action, semidirect_product
from .embedding import EmbeddingProblem, solutions_independent
from .errors import (
    FactorizationFailed,
    HypothesisFails,
    MixedParents,
    NotASolution,
    TowerInvalid,
    TransferFailure,
)
from .fiber import FiberProduct, combine_solutions
from .groups import (
    FiniteGroup,
    GroupAction,
    GroupHom,
    Subgroup,
    intersection,
    is_normal,
    normal_core,
    product_set,
    quotient,
)
from .homs import iter_homs
from .independence import is_independent
from .lattice import normal_subgroups
from .wreath import TwistedWreath, twisted_wreath, wreath_fiber_map


@dataclass(eq=False)
class TransferTower:
    F: FiniteGroup
    M: Subgroup
    mu: GroupHom  # M.as_group()[0] -> G1
    action1: GroupAction  # G1 acting on A
    D: Subgroup
    F0: Subgroup
    L: Subgroup
    N: Subgroup
    name: str = ""

    @property
    def G1(self):
        return self.mu.codomain

    @property
    def A(self):
        return self.action1.space

    @cached_property
    def mu_kernel(self) -> Subgroup:
        """``Ker mu`` as a subgroup of ``F``."""
        return self.M.lift(self.mu.kernel())


def validate_tower(t: TransferTower):
    """Check every tower condition; return ``(ok, violations)``."""
    for S in (t.M, t.D, t.F0, t.L, t.N):
        if not S.parent.same_as(t.F):
            raise MixedParents("tower subgroups must all live in F")
    v = []
    if not t.mu.domain.same_as(t.M.as_group()[0]):
        v.append("mu-domain: mu is not defined on M")
        return False, v
    if not t.mu.is_surjective():
        v.append("mu-surjective: mu does not map onto G1")
    if not t.action1.actor.same_as(t.G1):
        v.append("action: A is not acted on by G1")
    if not is_normal(t.D):
        v.append("D-normal: D is not normal in F")
    if not intersection(t.M, t.D).issubset(t.mu_kernel):
        v.append("M∩D≤Ker(mu): M ∩ D is not contained in Ker mu")
    if not t.M.issubset(t.F0):
        v.append("M≤F0: M is not contained in F0")
    md, _ = product_set(t.M, t.D)
    md_flags = np.zeros(t.F.order, dtype=bool)
    md_flags[list(md)] = True
    if not md_flags[list(t.F0.elements)].all():
        v.append("F0≤MD: F0 is not contained in MD")
    if not is_normal(t.L):
        v.append("L-normal: L is not normal in F")
    if not t.L.issubset(intersection(t.F0, t.D)):
        v.append("L≤F0∩D: L is not contained in F0 ∩ D")
    if not is_normal(t.N):
        v.append("N-normal: N is not normal in F")
    if not t.N.issubset(intersection(t.M, t.L)):
        v.append("N≤M∩L: N is not contained in M ∩ L")
    return not v, v


@dataclass
class PowerData:
    """Structures for ``n`` solutions at once: ``A^n ≀ G`` and friends."""

    n: int
    An: FiniteGroup
    action_n: GroupAction  # G0 on A^n, componentwise
    big: TwistedWreath
    fp: FiberProduct
    fiber_map: GroupHom  # fp.total -> big.total
    base1_n: Semidirect  # A^n ⋊ G1
    rho_n: GroupHom  # A^n ⋊ G0 -> A^n ⋊ G1


@dataclass(eq=False)
class InducedProblem:
    tower: TransferTower
    G: FiniteGroup
    phi: GroupHom
    G0: Subgroup
    G0grp: FiniteGroup
    phi1: GroupHom  # F0 -> G1
    phibar1: GroupHom  # G0 -> G1
    action0: GroupAction
    wreath: TwistedWreath
    base1: Semidirect  # A ⋊ G1
    rho: GroupHom  # A ⋊ G0 -> A ⋊ G1
    problem: EmbeddingProblem
    _power: dict = field(default_factory=dict, repr=False)

    @property
    def alpha1(self):
        return self.base1.projection

    def power(self, n: int) -> PowerData:
        if n not in self._power:
            t = self.tower
            An, action_n = product_action([self.action0] * n)
            big = twisted_wreath(An, self.G, self.G0, action_n)
            fp, fmap = wreath_fiber_map([self.wreath] * n, big)
            _, action1_n = product_action([t.action1] * n)
            base1_n = semidirect_product(action1_n.space, t.G1, action1_n)
            rho_n = _rho(big.base, base1_n, self.phibar1)
            self._power[n] = PowerData(n, An, action_n, big, fp, fmap, base1_n, rho_n)
        return self._power[n]


def _rho(base0: Semidirect, base1: Semidirect, phibar1: GroupHom) -> GroupHom:
    a, tau = np.divmod(np.arange(base0.group.order), base0.actor.order)
    images = a * base1.actor.order + phibar1.map[tau]
    return GroupHom(base0.group, base1.group, images)


def _extend_mu(t: TransferTower):
    """The map ``md -> mu(m)`` on ``MD`` (array over F, -1 outside MD)."""
    F, M, D = t.F, t.M, t.D
    X = F.mul[np.ix_(np.asarray(M.elements), np.asarray(D.elements))]
    vals = np.broadcast_to(t.mu.map[:, None], X.shape)
    ext = np.full(F.order, -1, dtype=np.int64)
    ext[X.ravel()] = vals.ravel()
    if not (ext[X] == vals).all():
        raise TowerInvalid("md -> mu(m) is not well defined", ["M∩D≤Ker(mu)"])
    return ext


def build_induced(t: TransferTower) -> InducedProblem:
    ok, violations = validate_tower(t)
    if not ok:
        raise TowerInvalid("invalid tower: " + "; ".join(violations), violations)
    F = t.F
    ext = _extend_mu(t)
    F0grp, _ = t.F0.as_group()
    phi1 = GroupHom(F0grp, t.G1, ext[list(t.F0.elements)])
    G, phi = quotient(F, t.L)
    G0 = phi.image_of(t.F0)
    G0grp = G0.as_group()[0]
    tau = G0.position[phi.map[list(t.F0.elements)]]
    bar = np.full(G0grp.order, -1, dtype=np.int64)
    bar[tau] = phi1.map
    if not (bar[tau] == phi1.map).all():
        raise FactorizationFailed("L is not contained in the kernel of the extended mu")
    phibar1 = GroupHom(G0grp, t.G1, bar)
    action0 = t.action1.pullback(phibar1)
    tw = twisted_wreath(t.A, G, G0, action0)
    base1 = semidirect_product(t.A, t.G1, t.action1)
    rho = _rho(tw.base, base1, phibar1)
    problem = EmbeddingProblem(phi, tw.alpha, tw.section)
    return InducedProblem(t, G, phi, G0, G0grp, phi1, phibar1, action0, tw, base1, rho, problem)


def _same_tower(ip, t):
    if t is not ip.tower:
        raise MixedParents("induced problem was built from a different tower")


def induce_nu(ip: InducedProblem, t: TransferTower, psi: GroupHom) -> GroupHom:
    """``nu = rho ∘ pi ∘ psi|_M``, a weak solution of ``(mu, A ⋊ G1 -> G1)``."""
    _same_tower(ip, t)
    if not ip.problem.is_solution(psi):
        raise NotASolution("psi is not a weak solution of the wreath problem")
    tw = ip.wreath
    images = psi.map[list(t.M.elements)]
    dom = tw.g0_preimage
    if not dom.flags[images].all():
        raise TransferFailure("psi(M) is not inside Ind ⋊ G0")
    nu = GroupHom(t.M.as_group()[0], ip.base1.group, ip.rho.map[tw.shapiro.map[dom.position[images]]])
    if not np.array_equal(ip.alpha1.map[nu.map], t.mu.map):
        raise TransferFailure("alpha1 ∘ nu differs from mu")
    return nu


@dataclass
class HypothesisResult:
    holds: bool
    n: int
    examined: int
    pruned: int
    witness: dict | None = None

    def __bool__(self):
        return self.holds


def quotient_problem_map(ip: InducedProblem):
    """``F/N`` and the induced map ``F/N -> G = F/L``."""
    t = ip.tower
    FN, pN = quotient(t.F, t.N)
    bar = np.full(FN.order, -1, dtype=np.int64)
    bar[pN.map] = ip.phi.map
    if not (bar[pN.map] == ip.phi.map).all():
        raise TowerInvalid("N is not contained in L", ["N≤M∩L"])
    return FN, GroupHom(FN, ip.G, bar)


def invariant_quotients(ip: InducedProblem, n: int):
    """Proper G0-invariant normal subgroups ``K`` of ``A^n`` with the induced actions.

    Yields ``(K, Abar, action_bar)`` in canonical order: smallest ``A^n/K``
    first, ties by the element list of ``K``.
    """
    pd = ip.power(n)
    An, act = pd.An, pd.action_n
    cands = []
    for K in normal_subgroups(An):
        if K.is_whole():
            continue
        idx = list(K.elements)
        if all(K.flags[act.table[g, idx]].all() for g in ip.G0grp.generators):
            cands.append(K)
    cands.sort(key=lambda K: (An.order // K.order, K.elements))
    for K in cands:
        Abar, q = quotient(An, K)
        reps = np.full(Abar.order, An.order, dtype=np.int64)
        np.minimum.at(reps, q.map, np.arange(An.order))
        table = q.map[act.table[:, reps]]
        yield K, Abar, GroupAction(ip.G0grp, Abar, table)


def check_hypothesis_b(t: TransferTower, ip: InducedProblem, n: int, *, prune=True) -> HypothesisResult:
    """True iff no nontrivial invariant quotient ``Abar`` of ``A^n`` makes
    ``(F/N -> G, Abar ≀_{G0} G -> G)`` properly solvable.

    With ``prune`` a quotient is skipped when ``|Abar ≀ G|`` does not divide
    ``|F/N|`` (no surjection can exist).
    """
    _same_tower(ip, t)
    if n < 1:
        raise ValueError("n must be positive")
    FN, phibar = quotient_problem_map(ip)
    examined = pruned = 0
    for K, Abar, act in invariant_quotients(ip, n):
        examined += 1
        order = Abar.order ** ip.wreath.ind.index * ip.G.order
        if prune and FN.order % order:
            pruned += 1
            continue
        tw = twisted_wreath(Abar, ip.G, ip.G0, act)
        for psi in iter_homs(FN, tw.total, tw.alpha, phibar):
            if psi.is_surjective():
                witness = {
                    "kernel": list(K.elements),
                    "quotient_order": Abar.order,
                    "wreath_order": tw.total.order,
                    "solution": psi.map.tolist(),
                }
                return HypothesisResult(False, n, examined, pruned, witness)
    return HypothesisResult(True, n, examined, pruned)


@dataclass
class TransferRecord:
    nus: list
    each_proper: list
    jointly_independent: bool
    milestone: bool  # pi'(psi(N)) = A^n
    product_compatible: bool  # nu = ∏ nu_i under A^n ⋊ G1

    @property
    def ok(self):
        return all(self.each_proper) and self.jointly_independent and self.milestone and self.product_compatible


def combined_into_power(ip: InducedProblem, psis) -> GroupHom:
    """``∏ psi_i`` viewed as a solution ``F -> A^n ≀_{G0} G``."""
    pd = ip.power(len(psis))
    combined = combine_solutions(pd.fp, list(psis), ip.phi)
    return pd.fiber_map.compose(combined)


def transfer_check(
    t: TransferTower, ip: InducedProblem, psis, hypothesis: HypothesisResult | None = None
) -> TransferRecord:
    _same_tower(ip, t)
    psis = list(psis)
    n = len(psis)
    if n < 1:
        raise ValueError("need at least one solution")
    for psi in psis:
        if not ip.problem.is_solution(psi):
            raise HypothesisFails("a family member is not a solution")
        if not psi.is_surjective():
            raise HypothesisFails("a family member is not proper")
    if not solutions_independent(ip.problem, psis):
        raise HypothesisFails("the family is not independent")
    if hypothesis is None:
        hypothesis = check_hypothesis_b(t, ip, n)
    if hypothesis.n != n or not hypothesis.holds:
        raise HypothesisFails(f"quotient hypothesis fails for n={n}")
    nus = [induce_nu(ip, t, psi) for psi in psis]
    each_proper = [nu.is_surjective() for nu in nus]
    Kmu = t.mu.kernel()
    independent = is_independent(Kmu, [nu.kernel() for nu in nus]).independent

    pd = ip.power(n)
    big = pd.big
    psi_big = combined_into_power(ip, psis)
    n_images = psi_big.map[list(t.N.elements)]
    f_part, s_part = np.divmod(n_images, ip.G.order)
    milestone = bool((s_part == 0).all()) and np.unique(big.ind.values[f_part, 0]).size == pd.An.order

    m_images = psi_big.map[list(t.M.elements)]
    dom = big.g0_preimage
    nu_big = pd.rho_n.map[big.shapiro.map[dom.position[m_images]]]
    g1 = t.G1.order
    a_big, s_big = np.divmod(nu_big, g1)
    coords = coordinates(pd.An)[a_big]
    compatible = all(
        np.array_equal(nu.map, coords[:, i] * g1 + s_big) for i, nu in enumerate(nus)
    )
    record = TransferRecord(nus, each_proper, independent, milestone, compatible)
    if not record.ok:
        raise TransferFailure("transferred family violates the expected conclusion", record)
    return record


def non_proper_witness(ip: InducedProblem, solutions):
    """First proper solution whose induced ``nu`` is not proper, or None."""
    for psi in solutions:
        if psi.is_surjective() and not induce_nu(ip, ip.tower, psi).is_surjective():
            return psi
    return None


def derive_tower(F, M, mu, action1, name="auto") -> TransferTower:
    """Default tower when only ``(F, M, mu)`` are given.

    ``D`` is the largest normal subgroup of ``F`` with ``M ∩ D <= Ker mu``
    (ties: smallest element list), ``F0 = MD``, ``L = F0 ∩ D`` and
    ``N = M ∩ L``, each replaced by its normal core when not normal.
    """
    kmu = M.lift(mu.kernel())
    best = None
    for D in normal_subgroups(F):
        if intersection(M, D).issubset(kmu):
            if best is None or D.order > best.order:
                best = D
    D = best if best is not None else normal_core(kmu)
    md, _ = product_set(M, D)
    F0 = Subgroup(F, md)
    L = intersection(F0, D)
    if not is_normal(L):
        L = normal_core(L)
    N = intersection(M, L)
    if not is_normal(N):
        N = normal_core(N)
    return TransferTower(F, M, mu, action1, D, F0, L, N, name=name)
