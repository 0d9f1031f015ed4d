"""Verification suites over the built-in catalogue.

Each suite returns a list of ``Check`` records in catalogue order.  Checks
aggregate many instances; a failing check carries the first counterexample.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import catalogue as cat
from .config import limits
from .embedding import EmbeddingProblem, shapiro_restrict, solutions_independent, solve
from .errors import (
    DomainMismatch,
    HypothesisFails,
    NotASolution,
    TransferFailure,
    UnknownSuite,
)
from .fiber import check_fiber_independence, fiber_product, power_fiber, verify_associativity
from .groups import GroupAction, Subgroup, intersection, product_set
from .homs import find_isomorphism, iter_homs
from .independence import is_independent, is_independent_transitive
from .lattice import all_subgroups, normal_subgroups
from .transfer import (
    build_induced,
    check_hypothesis_b,
    induce_nu,
    non_proper_witness,
    transfer_check,
    validate_tower,
)
from .wreath import shapiro_fiber, wreath_fiber_iso

SUITES = ("prop22", "lemma24", "assoc", "wreath", "shapiro", "thm-main")


@dataclass
class Check:
    name: str
    anchor: str
    passed: bool
    witness: dict = field(default_factory=dict)

    @property
    def status(self):
        return "pass" if self.passed else "fail"

    def as_dict(self):
        return {"name": self.name, "anchor": self.anchor, "status": self.status,
                "witness": self.witness}


@dataclass
class Extras:
    """User-supplied material merged into the catalogue runs."""

    groups: list = field(default_factory=list)  # (name, FiniteGroup)
    problems: list = field(default_factory=list)  # (name, EmbeddingProblem)
    towers: list = field(default_factory=list)  # (name, TransferTower)

    @classmethod
    def from_specs(cls, specs):
        ex = cls()
        for s in specs:
            ex.groups += [(f"{s.path}:{n}", G) for n, G in s.groups.items()]
            ex.problems += [(f"{s.path}:{n}", p) for n, p in s.problems.items()]
            ex.towers += [(f"{s.path}:{n}", t) for n, t in s.towers.items()]
        return ex


class _Tally:
    """Counts instances and keeps the first failure."""

    def __init__(self):
        self.count = 0
        self.failures = 0
        self.first = None

    def add(self, ok, witness=None):
        self.count += 1
        if not ok:
            self.failures += 1
            if self.first is None:
                self.first = witness() if callable(witness) else witness

    def check(self, name, anchor, **info):
        w = {"instances": self.count, "failures": self.failures, **info}
        if self.first is not None:
            w["counterexample"] = self.first
        return Check(name, anchor, self.failures == 0, w)


def _els(S):
    return list(S.elements)


# --------------------------------------------------------------------------
# prop22: independence calculus and the two independence oracles

PROP22_RANDOM_GROUPS = cat.GROUP_NAMES + cat.LARGE_GROUP_NAMES


def _indep(amb, fam):
    return is_independent(amb, fam).independent


def _clause_a(F, fam):
    r = is_independent(F, fam)
    return r.intersection_index <= r.index_product


def _clause_b(F, M1, N1, M2):
    lhs = _indep(F, [M1, M2])
    rhs = _indep(F, [N1, M2]) and _indep(N1, [M1, intersection(N1, M2)])
    return lhs == rhs


def _clause_c(F, fam):
    lhs = _indep(F, fam)
    rhs = _indep(F, fam[:-1]) and _indep(F, [intersection(*fam[:-1]), fam[-1]])
    return lhs == rhs


def _clause_d(F, ms, ns):
    return (not _indep(F, ms)) or _indep(F, ns)


def _clause_e(F, M1, M2):
    prod, _ = product_set(M1, M2)
    return _indep(F, [M1, M2]) == (len(prod) == F.order)


def _oracle(F, fam):
    return _indep(F, fam) == is_independent_transitive(F, fam)


def _supergroups(subs, M):
    return [N for N in subs if M.issubset(N)]


def _random_checks(seed, samples, names):
    pool = [(n, cat.group(n)) for n in names if cat.group(n).order <= 48]
    tallies = {k: _Tally() for k in ("a", "b", "c", "d", "e", "oracle")}
    nontrivial = {"d": 0}
    for ci, clause in enumerate(("a", "b", "c", "d", "e", "oracle")):
        rng = np.random.default_rng([seed, ci])
        for _ in range(samples):
            gname, F = pool[int(rng.integers(len(pool)))]
            subs = all_subgroups(F)

            def pick(lst):
                return lst[int(rng.integers(len(lst)))]

            if clause == "a":
                fam = [pick(subs) for _ in range(int(rng.integers(1, 5)))]
                tallies["a"].add(_clause_a(F, fam), lambda: _fam_witness(gname, fam))
            elif clause == "b":
                N1 = pick(subs)
                M1 = pick([S for S in subs if S.issubset(N1)])
                M2 = pick(subs)
                tallies["b"].add(_clause_b(F, M1, N1, M2), lambda: _fam_witness(gname, [M1, N1, M2]))
            elif clause == "c":
                fam = [pick(subs) for _ in range(int(rng.integers(2, 5)))]
                tallies["c"].add(_clause_c(F, fam), lambda: _fam_witness(gname, fam))
            elif clause == "d":
                k = int(rng.integers(2, 4))
                ms = [pick(subs) for _ in range(k)]
                ns = [pick(_supergroups(subs, M)) for M in ms]
                nontrivial["d"] += _indep(F, ms)
                tallies["d"].add(_clause_d(F, ms, ns), lambda: _fam_witness(gname, ms + ns))
            elif clause == "e":
                M1 = pick(normal_subgroups(F))
                M2 = pick(subs)
                tallies["e"].add(_clause_e(F, M1, M2), lambda: _fam_witness(gname, [M1, M2]))
            else:
                fam = [pick(subs) for _ in range(int(rng.integers(1, 5)))]
                tallies["oracle"].add(_oracle(F, fam), lambda: _fam_witness(gname, fam))
    return tallies, nontrivial


def _fam_witness(gname, fam):
    return {"group": gname, "subgroups": [_els(S) for S in fam]}


def _exhaustive_checks(names, max_order=16):
    tallies = {k: _Tally() for k in ("a", "b", "c", "d", "e", "oracle")}
    for gname, F in cat.groups(max_order, names):
        subs = all_subgroups(F)
        sup = {S.mask: _supergroups(subs, S) for S in subs}
        for M1, M2 in itertools.product(subs, repeat=2):
            pair = [M1, M2]
            tallies["a"].add(_clause_a(F, pair), lambda: _fam_witness(gname, pair))
            tallies["c"].add(_clause_c(F, pair), lambda: _fam_witness(gname, pair))
            tallies["oracle"].add(_oracle(F, pair), lambda: _fam_witness(gname, pair))
            if M1.is_normal():
                tallies["e"].add(_clause_e(F, M1, M2), lambda: _fam_witness(gname, pair))
            for N1 in sup[M1.mask]:
                tallies["b"].add(_clause_b(F, M1, N1, M2), lambda: _fam_witness(gname, [M1, N1, M2]))
            if _indep(F, pair):
                for N1 in sup[M1.mask]:
                    tallies["d"].add(_clause_d(F, pair, [N1, M2]),
                                     lambda: _fam_witness(gname, [M1, M2, N1]))
    return tallies


def suite_prop22(seed=0, extras=None, samples=1000):
    extras = extras or Extras()
    names = PROP22_RANDOM_GROUPS
    rand, nontriv = _random_checks(seed, samples, names)
    exh = _exhaustive_checks(cat.GROUP_NAMES)
    for gname, F in extras.groups:
        if F.order <= limits.order_cap:
            _extra_group_checks(gname, F, exh)
    anchors = {
        "a": "index-inequality",
        "b": "independence-tower",
        "c": "independence-induction",
        "d": "independence-upward",
        "e": "normal-factor-product",
        "oracle": "transitive-action-oracle",
    }
    out = []
    for k in ("a", "b", "c", "d", "e", "oracle"):
        info = {"seed": seed}
        if k == "d":
            info["independent_samples"] = nontriv["d"]
        out.append(rand[k].check(f"prop22.{k}.random", anchors[k], **info))
        out.append(exh[k].check(f"prop22.{k}.exhaustive", anchors[k]))
    return out


def _extra_group_checks(gname, F, tallies):
    subs = all_subgroups(F)
    for M1, M2 in itertools.product(subs, repeat=2):
        pair = [M1, M2]
        tallies["a"].add(_clause_a(F, pair), lambda: _fam_witness(gname, pair))
        tallies["oracle"].add(_oracle(F, pair), lambda: _fam_witness(gname, pair))
        if M1.is_normal():
            tallies["e"].add(_clause_e(F, M1, M2), lambda: _fam_witness(gname, pair))


# --------------------------------------------------------------------------
# lemma24: combined solutions versus independence, fiber order formula

def _distinct_per_row(codes):
    s = np.sort(codes, axis=1)
    return 1 + (np.diff(s, axis=1) != 0).sum(axis=1)


def lemma24_batch(ep: EmbeddingProblem, weak, max_size=3, chunk=200_000):
    """Compare both sides for every subset of at most ``max_size`` weak solutions.

    Returns ``(subsets_checked, first_mismatch_or_None, agreeing_true_count)``.
    The left side is surjectivity of the combined map, measured by counting
    distinct image tuples against ``|H|^n / |G|^(n-1)``; the right side is
    properness plus ``Ker phi``-independence of the kernels.
    """
    s = len(weak)
    if s == 0:
        return 0, None, 0
    F, H, G = ep.F, ep.H, ep.G
    P = np.stack([psi.map for psi in weak]).astype(np.int64)
    KF = P == 0
    ker_sizes = KF.sum(axis=1)
    proper = _distinct_per_row(P) == H.order
    k_phi = F.order // G.order
    checked = true_count = 0
    for n in range(1, min(max_size, s) + 1):
        target = H.order ** n // G.order ** (n - 1)
        combos = itertools.combinations(range(s), n)
        while True:
            block = np.fromiter(itertools.chain.from_iterable(itertools.islice(combos, chunk)),
                                dtype=np.int64)
            if block.size == 0:
                break
            idx = block.reshape(-1, n)
            codes = np.zeros((len(idx), F.order), dtype=np.int64)
            inter = np.ones((len(idx), F.order), dtype=bool)
            prod = np.ones(len(idx), dtype=np.int64)
            all_proper = np.ones(len(idx), dtype=bool)
            for j in range(n):
                codes = codes * H.order + P[idx[:, j]]
                inter &= KF[idx[:, j]]
                prod *= k_phi // ker_sizes[idx[:, j]]
                all_proper &= proper[idx[:, j]]
            surj = _distinct_per_row(codes) == target
            indep = all_proper & (k_phi // inter.sum(axis=1) == prod)
            checked += len(idx)
            true_count += int(surj.sum())
            bad = np.nonzero(surj != indep)[0]
            if bad.size:
                i = bad[0]
                return checked, {"subset": idx[i].tolist(), "combined_surjective": bool(surj[i]),
                                 "proper_and_independent": bool(indep[i])}, true_count
    return checked, None, true_count


def _sample_real_path(ep, weak, per_size=2, max_total=256):
    """Run a few subsets through the fiber-product construction itself."""
    bad = None
    count = 0
    for n in (1, 2, 3):
        if len(weak) < n or ep.H.order ** n // ep.G.order ** (n - 1) > max_total:
            continue
        fp = power_fiber(ep.alpha, n)
        for subset in itertools.islice(itertools.combinations(range(len(weak)), n), per_size):
            a, b = check_fiber_independence(fp, [weak[i] for i in subset], ep.phi)
            count += 1
            if a != b and bad is None:
                bad = {"subset": list(subset), "combined_surjective": a, "proper_and_independent": b}
    return count, bad


def suite_lemma24(seed=0, extras=None):
    extras = extras or Extras()
    eps = [(e.name, e.problem) for e in cat.embedding_problems()] + list(extras.problems)
    t_batch, t_real = _Tally(), _Tally()
    subsets = positives = 0
    for name, ep in eps:
        weak = list(iter_homs(ep.F, ep.H, ep.alpha, ep.phi))
        n, bad, tc = lemma24_batch(ep, weak)
        subsets += n
        positives += tc
        t_batch.add(bad is None, lambda: {"problem": name, **bad})
        m, bad2 = _sample_real_path(ep, weak)
        for _ in range(m):
            t_real.add(True)
        if bad2 is not None:
            t_real.add(False, {"problem": name, **bad2})
    out = [
        t_batch.check("lemma24.equivalence", "combined-solution-surjective-iff-independent",
                      subsets=subsets, surjective_subsets=positives),
        t_real.check("lemma24.fiber-path", "combined-solution-surjective-iff-independent"),
    ]
    out += fiber_order_checks()
    return out


def fiber_factor_lists(max_n=3, max_order=1024):
    """Tuples of catalogue surjections onto a common base, with repetition, ``n <= max_n``."""
    out = []
    for base, maps in cat.fiber_instances():
        for n in range(1, max_n + 1):
            for combo in itertools.combinations_with_replacement(range(len(maps)), n):
                alphas = [maps[i][1] for i in combo]
                order = math.prod(a.domain.order for a in alphas) // base.order ** (n - 1)
                if order > max_order:
                    continue
                out.append(([maps[i][0] for i in combo], alphas, order))
    return out


def fiber_order_checks():
    t_order, t_struct = _Tally(), _Tally()
    for names, alphas, expected in fiber_factor_lists():
        fp = fiber_product(alphas)
        t_order.add(fp.total.order == expected,
                    lambda: {"factors": names, "order": fp.total.order, "expected": expected})
        ok = all(p.is_surjective() for p in fp.projections) and all(
            np.array_equal(a.map[p.map], fp.canonical.map) for a, p in zip(alphas, fp.projections)
        ) and fp.canonical.is_surjective()
        if ok and fp.section is not None:
            ok = np.array_equal(fp.canonical.map[fp.section.map], np.arange(fp.base.order))
        t_struct.add(ok, lambda: {"factors": names})
    return [
        t_order.check("lemma24.fiber-order", "fiber-order-formula"),
        t_struct.check("lemma24.fiber-structure", "fiber-product-projections"),
    ]


# --------------------------------------------------------------------------
# assoc: associativity of fiber products

def assoc_instances(max_order=512, max_beta_domain=8):
    """``(factors -> G0, beta: G -> G0)`` drawn from the fiber catalogue."""
    out = []
    for base, all_maps in cat.fiber_instances():
        # one quotient map per source group keeps the sweep quadratic in the group list
        seen = set()
        maps = [m for m in all_maps if not (m[0] in seen or seen.add(m[0]))]
        betas = [(n, b) for n, b in maps if b.domain.order <= max_beta_domain]
        for n in (1, 2):
            for combo in itertools.combinations_with_replacement(range(len(maps)), n):
                alphas = [maps[i][1] for i in combo]
                inner = math.prod(a.domain.order for a in alphas) // base.order ** (n - 1)
                for bname, beta in betas:
                    if inner * beta.domain.order // base.order > max_order:
                        continue
                    out.append(([maps[i][0] for i in combo], bname, alphas, beta))
    return out


def suite_assoc(seed=0, extras=None):
    t = _Tally()
    for names, bname, alphas, beta in assoc_instances():
        ok, _ = verify_associativity(alphas, beta)
        t.add(ok, {"factors": names, "beta": bname})
    return [t.check("assoc.natural-iso", "fiber-associativity")]


# --------------------------------------------------------------------------
# wreath: order formula, induced module laws, Shapiro map, large subgroup,
# fiber products of wreath projections

def wreath_structure(tw):
    """List of ``(property, ok)`` for one twisted wreath product."""
    ind, G = tw.ind, tw.G
    res = []
    res.append(("order", tw.total.order == tw.A.order ** ind.index * G.order))
    res.append(("module-order", ind.order == tw.A.order ** (G.order // tw.G0.order)))
    res.append(("transversal-identity", ind.transversal[0] == 0))
    try:
        ind.verify_laws()
        res.append(("module-laws", True))
    except Exception:
        res.append(("module-laws", False))
    res.append(("section", np.array_equal(tw.alpha.map[tw.section.map], np.arange(G.order))))
    res.append(("kernel-is-ind", tw.alpha.kernel() == tw.ind_subgroup))
    pi = tw.shapiro
    res.append(("shapiro-surjective", pi.is_surjective()))
    pi0 = ind.values[:, 0]
    ind_in_dom = tw.g0_preimage.position[tw.ind_embed.map]
    res.append(("shapiro-on-ind", np.array_equal(pi.map[ind_in_dom], pi0 * tw.ind.G0grp.order)
                and np.unique(pi0).size == tw.A.order))
    B, idx, contains = shapiro_fiber(tw)
    res.append(("large-subgroup-index", idx == (G.order // tw.G0.order) * tw.A.order))
    res.append(("large-subgroup-misses-ind", contains == (tw.A.order == 1)))
    return res, {"index": idx, "total": tw.total.order}


def wreath_fiber_pairs():
    """Pairs of catalogue wreath instances sharing ``G``, ``G0`` and the acting group."""
    inst = cat.wreath_instances()
    out = []
    for w in inst:
        out.append((w.name, [w.A], [w.action], w.G, w.G0))
        out.append((w.name + " (n=2)", [w.A, w.A], [w.action, w.action], w.G, w.G0))
    C2, C3 = cat.group("C2"), cat.group("C3")
    C1 = cat.group("C1")
    triv2, triv3 = GroupAction.trivial(C1, C2), GroupAction.trivial(C1, C3)
    out.append(("C2 and C3 over C2, G0 = 1", [C2, C3], [triv2, triv3], C2, Subgroup.trivial(C2)))
    return out


def suite_wreath(seed=0, extras=None):
    out = []
    for w in cat.wreath_instances():
        tw = w.build()
        res, info = wreath_structure(tw)
        failed = [k for k, ok in res if not ok]
        out.append(Check(f"wreath.structure[{w.name}]", "twisted-wreath-structure", not failed,
                         {"failed": failed, **info}))
        out.append(Check(f"wreath.large-subgroup[{w.name}]", "large-subgroup-index",
                         dict(res)["large-subgroup-index"] and dict(res)["large-subgroup-misses-ind"],
                         {"index": info["index"], "expected": (w.G.order // w.G0.order) * w.A.order}))
    skipped = []
    t = _Tally()
    for name, As, acts, G, G0 in wreath_fiber_pairs():
        k = G.order // G0.order
        if math.prod(a.order for a in As) ** k * G.order > limits.order_cap:
            skipped.append(name)
            continue
        ok, _ = wreath_fiber_iso(As, G, G0, acts)
        t.add(ok, {"instance": name})
    out.append(t.check("wreath.fiber-iso", "wreath-fiber-product-iso", skipped_over_cap=skipped))
    return out


# --------------------------------------------------------------------------
# shapiro: restriction of wreath solutions to subgroups over G0

SHAPIRO_F_GROUPS = ("C2", "C4", "C2^2", "S3", "C6", "D4", "C4xC2", "C2^3", "Q8", "D6", "Dic3",
                    "C6xC2", "A4", "S4")


def shapiro_problems(max_weak=400):
    """Wreath problems ``(F -> G, A wr_{G0} G -> G)`` over the wreath catalogue."""
    out = []
    for w in cat.wreath_instances():
        tw = w.build()
        G = w.G
        out.append((f"{w.name}; F = wreath", tw, EmbeddingProblem(tw.alpha, tw.alpha, tw.section)))
        for fname in SHAPIRO_F_GROUPS:
            for ki, (K, Q, proj) in enumerate(cat.quotients_of(fname)):
                if Q.order != G.order:
                    continue
                iso = find_isomorphism(Q, G)
                if iso is None:
                    continue
                phi = iso.compose(proj)
                out.append((f"{w.name}; F = {fname}/K{ki}", tw, EmbeddingProblem(phi, tw.alpha, tw.section)))
    return out


def suite_shapiro(seed=0, extras=None):
    t = _Tally()
    pairs = 0
    for name, tw, ep in shapiro_problems():
        Ms = [M for M in all_subgroups(ep.F) if ep.phi.image_of(M) == tw.G0]
        for psi in iter_homs(ep.F, ep.H, ep.alpha, ep.phi):
            for M in Ms:
                pairs += 1
                try:
                    shapiro_restrict(tw, ep, M, psi)
                    ok = True
                except (NotASolution, DomainMismatch) as e:
                    ok = False
                    err = str(e)
                t.add(ok, lambda: {"problem": name, "psi": psi.map.tolist(), "M": _els(M), "error": err})
    return [t.check("shapiro.restriction", "restricted-solution-lifts", pairs=pairs)]


# --------------------------------------------------------------------------
# thm-main: transfer of solutions along towers

def tower_report(t, n_values, kind="plain"):
    """Run every transfer check on one tower; returns a list of Checks."""
    name = t.name
    out = []
    ok, violations = validate_tower(t)
    out.append(Check(f"thm-main.tower[{name}]", "tower-conditions", ok, {"violations": violations}))
    if not ok:
        return out
    ip = build_induced(t)
    tw = ip.wreath
    expected = t.A.order ** tw.ind.index * ip.G.order
    out.append(Check(f"thm-main.induced[{name}]", "induced-problem", tw.total.order == expected,
                     {"G": ip.G.order, "G0": ip.G0.order, "wreath": tw.total.order,
                      "expected": expected}))
    ss = solve(ip.problem)
    bad = None
    for psi in ss.weak:
        try:
            induce_nu(ip, t, psi)
        except TransferFailure as e:
            bad = {"psi": psi.map.tolist(), "error": str(e)}
            break
    out.append(Check(f"thm-main.nu-lifts-mu[{name}]", "nu-lifts-mu", bad is None,
                     {"weak_solutions": len(ss.weak), **({"counterexample": bad} if bad else {})}))
    proper = ss.proper_solutions()
    for n in n_values:
        hyp = check_hypothesis_b(t, ip, n)
        hyp_info = {"n": n, "holds": hyp.holds, "quotients": hyp.examined, "pruned": hyp.pruned}
        if hyp.witness is not None:
            hyp_info["witness"] = {k: v for k, v in hyp.witness.items() if k != "solution"}
        if hyp.holds:
            families = 0
            failure = None
            for fam in itertools.combinations(proper, n):
                if not solutions_independent(ip.problem, fam):
                    continue
                families += 1
                try:
                    transfer_check(t, ip, fam, hyp)
                except (TransferFailure, HypothesisFails) as e:
                    rec = getattr(e, "record", None)
                    failure = {"family": [p.map.tolist() for p in fam], "error": str(e)}
                    if rec is not None:
                        failure.update(each_proper=rec.each_proper,
                                       jointly_independent=rec.jointly_independent,
                                       milestone=rec.milestone,
                                       product_compatible=rec.product_compatible)
                    break
            w = {**hyp_info, "families": families}
            if failure:
                w["counterexample"] = failure
            out.append(Check(f"thm-main.transfer[{name}, n={n}]", "independent-transfer",
                             failure is None, w))
        else:
            witness_psi = non_proper_witness(ip, proper)
            w = {**hyp_info, "non_proper_nu": witness_psi is not None}
            if witness_psi is not None:
                w["psi"] = witness_psi.map.tolist()
            passed = witness_psi is not None if kind == "negative" else True
            out.append(Check(f"thm-main.hypothesis-fails[{name}, n={n}]", "quotient-hypothesis",
                             passed, w))
    return out


def suite_thm_main(seed=0, extras=None):
    extras = extras or Extras()
    out = []
    positive_towers = set()
    negatives = 0
    entries = [(ct.tower, ct.n_values, ct.kind) for ct in cat.towers()]
    entries += [(t, (1,), "plain") for _, t in extras.towers]
    for t, ns, kind in entries:
        checks = tower_report(t, ns, kind)
        out += checks
        for c in checks:
            if c.anchor == "independent-transfer" and c.passed and c.witness["families"] > 0:
                positive_towers.add(t.name)
            if (kind == "negative" and c.anchor == "quotient-hypothesis" and c.passed
                    and c.witness["non_proper_nu"]):
                negatives += 1
    out.append(Check("thm-main.coverage", "independent-transfer",
                     len(positive_towers) >= 3 and negatives >= 1,
                     {"towers_with_transfers": sorted(positive_towers), "negative_towers": negatives}))
    return out


_RUNNERS = {
    "prop22": suite_prop22,
    "lemma24": suite_lemma24,
    "assoc": suite_assoc,
    "wreath": suite_wreath,
    "shapiro": suite_shapiro,
    "thm-main": suite_thm_main,
}


def run_suite(name, seed=0, extras=None):
    if name == "all":
        out = []
        for s in SUITES:
            out += _RUNNERS[s](seed=seed, extras=extras)
        return out
    if name not in _RUNNERS:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    return _RUNNERS[name](seed=seed, extras=extras)
