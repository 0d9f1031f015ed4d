"""Command line front end: ``wreathlab verify|solve|transfer|independence``.

Exit codes: 0 all checks pass, 1 some check failed, 2 bad input, 3 a cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

import numpy as np

from .config import limits, override
from .embedding import count_summary, max_independent_family, solve
from .errors import (
    NotSurjective,
    OrderCapExceeded,
    SearchCapExceeded,
    TowerInvalid,
    TransferFailure,
    WreathlabError,
)
from .independence import is_independent, is_independent_transitive
from .specfile import parse_file
from .suites import SUITES, Check, Extras, run_suite
from .transfer import (
    build_induced,
    check_hypothesis_b,
    non_proper_witness,
    transfer_check,
    validate_tower,
)

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    inputs: list
    order_cap: int
    search_budget: int
    seed: int
    out: str | None
    fmt: str
    timing: bool
    suite: str | None = None
    n: int | None = None

    def echo(self):
        d = {"inputs": list(self.inputs), "order_cap": self.order_cap,
             "search_budget": self.search_budget, "seed": self.seed, "format": self.fmt}
        if self.suite is not None:
            d["suite"] = self.suite
        if self.n is not None:
            d["n"] = self.n
        return d


def _jsonable(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"not serializable: {type(x).__name__}")


def build_report(cfg: RunConfig, checks, error=None, elapsed=None):
    rows = [c.as_dict() if isinstance(c, Check) else c for c in checks]
    counts = {s: sum(1 for r in rows if r["status"] == s) for s in ("pass", "fail", "skip")}
    summary = {"total": len(rows), "passed": counts["pass"], "failed": counts["fail"],
               "skipped": counts["skip"]}
    if error is not None:
        summary["status"] = "error"
    else:
        summary["status"] = "fail" if counts["fail"] else "pass"
    report = {"schema": SCHEMA, "command": cfg.command, "config": cfg.echo(), "checks": rows,
              "summary": summary}
    if error is not None:
        report["error"] = error
    if cfg.timing and elapsed is not None:
        report["timing"] = {"seconds": round(elapsed, 3)}
    return report


def render(report, fmt):
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, default=_jsonable) + "\n"
    lines = [f"wreathlab {report['command']}"]
    for r in report["checks"]:
        w = json.dumps(r["witness"], sort_keys=True, default=_jsonable)
        if len(w) > 200:
            w = w[:197] + "..."
        lines.append(f"{r['status'].upper():4} {r['name']} [{r['anchor']}] {w}")
    if "error" in report:
        lines.append(f"ERROR {report['error']['type']}: {report['error']['message']}")
    s = report["summary"]
    lines.append(f"{s['status']}: {s['passed']} passed, {s['failed']} failed, "
                 f"{s['skipped']} skipped of {s['total']}")
    if "timing" in report:
        lines.append(f"time: {report['timing']['seconds']} s")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# commands

def cmd_verify(cfg: RunConfig):
    specs = [parse_file(p) for p in cfg.inputs]
    return run_suite(cfg.suite, seed=cfg.seed, extras=Extras.from_specs(specs))


def _matrix(ss):
    return [[bool(v) for v in row] for row in ss.independence_matrix]


def cmd_solve(cfg: RunConfig):
    checks = []
    for path in cfg.inputs:
        spec = parse_file(path)
        if not spec.problems:
            raise WreathlabError(f"{path}: no 'problem' definition")
        for name, ep in spec.problems.items():
            ss = solve(ep, budget=cfg.search_budget)
            fam = max_independent_family(ss, budget=cfg.search_budget)
            summ = count_summary(ss)
            lifts = all(ep.is_solution(psi) for psi in ss.weak)
            flags = all((i in ss.proper) == psi.is_surjective() for i, psi in enumerate(ss.weak))
            m = _matrix(ss)
            symmetric = all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(len(m)))
            checks.append(Check(
                f"solve[{name}]", "weak-and-proper-solutions", lifts and flags and symmetric,
                {"weak": summ.weak, "proper": summ.proper, "max_independent": summ.max_independent,
                 "family": list(fam), "proper_indices": list(ss.proper),
                 "independence_matrix": m, "split": ep.is_split, "trivial": ep.is_trivial},
            ))
    return checks


def _transfer_one(name, t, n):
    checks = []
    ok, violations = validate_tower(t)
    if not ok:
        raise TowerInvalid(f"tower {name}: " + "; ".join(violations), violations)
    checks.append(Check(f"transfer.tower[{name}]", "tower-conditions", True,
                        {"D": t.D.order, "F0": t.F0.order, "L": t.L.order, "N": t.N.order,
                         "M": t.M.order}))
    ip = build_induced(t)
    tw = ip.wreath
    expected = t.A.order ** tw.ind.index * ip.G.order
    checks.append(Check(f"transfer.induced[{name}]", "induced-problem",
                        tw.total.order == expected,
                        {"F": t.F.order, "G": ip.G.order, "G0": ip.G0.order,
                         "wreath": tw.total.order, "expected": expected}))
    ss = solve(ip.problem)
    fam = max_independent_family(ss)
    m = min(n, len(fam))
    hyp = check_hypothesis_b(t, ip, n)
    hw = {"n": n, "holds": hyp.holds, "quotients": hyp.examined, "pruned": hyp.pruned}
    if hyp.witness is not None:
        hw["witness"] = hyp.witness
    checks.append(Check(f"transfer.hypothesis[{name}, n={n}]", "quotient-hypothesis", True, hw))
    base = {"n": n, "weak": len(ss.weak), "proper": len(ss.proper), "max_independent": len(fam)}
    if m == 0:
        checks.append(_skip(f"transfer.check[{name}]", "independent-transfer",
                            {**base, "reason": "no proper solution"}))
        return checks
    if m != n:
        hyp = check_hypothesis_b(t, ip, m)
    if not hyp.holds:
        psi = non_proper_witness(ip, ss.proper_solutions())
        w = {**base, "size": m, "reason": f"quotient hypothesis fails for n={m}",
             "non_proper_nu": psi is not None}
        if psi is not None:
            w["psi"] = psi.map.tolist()
        checks.append(_skip(f"transfer.check[{name}]", "independent-transfer", w))
        return checks
    psis = [ss.weak[i] for i in fam[:m]]
    try:
        rec = transfer_check(t, ip, psis, hyp)
    except TransferFailure as e:
        rec = e.record
    checks.append(Check(f"transfer.check[{name}]", "independent-transfer", rec.ok, {
        **base, "size": m, "family": list(fam[:m]),
        "nus": [nu.map.tolist() for nu in rec.nus], "each_proper": rec.each_proper,
        "jointly_independent": rec.jointly_independent, "milestone": rec.milestone,
        "product_compatible": rec.product_compatible,
    }))
    return checks


def _skip(name, anchor, witness):
    d = Check(name, anchor, True, witness).as_dict()
    d["status"] = "skip"
    return d


def cmd_transfer(cfg: RunConfig):
    checks = []
    for path in cfg.inputs:
        spec = parse_file(path)
        if not spec.towers:
            raise WreathlabError(f"{path}: no 'tower' definition")
        for name, t in spec.towers.items():
            checks += _transfer_one(name, t, cfg.n)
    return checks


def cmd_independence(cfg: RunConfig):
    checks = []
    for path in cfg.inputs:
        spec = parse_file(path)
        if not spec.families:
            raise WreathlabError(f"{path}: no 'family' definition")
        for name, fam in spec.families.items():
            r = is_independent(fam.ambient, fam.members)
            trans = is_independent_transitive(fam.ambient, fam.members)
            checks.append(Check(f"independence[{name}]", "independence-definition",
                                trans == r.independent,
                                {"independent": r.independent,
                                 "intersection_index": r.intersection_index,
                                 "index_product": r.index_product, "transitive": trans}))
    return checks


COMMANDS = {"verify": cmd_verify, "solve": cmd_solve, "transfer": cmd_transfer,
            "independence": cmd_independence}


def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=limits.order_cap, help="order cap per group")
    common.add_argument("--budget", type=int, default=limits.search_budget,
                        help="search node budget")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("text", "json"), default="text", dest="fmt")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    p = argparse.ArgumentParser(prog="wreathlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", help="one of: " + ", ".join(SUITES + ("all",)))
    v.add_argument("files", nargs="*")
    s = sub.add_parser("solve", parents=[common], help="solve embedding problems from a file")
    s.add_argument("files", nargs="+")
    t = sub.add_parser("transfer", parents=[common], help="transfer solutions along towers")
    t.add_argument("files", nargs="+")
    t.add_argument("--n", type=int, default=1, help="size of the solution family")
    i = sub.add_parser("independence", parents=[common], help="test subgroup families")
    i.add_argument("files", nargs="+")
    return p


def _error_dict(e):
    d = {"type": type(e).__name__, "message": str(e)}
    if isinstance(e, NotSurjective):
        d["missed"] = [int(x) for x in e.missed]
    if isinstance(e, TowerInvalid):
        d["violations"] = list(e.violations)
    return d


def main(argv=None):
    args = make_parser().parse_args(argv)
    cfg = RunConfig(args.command, list(args.files), args.cap, args.budget, args.seed, args.out,
                    args.fmt, args.timing, suite=getattr(args, "suite", None),
                    n=getattr(args, "n", None))
    if cfg.order_cap <= 0 or cfg.search_budget <= 0 or (cfg.n is not None and cfg.n < 1):
        print("wreathlab: --cap, --budget and --n must be positive", file=sys.stderr)
        return EXIT_INPUT
    start = time.perf_counter()
    checks, error, code = [], None, EXIT_OK
    try:
        with override(order_cap=cfg.order_cap, search_budget=cfg.search_budget):
            checks = COMMANDS[cfg.command](cfg)
    except (OrderCapExceeded, SearchCapExceeded) as e:
        error, code = _error_dict(e), EXIT_CAP
    except (WreathlabError, OSError) as e:
        error, code = _error_dict(e), EXIT_INPUT
    report = build_report(cfg, checks, error, time.perf_counter() - start)
    if code == EXIT_OK and report["summary"]["failed"]:
        code = EXIT_FAIL
    text = render(report, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if error is not None:
        print(f"wreathlab: {error['type']}: {error['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
