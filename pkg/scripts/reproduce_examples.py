"""Print shrink traces, decompositions, certificates and width bounds for the worked examples.

    python scripts/reproduce_examples.py
    python scripts/reproduce_examples.py --names ex5 sq --json-dir out/
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from pathlib import Path

from toricsmith.decompose import build_factors, decomposition_plan, verify_theorem1
from toricsmith.errors import NotSimple
from toricsmith.fixtures import all_fixtures
from toricsmith.gromov import width_report
from toricsmith.reduce import reduction_certificate, verify_certificate
from toricsmith.serialize import (
    canonical_json,
    encode_certificate,
    encode_gromov,
    encode_plan,
    encode_trace,
)
from toricsmith.shrink import shrink_trace


@dataclass
class ReproduceConfig:
    names: list = field(default_factory=lambda: ["ex1", "ex2", "ex3", "ex4", "ex5", "sq", "cp2", "seg"])
    json_dir: Path | None = None
    lu_bound: int = 12


def _one_based(groups):
    return [[i + 1 for i in g] for g in groups]


def describe(name, p, cfg: ReproduceConfig) -> dict:
    trace = shrink_trace(p)
    plan = decomposition_plan(p)
    factors = build_factors(plan)
    report = verify_theorem1(plan.polytope, factors)
    print(f"== {name}: n={p.n}, d={p.d}")
    print(f"   times {[str(t) for t in trace.times]}  drops {list(trace.drops)}  "
          f"D {_one_based(trace.frozen_sets)}")
    for e in trace.events:
        print(f"   t={e.time}: constraint {e.index + 1} {e.kind.value}")
    for f in factors:
        print(f"   {f.label:<12} level {str(f.level):>4}  constraints {[i + 1 for i in f.indices]}")
    print(f"   decomposition checks: {'all pass' if report.passed else report.failed()}")
    doc = {"trace": encode_trace(trace), "decomposition": encode_plan(plan, factors, report)}
    try:
        cert = reduction_certificate(p, verify=False)
    except NotSimple:
        print("   certificate: skipped (not simple)")
    else:
        cr = verify_certificate(plan.polytope, cert)
        weights = [list(cf.weights.m) for cf in cert.factors]
        print(f"   certificate: d_total={cert.d_total}, weights {weights}, "
              f"{'verified' if cr.passed else cr.failed()}")
        doc["certificate"] = encode_certificate(cert, cr)
    g = width_report(p, cfg.lu_bound)
    print(f"   width: lower {g.lower.coefficient_of_pi} pi ({g.lower.status.value}), "
          f"upper {g.upper.coefficient_of_pi} pi ({g.upper.fano_status.value}), equality {g.equality}")
    doc["gromov"] = encode_gromov(g)
    return doc


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--names", nargs="+", default=ReproduceConfig().names)
    parser.add_argument("--json-dir", type=Path)
    parser.add_argument("--lu-bound", type=int, default=12)
    args = parser.parse_args(argv)
    cfg = ReproduceConfig(args.names, args.json_dir, args.lu_bound)
    fixtures = all_fixtures()
    for name in cfg.names:
        doc = describe(name, fixtures[name], cfg)
        if cfg.json_dir:
            cfg.json_dir.mkdir(parents=True, exist_ok=True)
            (cfg.json_dir / f"{name}.json").write_text(canonical_json(doc))


if __name__ == "__main__":
    main()
