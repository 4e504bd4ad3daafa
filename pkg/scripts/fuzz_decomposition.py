"""Run the decomposition, weight and certificate checks on seeded random polytopes.

Also compares slice dimensions against the trace at random times.  Exits
with status 1 if any check fails.

    python scripts/fuzz_decomposition.py --count 300 --dims 2 3 4 --seed 1
"""
from __future__ import annotations

import argparse
import random
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from toricsmith.decompose import build_factors, decomposition_plan, verify_theorem1
from toricsmith.fixtures import random_polytope
from toricsmith.polytope import classify, dimension
from toricsmith.reduce import minkowski_weights, reduction_certificate, verify_certificate
from toricsmith.shrink import slice_at


@dataclass
class FuzzConfig:
    seed: int = 0
    count: int = 100
    dims: list = field(default_factory=lambda: [2, 3, 4])
    max_d: int = 10
    times_per_polytope: int = 10


def run(cfg: FuzzConfig) -> Counter:
    rng = random.Random(cfg.seed)
    tally = Counter()
    for k in range(cfg.count):
        p = random_polytope(rng, cfg.dims[k % len(cfg.dims)], max_d=cfg.max_d)
        plan = decomposition_plan(p)
        q = plan.polytope
        factors = build_factors(plan)
        if not verify_theorem1(q, factors).passed:
            tally["decomposition failed"] += 1
            print(f"case {k}: decomposition check failed", file=sys.stderr)
        tally[f"M={plan.M} N={plan.N}"] += 1
        minkowski_weights(q)
        if classify(q).simple:
            if not verify_certificate(q, reduction_certificate(q, verify=False)).passed:
                tally["certificate failed"] += 1
                print(f"case {k}: certificate check failed", file=sys.stderr)
        else:
            tally["not simple"] += 1
        end = plan.trace.times[-1]
        for _ in range(cfg.times_per_polytope):
            t = end * Fraction(rng.randint(1, 999), 1000)
            if dimension(slice_at(q, t, plan.trace)) != plan.trace.predicted_dimension(t):
                tally["slice dimension mismatch"] += 1
    return tally


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4])
    parser.add_argument("--max-d", type=int, default=10)
    parser.add_argument("--times", type=int, default=10, help="slice times sampled per polytope")
    args = parser.parse_args(argv)
    cfg = FuzzConfig(args.seed, args.count, args.dims, args.max_d, args.times)
    start = time.perf_counter()
    tally = run(cfg)
    elapsed = time.perf_counter() - start
    for key in sorted(tally):
        print(f"{key:>28}: {tally[key]}")
    print(f"{cfg.count} polytopes in {elapsed:.1f}s")
    failed = sum(v for k, v in tally.items() if "failed" in k or "mismatch" in k)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
