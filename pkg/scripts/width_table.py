"""Tabulate Gromov width bounds (as multiples of pi) for scaled squares and simplices.

    python scripts/width_table.py --scales 1 3/2 2 3
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from toricsmith.fixtures import cp2, sq
from toricsmith.gromov import width_report


@dataclass
class TableConfig:
    scales: list = field(default_factory=lambda: [Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3)])
    lu_bound: int = 12


def rows(cfg: TableConfig):
    for name, make in (("square", sq), ("simplex", cp2)):
        for lam in cfg.scales:
            g = width_report(make(lam), cfg.lu_bound)
            yield name, lam, g.lower.coefficient_of_pi, g.upper.coefficient_of_pi, g.equality


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--scales", nargs="+", type=Fraction, default=TableConfig().scales)
    parser.add_argument("--lu-bound", type=int, default=12)
    args = parser.parse_args(argv)
    cfg = TableConfig(args.scales, args.lu_bound)
    print(f"{'polytope':<8} {'scale':>6} {'lower':>7} {'upper':>7}  equal")
    for name, lam, lo, hi, eq in rows(cfg):
        print(f"{name:<8} {str(lam):>6} {str(lo):>7} {str(hi):>7}  {'yes' if eq else 'no'}")


if __name__ == "__main__":
    main()
