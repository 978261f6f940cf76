#!/usr/bin/env python3
"""Export plot-ready CSV data: graph samples and dimension curves.

Graphs are emitted for a few representative parameter pairs (the classical
N = 1 cases at a = 5/6 and a = 2/3, the near-critical a = 0.5595, and an
N = 2 example); dimension curves cover N = 1 and N = 2.  Feed the CSVs to
any plotting tool.
"""

import argparse
from fractions import Fraction
from pathlib import Path

from okamoto import dimension_curve, make_params, sample_graph, thresholds


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", type=Path, default=Path("out"))
    ap.add_argument("--depth", type=int, default=8)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    cases = [
        ("graph_n1_a5_6", 1, Fraction(5, 6), args.depth),
        ("graph_n1_a2_3", 1, Fraction(2, 3), args.depth),
        ("graph_n1_near_critical", 1, thresholds(1).a_inf_hat, args.depth),
        ("graph_n2_a0_6", 2, Fraction(3, 5), max(4, args.depth - 3)),
    ]
    for name, N, a, depth in cases:
        g = sample_graph(make_params(N, a), depth)
        path = args.outdir / f"{name}.csv"
        with path.open("w") as f:
            g.to_csv(f)
        print(f"wrote {path} ({len(g.xs)} points)")

    for N in (1, 2):
        curve = dimension_curve(N, 400)
        path = args.outdir / f"dim_curve_n{N}.csv"
        with path.open("w") as f:
            f.write("a,dim\n")
            for a, v in curve:
                f.write(f"{a:.17g},{v:.17g}\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
