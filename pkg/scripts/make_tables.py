#!/usr/bin/env python3
"""Regenerate the threshold table and large-N scaling data as CSV files.

Writes thresholds.csv (N = 1..10, the five regime boundaries per row) and
asymptotics.csv (N-scaled thresholds for a sweep of N up to 100).
"""

import argparse
from pathlib import Path

from okamoto import thresholds, threshold_asymptotics


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", type=Path, default=Path("out"))
    ap.add_argument("--max-n", type=int, default=10)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    rows = [thresholds(n) for n in range(1, args.max_n + 1)]
    path = args.outdir / "thresholds.csv"
    with path.open("w") as f:
        f.write("N,a_min,a0_tilde,a0_star,a_inf_hat,a_inf_star\n")
        for t in rows:
            f.write(f"{t.N}," + ",".join(f"{v:.17g}" for v in t.as_row()) + "\n")
    print(f"wrote {path}")

    sweep = [1, 2, 5, 10, 20, 50, 100]
    rep = threshold_asymptotics(sweep)
    path = args.outdir / "asymptotics.csv"
    with path.open("w") as f:
        f.write("N,N*a_min,N*a0_tilde,N*a0_star,N*a_inf_hat,N*a_inf_star\n")
        for row in rep.rows:
            f.write(f"{int(row[0])}," + ",".join(f"{v:.17g}" for v in row[1:]) + "\n")
        f.write("# limits," + ",".join(f"{v:.17g}" for v in rep.limits) + "\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
