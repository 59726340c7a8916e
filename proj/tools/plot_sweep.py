#!/usr/bin/env python3
"""Summarize (and optionally plot) a sweep CSV produced by `listdec sweep`.

Prints a per-alpha table of median/min/max best-candidate error and median
list size. With --png, also writes an error-vs-alpha figure (log-log) when
matplotlib is available.
"""

import argparse
import csv
import statistics
import sys
from collections import defaultdict


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv_path", help="CSV written by `listdec sweep`")
    parser.add_argument("--png", help="optional output figure path")
    args = parser.parse_args()

    by_alpha = defaultdict(list)
    sizes = defaultdict(list)
    with open(args.csv_path, newline="") as handle:
        for row in csv.DictReader(handle):
            err = float(row["min_error"])
            if err != err:  # empty candidate list
                continue
            by_alpha[float(row["alpha"])].append(err)
            sizes[float(row["alpha"])].append(int(row["list_size"]))

    if not by_alpha:
        print("no finished runs in", args.csv_path, file=sys.stderr)
        return 1

    print(f"{'alpha':>8} {'runs':>5} {'median':>12} {'min':>12} {'max':>12} {'list':>5}")
    for alpha in sorted(by_alpha, reverse=True):
        errs = by_alpha[alpha]
        print(
            f"{alpha:>8.4g} {len(errs):>5} {statistics.median(errs):>12.4g} "
            f"{min(errs):>12.4g} {max(errs):>12.4g} "
            f"{statistics.median(sizes[alpha]):>5.0f}"
        )

    if args.png:
        try:
            import matplotlib

            matplotlib.use("Agg")
            import matplotlib.pyplot as plt
        except ImportError:
            print("matplotlib not available; skipping figure", file=sys.stderr)
            return 0
        alphas = sorted(by_alpha, reverse=True)
        medians = [statistics.median(by_alpha[a]) for a in alphas]
        fig, ax = plt.subplots(figsize=(5, 4))
        ax.plot(alphas, medians, marker="o")
        for alpha in alphas:
            ax.scatter([alpha] * len(by_alpha[alpha]), by_alpha[alpha], s=8, alpha=0.4)
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.invert_xaxis()
        ax.set_xlabel("alpha")
        ax.set_ylabel("best-candidate L2 error")
        ax.set_title("error vs alpha")
        fig.tight_layout()
        fig.savefig(args.png, dpi=150)
        print("wrote", args.png)
    return 0


if __name__ == "__main__":
    sys.exit(main())
