#!/usr/bin/env python3
"""Render trajectory CSVs written by the episis CLI.

Usage: plot_series.py out.csv [more.csv ...] [-o figure.png] [--column sum_i]

Each input is a header CSV (t,sum_i[,mean_beta,max_beta,clamp_events] or a
snapshot file with per-node columns). One curve per file; snapshot files
plot every node column faintly plus the aggregate.
"""

import argparse
import csv
import pathlib
import sys


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    cols = {name: [float(r[k]) for r in body] for k, name in enumerate(header)}
    return header, cols


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("csvs", nargs="+", metavar="csv")
    ap.add_argument("-o", "--out", default=None, help="output image (default: first input + .png)")
    ap.add_argument("--column", default="sum_i", help="aggregate column to plot (default sum_i)")
    args = ap.parse_args()

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("matplotlib is required to render figures")

    fig, ax = plt.subplots(figsize=(8, 4.5))
    for path in args.csvs:
        header, cols = read_csv(path)
        label = pathlib.Path(path).stem
        node_cols = [h for h in header if h.startswith("i_")]
        for h in node_cols:
            ax.plot(cols["t"], cols[h], lw=0.5, alpha=0.25, color="gray")
        if args.column in cols:
            ax.plot(cols["t"], cols[args.column], lw=1.6, label=label)
        elif not node_cols:
            sys.exit(f"{path}: no column '{args.column}' (has: {', '.join(header)})")

    ax.set_xlabel("t")
    ax.set_ylabel(args.column)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best")
    out = args.out or args.csvs[0] + ".png"
    fig.tight_layout()
    fig.savefig(out, dpi=130)
    print(out)


if __name__ == "__main__":
    main()
