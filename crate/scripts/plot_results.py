#!/usr/bin/env python3
"""Plot a graphflow results.csv: metric mean +/- std against budget, one line
per method, one panel per (graph, diffusion) pair.

usage: plot_results.py results.csv [out.png]
"""
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main(argv):
    if len(argv) < 2:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    frame = pd.read_csv(argv[1]).dropna(subset=["mean"])
    out = argv[2] if len(argv) > 2 else "results.png"
    panels = list(frame.groupby(["graph", "diffusion"]))
    fig, axes = plt.subplots(1, max(len(panels), 1), figsize=(5 * max(len(panels), 1), 4), squeeze=False)
    for ax, ((graph, diffusion), part) in zip(axes[0], panels):
        for method, rows in part.groupby("method"):
            rows = rows.groupby("budget")[["mean", "std"]].mean().sort_index()
            ax.errorbar(rows.index, rows["mean"], yerr=rows["std"], label=method, marker="o", capsize=3)
        ax.set_title(f"{graph}\n{diffusion}", fontsize=9)
        ax.set_xlabel("budget")
        ax.set_ylabel(part["metric"].iloc[0])
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=120)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
