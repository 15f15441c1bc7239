#!/usr/bin/env python3
"""Render static figures from simulator CSV output.

Reads a sweep or single-run metrics CSV and draws cost-miss ratio and miss
rate against the cache size ratio, one line per policy/precision. With
--occupancy it also draws per-phase cache occupancy over time.
"""

import argparse
import collections
import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load_rows(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def series_label(row):
    if row["precision"] in ("-", ""):
        return row["policy"]
    return f"{row['policy']} (p={row['precision']})"


def plot_metric(rows, metric, out_path):
    series = collections.defaultdict(list)
    for row in rows:
        series[series_label(row)].append((float(row["cache_ratio"]), float(row[metric])))
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, points in sorted(series.items()):
        points.sort()
        ax.plot([p[0] for p in points], [p[1] for p in points], marker="o", label=label)
    ax.set_xlabel("cache size ratio")
    ax.set_ylabel(metric.replace("_", " "))
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    print(f"wrote {out_path}")


def plot_occupancy(path, out_path):
    series = collections.defaultdict(list)
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            series[int(row["phase"])].append(
                (int(row["request_index"]), float(row["fraction"]))
            )
    fig, ax = plt.subplots(figsize=(7, 4))
    for phase, points in sorted(series.items()):
        points.sort()
        ax.plot([p[0] for p in points], [p[1] for p in points], label=f"phase {phase}")
    ax.set_xlabel("requests")
    ax.set_ylabel("fraction of capacity")
    ax.grid(True, alpha=0.3)
    ax.legend(ncol=2, fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    print(f"wrote {out_path}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("metrics_csv", help="sweep or run metrics CSV")
    parser.add_argument("--occupancy", help="occupancy time-series CSV")
    parser.add_argument("--out-dir", default=None, help="directory for the images")
    args = parser.parse_args()

    out_dir = args.out_dir or os.path.dirname(os.path.abspath(args.metrics_csv))
    stem = os.path.splitext(os.path.basename(args.metrics_csv))[0]

    rows = load_rows(args.metrics_csv)
    if rows:
        plot_metric(rows, "cost_miss_ratio", os.path.join(out_dir, f"{stem}_cost_miss.png"))
        plot_metric(rows, "miss_rate", os.path.join(out_dir, f"{stem}_miss_rate.png"))
    if args.occupancy:
        occ_stem = os.path.splitext(os.path.basename(args.occupancy))[0]
        plot_occupancy(args.occupancy, os.path.join(out_dir, f"{occ_stem}.png"))


if __name__ == "__main__":
    main()
