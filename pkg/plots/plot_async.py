#!/usr/bin/env python3
"""Render delayed-iteration experiment CSVs as mean/band/bound figures.

Input is the experiment CSV with header
``ensemble,jacobi,trial,seed,c,rho,bound``.  One panel is drawn per
(ensemble, jacobi) group: the solid line is the mean spectral radius over
trials, the shaded region spans two standard deviations, and the dashed
line is the bound curve c ** (1 / (max_delay + 1)) carried in the file.

Usage:
    python plot_async.py --in results.csv --out figure.png [--svg] [--title T]

Rendering is deterministic: fixed style, no timestamps, stable group
ordering, so output images are diffable.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from collections import OrderedDict

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "plot-async"  # stable SVG element ids
import matplotlib.pyplot as plt  # noqa: E402

EXPECTED_HEADER = ["ensemble", "jacobi", "trial", "seed", "c", "rho", "bound"]


class EmptyInput(Exception):
    pass


class SchemaMismatch(Exception):
    pass


def load_rows(path: str) -> list[dict]:
    """Parse the experiment CSV, enforcing the exact schema."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyInput(f"{path} is empty") from None
        if header != EXPECTED_HEADER:
            raise SchemaMismatch(
                f"header {header!r} does not match {EXPECTED_HEADER!r}")
        rows = []
        for lineno, fields in enumerate(reader, start=2):
            if len(fields) != len(EXPECTED_HEADER):
                raise SchemaMismatch(f"line {lineno}: {len(fields)} fields")
            try:
                rows.append({
                    "ensemble": fields[0],
                    "jacobi": fields[1],
                    "trial": int(fields[2]),
                    "seed": int(fields[3]),
                    "c": float(fields[4]),
                    "rho": float(fields[5]),
                    "bound": float(fields[6]),
                })
            except ValueError as exc:
                raise SchemaMismatch(f"line {lineno}: {exc}") from exc
    if not rows:
        raise EmptyInput(f"{path} has a header but no data rows")
    return rows


def mean_and_std(values: list[float]) -> tuple[float, float]:
    """Population mean and standard deviation (the band is mean +/- 2 std)."""
    n = len(values)
    mean = math.fsum(values) / n
    var = math.fsum((v - mean) ** 2 for v in values) / n
    return mean, math.sqrt(var)


def group_stats(rows: list[dict]) -> "OrderedDict[tuple, OrderedDict[float, tuple]]":
    """Per (ensemble, jacobi) group and per c: (mean rho, std rho, bound).

    Groups and c values keep stable sorted order so downstream rendering is
    deterministic.
    """
    buckets: dict[tuple, dict[float, list[float]]] = {}
    bounds: dict[tuple, dict[float, float]] = {}
    for row in rows:
        key = (row["ensemble"], row["jacobi"])
        buckets.setdefault(key, {}).setdefault(row["c"], []).append(row["rho"])
        bounds.setdefault(key, {})[row["c"]] = row["bound"]
    out: OrderedDict = OrderedDict()
    for key in sorted(buckets):
        per_c: OrderedDict = OrderedDict()
        for c in sorted(buckets[key]):
            mean, std = mean_and_std(buckets[key][c])
            per_c[c] = (mean, std, bounds[key][c])
        out[key] = per_c
    return out


def build_figure(rows: list[dict], title: str | None = None):
    """One panel per group: mean line, +/- 2 std band, dashed bound curve."""
    stats = group_stats(rows)
    n_panels = len(stats)
    ncols = min(n_panels, 2)
    nrows = (n_panels + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, figsize=(5.2 * ncols, 3.9 * nrows),
                             squeeze=False)
    for ax in axes.flat[n_panels:]:
        ax.set_visible(False)
    for ax, (key, per_c) in zip(axes.flat, stats.items()):
        cs = list(per_c)
        means = [per_c[c][0] for c in cs]
        lows = [per_c[c][0] - 2 * per_c[c][1] for c in cs]
        highs = [per_c[c][0] + 2 * per_c[c][1] for c in cs]
        bound = [per_c[c][2] for c in cs]
        ax.fill_between(cs, lows, highs, alpha=0.3, color="#4878cf",
                        linewidth=0, label="mean +/- 2 std")
        ax.plot(cs, means, color="#4878cf", label="mean spectral radius")
        ax.plot(cs, bound, linestyle="--", color="#333333", label="bound")
        ensemble, jacobi = key
        ax.set_title(f"{ensemble}" + (", block-Jacobi" if jacobi == "true" else ""))
        ax.set_xlabel("c")
        ax.set_ylabel("spectral radius")
        ax.legend(loc="upper left", fontsize=8)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    return fig


def render(in_path: str, out_path: str, svg: bool = False,
           title: str | None = None) -> None:
    rows = load_rows(in_path)
    fig = build_figure(rows, title=title)
    if svg or out_path.endswith(".svg"):
        # strip the volatile date chunk so outputs are byte-stable
        fig.savefig(out_path, format="svg", metadata={"Date": None})
    else:
        fig.savefig(out_path, format="png")
    plt.close(fig)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--in", dest="in_path", required=True,
                        help="experiment CSV")
    parser.add_argument("--out", dest="out_path", required=True,
                        help="output image path")
    parser.add_argument("--svg", action="store_true", help="emit SVG")
    parser.add_argument("--title", default=None)
    args = parser.parse_args(argv)
    try:
        render(args.in_path, args.out_path, svg=args.svg, title=args.title)
    except (EmptyInput, SchemaMismatch, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
