"""Figure rendering for the CLI report paths.

Each helper takes the same rows the delimited output is built from and writes
a PNG next to it.  Rendering is optional; the CSV/JSON files remain the
machine-readable contract.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def save_l_growth_figure(rows: list[dict], path) -> None:
    """l(n) against its proven envelope log2 bounds."""
    ns = [r["n"] for r in rows]
    ls = [r["l"] for r in rows]
    lbs = [r["lower_bound"] for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.step(ns, ls, where="post", label="minimal cover size", lw=1.8)
    ax.step(ns, lbs, where="post", label="counting lower bound", lw=1.0, ls="--")
    ax.plot(ns, [math.log2(n) if n > 1 else 0 for n in ns], label="log2 n",
            lw=1.0, ls=":")
    ax.set_xlabel("n")
    ax.set_ylabel("set size")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_tau_diag_figure(rows: list[dict], path) -> None:
    """Cumulative n/tau(n) sum against x^2 / (2 sqrt(log x))."""
    xs = [r["x"] for r in rows]
    sums = [r["sum"] for r in rows]
    comps = [r["comparator"] for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.loglog(xs, sums, marker="o", label="sum of n/tau(n)")
    finite = [(x, c) for x, c in zip(xs, comps) if c == c]  # drop nan
    if finite:
        ax.loglog([x for x, _ in finite], [c for _, c in finite],
                  marker="s", ls="--", label="x^2 / (2 sqrt(log x))")
    ax.set_xlabel("x")
    ax.set_ylabel("value")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_conjecture_figure(rows: list[dict], path) -> None:
    """Maximal property-preserving cardinality against z."""
    zs = [r["z"] for r in rows]
    ks = [r["k_max"] for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(zs, ks, marker="o", label="k_max")
    ax.plot(zs, zs, ls="--", lw=1.0, label="z (construction size)")
    ax.set_xlabel("z  (universe [2^z])")
    ax.set_ylabel("maximal cardinality")
    ax.set_xticks(zs)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
