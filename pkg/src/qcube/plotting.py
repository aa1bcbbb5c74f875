"""Figures for bound sweeps."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_bound_grid(rows, path, d=2):
    """Best lower/upper bound against n, one panel per mode, one color per q.

    ``rows`` are dicts with keys q, n, d, mode, lower, upper as produced by
    the ``bounds --grid`` sweep.
    """
    modes = ["atmost", "exactly"]
    fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=False)
    qs = sorted({r["q"] for r in rows})
    cmap = plt.get_cmap("viridis", max(len(qs), 2))
    for ax, mode in zip(axes, modes):
        sel = [r for r in rows if r["mode"] == mode and r["d"] == d]
        for i, q in enumerate(qs):
            pts = sorted((r["n"], r["lower"], r["upper"]) for r in sel if r["q"] == q)
            if not pts:
                continue
            ns, lo, hi = zip(*pts)
            ax.plot(ns, hi, "-o", color=cmap(i), ms=3, label=f"q={q} upper")
            ax.plot(ns, lo, "--s", color=cmap(i), ms=3, label=f"q={q} lower")
            ax.fill_between(ns, lo, hi, color=cmap(i), alpha=0.12)
        ax.set_yscale("log", base=2)
        ax.set_xlabel("n")
        ax.set_title(f"{'at most' if mode == 'atmost' else 'exactly'} d={d}")
        ax.grid(True, which="major", alpha=0.3)
    axes[0].set_ylabel("colors")
    handles, labels = axes[0].get_legend_handles_labels()
    if not handles:
        handles, labels = axes[1].get_legend_handles_labels()
    if handles:
        fig.legend(handles, labels, loc="center right", fontsize=7, frameon=False)
    fig.tight_layout(rect=(0, 0, 0.85, 1))
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
