"""Figure rendering for the CLI reports. Figures are written to files only."""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _finish(fig, path) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_tradeoff(points: Sequence, path, mark_rate: float | None = 0.8) -> None:
    """Rate against energy reduction for the optimal equiprobable-input code."""
    fig, ax = plt.subplots(figsize=(4.5, 3.4))
    ax.plot([p.energy_reduction_pct for p in points], [p.rate for p in points], lw=1.8)
    if mark_rate is not None:
        from .theory import tradeoff_at_rate
        m = tradeoff_at_rate(mark_rate)
        ax.plot([m.energy_reduction_pct], [m.rate], "o", color="tab:red")
        ax.annotate(f"R={m.rate:.2f}, {m.energy_reduction_pct:.1f}%",
                    (m.energy_reduction_pct, m.rate), textcoords="offset points",
                    xytext=(6, -12), fontsize=8)
    ax.set_xlabel("energy reduction (%)")
    ax.set_ylabel("rate")
    ax.set_xlim(0, 100)
    ax.set_ylim(0, 1.02)
    ax.grid(alpha=0.3)
    _finish(fig, path)


def plot_sweep(rows: Sequence, path) -> None:
    """Share of coded windows and drain time per utilization threshold."""
    fig, ax = plt.subplots(figsize=(5, 3.4))
    t = [100 * r.threshold for r in rows]
    ax.plot(t, [r.pct_coded for r in rows], "o-", label="coded windows")
    ax.plot(t, [r.pct_uncoded for r in rows], "s-", label="uncoded windows")
    ax.set_xlabel("utilization threshold (%)")
    ax.set_ylabel("windows (%)")
    ax.set_ylim(-2, 102)
    ax2 = ax.twinx()
    ax2.plot(t, [r.total_cycles for r in rows], "^--", color="tab:gray", label="total cycles")
    ax2.set_ylabel("total cycles")
    lines = ax.get_lines() + ax2.get_lines()
    ax.legend(lines, [ln.get_label() for ln in lines], fontsize=8, loc="best")
    _finish(fig, path)


def plot_crosstalk_classes(hist_coded: dict, hist_uncoded: dict, path, top: int = 12) -> None:
    """Most frequent victim/neighbor patterns among switching victims."""
    keys = sorted({k for k in list(hist_coded) + list(hist_uncoded) if k[0] == 1},
                  key=lambda k: -(hist_coded.get(k, 0) + hist_uncoded.get(k, 0)))[:top]
    labels = [f"s{k[1]}o{k[2]}i{k[3]}" for k in keys]
    x = range(len(keys))
    fig, ax = plt.subplots(figsize=(6, 3.4))
    ax.bar([i - 0.2 for i in x], [hist_uncoded.get(k, 0) for k in keys], 0.4, label="uncoded")
    ax.bar([i + 0.2 for i in x], [hist_coded.get(k, 0) for k in keys], 0.4, label="coded")
    ax.set_xticks(list(x))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=7)
    ax.set_ylabel("victim-steps")
    ax.legend(fontsize=8)
    _finish(fig, path)
