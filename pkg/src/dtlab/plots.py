"""Matplotlib figures for sweep reports (approximation ratio against size)."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def _get(rec, key):
    if isinstance(rec, dict):
        return rec[key]
    return getattr(rec, key)


def plot_sweep(records, out_path) -> None:
    """One ratio-vs-size line per (family, metric, method) series."""
    series: dict[tuple, list] = {}
    for rec in records:
        key = (_get(rec, "family"), _get(rec, "metric"), _get(rec, "method"))
        series.setdefault(key, []).append(rec)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for key in sorted(series):
        rows = sorted(series[key], key=lambda r: _get(r, "n"))
        xs = [_get(r, "n") for r in rows]
        ys = [_get(r, "ratio") for r in rows]
        pts = [(x, y) for x, y in zip(xs, ys) if not math.isnan(y)]
        if not pts:
            continue
        ax.plot([x for x, _ in pts], [y for _, y in pts],
                marker="o", label=" / ".join(str(k) for k in key))
    ax.set_xlabel("instance size parameter")
    ax.set_ylabel("tour weight / reference weight")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
