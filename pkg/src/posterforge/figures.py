"""Evaluation figures written alongside the CSV dumps.

Uses the Agg backend so figure generation works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .evaluation import EvalReport  # noqa: E402


def save_prediction_scatter(report: EvalReport, path: str) -> None:
    """Predicted vs true scatter for area and aspect, model vs baseline."""
    fig, axes = plt.subplots(1, 2, figsize=(9.5, 4.2))
    panels = (
        ("panel area", lambda r: (r.s_true, r.s_pred)),
        ("panel aspect", lambda r: (r.r_true, r.r_pred)),
    )
    for ax, (label, pick) in zip(axes, panels):
        mt, mp = zip(*(pick(r) for r in report.model_rows))
        bt, bp = zip(*(pick(r) for r in report.baseline_rows))
        ax.scatter(mt, mp, s=18, label="model", color="#2c7fb8")
        ax.scatter(bt, bp, s=18, label="baseline", color="#d95f0e", marker="x")
        lo = min(min(mt), min(mp), min(bt), min(bp))
        hi = max(max(mt), max(mp), max(bt), max(bp))
        pad = 0.05 * (hi - lo) if hi > lo else 0.05
        ax.plot([lo - pad, hi + pad], [lo - pad, hi + pad], color="#999999", lw=0.8)
        ax.set_xlabel(f"true {label}")
        ax.set_ylabel(f"predicted {label}")
        ax.set_title(label)
        ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_mse_bars(report: EvalReport, path: str) -> None:
    """Side-by-side MSE bars for both targets."""
    fig, axes = plt.subplots(1, 2, figsize=(8, 3.6))
    pairs = (
        ("area MSE", report.mse_size_model, report.mse_size_baseline),
        ("aspect MSE", report.mse_aspect_model, report.mse_aspect_baseline),
    )
    for ax, (label, model_v, base_v) in zip(axes, pairs):
        ax.bar([0, 1], [model_v, base_v], color=["#2c7fb8", "#d95f0e"], width=0.6)
        ax.set_xticks([0, 1], ["model", "baseline"])
        ax.set_title(label)
        for x, v in ((0, model_v), (1, base_v)):
            ax.annotate(f"{v:.4g}", (x, v), ha="center", va="bottom", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
