"""Metric bar charts rendered alongside the delimited reports.

One figure, a 2x3 grid of bar charts over the evaluated workflows: cost,
critical path duration, success probability, reward, and the normative
scores side by side. Written straight to a file; no interactive backend
is ever touched.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .evaluate import EvaluationReport

FIGURE_BASENAME = "metrics.png"


def render_metrics_figure(
    reports: list[EvaluationReport] | tuple[EvaluationReport, ...],
    path: str | Path,
) -> Path:
    """Render the metric comparison figure for ``reports`` to ``path``."""
    if not reports:
        raise ValueError("no reports to render")
    path = Path(path)
    ids = [r.workflow_id for r in reports]
    x = range(len(ids))

    fig, axes = plt.subplots(2, 3, figsize=(13, 7))
    panels = [
        ("Cost ($)", [r.cumulative_cost for r in reports]),
        ("Max duration (ms)", [r.resources.duration for r in reports]),
        ("Success probability", [r.success_probability for r in reports]),
        ("Reward ($)", [r.reward_value for r in reports]),
    ]
    for ax, (title, values) in zip(axes.flat, panels):
        ax.bar(x, values, color="#4878a8")
        ax.set_title(title)
        ax.set_xticks(list(x))
        ax.set_xticklabels(ids, rotation=20, ha="right", fontsize=8)
        if title == "Success probability":
            ax.set_ylim(0.0, 1.0)

    ax = axes.flat[4]
    width = 0.27
    ax.bar([i - width for i in x], [r.penalty.cip for r in reports], width, label="CIP")
    ax.bar(list(x), [r.penalty.sip for r in reports], width, label="SIP")
    ax.bar(
        [i + width for i in x],
        [r.penalty_value for r in reports],
        width,
        label="total",
    )
    ax.set_title("Normative penalty")
    ax.set_xticks(list(x))
    ax.set_xticklabels(ids, rotation=20, ha="right", fontsize=8)
    ax.legend(fontsize=8)

    axes.flat[5].axis("off")
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
