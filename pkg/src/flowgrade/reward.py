"""Cost and expected reward.

The scalar cost of a workflow prices its three resource measures:

    C = <w_g, cumulative> + w_d * duration + <w_r, releasable peak>

Expected reward credits each output with its gain weighted by the
probability the output is correct, then subtracts the full cost:

    R = sum over outputs of P(output) * gain  -  C

A seeded Monte Carlo sampler estimates the same quantity empirically by
simulating per-node correctness; it exists as an independent check on
the closed-form propagation, not as a faster path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .graph import WorkflowGraph, topological_order
from .resources import ResourceSummary, Vector, resource_summary
from .success import node_success

# Algorithm identifier echoed into reports whenever sampling is used.
SAMPLER_ALGORITHM = "pcg64"


@dataclass(frozen=True)
class EvaluationConfig:
    """Weights, penalty mix, and comparison tolerance.

    ``w_g`` and ``w_r`` default to all-ones and all-zeros respectively,
    sized to the graph's dimension registries at the point of use; pass
    explicit vectors to price dimensions unevenly.
    """

    w_g: tuple[float, ...] | None = None
    w_d: float = 0.0
    w_r: tuple[float, ...] | None = None
    alpha_ch: float = 0.5
    alpha_ob: float = 0.5
    gamma_s: float = 0.5
    reward_tolerance: float = 1e-9

    def __post_init__(self) -> None:
        if self.w_g is not None:
            object.__setattr__(self, "w_g", tuple(float(x) for x in self.w_g))
        if self.w_r is not None:
            object.__setattr__(self, "w_r", tuple(float(x) for x in self.w_r))

    def cumulative_weights(self, m: int) -> Vector:
        if self.w_g is None:
            return (1.0,) * m
        if len(self.w_g) != m:
            raise DimensionMismatchError(
                f"w_g has {len(self.w_g)} entries, graph declares {m} cumulative dims"
            )
        return self.w_g

    def releasable_weights(self, n: int) -> Vector:
        if self.w_r is None:
            return (0.0,) * n
        if len(self.w_r) != n:
            raise DimensionMismatchError(
                f"w_r has {len(self.w_r)} entries, graph declares {n} releasable dims"
            )
        return self.w_r


def _dot(weights: Vector, values: Vector) -> float:
    total = 0.0
    for wx, vx in zip(weights, values):
        total += wx * vx
    return total


def cost(
    w: WorkflowGraph,
    cfg: EvaluationConfig,
    summary: ResourceSummary | None = None,
) -> float:
    """Scalar cost of the workflow under the configured weights."""
    if summary is None:
        summary = resource_summary(w)
    wg = cfg.cumulative_weights(len(w.cumulative_dims))
    wr = cfg.releasable_weights(len(w.releasable_dims))
    return (
        _dot(wg, summary.cumulative)
        + cfg.w_d * summary.duration
        + _dot(wr, summary.releasable_peak)
    )


@dataclass(frozen=True)
class OutputContribution:
    gain: float
    success: float
    contribution: float


@dataclass(frozen=True)
class RewardBreakdown:
    """Expected reward with its additive pieces kept visible."""

    cost: float
    expected_gain: float
    reward: float
    per_output: dict[str, OutputContribution]


def expected_reward(w: WorkflowGraph, cfg: EvaluationConfig) -> RewardBreakdown:
    probs = node_success(w)
    per_output: dict[str, OutputContribution] = {}
    expected_gain = 0.0
    for v in sorted(w.outputs):
        gain = w.outputs[v].gain
        contribution = probs[v] * gain
        per_output[v] = OutputContribution(gain, probs[v], contribution)
        expected_gain += contribution
    total_cost = cost(w, cfg)
    return RewardBreakdown(
        cost=total_cost,
        expected_gain=expected_gain,
        reward=expected_gain - total_cost,
        per_output=per_output,
    )


def sample_net_benefit(
    w: WorkflowGraph, cfg: EvaluationConfig, seed: int, n: int
) -> tuple[float, float]:
    """Monte Carlo estimate of the net benefit over ``n`` simulated runs.

    Returns ``(mean, standard_error)``. Every run pays the full cost and
    collects the gain of each output whose result came out correct.
    Determinism contract: one uniform array is drawn per input and per
    task in deterministic topological order from a PCG64 stream seeded
    with ``seed``, so equal arguments give bit-identical results.
    """
    if n < 1:
        raise ValueError("sample count must be at least 1")
    total_cost = cost(w, cfg)
    rng = np.random.Generator(np.random.PCG64(seed))
    correct: dict[str, np.ndarray] = {}
    for v in topological_order(w):
        if v in w.inputs:
            correct[v] = rng.random(n) < w.inputs[v].pi
            continue
        upstream_ok = np.ones(n, dtype=bool)
        for u in w.parents(v):
            upstream_ok &= correct[u]
        if v in w.tasks:
            t = w.tasks[v]
            draw = rng.random(n)
            correct[v] = np.where(upstream_ok, draw < t.p, draw < t.q)
        else:
            correct[v] = upstream_ok

    benefit = np.full(n, -total_cost)
    for v in sorted(w.outputs):
        gain = w.outputs[v].gain
        if gain != 0.0:
            benefit = benefit + np.where(correct[v], gain, 0.0)
    mean = float(benefit.mean())
    std_error = float(benefit.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return mean, std_error
