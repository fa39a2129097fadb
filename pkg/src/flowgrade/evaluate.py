"""One-call evaluation bundling every computed quantity for a workflow."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import WorkflowValidationError
from .graph import WorkflowGraph, validate
from .penalty import PenaltyBreakdown, total_penalty
from .resources import ResourceSummary, resource_summary
from .reward import EvaluationConfig, RewardBreakdown, expected_reward, _dot
from .success import node_success, workflow_success


@dataclass(frozen=True)
class EvaluationReport:
    """Everything the ranking and reporting layers need about one workflow.

    ``cumulative_cost`` is the weighted cumulative spend alone, the number
    a cost ledger would show; the duration-priced and peak-priced terms
    are folded into ``reward.cost``.
    """

    workflow_id: str
    success_probability: float
    resources: ResourceSummary
    cumulative_cost: float
    reward: RewardBreakdown
    penalty: PenaltyBreakdown

    @property
    def reward_value(self) -> float:
        return self.reward.reward

    @property
    def penalty_value(self) -> float:
        return self.penalty.total


def evaluate_workflow(w: WorkflowGraph, cfg: EvaluationConfig) -> EvaluationReport:
    """Validate, then compute success, resources, reward, and penalties.

    Requires at least one task node because the structural penalties are
    undefined on task-free graphs; the underlying per-measure functions
    remain usable on such graphs individually.
    """
    report = validate(w)
    if not report.ok:
        raise WorkflowValidationError(report)
    probs = node_success(w)
    summary = resource_summary(w)
    weights = cfg.cumulative_weights(len(w.cumulative_dims))
    return EvaluationReport(
        workflow_id=w.id,
        success_probability=workflow_success(w, probs),
        resources=summary,
        cumulative_cost=_dot(weights, summary.cumulative),
        reward=expected_reward(w, cfg),
        penalty=total_penalty(w, cfg),
    )
