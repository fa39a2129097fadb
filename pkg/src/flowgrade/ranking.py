"""Lexicographic ranking and selection over interchangeable workflows.

Reward decides first: whoever earns tolerably more wins. Only when two
candidates are within ``reward_tolerance`` of each other does the
structural penalty break the tie. Selection applies the same idea in two
stages over a whole candidate set: keep everything within tolerance of
the best reward, then keep everything within tolerance of the lowest
penalty among the survivors.

Candidates must share an input/output interface; ranking workflows that
answer different questions is refused rather than given a meaning.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import InterfaceMismatchError, ProbabilitySumError
from .evaluate import EvaluationReport, evaluate_workflow
from .graph import WorkflowGraph, interface_signature
from .reward import EvaluationConfig, expected_reward


class Ordering(Enum):
    A_PRECEDES = "A_PRECEDES"
    B_PRECEDES = "B_PRECEDES"
    EQUAL = "EQUAL"


def compare(a: EvaluationReport, b: EvaluationReport, cfg: EvaluationConfig) -> Ordering:
    """Reward first, penalty as tie-break, EQUAL inside both tolerances."""
    tol = cfg.reward_tolerance
    if a.reward_value > b.reward_value + tol:
        return Ordering.A_PRECEDES
    if b.reward_value > a.reward_value + tol:
        return Ordering.B_PRECEDES
    if a.penalty_value < b.penalty_value - tol:
        return Ordering.A_PRECEDES
    if b.penalty_value < a.penalty_value - tol:
        return Ordering.B_PRECEDES
    return Ordering.EQUAL


def distance(a: EvaluationReport, b: EvaluationReport) -> float:
    """Absolute reward gap; the margin the comparison was decided by."""
    return abs(a.reward_value - b.reward_value)


@dataclass(frozen=True)
class CandidateSet:
    """Workflows competing to fill the same interface."""

    candidates: tuple[tuple[WorkflowGraph, EvaluationReport], ...]
    signature: tuple[frozenset[tuple[str, str]], frozenset[tuple[str, str]]]

    @classmethod
    def build(
        cls, graphs: Sequence[WorkflowGraph], cfg: EvaluationConfig
    ) -> "CandidateSet":
        if not graphs:
            raise ValueError("candidate set needs at least one workflow")
        signature = interface_signature(graphs[0])
        _check_signatures(graphs, signature)
        evaluated = tuple((g, evaluate_workflow(g, cfg)) for g in graphs)
        return cls(candidates=evaluated, signature=signature)


def _check_signatures(graphs: Iterable[WorkflowGraph], signature) -> None:
    for g in graphs:
        if interface_signature(g) != signature:
            raise InterfaceMismatchError(
                f"workflow {g.id!r} exposes a different input/output interface"
            )


def select_optimal(cs: CandidateSet, cfg: EvaluationConfig) -> list[str]:
    """Two-stage selection; returns surviving workflow ids sorted by id.

    Ids are sorted only to make the output ordering stable; membership in
    the result never depends on id.
    """
    if not cs.candidates:
        raise ValueError("candidate set is empty")
    _check_signatures((g for g, _ in cs.candidates), cs.signature)
    tol = cfg.reward_tolerance
    best_reward = max(rep.reward_value for _, rep in cs.candidates)
    stage_one = [
        (g, rep) for g, rep in cs.candidates if rep.reward_value >= best_reward - tol
    ]
    best_penalty = min(rep.penalty_value for _, rep in stage_one)
    selected = [
        g.id for g, rep in stage_one if rep.penalty_value <= best_penalty + tol
    ]
    return sorted(selected)


@dataclass(frozen=True)
class RankingResult:
    """Pairwise verdicts plus the two-stage selection, for reporting."""

    pairwise: tuple[tuple[str, str, Ordering], ...]
    selected: tuple[str, ...]


def rank_candidates(cs: CandidateSet, cfg: EvaluationConfig) -> RankingResult:
    reports = [rep for _, rep in cs.candidates]
    pairwise: list[tuple[str, str, Ordering]] = []
    for i in range(len(reports)):
        for j in range(i + 1, len(reports)):
            pairwise.append(
                (
                    reports[i].workflow_id,
                    reports[j].workflow_id,
                    compare(reports[i], reports[j], cfg),
                )
            )
    return RankingResult(
        pairwise=tuple(pairwise),
        selected=tuple(select_optimal(cs, cfg)),
    )


@dataclass(frozen=True)
class ConditionalWorkflow:
    """A probability mixture over alternative workflows.

    Models a routing decision made upstream of execution: scenario i runs
    workflow i with probability p_i.
    """

    scenarios: tuple[tuple[WorkflowGraph, float], ...]


def conditional_reward(cw: ConditionalWorkflow, cfg: EvaluationConfig) -> float:
    """Expected reward of the mixture.

    Probabilities must lie in [0, 1] and sum to 1 within 1e-9; anything
    else raises rather than silently renormalizing.
    """
    if not cw.scenarios:
        raise ValueError("conditional workflow needs at least one scenario")
    for g, p in cw.scenarios:
        if not 0.0 <= p <= 1.0:
            raise ProbabilitySumError(
                f"scenario {g.id!r} probability {p!r} outside [0, 1]"
            )
    total = sum(p for _, p in cw.scenarios)
    if abs(total - 1.0) > 1e-9:
        raise ProbabilitySumError(f"scenario probabilities sum to {total!r}, not 1")
    return sum(p * expected_reward(g, cfg).reward for g, p in cw.scenarios)
