"""Structural quality penalties.

Tasks carry two annotation pairs that are complements by construction:
cohesion/coupling (Ch = 1 - cp) and observability/information hygiene
(Ob = 1 - ih). Workflow-level values aggregate per-task annotations by
root mean square, which rewards uniformly moderate structure and punishes
outliers harder than a plain mean would.

Two quadratic penalties mix the aggregates:

    CIP^2 = alpha_ch * Ch(W)^2 + (1 - alpha_ch) * Cp(W)^2
    SIP^2 = alpha_ob * Ob(W)^2 + (1 - alpha_ob) * Ih(W)^2

Because each pair sums to one per task, CIP^2 also factors as
alpha(1 - alpha) + mean((alpha - cp_v)^2): an irreducible floor plus the
mean squared deviation of coupling from the target mix. Both forms are
implemented; agreement between them is the module's core algebra check.
The total penalty blends the two the same way with gamma_s, and the
deviation-minimizing coupling level for every task is exactly alpha_ch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import NoTasksError
from .graph import WorkflowGraph
from .reward import EvaluationConfig


class PenaltyDimension(str, Enum):
    COHESION = "ch"
    COUPLING = "cp"
    OBSERVABILITY = "ob"
    INFORMATION_HYGIENE = "ih"


@dataclass(frozen=True)
class PenaltyBreakdown:
    ch: float
    cp: float
    ob: float
    ih: float
    cip: float
    sip: float
    total: float
    srp_target: float


def _task_values(w: WorkflowGraph, dim: PenaltyDimension) -> list[float]:
    if not w.tasks:
        raise NoTasksError(f"workflow {w.id!r} has no task nodes to aggregate")
    return [getattr(w.tasks[v], dim.value) for v in sorted(w.tasks)]


def aggregate_dimension(w: WorkflowGraph, dim: PenaltyDimension) -> float:
    """Root-mean-square of one annotation dimension over all tasks."""
    values = _task_values(w, dim)
    return math.sqrt(sum(x * x for x in values) / len(values))


def cip(w: WorkflowGraph, cfg: EvaluationConfig) -> float:
    """Cohesion interplay penalty, definitional form."""
    ch_w = aggregate_dimension(w, PenaltyDimension.COHESION)
    cp_w = aggregate_dimension(w, PenaltyDimension.COUPLING)
    return math.sqrt(cfg.alpha_ch * ch_w * ch_w + (1.0 - cfg.alpha_ch) * cp_w * cp_w)


def cip_factorized(w: WorkflowGraph, cfg: EvaluationConfig) -> float:
    """Equivalent form: floor alpha(1-alpha) plus mean squared deviation."""
    values = _task_values(w, PenaltyDimension.COUPLING)
    a = cfg.alpha_ch
    deviation = sum((a - x) * (a - x) for x in values) / len(values)
    return math.sqrt(a * (1.0 - a) + deviation)


def sip(w: WorkflowGraph, cfg: EvaluationConfig) -> float:
    """Observability interplay penalty, definitional form."""
    ob_w = aggregate_dimension(w, PenaltyDimension.OBSERVABILITY)
    ih_w = aggregate_dimension(w, PenaltyDimension.INFORMATION_HYGIENE)
    return math.sqrt(cfg.alpha_ob * ob_w * ob_w + (1.0 - cfg.alpha_ob) * ih_w * ih_w)


def sip_factorized(w: WorkflowGraph, cfg: EvaluationConfig) -> float:
    values = _task_values(w, PenaltyDimension.INFORMATION_HYGIENE)
    a = cfg.alpha_ob
    deviation = sum((a - x) * (a - x) for x in values) / len(values)
    return math.sqrt(a * (1.0 - a) + deviation)


def total_penalty(w: WorkflowGraph, cfg: EvaluationConfig) -> PenaltyBreakdown:
    """All aggregates plus the blended penalty L.

    ``srp_target`` is the per-task coupling level that minimizes CIP for
    the configured mix; by the factorized form it is alpha_ch itself.
    """
    ch_w = aggregate_dimension(w, PenaltyDimension.COHESION)
    cp_w = aggregate_dimension(w, PenaltyDimension.COUPLING)
    ob_w = aggregate_dimension(w, PenaltyDimension.OBSERVABILITY)
    ih_w = aggregate_dimension(w, PenaltyDimension.INFORMATION_HYGIENE)
    cip_w = math.sqrt(cfg.alpha_ch * ch_w * ch_w + (1.0 - cfg.alpha_ch) * cp_w * cp_w)
    sip_w = math.sqrt(cfg.alpha_ob * ob_w * ob_w + (1.0 - cfg.alpha_ob) * ih_w * ih_w)
    total = math.sqrt(cfg.gamma_s * cip_w * cip_w + (1.0 - cfg.gamma_s) * sip_w * sip_w)
    return PenaltyBreakdown(
        ch=ch_w,
        cp=cp_w,
        ob=ob_w,
        ih=ih_w,
        cip=cip_w,
        sip=sip_w,
        total=total,
        srp_target=cfg.alpha_ch,
    )
