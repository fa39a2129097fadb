"""Evaluate, rank, and compose workflow graphs.

A workflow is a DAG of inputs, tasks, and outputs annotated with success
probabilities, durations, resource demands, and structural quality
scores. This package computes its expected reward and normative penalty,
orders candidate workflows lexicographically, and combines workflows in
parallel or in sequence, with strict JSON documents and a CLI on top.
"""

from .casestudy import (
    CASE_STUDY_EXACT_GAIN,
    CASE_STUDY_EXPECTATIONS,
    CASE_STUDY_FIXTURES,
    CaseStudyExpectation,
    case_study_config,
    case_study_workflows,
    conditional_example,
    load_workflow_fixture,
)
from .compose import (
    AxiomCheck,
    CompositionResult,
    CostAxiomReport,
    cost_axiom_suite,
    parallel,
    sequential,
    strong_equivalent,
    weak_equivalent,
    witness_checks,
)
from .errors import (
    CycleIntroducedError,
    CyclicGraphError,
    DimensionMismatchError,
    FlowgradeError,
    InterfaceMismatchError,
    InterfaceUnsatisfiedError,
    NegativeWeightsError,
    NoTasksError,
    ProbabilitySumError,
    WorkflowParseError,
    WorkflowSchemaError,
    WorkflowValidationError,
)
from .evaluate import EvaluationReport, evaluate_workflow
from .figures import render_metrics_figure
from .graph import (
    InputAttributes,
    OutputAttributes,
    TaskAttributes,
    ValidationReport,
    Violation,
    ViolationCode,
    WorkflowGraph,
    interface_signature,
    topological_order,
    validate,
)
from .io import (
    emit_workflow,
    load_config,
    load_scenarios,
    load_workflow,
    parse_config,
    parse_scenarios,
    parse_workflow,
    parse_workflow_unvalidated,
    workflow_to_document,
)
from .penalty import (
    PenaltyBreakdown,
    PenaltyDimension,
    aggregate_dimension,
    cip,
    cip_factorized,
    sip,
    sip_factorized,
    total_penalty,
)
from .ranking import (
    CandidateSet,
    ConditionalWorkflow,
    Ordering,
    RankingResult,
    compare,
    conditional_reward,
    distance,
    rank_candidates,
    select_optimal,
)
from .reporting import SamplerEcho, emit_report
from .resources import (
    ResourceSummary,
    Schedule,
    asap_schedule,
    critical_path_duration,
    cumulative_resources,
    peak_releasable,
    resource_summary,
)
from .reward import (
    SAMPLER_ALGORITHM,
    EvaluationConfig,
    RewardBreakdown,
    cost,
    expected_reward,
    sample_net_benefit,
)
from .success import node_success, workflow_success

__version__ = "0.1.0"

__all__ = [
    "AxiomCheck",
    "CASE_STUDY_EXACT_GAIN",
    "CASE_STUDY_EXPECTATIONS",
    "CASE_STUDY_FIXTURES",
    "CandidateSet",
    "CaseStudyExpectation",
    "CompositionResult",
    "ConditionalWorkflow",
    "CostAxiomReport",
    "CycleIntroducedError",
    "CyclicGraphError",
    "DimensionMismatchError",
    "EvaluationConfig",
    "EvaluationReport",
    "FlowgradeError",
    "InputAttributes",
    "InterfaceMismatchError",
    "InterfaceUnsatisfiedError",
    "NegativeWeightsError",
    "NoTasksError",
    "Ordering",
    "OutputAttributes",
    "PenaltyBreakdown",
    "PenaltyDimension",
    "ProbabilitySumError",
    "RankingResult",
    "ResourceSummary",
    "RewardBreakdown",
    "SAMPLER_ALGORITHM",
    "SamplerEcho",
    "Schedule",
    "TaskAttributes",
    "ValidationReport",
    "Violation",
    "ViolationCode",
    "WorkflowGraph",
    "WorkflowParseError",
    "WorkflowSchemaError",
    "WorkflowValidationError",
    "aggregate_dimension",
    "asap_schedule",
    "case_study_config",
    "case_study_workflows",
    "cip",
    "cip_factorized",
    "compare",
    "conditional_example",
    "conditional_reward",
    "cost",
    "cost_axiom_suite",
    "critical_path_duration",
    "cumulative_resources",
    "distance",
    "emit_report",
    "emit_workflow",
    "evaluate_workflow",
    "expected_reward",
    "interface_signature",
    "load_config",
    "load_scenarios",
    "load_workflow",
    "load_workflow_fixture",
    "node_success",
    "parallel",
    "parse_config",
    "parse_scenarios",
    "parse_workflow",
    "parse_workflow_unvalidated",
    "peak_releasable",
    "rank_candidates",
    "render_metrics_figure",
    "resource_summary",
    "sample_net_benefit",
    "select_optimal",
    "sequential",
    "sip",
    "sip_factorized",
    "strong_equivalent",
    "topological_order",
    "total_penalty",
    "validate",
    "weak_equivalent",
    "witness_checks",
    "workflow_success",
    "workflow_to_document",
]
