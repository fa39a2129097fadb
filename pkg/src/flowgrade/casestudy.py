"""Bundled case study fixtures and their published reference figures.

Three variants of a support ticket pipeline, the evaluation config they
were priced under, and the figures the engine must reproduce: costs to
1e-12, critical path durations exactly, success probabilities to 1e-4
(the references are rounded to four places), rewards to 5e-4.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib.resources import files

from .graph import WorkflowGraph
from .io import parse_config, parse_workflow, workflow_from_document
from .ranking import ConditionalWorkflow
from .reward import EvaluationConfig

import json

CASE_STUDY_FIXTURES = ("workflow1.json", "workflow2.json", "workflow3.json")

# The alternative gain level discussed alongside the headline 0.92: the
# reference rewards are quoted at 0.92, so 0.915 is reported separately
# rather than substituted into the fixtures.
CASE_STUDY_EXACT_GAIN = 0.915


def _fixture_bytes(name: str) -> bytes:
    return (files(__package__) / "fixtures" / name).read_bytes()


def load_workflow_fixture(name: str) -> WorkflowGraph:
    """Load one bundled workflow document by file name."""
    return parse_workflow(_fixture_bytes(name))


def case_study_workflows() -> tuple[WorkflowGraph, WorkflowGraph, WorkflowGraph]:
    return tuple(load_workflow_fixture(n) for n in CASE_STUDY_FIXTURES)


def case_study_config() -> EvaluationConfig:
    return parse_config(_fixture_bytes("case_study_config.json"))


def conditional_example() -> ConditionalWorkflow:
    doc = json.loads(_fixture_bytes("conditional_example.json"))
    pairs = []
    for entry in doc["scenarios"]:
        w = parse_workflow(_fixture_bytes(entry["path"]))
        pairs.append((w, float(entry["probability"])))
    return ConditionalWorkflow(scenarios=tuple(pairs))


@dataclass(frozen=True)
class CaseStudyExpectation:
    workflow_id: str
    cost: float
    max_duration_ms: float
    success_probability: float
    reward: float


COST_TOLERANCE = 1e-12
DURATION_TOLERANCE = 0.0
SUCCESS_TOLERANCE = 1e-4
REWARD_TOLERANCE = 5e-4

CASE_STUDY_EXPECTATIONS = (
    CaseStudyExpectation(
        workflow_id="workflow-1",
        cost=2.52e-3,
        max_duration_ms=6110.0,
        success_probability=0.9262,
        reward=0.8495,
    ),
    CaseStudyExpectation(
        workflow_id="workflow-2",
        cost=9.6e-4,
        max_duration_ms=3810.0,
        success_probability=0.925,
        reward=0.85,
    ),
    CaseStudyExpectation(
        workflow_id="workflow-3",
        cost=9.6e-4,
        max_duration_ms=3810.0,
        success_probability=0.925,
        reward=0.85,
    ),
)
