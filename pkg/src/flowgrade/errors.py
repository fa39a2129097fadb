"""Exception types shared across the package.

Every failure mode that callers are expected to handle carries a stable
``code`` string, so CLI output and logs can be matched without parsing
human-readable messages.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .graph import ValidationReport


class FlowgradeError(Exception):
    """Base class for all package-specific failures."""

    code = "ERROR"


class CyclicGraphError(FlowgradeError):
    """The edge relation admits no topological order."""

    code = "CYCLIC"

    def __init__(self, remaining: tuple[str, ...] = ()):
        self.remaining = tuple(remaining)
        detail = ", ".join(self.remaining) if self.remaining else "unknown nodes"
        super().__init__(f"edge relation is cyclic among: {detail}")


class DimensionMismatchError(FlowgradeError):
    """A weight vector does not match the graph's dimension registry."""

    code = "DIMENSION_MISMATCH"


class NoTasksError(FlowgradeError):
    """A penalty aggregate was requested for a workflow with no task nodes."""

    code = "NO_TASKS"


class InterfaceMismatchError(FlowgradeError):
    """Candidates in one ranking set do not share an input/output interface."""

    code = "INTERFACE_MISMATCH"


class ProbabilitySumError(FlowgradeError):
    """Scenario probabilities are malformed or do not sum to one."""

    code = "PROBABILITY_SUM"


class InterfaceUnsatisfiedError(FlowgradeError):
    """Sequential composition could not match every downstream input."""

    code = "INTERFACE_UNSATISFIED"

    def __init__(self, unmatched: tuple[str, ...]):
        self.unmatched = tuple(unmatched)
        super().__init__(
            "downstream inputs not satisfied by upstream outputs: "
            + ", ".join(self.unmatched)
        )


class CycleIntroducedError(FlowgradeError):
    """Edge rewiring produced an invalid graph (defensive check)."""

    code = "CYCLE_INTRODUCED"


class NegativeWeightsError(FlowgradeError):
    """Cost axioms are only checked under non-negative weights."""

    code = "NEGATIVE_WEIGHTS"


class WorkflowParseError(FlowgradeError):
    """Input text is not well-formed."""

    code = "PARSE"


class WorkflowSchemaError(FlowgradeError):
    """Input parsed but violates the document schema."""

    code = "SCHEMA"


class WorkflowValidationError(FlowgradeError):
    """A structurally complete graph failed invariant validation."""

    code = "VALIDATION"

    def __init__(self, report: "ValidationReport"):
        self.report = report
        lines = "; ".join(
            f"{v.code.value} at {v.locus}: {v.message}" for v in report.violations
        )
        super().__init__(lines or "validation failed")
