"""Workflow DAG data model and structural validation.

A workflow couples a directed acyclic graph with per-node attribute
records. Nodes come in three roles: input nodes inject external data,
task nodes transform it, and output nodes collect the results that carry
business value. Task resource vectors are indexed by the graph's two
dimension registries: cumulative dimensions are consumed permanently
(for example dollars), releasable dimensions are held while a task runs
and returned when it finishes (for example memory).

Graphs are value objects: construct once, never mutate, share freely.
:func:`validate` accepts arbitrary candidate structures and reports every
violated invariant as data instead of raising on the first problem.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

from .errors import CyclicGraphError

Edge = tuple[str, str]

INPUT_ROLE = "input"
TASK_ROLE = "task"
OUTPUT_ROLE = "output"


@dataclass(frozen=True)
class InputAttributes:
    """External entry point.

    ``pi`` is the probability that the supplied datum is correct, ``tau``
    an opaque schema identifier used for interface matching. An empty
    ``tau`` means the schema is undeclared and matches anything.
    """

    pi: float = 1.0
    tau: str = ""
    comment: str = ""


@dataclass(frozen=True)
class TaskAttributes:
    """A unit of work.

    ``p`` is the probability the task produces a correct result when every
    upstream result it reads is correct; ``q`` is the degraded probability
    when at least one upstream result is wrong. ``r_g`` is spent for good
    on execution, ``r_r`` is held for the task's duration ``d`` (milliseconds)
    and released at completion. ``iota`` names the implementation and is
    otherwise opaque.

    ``cp`` (coupling) and ``ih`` (information hygiene penalty) are
    structural-quality annotations in [0, 1]; cohesion and observability
    are their complements and are derived, never stored.
    """

    p: float = 1.0
    q: float = 0.0
    r_g: tuple[float, ...] = ()
    d: float = 0.0
    r_r: tuple[float, ...] = ()
    iota: str = ""
    cp: float = 0.5
    ih: float = 0.5
    provenance: str = ""
    comment: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "r_g", tuple(float(x) for x in self.r_g))
        object.__setattr__(self, "r_r", tuple(float(x) for x in self.r_r))

    @property
    def ch(self) -> float:
        """Cohesion, the complement of coupling."""
        return 1.0 - self.cp

    @property
    def ob(self) -> float:
        """Observability penalty, the complement of information hygiene."""
        return 1.0 - self.ih


@dataclass(frozen=True)
class OutputAttributes:
    """Terminal result slot with the gain realized when it is correct."""

    gain: float = 0.0
    tau: str = ""
    comment: str = ""


@dataclass(frozen=True)
class WorkflowGraph:
    """Immutable workflow value.

    Node ids are the single namespace shared by all three role maps; the
    roles must partition the id set for the graph to validate. Edges are
    stored in canonical sorted order so that structurally equal graphs
    compare equal regardless of authoring order.
    """

    id: str
    inputs: dict[str, InputAttributes] = field(default_factory=dict)
    tasks: dict[str, TaskAttributes] = field(default_factory=dict)
    outputs: dict[str, OutputAttributes] = field(default_factory=dict)
    edges: tuple[Edge, ...] = ()
    cumulative_dims: tuple[str, ...] = ()
    releasable_dims: tuple[str, ...] = ()
    comment: str = ""

    def __post_init__(self) -> None:
        canon = tuple(sorted((str(u), str(v)) for u, v in self.edges))
        object.__setattr__(self, "edges", canon)
        object.__setattr__(self, "cumulative_dims", tuple(self.cumulative_dims))
        object.__setattr__(self, "releasable_dims", tuple(self.releasable_dims))

    # -- node access ------------------------------------------------

    def node_ids(self) -> tuple[str, ...]:
        return tuple(sorted([*self.inputs, *self.tasks, *self.outputs]))

    def has_node(self, v: str) -> bool:
        return v in self.inputs or v in self.tasks or v in self.outputs

    def role_of(self, v: str) -> str:
        if v in self.inputs:
            return INPUT_ROLE
        if v in self.tasks:
            return TASK_ROLE
        if v in self.outputs:
            return OUTPUT_ROLE
        raise KeyError(v)

    @cached_property
    def _adjacency(self) -> tuple[dict[str, tuple[str, ...]], dict[str, tuple[str, ...]]]:
        # Edges whose endpoints are missing are skipped here; validate()
        # reports them. Duplicate edges collapse for traversal purposes.
        parents: dict[str, set[str]] = {v: set() for v in self.node_ids()}
        children: dict[str, set[str]] = {v: set() for v in self.node_ids()}
        for u, v in self.edges:
            if self.has_node(u) and self.has_node(v) and u != v:
                parents[v].add(u)
                children[u].add(v)
        return (
            {v: tuple(sorted(ps)) for v, ps in parents.items()},
            {v: tuple(sorted(cs)) for v, cs in children.items()},
        )

    def parents(self, v: str) -> tuple[str, ...]:
        """Direct predecessors of ``v`` in node-id order."""
        return self._adjacency[0][v]

    def children(self, v: str) -> tuple[str, ...]:
        return self._adjacency[1][v]

    def duration_of(self, v: str) -> float:
        """Task duration; inputs and outputs take no time."""
        attrs = self.tasks.get(v)
        return attrs.d if attrs is not None else 0.0


def interface_signature(
    w: WorkflowGraph,
) -> tuple[frozenset[tuple[str, str]], frozenset[tuple[str, str]]]:
    """The (inputs, outputs) identity of a workflow: node id paired with tau."""
    ins = frozenset((v, a.tau) for v, a in w.inputs.items())
    outs = frozenset((v, a.tau) for v, a in w.outputs.items())
    return ins, outs


class ViolationCode(str, Enum):
    DUPLICATE_NODE = "DUPLICATE_NODE"
    DUPLICATE_DIM = "DUPLICATE_DIM"
    EDGE_ENDPOINT_MISSING = "EDGE_ENDPOINT_MISSING"
    SELF_EDGE = "SELF_EDGE"
    DUPLICATE_EDGE = "DUPLICATE_EDGE"
    CYCLE = "CYCLE"
    INPUT_HAS_INEDGE = "INPUT_HAS_INEDGE"
    OUTPUT_HAS_OUTEDGE = "OUTPUT_HAS_OUTEDGE"
    TASK_NO_INEDGE = "TASK_NO_INEDGE"
    TASK_NO_OUTEDGE = "TASK_NO_OUTEDGE"
    ATTR_RANGE = "ATTR_RANGE"
    DIM_MISMATCH = "DIM_MISMATCH"
    TYPE_MISMATCH = "TYPE_MISMATCH"


@dataclass(frozen=True)
class Violation:
    code: ViolationCode
    locus: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]


def _declared_tau(w: WorkflowGraph, v: str) -> str:
    if v in w.inputs:
        return w.inputs[v].tau
    if v in w.outputs:
        return w.outputs[v].tau
    return ""  # tasks carry no schema


def validate(w: WorkflowGraph) -> ValidationReport:
    """Check every structural invariant and report all violations.

    Pure and idempotent; never raises on malformed candidates. A graph
    with ``ok`` true is safe input for every analysis in this package.
    """
    violations: list[Violation] = []

    def flag(code: ViolationCode, locus: str, message: str) -> None:
        violations.append(Violation(code, locus, message))

    role_count: dict[str, list[str]] = {}
    for role, ids in (
        (INPUT_ROLE, w.inputs),
        (TASK_ROLE, w.tasks),
        (OUTPUT_ROLE, w.outputs),
    ):
        for v in ids:
            role_count.setdefault(v, []).append(role)
    for v in sorted(role_count):
        if len(role_count[v]) > 1:
            flag(
                ViolationCode.DUPLICATE_NODE,
                v,
                f"node id declared under roles {', '.join(role_count[v])}",
            )

    for label, dims in (
        ("cumulative_dims", w.cumulative_dims),
        ("releasable_dims", w.releasable_dims),
    ):
        if len(set(dims)) != len(dims):
            flag(ViolationCode.DUPLICATE_DIM, label, "dimension names repeat")

    seen: set[Edge] = set()
    in_deg: dict[str, int] = {v: 0 for v in role_count}
    out_deg: dict[str, int] = {v: 0 for v in role_count}
    for u, v in w.edges:
        locus = f"{u}->{v}"
        if u == v:
            flag(ViolationCode.SELF_EDGE, locus, "edge joins a node to itself")
            continue
        missing = [x for x in (u, v) if x not in role_count]
        if missing:
            flag(
                ViolationCode.EDGE_ENDPOINT_MISSING,
                locus,
                f"unknown node(s): {', '.join(missing)}",
            )
            continue
        if (u, v) in seen:
            flag(ViolationCode.DUPLICATE_EDGE, locus, "edge listed more than once")
            continue
        seen.add((u, v))
        in_deg[v] += 1
        out_deg[u] += 1
        tau_u, tau_v = _declared_tau(w, u), _declared_tau(w, v)
        if tau_u and tau_v and tau_u != tau_v:
            flag(
                ViolationCode.TYPE_MISMATCH,
                locus,
                f"declared schemas differ: {tau_u!r} vs {tau_v!r}",
            )

    for v in sorted(w.inputs):
        if in_deg.get(v, 0) > 0:
            flag(ViolationCode.INPUT_HAS_INEDGE, v, "input node has incoming edges")
    for v in sorted(w.outputs):
        if out_deg.get(v, 0) > 0:
            flag(ViolationCode.OUTPUT_HAS_OUTEDGE, v, "output node has outgoing edges")
    for v in sorted(w.tasks):
        if in_deg.get(v, 0) == 0:
            flag(ViolationCode.TASK_NO_INEDGE, v, "task node reads nothing")
        if out_deg.get(v, 0) == 0:
            flag(ViolationCode.TASK_NO_OUTEDGE, v, "task node feeds nothing")

    def check_unit(locus: str, name: str, x: float) -> None:
        if not 0.0 <= x <= 1.0:
            flag(ViolationCode.ATTR_RANGE, locus, f"{name}={x!r} outside [0, 1]")

    def check_vector(locus: str, name: str, vec: tuple[float, ...], dims: tuple[str, ...]) -> None:
        if len(vec) != len(dims):
            flag(
                ViolationCode.DIM_MISMATCH,
                locus,
                f"{name} has {len(vec)} entries, registry declares {len(dims)}",
            )
        for i, x in enumerate(vec):
            if x < 0.0:
                flag(ViolationCode.ATTR_RANGE, locus, f"{name}[{i}]={x!r} negative")

    for v in sorted(w.inputs):
        check_unit(v, "pi", w.inputs[v].pi)
    for v in sorted(w.tasks):
        t = w.tasks[v]
        check_unit(v, "p", t.p)
        check_unit(v, "q", t.q)
        check_unit(v, "cp", t.cp)
        check_unit(v, "ih", t.ih)
        if t.d < 0.0:
            flag(ViolationCode.ATTR_RANGE, v, f"d={t.d!r} negative")
        check_vector(v, "r_g", t.r_g, w.cumulative_dims)
        check_vector(v, "r_r", t.r_r, w.releasable_dims)
    for v in sorted(w.outputs):
        if w.outputs[v].gain < 0.0:
            flag(ViolationCode.ATTR_RANGE, v, f"gain={w.outputs[v].gain!r} negative")

    leftover = _kahn_leftover(w)
    if leftover:
        flag(
            ViolationCode.CYCLE,
            ", ".join(leftover),
            "edge relation contains a cycle through these nodes",
        )

    return ValidationReport(ok=not violations, violations=tuple(violations))


def _kahn_leftover(w: WorkflowGraph) -> tuple[str, ...]:
    """Node ids that a Kahn sweep cannot order, i.e. the cyclic core."""
    parents, children = w._adjacency
    pending = {v: len(parents[v]) for v in parents}
    ready = [v for v in sorted(pending) if pending[v] == 0]
    heapq.heapify(ready)
    done = 0
    while ready:
        v = heapq.heappop(ready)
        done += 1
        for c in children[v]:
            pending[c] -= 1
            if pending[c] == 0:
                heapq.heappush(ready, c)
    if done == len(pending):
        return ()
    return tuple(sorted(v for v, n in pending.items() if n > 0))


def topological_order(w: WorkflowGraph) -> list[str]:
    """Deterministic topological order, ties broken by node id.

    Raises :class:`CyclicGraphError` when the edge relation is cyclic.
    """
    parents, children = w._adjacency
    pending = {v: len(parents[v]) for v in parents}
    ready = [v for v in sorted(pending) if pending[v] == 0]
    heapq.heapify(ready)
    order: list[str] = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for c in children[v]:
            pending[c] -= 1
            if pending[c] == 0:
                heapq.heappush(ready, c)
    if len(order) != len(pending):
        raise CyclicGraphError(tuple(sorted(v for v, n in pending.items() if n > 0)))
    return order
