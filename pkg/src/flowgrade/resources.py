"""Resource accounting: cumulative spend, critical path, releasable peak.

Three measures summarize what a workflow consumes:

* cumulative resources: componentwise sum of every task's ``r_g``;
* duration: the longest root-to-leaf path by task duration, which equals
  the makespan of the as-soon-as-possible schedule;
* releasable peak: the high-water mark, per releasable dimension, of
  resources held simultaneously under the ASAP schedule.

Activity intervals are half open, ``[start, finish)``: a task that ends
at time t and a task that begins at t never hold resources together, and
zero-duration tasks never hold resources at all.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .graph import WorkflowGraph, topological_order

Vector = tuple[float, ...]


def _zeros(n: int) -> Vector:
    return (0.0,) * n


def _add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def _ceil_max(a: Vector, b: Vector) -> Vector:
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class Schedule:
    """ASAP start/finish times for every task node."""

    entries: dict[str, tuple[float, float]]

    def makespan(self) -> float:
        return max((f for _, f in self.entries.values()), default=0.0)


@dataclass(frozen=True)
class ResourceSummary:
    cumulative: Vector
    duration: float
    releasable_peak: Vector


def cumulative_resources(w: WorkflowGraph) -> Vector:
    """Componentwise total of permanently consumed resources."""
    total = _zeros(len(w.cumulative_dims))
    for v in sorted(w.tasks):  # fixed order for bit-reproducible sums
        total = _add(total, w.tasks[v].r_g)
    return total


def critical_path_duration(w: WorkflowGraph) -> float:
    """Duration of the longest path, counting task durations only."""
    longest = 0.0
    dist: dict[str, float] = {}
    for v in topological_order(w):
        upstream = max((dist[u] for u in w.parents(v)), default=0.0)
        dist[v] = upstream + w.duration_of(v)
        longest = max(longest, dist[v])
    return longest


def asap_schedule(w: WorkflowGraph) -> Schedule:
    """Every task starts the instant its last predecessor finishes.

    Inputs and outputs take no time; a task whose parents are all inputs
    therefore starts at zero.
    """
    finish: dict[str, float] = {}
    entries: dict[str, tuple[float, float]] = {}
    for v in topological_order(w):
        start = max((finish[u] for u in w.parents(v)), default=0.0)
        finish[v] = start + w.duration_of(v)
        if v in w.tasks:
            entries[v] = (start, finish[v])
    return Schedule(entries)


def peak_releasable(w: WorkflowGraph) -> Vector:
    """Componentwise peak of simultaneously held releasable resources.

    Runs the ASAP schedule as a finish-event sweep over a min-heap. All
    events sharing a timestamp are drained together, including the starts
    they trigger, before the peak is updated; this honors the half-open
    activity convention at boundaries where one task replaces another and
    keeps the result independent of heap tie-breaking.
    """
    n = len(w.releasable_dims)
    parents, children = w._adjacency

    def held(v: str) -> Vector:
        attrs = w.tasks.get(v)
        return attrs.r_r if attrs is not None else _zeros(n)

    pending = {v: len(parents[v]) for v in parents}
    current = _zeros(n)
    peak = _zeros(n)
    events: list[tuple[float, str]] = []
    for v in sorted(pending):
        if pending[v] == 0:
            current = _add(current, held(v))
            heapq.heappush(events, (w.duration_of(v), v))

    # Roots are active on [0, first finish); skip when that span is empty.
    if events and events[0][0] > 0.0:
        peak = _ceil_max(peak, current)

    while events:
        t = events[0][0]
        while events and events[0][0] == t:
            _, v = heapq.heappop(events)
            current = _sub(current, held(v))
            for c in children[v]:
                pending[c] -= 1
                if pending[c] == 0:
                    current = _add(current, held(c))
                    heapq.heappush(events, (t + w.duration_of(c), c))
        peak = _ceil_max(peak, current)

    return peak


def resource_summary(w: WorkflowGraph) -> ResourceSummary:
    return ResourceSummary(
        cumulative=cumulative_resources(w),
        duration=critical_path_duration(w),
        releasable_peak=peak_releasable(w),
    )
