"""Resource measures against brute-force oracles.

Two oracles, both deliberately naive: longest path by full path
enumeration, and peak demand by summing active tasks at every integer
time point. Generated durations and resources are integers, so float
equality is exact.
"""

import random

from flowgrade import (
    WorkflowGraph,
    asap_schedule,
    critical_path_duration,
    cumulative_resources,
    peak_releasable,
    resource_summary,
)
from builders import workflow
from generators import random_workflow


def path_duration_oracle(w: WorkflowGraph) -> float:
    best = 0.0
    sources = [v for v in w.node_ids() if not w.parents(v)]

    def dfs(v: str, acc: float) -> None:
        nonlocal best
        acc += w.duration_of(v)
        best = max(best, acc)
        for c in w.children(v):
            dfs(c, acc)

    for v in sources:
        dfs(v, 0.0)
    return best


def grid_peak_oracle(w: WorkflowGraph) -> tuple[float, ...]:
    """Componentwise max over integer time points of active-task demand.

    Valid when every duration is an integer: usage is piecewise constant
    between integer boundaries, and [s, f) activity means a task counts
    at time t iff s <= t < f.
    """
    start: dict[str, float] = {}
    finish: dict[str, float] = {}

    def arrival(v: str) -> float:
        if v not in finish:
            s = max((arrival(u) for u in w.parents(v)), default=0.0)
            start[v] = s
            finish[v] = s + w.duration_of(v)
        return finish[v]

    for v in w.node_ids():
        arrival(v)
    horizon = int(max(finish.values(), default=0.0))
    n = len(w.releasable_dims)
    peak = [0.0] * n
    for t in range(horizon + 1):
        usage = [0.0] * n
        for v, attrs in w.tasks.items():
            if start[v] <= t < finish[v]:
                for i, x in enumerate(attrs.r_r):
                    usage[i] += x
        for i in range(n):
            peak[i] = max(peak[i], usage[i])
    return tuple(peak)


def staircase():
    # t1 [0,4) holds (2,0); t2 [0,2) holds (1,1); t3 [2,5) holds (3,0)
    return workflow(
        "stairs",
        inputs={"in": {}},
        tasks={
            "t1": {"d": 4.0, "r_r": (2.0, 0.0)},
            "t2": {"d": 2.0, "r_r": (1.0, 1.0)},
            "t3": {"d": 3.0, "r_r": (3.0, 0.0)},
        },
        outputs={"out": {}},
        edges=(("in", "t1"), ("in", "t2"), ("t2", "t3"), ("t1", "out"), ("t3", "out")),
        releasable_dims=("mem", "gpu"),
    )


def test_hand_computed_schedule_and_peak():
    w = staircase()
    sched = asap_schedule(w)
    assert sched.entries == {"t1": (0.0, 4.0), "t2": (0.0, 2.0), "t3": (2.0, 5.0)}
    assert sched.makespan() == 5.0
    # [0,2): 2+1=3 ; [2,4): 2+3=5 ; [4,5): 3
    assert peak_releasable(w) == (5.0, 1.0)
    assert critical_path_duration(w) == 5.0
    assert grid_peak_oracle(w) == (5.0, 1.0)


def test_half_open_boundary_no_double_count():
    # successor starts the instant the holder releases: never concurrent
    w = workflow(
        "handoff",
        inputs={"in": {}},
        tasks={"a": {"d": 3.0, "r_r": (4.0,)}, "b": {"d": 3.0, "r_r": (4.0,)}},
        outputs={"out": {}},
        edges=(("in", "a"), ("a", "b"), ("b", "out")),
        releasable_dims=("mem",),
    )
    assert peak_releasable(w) == (4.0,)


def test_zero_duration_task_holds_nothing():
    w = workflow(
        "instant",
        inputs={"in": {}},
        tasks={"flash": {"d": 0.0, "r_r": (100.0,)}, "slow": {"d": 5.0, "r_r": (1.0,)}},
        outputs={"out": {}},
        edges=(("in", "flash"), ("in", "slow"), ("flash", "out"), ("slow", "out")),
        releasable_dims=("mem",),
    )
    assert peak_releasable(w) == (1.0,)


def test_zero_duration_cascade_within_one_timestamp():
    # flash chain triggered mid-sweep must drain before the peak updates
    w = workflow(
        "cascade",
        inputs={"in": {}},
        tasks={
            "a": {"d": 2.0, "r_r": (3.0,)},
            "f1": {"d": 0.0, "r_r": (50.0,)},
            "f2": {"d": 0.0, "r_r": (50.0,)},
            "b": {"d": 2.0, "r_r": (3.0,)},
        },
        outputs={"out": {}},
        edges=(("in", "a"), ("a", "f1"), ("f1", "f2"), ("f2", "b"), ("b", "out")),
        releasable_dims=("mem",),
    )
    assert peak_releasable(w) == (3.0,)


def test_cumulative_is_plain_sum():
    w = staircase()  # no cumulative registry, so the sum is empty
    assert cumulative_resources(w) == ()
    w2 = workflow(
        "spend",
        inputs={"in": {}},
        tasks={"a": {"r_g": (0.125, 2.0)}, "b": {"r_g": (0.25, 3.0)}},
        outputs={"out": {}},
        edges=(("in", "a"), ("a", "b"), ("b", "out")),
        cumulative_dims=("usd", "calls"),
    )
    assert cumulative_resources(w2) == (0.375, 5.0)


def test_oracle_agreement_on_random_graphs():
    rng = random.Random(31337)
    for _ in range(150):
        w = random_workflow(rng)
        assert critical_path_duration(w) == path_duration_oracle(w)
        assert peak_releasable(w) == grid_peak_oracle(w)


def test_summary_bundles_the_three_measures():
    w = staircase()
    s = resource_summary(w)
    assert s.cumulative == cumulative_resources(w)
    assert s.duration == critical_path_duration(w)
    assert s.releasable_peak == peak_releasable(w)


def test_deleting_a_task_never_increases_cumulative_or_duration():
    rng = random.Random(4242)
    checked = 0
    for _ in range(80):
        w = random_workflow(rng)
        base = resource_summary(w)
        for victim in list(w.tasks):
            smaller = _drop_task(w, victim)
            if smaller is None:
                continue
            checked += 1
            reduced = resource_summary(smaller)
            assert all(
                x <= y for x, y in zip(reduced.cumulative, base.cumulative)
            )
            assert reduced.duration <= base.duration
    assert checked > 100


def test_deleting_a_task_can_increase_peak():
    # removing the sequencer lets both holders run concurrently: peak
    # demand is NOT monotone under task deletion, unlike the other two
    # measures
    w = workflow(
        "sequencer",
        inputs={"in": {}},
        tasks={
            "a": {"d": 10.0, "r_r": (5.0,)},
            "x": {"d": 10.0, "r_r": (0.0,)},
            "b": {"d": 10.0, "r_r": (5.0,)},
        },
        outputs={"out": {}},
        edges=(("in", "a"), ("in", "x"), ("x", "b"), ("a", "out"), ("b", "out")),
        releasable_dims=("mem",),
    )
    assert peak_releasable(w) == (5.0,)
    smaller = _drop_task(w, "x")
    assert smaller is not None
    assert peak_releasable(smaller) == (10.0,)


def _drop_task(w: WorkflowGraph, victim: str) -> WorkflowGraph | None:
    """Remove a task, splicing parents to children; None if that breaks
    another node's degree requirements."""
    parents = [u for u in w.parents(victim) if u not in w.outputs]
    children = [v for v in w.children(victim) if v not in w.inputs]
    edges = {e for e in w.edges if victim not in e}
    edges.update((u, v) for u in parents for v in children if u != v)
    tasks = {k: t for k, t in w.tasks.items() if k != victim}
    if not tasks:
        return None
    candidate = WorkflowGraph(
        id=f"{w.id}-minus-{victim}",
        inputs=dict(w.inputs),
        tasks=tasks,
        outputs=dict(w.outputs),
        edges=tuple(edges),
        cumulative_dims=w.cumulative_dims,
        releasable_dims=w.releasable_dims,
    )
    from flowgrade import validate

    return candidate if validate(candidate).ok else None
