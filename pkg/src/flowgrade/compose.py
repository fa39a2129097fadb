"""Composition algebra: parallel and sequential joins, equivalences, axioms.

Parallel composition is a disjoint union: both workflows run side by
side, sharing nothing. Sequential composition plugs one workflow's
outputs into another's inputs: each downstream input must match an
upstream output by node id and declared schema, the matched interface
nodes disappear entirely, and every producer of a matched output is wired
directly to every consumer of the matching input.

Node id collisions between operands are resolved by canonically
relabeling the second operand (numeric suffixes, deterministic). The
second operand always yields, so compositions that are symmetric on
disjoint id sets acquire an operand-order artifact when ids collide;
costs are unaffected either way.

Dimension registries may differ between operands; the composite uses the
name union (first operand's order, then unseen names from the second)
and zero-fills remapped resource vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import networkx as nx

from .errors import (
    CycleIntroducedError,
    InterfaceUnsatisfiedError,
    NegativeWeightsError,
    WorkflowValidationError,
)
from .graph import (
    Edge,
    InputAttributes,
    OutputAttributes,
    TaskAttributes,
    ViolationCode,
    WorkflowGraph,
    interface_signature,
    validate,
)
from .reward import EvaluationConfig, cost


@dataclass(frozen=True)
class CompositionResult:
    """A composed workflow plus the bookkeeping of how it was built.

    ``relabel_map`` covers every surviving node of the second operand
    (identity entries included); ``removed_interface`` lists the matched
    node ids eliminated by a sequential join.
    """

    workflow: WorkflowGraph
    relabel_map: dict[str, str]
    removed_interface: frozenset[str]
    bridge_edges: frozenset[Edge]


def _merge_dims(a: tuple[str, ...], b: tuple[str, ...]) -> tuple[str, ...]:
    return a + tuple(d for d in b if d not in a)


def _remap_vector(
    vec: tuple[float, ...], src: tuple[str, ...], dst: tuple[str, ...]
) -> tuple[float, ...]:
    by_name = dict(zip(src, vec))
    return tuple(by_name.get(d, 0.0) for d in dst)


def _remap_task(
    t: TaskAttributes,
    src_c: tuple[str, ...],
    src_r: tuple[str, ...],
    dst_c: tuple[str, ...],
    dst_r: tuple[str, ...],
) -> TaskAttributes:
    if src_c == dst_c and src_r == dst_r:
        return t
    return TaskAttributes(
        p=t.p,
        q=t.q,
        r_g=_remap_vector(t.r_g, src_c, dst_c),
        d=t.d,
        r_r=_remap_vector(t.r_r, src_r, dst_r),
        iota=t.iota,
        cp=t.cp,
        ih=t.ih,
        provenance=t.provenance,
        comment=t.comment,
    )


def _relabel(ids: Sequence[str], taken: set[str]) -> dict[str, str]:
    """Injective renaming of ``ids`` away from ``taken``, deterministic."""
    mapping: dict[str, str] = {}
    for v in sorted(ids):
        fresh = v
        k = 2
        while fresh in taken:
            fresh = f"{v}_{k}"
            k += 1
        mapping[v] = fresh
        taken.add(fresh)
    return mapping


def parallel(a: WorkflowGraph, b: WorkflowGraph) -> CompositionResult:
    """Disjoint union of two valid workflows; never fails."""
    dims_c = _merge_dims(a.cumulative_dims, b.cumulative_dims)
    dims_r = _merge_dims(a.releasable_dims, b.releasable_dims)
    taken = set(a.node_ids())
    mapping = _relabel(b.node_ids(), taken)

    inputs = {v: attrs for v, attrs in a.inputs.items()}
    outputs = {v: attrs for v, attrs in a.outputs.items()}
    tasks = {
        v: _remap_task(t, a.cumulative_dims, a.releasable_dims, dims_c, dims_r)
        for v, t in a.tasks.items()
    }
    for v, attrs in b.inputs.items():
        inputs[mapping[v]] = attrs
    for v, attrs in b.outputs.items():
        outputs[mapping[v]] = attrs
    for v, t in b.tasks.items():
        tasks[mapping[v]] = _remap_task(
            t, b.cumulative_dims, b.releasable_dims, dims_c, dims_r
        )

    edges = list(a.edges) + [(mapping[u], mapping[v]) for u, v in b.edges]
    composed = WorkflowGraph(
        id=f"par({a.id},{b.id})",
        inputs=inputs,
        tasks=tasks,
        outputs=outputs,
        edges=tuple(edges),
        cumulative_dims=dims_c,
        releasable_dims=dims_r,
    )
    return CompositionResult(
        workflow=composed,
        relabel_map=mapping,
        removed_interface=frozenset(),
        bridge_edges=frozenset(),
    )


def sequential(a: WorkflowGraph, b: WorkflowGraph) -> CompositionResult:
    """Feed ``a`` into ``b``.

    Every input of ``b`` must match an output of ``a`` by id, with
    compatible declared schemas (an empty tau matches anything). Matched
    nodes are removed and replaced by direct producer-to-consumer edges.
    Raises :class:`InterfaceUnsatisfiedError` listing unmatched inputs,
    and reports rather than repairs the rare operand shapes whose rewiring
    yields an invalid composite.
    """
    unmatched = []
    for v in sorted(b.inputs):
        out = a.outputs.get(v)
        tau_in = b.inputs[v].tau
        if out is None or (tau_in and out.tau and tau_in != out.tau):
            unmatched.append(v)
    if unmatched:
        raise InterfaceUnsatisfiedError(tuple(unmatched))
    interface = frozenset(b.inputs)

    dims_c = _merge_dims(a.cumulative_dims, b.cumulative_dims)
    dims_r = _merge_dims(a.releasable_dims, b.releasable_dims)
    taken = set(a.node_ids())
    survivors = [v for v in b.node_ids() if v not in interface]
    mapping = _relabel(survivors, taken)

    inputs = dict(a.inputs)
    tasks = {
        v: _remap_task(t, a.cumulative_dims, a.releasable_dims, dims_c, dims_r)
        for v, t in a.tasks.items()
    }
    outputs = {v: attrs for v, attrs in a.outputs.items() if v not in interface}
    for v, t in b.tasks.items():
        tasks[mapping[v]] = _remap_task(
            t, b.cumulative_dims, b.releasable_dims, dims_c, dims_r
        )
    for v, attrs in b.outputs.items():
        outputs[mapping[v]] = attrs

    edges: set[Edge] = {e for e in a.edges if e[1] not in interface}
    edges.update(
        (mapping[u], mapping[v]) for u, v in b.edges if u not in interface
    )
    bridges: set[Edge] = set()
    for v in sorted(interface):
        producers = [u for u, x in a.edges if x == v]
        consumers = [mapping[x] for u, x in b.edges if u == v]
        bridges.update((p, c) for p in producers for c in consumers)
    edges.update(bridges)

    composed = WorkflowGraph(
        id=f"seq({a.id},{b.id})",
        inputs=inputs,
        tasks=tasks,
        outputs=outputs,
        edges=tuple(edges),
        cumulative_dims=dims_c,
        releasable_dims=dims_r,
    )
    report = validate(composed)
    if not report.ok:
        if any(v.code is ViolationCode.CYCLE for v in report.violations):
            raise CycleIntroducedError("rewiring produced a cyclic edge relation")
        raise WorkflowValidationError(report)
    return CompositionResult(
        workflow=composed,
        relabel_map=mapping,
        removed_interface=interface,
        bridge_edges=frozenset(bridges),
    )


def weak_equivalent(a: WorkflowGraph, b: WorkflowGraph) -> bool:
    """Same input and output interface, by node id and declared schema."""
    return interface_signature(a) == interface_signature(b)


def _iso_graph(w: WorkflowGraph) -> "nx.DiGraph":
    g = nx.DiGraph()
    for v, attrs in w.inputs.items():
        g.add_node(v, fingerprint=("input", attrs.pi, attrs.tau))
    for v, t in w.tasks.items():
        g.add_node(v, fingerprint=("task", t.p, t.q, t.r_g, t.d, t.r_r))
    for v, attrs in w.outputs.items():
        g.add_node(v, fingerprint=("output", attrs.gain, attrs.tau))
    g.add_edges_from(w.edges)
    return g


def strong_equivalent(a: WorkflowGraph, b: WorkflowGraph) -> bool:
    """Conservative behavioral equality check.

    True requires matching interfaces, identical dimension registries,
    and an isomorphism preserving every behavior-bearing attribute
    (pi, p, q, durations, resource vectors, gains). Implementation labels
    and structural annotations are ignored: they do not change what the
    workflow computes. A False result is not a proof of difference; this
    is a sufficient check, not a decision procedure.
    """
    if not weak_equivalent(a, b):
        return False
    if a.cumulative_dims != b.cumulative_dims or a.releasable_dims != b.releasable_dims:
        return False
    return nx.is_isomorphic(
        _iso_graph(a),
        _iso_graph(b),
        node_match=lambda x, y: x["fingerprint"] == y["fingerprint"],
    )


# ---------------------------------------------------------------------
# Cost axiom suite
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomCheck:
    axiom: str
    subject: str
    holds: bool
    detail: str


@dataclass(frozen=True)
class CostAxiomReport:
    checks: tuple[AxiomCheck, ...]
    ok: bool


_SUB_ADDITIVITY_SLACK = 1e-12

# Fixed configuration under which the bundled witnesses are exhibited.
_WITNESS_CONFIG = EvaluationConfig(w_g=(1.0,), w_d=1.0, w_r=(1.0,))
_WITNESS_DIMS_C = ("credits",)
_WITNESS_DIMS_R = ("slots",)


def _witness_graph(gid, inputs, tasks, outputs, edges) -> WorkflowGraph:
    return WorkflowGraph(
        id=gid,
        inputs=inputs,
        tasks=tasks,
        outputs=outputs,
        edges=edges,
        cumulative_dims=_WITNESS_DIMS_C,
        releasable_dims=_WITNESS_DIMS_R,
    )


def _task(d=0.0, rg=0.0, rr=0.0) -> TaskAttributes:
    return TaskAttributes(d=d, r_g=(rg,), r_r=(rr,))


def _context_seq_witnesses() -> tuple[WorkflowGraph, WorkflowGraph, WorkflowGraph]:
    # Two equal-cost producers whose slow branch sits on opposite sides,
    # and a consumer whose slow branch extends only one of them.
    v1 = _witness_graph(
        "ctx-producer-1",
        {"src": InputAttributes(tau="packet")},
        {"left_slow": _task(d=10.0, rg=1.0), "right_quick": _task(d=2.0)},
        {"mid_left": OutputAttributes(tau="packet"), "mid_right": OutputAttributes(tau="packet")},
        (
            ("src", "left_slow"),
            ("src", "right_quick"),
            ("left_slow", "mid_left"),
            ("right_quick", "mid_right"),
        ),
    )
    v2 = _witness_graph(
        "ctx-producer-2",
        {"src": InputAttributes(tau="packet")},
        {"left_quick": _task(d=2.0, rg=1.0), "right_slow": _task(d=10.0)},
        {"mid_left": OutputAttributes(tau="packet"), "mid_right": OutputAttributes(tau="packet")},
        (
            ("src", "left_quick"),
            ("src", "right_slow"),
            ("left_quick", "mid_left"),
            ("right_slow", "mid_right"),
        ),
    )
    consumer = _witness_graph(
        "ctx-consumer",
        {
            "mid_left": InputAttributes(tau="packet"),
            "mid_right": InputAttributes(tau="packet"),
        },
        {"after_left": _task(d=10.0), "after_right": _task(d=2.0)},
        {"final": OutputAttributes(tau="record")},
        (
            ("mid_left", "after_left"),
            ("mid_right", "after_right"),
            ("after_left", "final"),
            ("after_right", "final"),
        ),
    )
    return v1, v2, consumer


def _context_par_witnesses() -> tuple[WorkflowGraph, WorkflowGraph, WorkflowGraph]:
    # Equal-cost holders whose resource window sits early vs late; a probe
    # holding the same resource early overlaps only one of them.
    v1 = _witness_graph(
        "hold-early",
        {"src": InputAttributes()},
        {"warmup": _task(d=1.0, rg=4.0), "holder_early": _task(d=1.0, rr=4.0)},
        {"sink": OutputAttributes()},
        (("src", "warmup"), ("warmup", "holder_early"), ("holder_early", "sink")),
    )
    v2 = _witness_graph(
        "hold-late",
        {"src": InputAttributes()},
        {"long_warmup": _task(d=5.0), "holder_late": _task(d=1.0, rr=4.0)},
        {"sink": OutputAttributes()},
        (("src", "long_warmup"), ("long_warmup", "holder_late"), ("holder_late", "sink")),
    )
    probe = _witness_graph(
        "probe",
        {"probe_src": InputAttributes()},
        {"probe_hold": _task(d=3.0, rr=4.0)},
        {"probe_sink": OutputAttributes()},
        (("probe_src", "probe_hold"), ("probe_hold", "probe_sink")),
    )
    return v1, v2, probe


def _order_witnesses() -> tuple[WorkflowGraph, WorkflowGraph]:
    # Interfaces match in both directions; critical paths do not.
    first = _witness_graph(
        "ring-a",
        {"feed": InputAttributes(tau="t")},
        {"slow_leg": _task(d=10.0), "quick_leg": _task(d=1.0)},
        {"left": OutputAttributes(tau="t"), "right": OutputAttributes(tau="t")},
        (
            ("feed", "slow_leg"),
            ("feed", "quick_leg"),
            ("slow_leg", "left"),
            ("quick_leg", "right"),
        ),
    )
    second = _witness_graph(
        "ring-b",
        {"left": InputAttributes(tau="t"), "right": InputAttributes(tau="t")},
        {"join_quick": _task(d=1.0), "join_slow": _task(d=10.0)},
        {"feed": OutputAttributes(tau="t")},
        (
            ("left", "join_quick"),
            ("right", "join_slow"),
            ("join_quick", "feed"),
            ("join_slow", "feed"),
        ),
    )
    return first, second


def _implementation_witnesses() -> tuple[WorkflowGraph, WorkflowGraph]:
    v1, _, _ = _context_seq_witnesses()
    slower = _witness_graph(
        "ctx-producer-slower",
        {"src": InputAttributes(tau="packet")},
        {"left_slow": _task(d=20.0, rg=1.0), "right_quick": _task(d=2.0)},
        {"mid_left": OutputAttributes(tau="packet"), "mid_right": OutputAttributes(tau="packet")},
        (
            ("src", "left_slow"),
            ("src", "right_quick"),
            ("left_slow", "mid_left"),
            ("right_quick", "mid_right"),
        ),
    )
    return v1, slower


def witness_checks() -> tuple[AxiomCheck, ...]:
    """Demonstrations of the existential cost axioms on bundled graphs.

    These run under a fixed internal configuration (unit weights on every
    term) because the constructions price durations and held resources.
    """
    cfg = _WITNESS_CONFIG
    checks: list[AxiomCheck] = []

    v1, slower = _implementation_witnesses()
    c1, c2 = cost(v1, cfg), cost(slower, cfg)
    checks.append(
        AxiomCheck(
            "non_triviality",
            f"{v1.id} vs {slower.id}",
            c1 != c2,
            f"costs {c1!r} vs {c2!r} differ",
        )
    )
    checks.append(
        AxiomCheck(
            "implementation_sensitivity",
            f"{v1.id} vs {slower.id}",
            weak_equivalent(v1, slower) and c1 != c2,
            "same interface, different internals, different cost",
        )
    )

    s1, s2, consumer = _context_seq_witnesses()
    base_equal = cost(s1, cfg) == cost(s2, cfg)
    seq1 = cost(sequential(s1, consumer).workflow, cfg)
    seq2 = cost(sequential(s2, consumer).workflow, cfg)
    checks.append(
        AxiomCheck(
            "context_sensitivity_sequential",
            f"{s1.id}/{s2.id} into {consumer.id}",
            base_equal and seq1 != seq2,
            f"equal alone, composed costs {seq1!r} vs {seq2!r}",
        )
    )

    p1, p2, probe = _context_par_witnesses()
    base_equal = cost(p1, cfg) == cost(p2, cfg)
    par1 = cost(parallel(p1, probe).workflow, cfg)
    par2 = cost(parallel(p2, probe).workflow, cfg)
    checks.append(
        AxiomCheck(
            "context_sensitivity_parallel",
            f"{p1.id}/{p2.id} beside {probe.id}",
            base_equal and par1 != par2,
            f"equal alone, composed costs {par1!r} vs {par2!r}",
        )
    )

    first, second = _order_witnesses()
    ab = cost(sequential(first, second).workflow, cfg)
    ba = cost(sequential(second, first).workflow, cfg)
    checks.append(
        AxiomCheck(
            "order_sensitivity",
            f"{first.id} and {second.id}",
            ab != ba,
            f"costs {ab!r} vs {ba!r} across orders",
        )
    )

    relabeled = WorkflowGraph(
        id="ctx-producer-1-relabeled",
        inputs=dict(v1.inputs),
        tasks={f"{k}_alias": t for k, t in v1.tasks.items()},
        outputs=dict(v1.outputs),
        edges=tuple(
            (
                f"{u}_alias" if u in v1.tasks else u,
                f"{x}_alias" if x in v1.tasks else x,
            )
            for u, x in v1.edges
        ),
        cumulative_dims=v1.cumulative_dims,
        releasable_dims=v1.releasable_dims,
    )
    checks.append(
        AxiomCheck(
            "cost_invariance",
            f"{v1.id} vs {relabeled.id}",
            strong_equivalent(v1, relabeled) and cost(v1, cfg) == cost(relabeled, cfg),
            "strongly equivalent relabeling keeps cost bit-identical",
        )
    )
    return tuple(checks)


def cost_axiom_suite(
    pairs: Sequence[tuple[WorkflowGraph, WorkflowGraph]], cfg: EvaluationConfig
) -> CostAxiomReport:
    """Check the universal cost axioms over ``pairs`` under ``cfg``.

    Emits sub-additivity and exact commutativity checks for parallel
    composition on every pair, sub-additivity for sequential composition
    in whichever directions the interfaces admit, and exact cost
    invariance whenever a pair is strongly equivalent. The bundled
    witness demonstrations are appended at the end. Requires non-negative
    weights; sub-additivity is not meaningful under negative pricing.
    """
    for label, value in (("w_d", cfg.w_d),):
        if value < 0.0:
            raise NegativeWeightsError(f"{label} is negative: {value!r}")
    for label, vec in (("w_g", cfg.w_g), ("w_r", cfg.w_r)):
        if vec is not None and any(x < 0.0 for x in vec):
            raise NegativeWeightsError(f"{label} has a negative component: {vec!r}")

    checks: list[AxiomCheck] = []
    for a, b in pairs:
        subject = f"{a.id} * {b.id}"
        ca, cb = cost(a, cfg), cost(b, cfg)
        c_par = cost(parallel(a, b).workflow, cfg)
        checks.append(
            AxiomCheck(
                "sub_additivity_parallel",
                subject,
                c_par <= ca + cb + _SUB_ADDITIVITY_SLACK,
                f"C(par)={c_par!r} vs C(a)+C(b)={ca + cb!r}",
            )
        )
        c_par_flipped = cost(parallel(b, a).workflow, cfg)
        checks.append(
            AxiomCheck(
                "commutativity_parallel",
                subject,
                c_par == c_par_flipped,
                f"{c_par!r} vs {c_par_flipped!r}",
            )
        )
        for x, y in ((a, b), (b, a)):
            try:
                c_seq = cost(sequential(x, y).workflow, cfg)
            except InterfaceUnsatisfiedError:
                continue
            checks.append(
                AxiomCheck(
                    "sub_additivity_sequential",
                    f"{x.id} then {y.id}",
                    c_seq <= cost(x, cfg) + cost(y, cfg) + _SUB_ADDITIVITY_SLACK,
                    f"C(seq)={c_seq!r} vs sum={cost(x, cfg) + cost(y, cfg)!r}",
                )
            )
        if strong_equivalent(a, b):
            checks.append(
                AxiomCheck(
                    "cost_invariance",
                    subject,
                    ca == cb,
                    f"{ca!r} vs {cb!r}",
                )
            )

    checks.extend(witness_checks())
    return CostAxiomReport(checks=tuple(checks), ok=all(c.holds for c in checks))
