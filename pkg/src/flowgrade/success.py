"""Correctness propagation through a workflow DAG.

Each node is assigned the probability that its result is correct. Inputs
carry their own prior. A task reads all of its parents and succeeds with
probability ``p`` when every parent result is correct, ``q`` otherwise,
so with independent parents:

    P(T) = q + (p - q) * product of parent probabilities

Output nodes simply forward the joint correctness of their parents. The
parent-independence assumption is exact when parents share no stochastic
ancestry (deterministic shared ancestors are harmless).
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .graph import WorkflowGraph, topological_order

NodeSuccessMap = dict[str, float]


def node_success(
    w: WorkflowGraph, *, order: Iterable[str] | None = None
) -> NodeSuccessMap:
    """Per-node correctness probabilities.

    ``order`` may supply any valid topological order; the result is
    identical for all of them because each node combines its parents in
    node-id order regardless of visit order.
    """
    sequence = topological_order(w) if order is None else list(order)
    probs: NodeSuccessMap = {}
    for v in sequence:
        if v in w.inputs:
            probs[v] = w.inputs[v].pi
            continue
        joint = 1.0
        for u in w.parents(v):  # node-id order keeps products reproducible
            joint *= probs[u]
        if v in w.tasks:
            t = w.tasks[v]
            probs[v] = t.q + (t.p - t.q) * joint
        else:
            probs[v] = joint
    return probs


def workflow_success(w: WorkflowGraph, probs: Mapping[str, float] | None = None) -> float:
    """Probability that every output of the workflow is correct.

    Outputs are combined as a product in node-id order; this treats
    outputs as independent, which holds when their ancestries are
    disjoint or shared ancestors are deterministic.
    """
    if probs is None:
        probs = node_success(w)
    result = 1.0
    for v in sorted(w.outputs):
        result *= probs[v]
    return result
