"""Versioned JSON documents for workflows, configurations, and scenarios.

Parsing is strict: malformed JSON raises a parse error with position,
any structural problem (unknown field, missing field, wrong type, bad
role, version mismatch) raises a schema error naming the offending node,
and a well-formed document describing a broken graph raises a validation
error carrying the full violation report.

Emission is canonical. The same in-memory workflow always serializes to
the same bytes, and parse(emit(parse(text))) is a fixed point both
structurally and numerically: floats are written shortest round-trip,
nodes are sorted by id, keys are sorted, optional empty strings are
omitted while numeric fields are always explicit.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import WorkflowParseError, WorkflowSchemaError, WorkflowValidationError
from .graph import (
    INPUT_ROLE,
    OUTPUT_ROLE,
    TASK_ROLE,
    InputAttributes,
    OutputAttributes,
    TaskAttributes,
    WorkflowGraph,
    validate,
)
from .ranking import ConditionalWorkflow
from .reward import EvaluationConfig

FORMAT_VERSION = "1"

_TOP_FIELDS = {
    "format_version",
    "id",
    "comment",
    "cumulative_dims",
    "releasable_dims",
    "nodes",
    "edges",
}
_INPUT_FIELDS = {"id", "role", "comment", "pi", "tau"}
_TASK_FIELDS = {
    "id",
    "role",
    "comment",
    "p",
    "q",
    "r_g",
    "d",
    "r_r",
    "iota",
    "cp",
    "ih",
    "provenance",
}
_OUTPUT_FIELDS = {"id", "role", "comment", "gain", "tau"}
_CONFIG_FIELDS = {
    "format_version",
    "comment",
    "w_g",
    "w_d",
    "w_r",
    "alpha_ch",
    "alpha_ob",
    "gamma_s",
    "reward_tolerance",
}
_SCENARIOS_FIELDS = {"format_version", "id", "comment", "scenarios"}
_SCENARIO_FIELDS = {"probability", "workflow", "path", "comment"}


def _decode(text: str | bytes, what: str) -> Any:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise WorkflowParseError(f"{what} is not valid UTF-8: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise WorkflowParseError(
            f"{what} is not valid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}"
        ) from exc


def _require_object(value: Any, what: str) -> dict[str, Any]:
    if not isinstance(value, dict):
        raise WorkflowSchemaError(f"{what} must be a JSON object")
    return value


def _check_fields(obj: dict[str, Any], allowed: set[str], what: str) -> None:
    for key in obj:
        if key not in allowed:
            raise WorkflowSchemaError(f"{what}: unknown field {key!r}")


def _string(obj: dict[str, Any], field: str, what: str, default: str | None = None) -> str:
    if field not in obj:
        if default is None:
            raise WorkflowSchemaError(f"{what}: missing required field {field!r}")
        return default
    value = obj[field]
    if not isinstance(value, str):
        raise WorkflowSchemaError(f"{what}: field {field!r} must be a string")
    return value


def _number(obj: dict[str, Any], field: str, what: str, default: float | None = None) -> float:
    if field not in obj:
        if default is None:
            raise WorkflowSchemaError(f"{what}: missing required field {field!r}")
        return default
    value = obj[field]
    # bool is an int subclass; true/false are not numbers here
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise WorkflowSchemaError(f"{what}: field {field!r} must be a number")
    return float(value)


def _vector(
    obj: dict[str, Any], field: str, what: str, default: tuple[float, ...] | None
) -> tuple[float, ...] | None:
    if field not in obj:
        return default
    value = obj[field]
    if not isinstance(value, list):
        raise WorkflowSchemaError(f"{what}: field {field!r} must be an array of numbers")
    out = []
    for i, x in enumerate(value):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise WorkflowSchemaError(
                f"{what}: field {field!r} element {i} must be a number"
            )
        out.append(float(x))
    return tuple(out)


def _string_list(obj: dict[str, Any], field: str, what: str) -> tuple[str, ...]:
    if field not in obj:
        raise WorkflowSchemaError(f"{what}: missing required field {field!r}")
    value = obj[field]
    if not isinstance(value, list) or any(not isinstance(x, str) for x in value):
        raise WorkflowSchemaError(f"{what}: field {field!r} must be an array of strings")
    return tuple(value)


def _check_version(obj: dict[str, Any], what: str) -> None:
    version = _string(obj, "format_version", what)
    if version != FORMAT_VERSION:
        raise WorkflowSchemaError(
            f"{what}: unsupported format_version {version!r} (expected {FORMAT_VERSION!r})"
        )


def workflow_from_document(doc: Any) -> WorkflowGraph:
    """Build a workflow from a decoded document without validating the graph.

    Structural problems still raise schema errors; graph-level rules are
    left to :func:`flowgrade.graph.validate` so callers can collect the
    full violation report.
    """
    doc = _require_object(doc, "workflow document")
    _check_fields(doc, _TOP_FIELDS, "workflow document")
    _check_version(doc, "workflow document")
    wid = _string(doc, "id", "workflow document")
    comment = _string(doc, "comment", "workflow document", default="")
    dims_c = _string_list(doc, "cumulative_dims", "workflow document")
    dims_r = _string_list(doc, "releasable_dims", "workflow document")

    nodes = doc.get("nodes")
    if not isinstance(nodes, list):
        raise WorkflowSchemaError("workflow document: field 'nodes' must be an array")
    zeros_c = tuple(0.0 for _ in dims_c)
    zeros_r = tuple(0.0 for _ in dims_r)
    inputs: dict[str, InputAttributes] = {}
    tasks: dict[str, TaskAttributes] = {}
    outputs: dict[str, OutputAttributes] = {}
    seen: set[str] = set()
    for i, raw in enumerate(nodes):
        node = _require_object(raw, f"node #{i}")
        nid = _string(node, "id", f"node #{i}")
        what = f"node {nid!r}"
        if nid in seen:
            raise WorkflowSchemaError(f"{what}: duplicate node id")
        seen.add(nid)
        role = _string(node, "role", what)
        if role == INPUT_ROLE:
            _check_fields(node, _INPUT_FIELDS, what)
            inputs[nid] = InputAttributes(
                pi=_number(node, "pi", what, default=1.0),
                tau=_string(node, "tau", what, default=""),
                comment=_string(node, "comment", what, default=""),
            )
        elif role == TASK_ROLE:
            _check_fields(node, _TASK_FIELDS, what)
            tasks[nid] = TaskAttributes(
                p=_number(node, "p", what, default=1.0),
                q=_number(node, "q", what, default=0.0),
                r_g=_vector(node, "r_g", what, zeros_c),
                d=_number(node, "d", what, default=0.0),
                r_r=_vector(node, "r_r", what, zeros_r),
                iota=_string(node, "iota", what, default=""),
                cp=_number(node, "cp", what, default=0.5),
                ih=_number(node, "ih", what, default=0.5),
                provenance=_string(node, "provenance", what, default=""),
                comment=_string(node, "comment", what, default=""),
            )
        elif role == OUTPUT_ROLE:
            _check_fields(node, _OUTPUT_FIELDS, what)
            outputs[nid] = OutputAttributes(
                gain=_number(node, "gain", what, default=0.0),
                tau=_string(node, "tau", what, default=""),
                comment=_string(node, "comment", what, default=""),
            )
        else:
            raise WorkflowSchemaError(
                f"{what}: role must be one of 'input', 'task', 'output'"
            )

    raw_edges = doc.get("edges")
    if not isinstance(raw_edges, list):
        raise WorkflowSchemaError("workflow document: field 'edges' must be an array")
    edges = []
    for i, raw in enumerate(raw_edges):
        if (
            not isinstance(raw, list)
            or len(raw) != 2
            or any(not isinstance(x, str) for x in raw)
        ):
            raise WorkflowSchemaError(
                f"edge #{i}: each edge must be a two-element array of node ids"
            )
        edges.append((raw[0], raw[1]))

    return WorkflowGraph(
        id=wid,
        inputs=inputs,
        tasks=tasks,
        outputs=outputs,
        edges=tuple(edges),
        cumulative_dims=dims_c,
        releasable_dims=dims_r,
        comment=comment,
    )


def parse_workflow_unvalidated(text: str | bytes) -> WorkflowGraph:
    """Parse a workflow document, deferring graph validation to the caller.

    Structural (schema) strictness still applies. Useful when the caller
    wants the full violation report rather than an exception.
    """
    return workflow_from_document(_decode(text, "workflow document"))


def parse_workflow(text: str | bytes) -> WorkflowGraph:
    """Parse and fully validate a workflow document."""
    w = parse_workflow_unvalidated(text)
    report = validate(w)
    if not report.ok:
        raise WorkflowValidationError(report)
    return w


def load_workflow(path: str | Path) -> WorkflowGraph:
    return parse_workflow(Path(path).read_bytes())


def workflow_to_document(w: WorkflowGraph) -> dict[str, Any]:
    nodes: list[dict[str, Any]] = []
    for v in sorted(w.inputs):
        attrs = w.inputs[v]
        node: dict[str, Any] = {"id": v, "role": INPUT_ROLE, "pi": attrs.pi}
        if attrs.tau:
            node["tau"] = attrs.tau
        if attrs.comment:
            node["comment"] = attrs.comment
        nodes.append(node)
    for v in sorted(w.tasks):
        t = w.tasks[v]
        node = {
            "id": v,
            "role": TASK_ROLE,
            "p": t.p,
            "q": t.q,
            "r_g": list(t.r_g),
            "d": t.d,
            "r_r": list(t.r_r),
            "cp": t.cp,
            "ih": t.ih,
        }
        if t.iota:
            node["iota"] = t.iota
        if t.provenance:
            node["provenance"] = t.provenance
        if t.comment:
            node["comment"] = t.comment
        nodes.append(node)
    for v in sorted(w.outputs):
        attrs = w.outputs[v]
        node = {"id": v, "role": OUTPUT_ROLE, "gain": attrs.gain}
        if attrs.tau:
            node["tau"] = attrs.tau
        if attrs.comment:
            node["comment"] = attrs.comment
        nodes.append(node)
    nodes.sort(key=lambda n: n["id"])

    doc: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "id": w.id,
        "cumulative_dims": list(w.cumulative_dims),
        "releasable_dims": list(w.releasable_dims),
        "nodes": nodes,
        "edges": [list(e) for e in w.edges],
    }
    if w.comment:
        doc["comment"] = w.comment
    return doc


def emit_workflow(w: WorkflowGraph) -> bytes:
    doc = workflow_to_document(w)
    return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode("utf-8")


def parse_config(text: str | bytes) -> EvaluationConfig:
    """Parse an evaluation configuration document."""
    doc = _require_object(_decode(text, "config document"), "config document")
    _check_fields(doc, _CONFIG_FIELDS, "config document")
    _check_version(doc, "config document")
    what = "config document"
    cfg = EvaluationConfig(
        w_g=_vector(doc, "w_g", what, None),
        w_d=_number(doc, "w_d", what, default=0.0),
        w_r=_vector(doc, "w_r", what, None),
        alpha_ch=_number(doc, "alpha_ch", what, default=0.5),
        alpha_ob=_number(doc, "alpha_ob", what, default=0.5),
        gamma_s=_number(doc, "gamma_s", what, default=0.5),
        reward_tolerance=_number(doc, "reward_tolerance", what, default=1e-9),
    )
    for field in ("alpha_ch", "alpha_ob", "gamma_s"):
        value = getattr(cfg, field)
        if not 0.0 <= value <= 1.0:
            raise WorkflowSchemaError(f"{what}: field {field!r} must lie in [0, 1]")
    if cfg.reward_tolerance < 0.0:
        raise WorkflowSchemaError(f"{what}: field 'reward_tolerance' must be >= 0")
    return cfg


def load_config(path: str | Path) -> EvaluationConfig:
    return parse_config(Path(path).read_bytes())


def parse_scenarios(
    text: str | bytes, *, base_dir: str | Path | None = None
) -> ConditionalWorkflow:
    """Parse a scenario mixture document.

    Each scenario carries a probability and exactly one of an inline
    "workflow" document or a "path" to a workflow file, resolved against
    ``base_dir`` (the scenario file's directory, normally).
    """
    doc = _require_object(_decode(text, "scenario document"), "scenario document")
    _check_fields(doc, _SCENARIOS_FIELDS, "scenario document")
    _check_version(doc, "scenario document")
    raw = doc.get("scenarios")
    if not isinstance(raw, list) or not raw:
        raise WorkflowSchemaError(
            "scenario document: field 'scenarios' must be a non-empty array"
        )
    base = Path(base_dir) if base_dir is not None else Path(".")
    pairs = []
    for i, entry in enumerate(raw):
        what = f"scenario #{i}"
        entry = _require_object(entry, what)
        _check_fields(entry, _SCENARIO_FIELDS, what)
        probability = _number(entry, "probability", what)
        has_inline = "workflow" in entry
        has_path = "path" in entry
        if has_inline == has_path:
            raise WorkflowSchemaError(
                f"{what}: exactly one of 'workflow' and 'path' is required"
            )
        if has_inline:
            w = workflow_from_document(entry["workflow"])
            report = validate(w)
            if not report.ok:
                raise WorkflowValidationError(report)
        else:
            rel = _string(entry, "path", what)
            w = load_workflow(base / rel)
        pairs.append((w, probability))
    return ConditionalWorkflow(scenarios=tuple(pairs))


def load_scenarios(path: str | Path) -> ConditionalWorkflow:
    p = Path(path)
    return parse_scenarios(p.read_bytes(), base_dir=p.parent)
