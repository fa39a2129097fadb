"""Command line interface.

Exit codes: 0 success, 1 operational failure (invalid input, unmet
reference figures, I/O problems), 2 usage errors. Report output goes to
stdout and is byte deterministic; notes about side files (figures) go to
stderr so they never perturb piped output.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .casestudy import (
    CASE_STUDY_EXACT_GAIN,
    CASE_STUDY_EXPECTATIONS,
    COST_TOLERANCE,
    DURATION_TOLERANCE,
    REWARD_TOLERANCE,
    SUCCESS_TOLERANCE,
    case_study_config,
    case_study_workflows,
)
from .errors import FlowgradeError
from .evaluate import evaluate_workflow
from .figures import FIGURE_BASENAME, render_metrics_figure
from .graph import topological_order, validate
from .io import (
    emit_workflow,
    load_config,
    load_scenarios,
    load_workflow,
    parse_workflow_unvalidated,
)
from .ranking import (
    CandidateSet,
    ConditionalWorkflow,
    Ordering,
    conditional_reward,
    rank_candidates,
)
from .reporting import SamplerEcho, duration_ms, emit_report, money, probability
from .reward import SAMPLER_ALGORITHM, EvaluationConfig, sample_net_benefit

_FORMATS = ("text-table", "table", "csv", "json-lines", "jsonl")


def _load_cfg(args) -> EvaluationConfig:
    if getattr(args, "config", None):
        return load_config(args.config)
    return EvaluationConfig()


def _write_output(data: bytes, output: str | None) -> None:
    if output:
        Path(output).write_bytes(data)
    else:
        sys.stdout.write(data.decode("utf-8"))


def _maybe_figures(reports, figures_dir: str | None) -> None:
    if figures_dir:
        path = render_metrics_figure(reports, Path(figures_dir) / FIGURE_BASENAME)
        print(f"figures: wrote {path}", file=sys.stderr)


def _cmd_validate(args) -> int:
    failed = False
    for path in args.files:
        try:
            w = parse_workflow_unvalidated(Path(path).read_bytes())
        except FlowgradeError as exc:
            print(f"{path}: invalid")
            print(f"  [{exc.code}] {exc}")
            failed = True
            continue
        report = validate(w)
        if report.ok:
            print(f"{path}: valid ({w.id})")
            print(f"  order: {' -> '.join(topological_order(w))}")
        else:
            print(f"{path}: invalid ({w.id})")
            for v in report.violations:
                print(f"  [{v.code.value}] {v.locus}: {v.message}")
            failed = True
    return 1 if failed else 0


def _cmd_evaluate(args) -> int:
    cfg = _load_cfg(args)
    graphs = [load_workflow(p) for p in args.files]
    reports = [evaluate_workflow(w, cfg) for w in graphs]
    sampler = None
    if args.samples:
        results = []
        for w in graphs:
            mean, err = sample_net_benefit(w, cfg, seed=args.seed, n=args.samples)
            results.append((w.id, mean, err))
        sampler = SamplerEcho(
            algorithm=SAMPLER_ALGORITHM,
            seed=args.seed,
            samples=args.samples,
            results=tuple(results),
        )
    data = emit_report(reports, args.format, config=cfg, sampler=sampler)
    _write_output(data, args.output)
    _maybe_figures(reports, args.figures)
    return 0


def _cmd_rank(args) -> int:
    cfg = _load_cfg(args)
    graphs = [load_workflow(p) for p in args.files]
    cs = CandidateSet.build(graphs, cfg)
    ranking = rank_candidates(cs, cfg)
    reports = [rep for _, rep in cs.candidates]
    data = emit_report(reports, args.format, config=cfg, ranking=ranking)
    _write_output(data, args.output)
    _maybe_figures(reports, args.figures)
    return 0


def _cmd_compose(args) -> int:
    from .compose import parallel, sequential

    a = load_workflow(args.first)
    b = load_workflow(args.second)
    result = sequential(a, b) if args.seq else parallel(a, b)
    _write_output(emit_workflow(result.workflow), args.output)
    if result.removed_interface:
        joined = ", ".join(sorted(result.removed_interface))
        print(f"interface removed: {joined}", file=sys.stderr)
    return 0


def _cmd_conditional(args) -> int:
    cfg = _load_cfg(args)
    cw: ConditionalWorkflow = load_scenarios(args.file)
    value = conditional_reward(cw, cfg)
    for w, p in cw.scenarios:
        print(f"scenario {w.id}: probability {p!r}")
    print(f"expected reward: {money(value)} (exact {value!r})")
    return 0


def _check_line(label: str, metric: str, actual: str, expected: str, ok: bool) -> str:
    word = "PASS" if ok else "FAIL"
    return f"  {label} {metric} {actual} expected {expected} {word}"


def _cmd_case_study(args) -> int:
    cfg = case_study_config()
    graphs = case_study_workflows()
    cs = CandidateSet.build(list(graphs), cfg)
    ranking = rank_candidates(cs, cfg)
    reports = [rep for _, rep in cs.candidates]
    by_id = {r.workflow_id: r for r in reports}

    sys.stdout.write(emit_report(reports, "text-table", config=cfg).decode("utf-8"))

    ok = True
    print(
        "checks (tolerances: cost 1e-12, duration exact, success 1e-4, reward 5e-4):"
    )
    for exp in CASE_STUDY_EXPECTATIONS:
        r = by_id[exp.workflow_id]
        rows = (
            ("cost", money(r.cumulative_cost), money(exp.cost),
             abs(r.cumulative_cost - exp.cost) <= COST_TOLERANCE),
            ("max_duration_ms", duration_ms(r.resources.duration),
             duration_ms(exp.max_duration_ms),
             abs(r.resources.duration - exp.max_duration_ms) <= DURATION_TOLERANCE),
            ("success_probability", probability(r.success_probability),
             probability(exp.success_probability),
             abs(r.success_probability - exp.success_probability) <= SUCCESS_TOLERANCE),
            ("reward", money(r.reward_value), money(exp.reward),
             abs(r.reward_value - exp.reward) <= REWARD_TOLERANCE),
        )
        for metric, actual, expected, passed in rows:
            ok = ok and passed
            print(_check_line(exp.workflow_id, metric, actual, expected, passed))

    print("penalties (annotations are non-normative; illustrative only):")
    for r in reports:
        print(
            f"  {r.workflow_id}  CIP {probability(r.penalty.cip)}"
            f"  SIP {probability(r.penalty.sip)}"
            f"  total {probability(r.penalty_value)}"
        )

    exact_gain = []
    for r in reports:
        value = r.success_probability * CASE_STUDY_EXACT_GAIN - r.reward.cost
        exact_gain.append(f"{r.workflow_id} {money(value)}")
    print(f"rewards at gain {CASE_STUDY_EXACT_GAIN}: " + "  ".join(exact_gain))

    print("ranking:")
    for a, b, o in ranking.pairwise:
        if o is Ordering.A_PRECEDES:
            print(f"  {a} > {b}")
        elif o is Ordering.B_PRECEDES:
            print(f"  {b} > {a}")
        else:
            print(f"  {a} = {b}")
    print(f"selected: {', '.join(ranking.selected)}")
    print(f"result: {'PASS' if ok else 'FAIL'}")

    _maybe_figures(reports, args.figures)
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowgrade",
        description="Evaluate, rank, and compose workflow graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check workflow documents")
    p.add_argument("files", nargs="+", metavar="FILE")
    p.set_defaults(func=_cmd_validate)

    def add_report_options(p):
        p.add_argument("--config", metavar="FILE", help="evaluation config document")
        p.add_argument(
            "--format", choices=_FORMATS, default="text-table", help="report format"
        )
        p.add_argument("-o", "--output", metavar="FILE", help="write report to a file")
        p.add_argument(
            "--figures", metavar="DIR", help="also render metric charts into DIR"
        )

    p = sub.add_parser("evaluate", help="evaluate workflows and report metrics")
    p.add_argument("files", nargs="+", metavar="FILE")
    add_report_options(p)
    p.add_argument(
        "--samples", type=int, default=0, metavar="N",
        help="also simulate N runs per workflow",
    )
    p.add_argument("--seed", type=int, default=0, metavar="SEED")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("rank", help="evaluate, compare, and select candidates")
    p.add_argument("files", nargs="+", metavar="FILE")
    add_report_options(p)
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("compose", help="combine two workflows into one")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--seq", action="store_true", help="feed FIRST into SECOND")
    mode.add_argument("--par", action="store_true", help="run FIRST beside SECOND")
    p.add_argument("first", metavar="FIRST")
    p.add_argument("second", metavar="SECOND")
    p.add_argument("-o", "--output", metavar="FILE", help="write document to a file")
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("conditional", help="expected reward of a scenario mixture")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--config", metavar="FILE", help="evaluation config document")
    p.set_defaults(func=_cmd_conditional)

    p = sub.add_parser(
        "case-study", help="reproduce the bundled case study and check it"
    )
    p.add_argument(
        "--figures", metavar="DIR", help="also render metric charts into DIR"
    )
    p.set_defaults(func=_cmd_case_study)

    return parser


def cli_main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except FlowgradeError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(cli_main())


if __name__ == "__main__":
    main()
