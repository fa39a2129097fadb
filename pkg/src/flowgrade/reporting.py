"""Delimited report rendering with a fixed display contract.

Every format shows the same figures: money to four significant digits,
probabilities and penalty scores to four decimal places, durations to one
decimal place. Output is byte deterministic for a given set of reports;
the JSON lines format rounds numbers to the display precision so that
downstream consumers see exactly what the table shows.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .evaluate import EvaluationReport
from .ranking import Ordering, RankingResult
from .reward import EvaluationConfig

TEXT_TABLE = "text-table"
CSV = "csv"
JSON_LINES = "json-lines"
_ALIASES = {
    "text-table": TEXT_TABLE,
    "table": TEXT_TABLE,
    "csv": CSV,
    "json-lines": JSON_LINES,
    "jsonl": JSON_LINES,
}

_CSV_HEADER = (
    "workflow_id",
    "cost",
    "max_duration_ms",
    "success_probability",
    "reward",
    "cip",
    "sip",
    "penalty",
)
_TEXT_HEADER = (
    "Workflow",
    "Cost ($)",
    "Max duration (ms)",
    "Success probability",
    "Reward ($)",
    "CIP",
    "SIP",
    "Penalty",
)


@dataclass(frozen=True)
class SamplerEcho:
    """Provenance stamp for simulated figures accompanying a report."""

    algorithm: str
    seed: int
    samples: int
    # (workflow_id, mean net benefit, standard error)
    results: tuple[tuple[str, float, float], ...] = ()


def money(x: float) -> str:
    return format(x, ".4g")


def probability(x: float) -> str:
    return format(x, ".4f")


def duration_ms(x: float) -> str:
    return format(x, ".1f")


def _cells(r: EvaluationReport) -> tuple[str, ...]:
    return (
        r.workflow_id,
        money(r.cumulative_cost),
        duration_ms(r.resources.duration),
        probability(r.success_probability),
        money(r.reward_value),
        probability(r.penalty.cip),
        probability(r.penalty.sip),
        probability(r.penalty_value),
    )


def _config_echo(cfg: EvaluationConfig) -> str:
    def vec(v):
        return "default" if v is None else json.dumps(list(v))

    return (
        f"w_g={vec(cfg.w_g)} w_d={cfg.w_d!r} w_r={vec(cfg.w_r)} "
        f"alpha_ch={cfg.alpha_ch!r} alpha_ob={cfg.alpha_ob!r} "
        f"gamma_s={cfg.gamma_s!r} reward_tolerance={cfg.reward_tolerance!r}"
    )


def _ordering_text(a: str, b: str, o: Ordering) -> str:
    if o is Ordering.A_PRECEDES:
        return f"{a} > {b}"
    if o is Ordering.B_PRECEDES:
        return f"{b} > {a}"
    return f"{a} = {b}"


def _render_text(reports, config, ranking, sampler) -> str:
    lines: list[str] = []
    if config is not None:
        lines.append(f"# config: {_config_echo(config)}")
    if sampler is not None:
        lines.append(
            f"# sampler: algorithm={sampler.algorithm} "
            f"seed={sampler.seed} samples={sampler.samples}"
        )
    rows = [_cells(r) for r in reports]
    widths = [
        max(len(h), *(len(row[i]) for row in rows)) if rows else len(h)
        for i, h in enumerate(_TEXT_HEADER)
    ]

    def line(cells: tuple[str, ...]) -> str:
        padded = [
            cells[0].ljust(widths[0]),
            *(c.rjust(widths[i + 1]) for i, c in enumerate(cells[1:])),
        ]
        return "  ".join(padded).rstrip()

    lines.append(line(_TEXT_HEADER))
    lines.append("  ".join("-" * wd for wd in widths))
    lines.extend(line(row) for row in rows)
    if sampler is not None:
        for wid, mean, err in sampler.results:
            lines.append(
                f"# sampled[{wid}]: net_benefit={money(mean)} std_error={money(err)}"
            )
    if ranking is not None:
        for a, b, o in ranking.pairwise:
            lines.append(f"# order: {_ordering_text(a, b, o)}")
        lines.append(f"# selected: {', '.join(ranking.selected)}")
    return "\n".join(lines) + "\n"


def _render_csv(reports, config, ranking, sampler) -> str:
    buf = io.StringIO()
    if config is not None:
        buf.write(f"# config: {_config_echo(config)}\n")
    if sampler is not None:
        buf.write(
            f"# sampler: algorithm={sampler.algorithm} "
            f"seed={sampler.seed} samples={sampler.samples}\n"
        )
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_HEADER)
    for r in reports:
        writer.writerow(_cells(r))
    if sampler is not None:
        for wid, mean, err in sampler.results:
            buf.write(
                f"# sampled[{wid}]: net_benefit={money(mean)} std_error={money(err)}\n"
            )
    if ranking is not None:
        for a, b, o in ranking.pairwise:
            buf.write(f"# order: {_ordering_text(a, b, o)}\n")
        buf.write(f"# selected: {', '.join(ranking.selected)}\n")
    return buf.getvalue()


def _display_float(text: str) -> float:
    return float(text)


def _render_json_lines(reports, config, ranking, sampler) -> str:
    lines: list[str] = []

    def emit(obj) -> None:
        lines.append(json.dumps(obj, sort_keys=True))

    if config is not None:
        emit(
            {
                "type": "config",
                "w_g": None if config.w_g is None else list(config.w_g),
                "w_d": config.w_d,
                "w_r": None if config.w_r is None else list(config.w_r),
                "alpha_ch": config.alpha_ch,
                "alpha_ob": config.alpha_ob,
                "gamma_s": config.gamma_s,
                "reward_tolerance": config.reward_tolerance,
            }
        )
    if sampler is not None:
        emit(
            {
                "type": "sampler",
                "algorithm": sampler.algorithm,
                "seed": sampler.seed,
                "samples": sampler.samples,
            }
        )
    for r in reports:
        cells = _cells(r)
        emit(
            {
                "type": "report",
                "workflow_id": cells[0],
                "cost": _display_float(cells[1]),
                "max_duration_ms": _display_float(cells[2]),
                "success_probability": _display_float(cells[3]),
                "reward": _display_float(cells[4]),
                "cip": _display_float(cells[5]),
                "sip": _display_float(cells[6]),
                "penalty": _display_float(cells[7]),
            }
        )
    if sampler is not None:
        for wid, mean, err in sampler.results:
            emit(
                {
                    "type": "sampled",
                    "workflow_id": wid,
                    "net_benefit": _display_float(money(mean)),
                    "std_error": _display_float(money(err)),
                }
            )
    if ranking is not None:
        emit(
            {
                "type": "ranking",
                "pairwise": [
                    {"a": a, "b": b, "ordering": o.name.lower()}
                    for a, b, o in ranking.pairwise
                ],
                "selected": list(ranking.selected),
            }
        )
    return "\n".join(lines) + "\n"


def emit_report(
    reports: list[EvaluationReport] | tuple[EvaluationReport, ...],
    fmt: str = TEXT_TABLE,
    *,
    config: EvaluationConfig | None = None,
    ranking: RankingResult | None = None,
    sampler: SamplerEcho | None = None,
) -> bytes:
    """Render evaluation reports to bytes in the requested format."""
    canonical = _ALIASES.get(fmt)
    if canonical is None:
        raise ValueError(
            f"unknown report format {fmt!r}; expected one of {sorted(_ALIASES)}"
        )
    if canonical == TEXT_TABLE:
        text = _render_text(reports, config, ranking, sampler)
    elif canonical == CSV:
        text = _render_csv(reports, config, ranking, sampler)
    else:
        text = _render_json_lines(reports, config, ranking, sampler)
    return text.encode("utf-8")
