"""Acceptance gate: one test per shipped guarantee, at stated tolerance.

Each test covers one numbered guarantee and ends with a single printed
PASS line carrying the measured figures; ``pytest -v`` therefore shows
one pass/fail line per criterion. Randomized criteria use frozen seeds.
"""

import dataclasses
import random
import time

import pytest

from flowgrade import (
    CASE_STUDY_EXACT_GAIN,
    CASE_STUDY_EXPECTATIONS,
    CandidateSet,
    ConditionalWorkflow,
    EvaluationConfig,
    Ordering,
    ProbabilitySumError,
    WorkflowGraph,
    case_study_config,
    case_study_workflows,
    cip,
    cip_factorized,
    compare,
    conditional_example,
    conditional_reward,
    cost,
    cost_axiom_suite,
    critical_path_duration,
    cumulative_resources,
    emit_workflow,
    evaluate_workflow,
    expected_reward,
    parse_workflow,
    peak_releasable,
    rank_candidates,
    sample_net_benefit,
    select_optimal,
    sip,
    sip_factorized,
    total_penalty,
)
from flowgrade.casestudy import (
    CASE_STUDY_FIXTURES,
    COST_TOLERANCE,
    DURATION_TOLERANCE,
    REWARD_TOLERANCE,
    SUCCESS_TOLERANCE,
    _fixture_bytes,
)
from flowgrade.cli import cli_main
from builders import chain
from generators import (
    random_ancestry_disjoint_workflow,
    random_composable_pair,
    random_workflow,
)

SEED = 2026


def test_criterion_1_case_study_table_reproduction():
    cfg = case_study_config()
    graphs = case_study_workflows()
    start = time.perf_counter()
    reports = {w.id: evaluate_workflow(w, cfg) for w in graphs}
    elapsed = time.perf_counter() - start

    for exp in CASE_STUDY_EXPECTATIONS:
        r = reports[exp.workflow_id]
        assert abs(r.cumulative_cost - exp.cost) <= COST_TOLERANCE, exp
        assert abs(r.resources.duration - exp.max_duration_ms) <= DURATION_TOLERANCE
        assert abs(r.success_probability - exp.success_probability) <= SUCCESS_TOLERANCE
        assert abs(r.reward_value - exp.reward) <= REWARD_TOLERANCE, (
            exp.workflow_id, r.reward_value,
        )
    # the rounded published gain is 0.92; the exact 0.915 variant is
    # reported alongside and stays self-consistent
    assert CASE_STUDY_EXACT_GAIN == 0.915
    for r in reports.values():
        exact = r.success_probability * CASE_STUDY_EXACT_GAIN - r.reward.cost
        assert exact < r.reward_value
    assert elapsed < 1.0
    print(
        f"criterion 1: PASS (3 workflows x 4 metrics at tolerances "
        f"1e-12/exact/1e-4/5e-4, {elapsed * 1000:.0f} ms)"
    )


def test_criterion_2_ranking_reproduction():
    cfg = case_study_config()
    graphs = list(case_study_workflows())
    cs = CandidateSet.build(graphs, cfg)
    by_id = {r.workflow_id: r for _, r in cs.candidates}
    w1, w2, w3 = (by_id[f"workflow-{i}"] for i in (1, 2, 3))

    assert compare(w2, w1, cfg) is Ordering.A_PRECEDES
    assert abs(w2.reward_value - w3.reward_value) <= cfg.reward_tolerance
    assert w2.penalty_value < w3.penalty_value
    assert compare(w2, w3, cfg) is Ordering.A_PRECEDES

    selected = select_optimal(cs, cfg)
    assert list(selected) == ["workflow-2"]
    ranking = rank_candidates(cs, cfg)
    assert ranking.selected == ("workflow-2",)
    print(
        "criterion 2: PASS (W2 > W1 on reward, W2 > W3 on penalty at "
        "equal reward, selection = {workflow-2})"
    )


def test_criterion_3_monte_carlo_oracle():
    start = time.perf_counter()
    study_cfg = case_study_config()
    cases = [(w, study_cfg) for w in case_study_workflows()]
    rng = random.Random(SEED)
    plain = EvaluationConfig()
    cases += [
        (random_ancestry_disjoint_workflow(rng, max_tasks=10), plain)
        for _ in range(50)
    ]
    n = 10**6
    worst = 0.0
    for w, cfg in cases:
        expected = expected_reward(w, cfg).reward
        mean, err = sample_net_benefit(w, cfg, seed=SEED, n=n)
        if err == 0.0:
            assert mean == expected, w.id
            continue
        z = abs(mean - expected) / err
        worst = max(worst, z)
        assert z <= 4.0, (w.id, mean, expected, err)
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    print(
        f"criterion 3: PASS (53 workflows, n=10^6, worst deviation "
        f"{worst:.2f} std errors, {elapsed:.1f} s)"
    )


def test_criterion_4_penalty_algebra():
    rng = random.Random(SEED)
    worst_eq = 0.0
    worst_blend = 0.0
    for _ in range(1000):
        n = rng.randint(1, 8)
        specs = [
            {"cp": rng.random(), "ih": rng.random()} for _ in range(n)
        ]
        w = chain("anno", specs)
        cfg = EvaluationConfig(
            alpha_ch=rng.random(), alpha_ob=rng.random(), gamma_s=rng.random()
        )
        gap_c = abs(cip(w, cfg) - cip_factorized(w, cfg))
        gap_s = abs(sip(w, cfg) - sip_factorized(w, cfg))
        worst_eq = max(worst_eq, gap_c, gap_s)
        assert gap_c <= 1e-12 and gap_s <= 1e-12
        pen = total_penalty(w, cfg)
        assert 0.0 <= pen.total <= 1.0
        blend = (
            cfg.gamma_s * pen.cip**2 + (1.0 - cfg.gamma_s) * pen.sip**2
        )
        gap_b = abs(pen.total**2 - blend)
        worst_blend = max(worst_blend, gap_b)
        assert gap_b <= 1e-12
    print(
        f"criterion 4: PASS (1000 annotation sets, worst factorization "
        f"gap {worst_eq:.2e}, worst blend gap {worst_blend:.2e})"
    )


def test_criterion_5_srp_cip_minimizer():
    rng = random.Random(SEED)
    perturbations = 0
    for _ in range(50):
        base = random_workflow(rng)
        alpha = round(rng.uniform(0.1, 0.9), 3)
        cfg = EvaluationConfig(alpha_ch=alpha)
        tasks = {
            v: dataclasses.replace(t, cp=alpha) for v, t in base.tasks.items()
        }
        w = dataclasses.replace(base, tasks=tasks)
        floor = cip(w, cfg)
        assert abs(floor**2 - alpha * (1.0 - alpha)) <= 1e-12
        for victim in w.tasks:
            for delta in (0.1, -0.1):
                moved = alpha + delta
                if not 0.0 <= moved <= 1.0:
                    continue
                bumped = dict(tasks)
                bumped[victim] = dataclasses.replace(tasks[victim], cp=moved)
                higher = cip(dataclasses.replace(w, tasks=bumped), cfg)
                assert higher - floor > 1e-12, (victim, delta, higher, floor)
                perturbations += 1
    print(
        f"criterion 5: PASS (50 workflows at the uniform annotation floor, "
        f"{perturbations} single +-0.1 perturbations all strictly worse)"
    )


def test_criterion_6_scheduling_oracles():
    from test_resources import grid_peak_oracle, path_duration_oracle

    rng = random.Random(SEED)
    start = time.perf_counter()
    for _ in range(500):
        w = random_workflow(rng)  # at most 12 nodes, integer d <= 10
        assert len(w.node_ids()) <= 12
        assert critical_path_duration(w) == path_duration_oracle(w)
        assert peak_releasable(w) == grid_peak_oracle(w)
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    print(
        f"criterion 6: PASS (500 DAGs, critical path and peak both exactly "
        f"equal to enumeration oracles, {elapsed:.1f} s)"
    )


def test_criterion_7_composition_algebra():
    from flowgrade import parallel, sequential

    rng = random.Random(SEED)
    pairs = [random_composable_pair(rng) for _ in range(200)]
    cfg = EvaluationConfig(w_g=(1.0, 1.0), w_d=1.0, w_r=(1.0,))

    for a, b in pairs:
        par = parallel(a, b)
        seq = sequential(a, b)
        added = tuple(
            x + y for x, y in zip(cumulative_resources(a), cumulative_resources(b))
        )
        assert cumulative_resources(par.workflow) == added
        assert cumulative_resources(seq.workflow) == added
        assert len(seq.workflow.node_ids()) == (
            len(a.node_ids())
            + len(b.node_ids())
            - 2 * len(seq.removed_interface)
        )

    report = cost_axiom_suite(pairs, cfg)
    assert report.ok, [c for c in report.checks if not c.holds]
    axioms = {c.axiom for c in report.checks if c.holds}
    assert {
        "sub_additivity_parallel",
        "sub_additivity_sequential",
        "commutativity_parallel",
        "order_sensitivity",
        "context_sensitivity_sequential",
        "context_sensitivity_parallel",
    } <= axioms
    print(
        f"criterion 7: PASS (200 pairs: validity, exact cumulative "
        f"additivity, exact parallel cost symmetry, sub-additivity within "
        f"1e-12 for both operators; {len(report.checks)} axiom checks)"
    )


def test_criterion_8_conditional_workflows():
    cfg = case_study_config()
    w1, w2, _ = case_study_workflows()

    solo = conditional_reward(ConditionalWorkflow(((w1, 1.0),)), cfg)
    assert solo == expected_reward(w1, cfg).reward

    mixture = conditional_example()
    probs = [p for _, p in mixture.scenarios]
    assert probs == [0.3, 0.7]
    value = conditional_reward(mixture, cfg)
    assert abs(value - 0.84985) <= 5e-4, value

    with pytest.raises(ProbabilitySumError):
        conditional_reward(
            ConditionalWorkflow(((w1, 0.5), (w2, 0.499))), cfg
        )
    print(
        f"criterion 8: PASS (degenerate mixture exact, 0.3/0.7 mixture "
        f"{value:.5f} within 5e-4 of 0.84985, sum 0.999 rejected)"
    )


def test_criterion_9_io_determinism(capsys):
    for name in CASE_STUDY_FIXTURES:
        w = parse_workflow(_fixture_bytes(name))
        emitted = emit_workflow(w)
        again = parse_workflow(emitted)
        assert again == w
        assert emit_workflow(again) == emitted

    assert cli_main(["case-study"]) == 0
    first = capsys.readouterr().out
    assert cli_main(["case-study"]) == 0
    second = capsys.readouterr().out
    assert first == second and first
    print(
        f"criterion 9: PASS ({len(CASE_STUDY_FIXTURES)} fixtures round-trip "
        f"as fixed points, case-study output byte-identical across runs)"
    )