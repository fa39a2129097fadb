"""Cost, expected reward, and the Monte Carlo estimator."""

import random

import pytest

from flowgrade import (
    DimensionMismatchError,
    EvaluationConfig,
    cost,
    expected_reward,
    sample_net_benefit,
    workflow_success,
)
from builders import chain, workflow
from generators import random_ancestry_disjoint_workflow


def priced():
    return workflow(
        "priced",
        inputs={"in": {"pi": 0.9}},
        tasks={
            "a": {"p": 0.8, "r_g": (2.0, 1.0), "d": 3.0, "r_r": (4.0,)},
            "b": {"p": 0.75, "q": 0.25, "r_g": (1.0, 5.0), "d": 2.0, "r_r": (6.0,)},
        },
        outputs={"out": {"gain": 10.0}},
        edges=(("in", "a"), ("a", "b"), ("b", "out")),
        cumulative_dims=("usd", "tokens"),
        releasable_dims=("mem",),
    )


def test_cost_is_weighted_sum_of_all_three_terms():
    w = priced()
    cfg = EvaluationConfig(w_g=(0.5, 0.25), w_d=2.0, w_r=(0.125,))
    # cumulative (3, 6) -> 1.5 + 1.5 ; duration 5 -> 10 ; peak (6,) -> 0.75
    assert cost(w, cfg) == 13.75


def test_default_weights():
    w = priced()
    # w_g defaults to ones, w_d and w_r to zero
    assert cost(w, EvaluationConfig()) == 9.0


def test_weight_length_mismatch_raises():
    w = priced()
    with pytest.raises(DimensionMismatchError):
        cost(w, EvaluationConfig(w_g=(1.0,)))
    with pytest.raises(DimensionMismatchError):
        cost(w, EvaluationConfig(w_r=(1.0, 1.0)))


def test_expected_reward_decomposition():
    w = priced()
    cfg = EvaluationConfig(w_g=(0.5, 0.25), w_d=2.0, w_r=(0.125,))
    breakdown = expected_reward(w, cfg)
    # P(a) = 0.8*0.9 = 0.72 ; P(b) = 0.25 + 0.5*0.72 = 0.61
    assert abs(breakdown.expected_gain - 6.1) < 1e-12
    assert breakdown.cost == 13.75
    assert breakdown.reward == breakdown.expected_gain - breakdown.cost
    assert set(breakdown.per_output) == {"out"}
    contribution = breakdown.per_output["out"]
    assert abs(contribution.success - 0.61) < 1e-12
    assert contribution.gain == 10.0


def test_multiple_outputs_sum_their_gains():
    w = workflow(
        "two-outs",
        inputs={"in1": {"pi": 1.0}, "in2": {"pi": 0.5}},
        tasks={"t1": {"p": 0.5}, "t2": {"p": 1.0}},
        outputs={"o1": {"gain": 8.0}, "o2": {"gain": 4.0}},
        edges=(("in1", "t1"), ("in2", "t2"), ("t1", "o1"), ("t2", "o2")),
    )
    breakdown = expected_reward(w, EvaluationConfig())
    assert abs(breakdown.expected_gain - (0.5 * 8.0 + 0.5 * 4.0)) < 1e-12


def test_sampler_zero_variance_graph_is_exact():
    # every probability is 1: each run realizes exactly the analytic value
    w = chain("sure", [{"p": 1.0, "r_g": (0.25,)}], gain=2.0,
              cumulative_dims=("usd",))
    cfg = EvaluationConfig(w_g=(1.0,))
    mean, err = sample_net_benefit(w, cfg, seed=3, n=64)
    assert mean == 1.75
    assert err == 0.0


def test_sampler_never_success_graph_is_exact():
    w = chain("never", [{"p": 0.0, "q": 0.0, "r_g": (0.25,)}], gain=2.0,
              cumulative_dims=("usd",))
    mean, err = sample_net_benefit(w, EvaluationConfig(w_g=(1.0,)), seed=3, n=64)
    assert mean == -0.25
    assert err == 0.0


def test_sampler_matches_analytic_within_four_sigma():
    w = priced()
    cfg = EvaluationConfig(w_g=(0.5, 0.25), w_d=2.0, w_r=(0.125,))
    expected = expected_reward(w, cfg).reward
    mean, err = sample_net_benefit(w, cfg, seed=11, n=200_000)
    assert err > 0.0
    assert abs(mean - expected) <= 4.0 * err


def test_sampler_is_seed_deterministic():
    w = priced()
    cfg = EvaluationConfig()
    a = sample_net_benefit(w, cfg, seed=5, n=10_000)
    b = sample_net_benefit(w, cfg, seed=5, n=10_000)
    c = sample_net_benefit(w, cfg, seed=6, n=10_000)
    assert a == b
    assert a != c


def test_sampler_rejects_nonpositive_sample_count():
    w = priced()
    with pytest.raises(ValueError):
        sample_net_benefit(w, EvaluationConfig(), seed=0, n=0)


def test_sampler_single_sample_has_zero_stderr():
    w = priced()
    mean, err = sample_net_benefit(w, EvaluationConfig(), seed=0, n=1)
    assert err == 0.0
    assert mean in (-9.0, 1.0)  # cost 9, gain 10 on success


def test_reward_equals_success_times_gain_minus_cost_single_output():
    rng = random.Random(77)
    cfg = EvaluationConfig()
    for _ in range(40):
        w = random_ancestry_disjoint_workflow(rng, max_tasks=6)
        breakdown = expected_reward(w, cfg)
        direct = sum(
            workflow_success_single(w, o) * w.outputs[o].gain for o in w.outputs
        )
        assert abs(breakdown.expected_gain - direct) < 1e-12
        assert breakdown.reward == breakdown.expected_gain - breakdown.cost


def workflow_success_single(w, output_id):
    from flowgrade import node_success

    probs = node_success(w)
    value = 1.0
    for u in w.parents(output_id):
        value *= probs[u]
    return value


def test_success_product_over_outputs():
    rng = random.Random(123)
    for _ in range(30):
        w = random_ancestry_disjoint_workflow(rng, max_tasks=6)
        total = workflow_success(w)
        product = 1.0
        for o in sorted(w.outputs):
            product *= workflow_success_single(w, o)
        assert abs(total - product) < 1e-12
