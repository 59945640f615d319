import json
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import GREEDY_OPTIMAL, GREEDY_TRAP, TWO_ITEMS, brute_optimum, instances
from qtg_knapsack.core import KnapsackInstance, integer_greedy
from qtg_knapsack.qtg import BiasConfig, build_state_set
from qtg_knapsack.search import (
    REMAINDER,
    SearchConfig,
    amplification_factor,
    default_sqrt_ceiling,
    qmaxsearch,
    qsearch,
    simulate_measurement,
)


class FixedDraw(random.Random):
    """Generator whose uniform draws are pinned to one value."""

    def __init__(self, u):
        super().__init__(0)
        self.u = u

    def random(self):
        return self.u


def test_factor_examples():
    assert amplification_factor(1, 0) == 1
    assert amplification_factor(1, 7) == pytest.approx(1, abs=1e-12)
    assert amplification_factor(0.25, 1) == pytest.approx(4, abs=1e-12)
    assert amplification_factor(0.3, 0) == 1
    assert amplification_factor(0, 5) == 0


def test_factor_rejects_bad_input():
    with pytest.raises(ValueError):
        amplification_factor(1.5, 1)
    with pytest.raises(ValueError):
        amplification_factor(0.5, -1)


@given(st.floats(0, 1), st.integers(0, 500))
def test_factor_conserves_probability(q, j):
    marked = q * amplification_factor(q, j)
    assert -1e-12 <= marked <= 1 + 1e-12
    if q > 0:
        theta = math.asin(math.sqrt(q))
        assert marked + math.cos((2 * j + 1) * theta) ** 2 == pytest.approx(1, abs=1e-12)


def test_measurement_single_certain_state():
    states = build_state_set(KnapsackInstance((3,), (1,), 1), BiasConfig(), 0)
    assert states.total_probability == 0.5  # exclude branch is below threshold
    full = build_state_set(KnapsackInstance((3,), (5,), 1), BiasConfig(), -1)
    assert full.total_probability == 1 and len(full) == 1
    for u in (0.0, 0.5, 0.999999):
        assert simulate_measurement(full, 3, FixedDraw(u)) is full.states[0]


def test_measurement_quarter_mass_amplified_to_one():
    # (0,1,1) at b=0 has 1/8; build a set with mass 1/4 instead
    inst = KnapsackInstance((1, 1), (1, 1), 2)
    states = build_state_set(inst, BiasConfig(), 1)
    assert states.total_probability == 0.25
    for u in (0.0, 0.3, 0.9, 0.999999999):
        assert simulate_measurement(states, 1, FixedDraw(u)) is not REMAINDER


def test_measurement_remainder_without_amplification():
    inst = KnapsackInstance((1, 1), (1, 1), 2)
    states = build_state_set(inst, BiasConfig(), 0)
    assert states.total_probability == 0.75
    assert simulate_measurement(states, 0, FixedDraw(0.9)) is REMAINDER
    assert simulate_measurement(states, 0, FixedDraw(0.1)) is states.states[0]


def test_measurement_empty_set():
    states = build_state_set(GREEDY_TRAP, BiasConfig(), 8)
    assert simulate_measurement(states, 4, random.Random(1)) is REMAINDER


def test_measurement_frequencies_within_three_sigma():
    inst = KnapsackInstance((1, 2, 3), (1, 1, 1), 3)
    states = build_state_set(inst, BiasConfig(), 2)
    q = states.total_probability
    assert q == 0.625  # 5 of the 8 subsets have profit above 2
    j = 2
    factor = amplification_factor(q, j)
    rng = random.Random(11)
    draws = 100_000
    counts = {}
    for _ in range(draws):
        out = simulate_measurement(states, j, rng)
        key = "R" if out is REMAINDER else out.bitstring
        counts[key] = counts.get(key, 0) + 1
    expected = {s.bitstring: s.probability * factor for s in states.states}
    expected["R"] = 1 - q * factor
    for key, p in expected.items():
        sigma = math.sqrt(p * (1 - p) / draws)
        assert abs(counts.get(key, 0) / draws - p) <= 3 * sigma + 1e-12, key


def test_measurement_is_deterministic():
    states = build_state_set(GREEDY_TRAP, BiasConfig(1), -1)
    a = [simulate_measurement(states, 2, r) for r in [random.Random(5)] for _ in range(50)]
    b = [simulate_measurement(states, 2, r) for r in [random.Random(5)] for _ in range(50)]
    assert a == b


def test_config_validation():
    for kwargs in ({"growth": 1.0}, {"growth": 2.0}, {"cutoff": 0}, {"delta_target": 0}, {"bias_override": -1}):
        with pytest.raises(ValueError):
            SearchConfig(**kwargs)
    with pytest.raises(ValueError):
        SearchConfig(delta_target=5).delta_for(4)


def test_config_defaults():
    config = SearchConfig()
    assert config.cutoff_for(4) == 64 * 4
    assert config.cutoff_for(5) == 64 * 6
    assert config.delta_for(9) == 1 and config.delta_for(11) == 2
    assert config.bias_for(12) == 4
    assert SearchConfig(bias_override=0.5).bias_for(12) == 0.5


@pytest.mark.parametrize("n", range(0, 40))
def test_sqrt_ceiling(n):
    r = default_sqrt_ceiling(n)
    assert (r - 1) ** 2 < 2**n <= r**2


def test_qsearch_fails_above_optimum():
    config = SearchConfig(cutoff=20)
    result = qsearch(TWO_ITEMS, config, BiasConfig(), 2, random.Random(3))
    assert not result.success and result.assignment is None
    assert result.m_total >= 20
    assert result.m_total - (2 * result.rounds[-1].power + 1) < 20
    assert all(r.outcome is REMAINDER for r in result.rounds)


def test_qsearch_finds_improvement():
    config = SearchConfig(cutoff=10**4)
    for seed in range(20):
        result = qsearch(GREEDY_TRAP, config, BiasConfig(0), 6, random.Random(seed))
        assert result.success
        assert result.assignment.bits == (0, 1, 1) and result.assignment.profit == 8
        assert result.marked_probability == 0.125


@given(instances(max_n=10), st.integers(0, 2**31))
def test_qsearch_unrestricted_threshold_succeeds_first_round(inst, seed):
    result = qsearch(inst, SearchConfig(), BiasConfig(1), -1, random.Random(seed))
    assert result.success and len(result.rounds) == 1


def test_qsearch_rounds_follow_schedule():
    config = SearchConfig(cutoff=500, growth=1.5)
    result = qsearch(TWO_ITEMS, config, BiasConfig(), 2, random.Random(0))
    for k, r in enumerate(result.rounds, start=1):
        assert r.level == k
        assert r.range == math.ceil(1.5**k)
        assert 1 <= r.power <= r.range
    assert result.m_total == sum(2 * r.power + 1 for r in result.rounds)


def test_qmaxsearch_greedy_already_optimal():
    trace = qmaxsearch(GREEDY_OPTIMAL, SearchConfig())
    assert trace.result.profit == 15
    assert trace.thresholds == [15]
    assert not trace.searches[0].success


def test_qmaxsearch_escapes_greedy_trap():
    trace = qmaxsearch(GREEDY_TRAP, SearchConfig(cutoff=1000, bias_override=0, seed=4))
    assert trace.thresholds == [6, 8]
    assert trace.result.profit == 8 and trace.result.bits == (0, 1, 1)


def test_qmaxsearch_nothing_fits():
    inst = KnapsackInstance((5, 6), (4, 3), 2)
    trace = qmaxsearch(inst, SearchConfig())
    assert trace.result.profit == 0 and trace.result.bits == (0, 0)
    assert len(trace.searches) == 1 and not trace.searches[0].success


@given(instances(max_n=10), st.integers(0, 2**31), st.sampled_from([1.1, 1.2, 1.7]))
def test_qmaxsearch_invariants(inst, seed, growth):
    config = SearchConfig(growth=growth, cutoff=200, seed=seed)
    trace = qmaxsearch(inst, config)
    assert all(a < b for a, b in zip(trace.thresholds, trace.thresholds[1:]))
    assert trace.thresholds[0] == integer_greedy(inst).profit
    bits = trace.result.bits
    assert sum(z for z, b in zip(inst.costs, bits) if b) <= inst.capacity
    assert trace.result.profit == sum(p for p, b in zip(inst.profits, bits) if b)
    assert trace.greedy_profit <= trace.result.profit <= brute_optimum(inst)
    for search in trace.searches:
        for r in search.rounds:
            assert 1 <= r.power <= r.range
        assert search.m_total == sum(2 * r.power + 1 for r in search.rounds)
    last = trace.searches[-1]
    assert not last.success
    assert last.m_total >= 200 > last.m_total - (2 * last.rounds[-1].power + 1)
    assert all(s.success for s in trace.searches[:-1])


@given(instances(max_n=9), st.integers(0, 2**31))
def test_qmaxsearch_replays_identically(inst, seed):
    config = SearchConfig(cutoff=100, seed=seed)
    assert qmaxsearch(inst, config).to_json() == qmaxsearch(inst, config).to_json()


def test_trace_json_shape():
    trace = qmaxsearch(GREEDY_TRAP, SearchConfig(cutoff=1000, bias_override=0, seed=4))
    doc = json.loads(json.dumps(trace.to_json()))
    assert set(doc) >= {"instance_digest", "seed", "config", "thresholds", "rounds", "m_total", "result", "resources"}
    assert doc["thresholds"] == [6, 8]
    assert doc["result"] == {"bits": "011", "profit": 8}
    assert doc["rounds"][0][-1]["outcome"] == "011"
    assert all(set(r) == {"l", "m", "j", "outcome"} for rs in doc["rounds"] for r in rs)
    assert doc["m_total"] == trace.m_total_final
    assert doc["resources"]["qubits"] > 0 and doc["resources"]["gates"] > 0
