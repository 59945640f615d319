import random

import pytest
from hypothesis import given

from conftest import WORKED_EXAMPLE, instances
from qtg_knapsack.core import KnapsackInstance
from qtg_knapsack.gatelist import (
    asap_schedule,
    comparator_gates,
    direct_gates,
    enumerate_gates,
    odnf_clauses,
    qft_gates,
    threshold_gates,
    zero_check_gates,
)
from qtg_knapsack.resources import (
    comparison_gates,
    cost_comparison_gates,
    direct_injection_gates,
    qft_counts,
    qtg_totals,
    threshold_comparison_gates,
)


def test_worked_example_gate_list():
    listing = enumerate_gates(WORKED_EXAMPLE, 11)
    assert len(listing) == 111
    assert listing.layer_depths == [18, 16, 19, 17]
    assert listing.layered_depth == 70
    assert listing.asap_depth <= 70


def test_single_item_collapse():
    inst = KnapsackInstance((1,), (1,), 1)
    listing = enumerate_gates(inst, 1)
    total = qtg_totals(inst, 1)
    assert len(listing) == total.gates
    assert listing.layered_depth == total.cycles


def test_size_limit():
    with pytest.raises(ValueError):
        enumerate_gates(KnapsackInstance((1,) * 9, (1,) * 9, 3), 9)


@pytest.mark.parametrize("s", [1, 2, 3, 4, 5])
def test_qft_blocks(s):
    gates = qft_gates("c", s, 0, "qft")
    counts = qft_counts(s)
    assert len(gates) == counts.gates
    assert asap_schedule(gates)[1] == counts.cycles


@pytest.mark.parametrize("s", [1, 2, 3, 4, 5])
def test_direct_blocks(s):
    for v in range(2**s):
        assert len(direct_gates(v, s, "c", "a1", 0, "add")) == direct_injection_gates(v, s)


@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_comparator_blocks(s):
    for z in range(1, 2**s + 2):
        assert len(comparator_gates(z, s, "a1", 0)) == cost_comparison_gates(z, s)


@pytest.mark.parametrize("s", [1, 2, 3, 4, 5])
def test_oracle_blocks(s):
    assert len(zero_check_gates(s)) == comparison_gates("eq0", 0, s)
    for t in range(0, 2**s + 1):
        assert len(threshold_gates(t, s)) == threshold_comparison_gates(t, s)


def test_clause_literals():
    assert odnf_clauses(2, 3, greater=True) == [[(1, 1), (2, 1), (3, 0)], [(3, 1)]]
    assert odnf_clauses(3, 3, greater=False) == [[(1, 0), (2, 1), (3, 0)], [(2, 0), (3, 0)]]
    assert odnf_clauses(4, 3, greater=False) == [[(3, 0)]]


@given(instances(max_n=6, max_value=60))
def test_enumeration_matches_closed_form(inst):
    bound = sum(inst.profits)
    listing = enumerate_gates(inst, bound)
    total = qtg_totals(inst, bound)
    assert len(listing) == total.gates
    assert listing.layered_depth == total.cycles
    assert listing.asap_depth <= total.cycles


def test_random_sweep():
    rng = random.Random(2024)
    for _ in range(200):
        n = rng.randint(1, 6)
        inst = KnapsackInstance(
            tuple(rng.randint(1, 50) for _ in range(n)),
            tuple(rng.randint(1, 50) for _ in range(n)),
            rng.randint(1, 150),
        )
        bound = sum(inst.profits)
        listing = enumerate_gates(inst, bound)
        total = qtg_totals(inst, bound)
        assert (len(listing), listing.layered_depth) == (total.gates, total.cycles)
