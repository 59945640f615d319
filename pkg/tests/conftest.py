import itertools

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from qtg_knapsack.core import KnapsackInstance

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

WORKED_EXAMPLE = KnapsackInstance((6, 2, 1, 2), (2, 2, 1, 5), 7)
GREEDY_TRAP = KnapsackInstance((6, 4, 4), (5, 4, 4), 8)
GREEDY_OPTIMAL = KnapsackInstance((10, 7, 5), (6, 5, 4), 10)
TWO_ITEMS = KnapsackInstance((2, 1), (2, 1), 2)


def enumerate_feasible(instance):
    """All feasible bit strings with their profit, by exhaustive search."""
    out = []
    for bits in itertools.product((0, 1), repeat=instance.n):
        cost = sum(z for z, b in zip(instance.costs, bits) if b)
        if cost <= instance.capacity:
            out.append((bits, sum(p for p, b in zip(instance.profits, bits) if b)))
    return out


def brute_optimum(instance):
    return max(profit for _, profit in enumerate_feasible(instance))


@st.composite
def instances(draw, min_n=1, max_n=10, max_value=40):
    n = draw(st.integers(min_n, max_n))
    profits = draw(st.lists(st.integers(1, max_value), min_size=n, max_size=n))
    costs = draw(st.lists(st.integers(1, max_value), min_size=n, max_size=n))
    capacity = draw(st.integers(1, max(1, sum(costs))))
    return KnapsackInstance(tuple(profits), tuple(costs), capacity)


@pytest.fixture
def worked_example():
    return WORKED_EXAMPLE


ACCEPTANCE_LINES: list[str] = []


def record_criterion(label: str, passed: bool, detail: str) -> None:
    line = f"{'PASS' if passed else 'FAIL'}  {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
