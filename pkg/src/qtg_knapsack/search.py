"""Simulated amplitude amplification and the QSearch / QMaxSearch drivers.

Amplification is applied analytically: after ``j`` Grover-type iterations the
marked mass ``q`` becomes ``sin^2((2j+1) asin(sqrt q))``, and every marked
state is scaled by the same factor. Randomness comes from one
``random.Random`` per run (MT19937; ``random()`` gives 53-bit uniforms and
``randint`` uses rejection sampling).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .core import Assignment, KnapsackInstance, integer_greedy, profit_register_bound
from .qtg import BiasConfig, StateSet, TreeState, build_state_set, optimal_bias
from .resources import ResourceCounts, search_tally


class _Remainder:
    """Measurement landed on the collective below-threshold state."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "REMAINDER"

    def __reduce__(self):
        return (_Remainder, ())


REMAINDER = _Remainder()


@dataclass(frozen=True)
class SearchConfig:
    growth: float = 1.2
    cutoff: int | None = None
    delta_target: int | None = None
    bias_override: float | None = None
    seed: int = 1
    tight_profit_bound: bool = False

    def __post_init__(self) -> None:
        if not 1 < self.growth < 2:
            raise ValueError(f"growth must satisfy 1 < c < 2, got {self.growth}")
        if self.cutoff is not None and self.cutoff < 1:
            raise ValueError("cutoff must be at least 1")
        if self.delta_target is not None and self.delta_target < 1:
            raise ValueError("delta_target must be at least 1")
        if self.bias_override is not None and not self.bias_override >= 0:
            raise ValueError("bias_override must be non-negative")

    def cutoff_for(self, n: int) -> int:
        if self.cutoff is not None:
            return self.cutoff
        return 64 * default_sqrt_ceiling(n)

    def delta_for(self, n: int) -> int:
        delta = self.delta_target if self.delta_target is not None else max(1, -(-n // 10))
        if delta > n:
            raise ValueError(f"delta_target {delta} exceeds n = {n}")
        return delta

    def bias_for(self, n: int) -> float:
        if self.bias_override is not None:
            return self.bias_override
        return optimal_bias(n, self.delta_for(n))

    def to_json(self) -> dict:
        return {
            "growth": self.growth,
            "cutoff": self.cutoff,
            "delta_target": self.delta_target,
            "bias_override": self.bias_override,
            "seed": self.seed,
            "tight_profit_bound": self.tight_profit_bound,
        }


def default_sqrt_ceiling(n: int) -> int:
    """ceil(sqrt(2**n)) in exact integer arithmetic."""
    return math.isqrt(2**n - 1) + 1


@dataclass(frozen=True)
class QSearchRound:
    level: int
    range: int
    power: int
    outcome: TreeState | _Remainder

    def to_json(self) -> dict:
        outcome = "remainder" if self.outcome is REMAINDER else self.outcome.bitstring
        return {"l": self.level, "m": self.range, "j": self.power, "outcome": outcome}


@dataclass
class QSearchResult:
    threshold: int
    success: bool
    assignment: Assignment | None
    rounds: list[QSearchRound]
    m_total: int
    last_outcome: TreeState | _Remainder
    state_count: int = 0
    marked_probability: float = 0.0

    @property
    def powers(self) -> list[int]:
        return [r.power for r in self.rounds]


@dataclass
class SearchTrace:
    instance_digest: str
    seed: int
    config: SearchConfig
    bias: float
    searches: list[QSearchResult]
    result: Assignment
    tallies: ResourceCounts = field(default_factory=ResourceCounts)
    greedy_profit: int = 0

    @property
    def thresholds(self) -> list[int]:
        return [s.threshold for s in self.searches]

    @property
    def power_sequences(self) -> list[list[int]]:
        return [s.powers for s in self.searches]

    @property
    def m_total_final(self) -> int:
        return self.searches[-1].m_total if self.searches else 0

    def to_json(self) -> dict:
        return {
            "schema": "qtg-knapsack/trace/1",
            "instance_digest": self.instance_digest,
            "seed": self.seed,
            "config": self.config.to_json(),
            "bias": self.bias,
            "thresholds": self.thresholds,
            "rounds": [[r.to_json() for r in s.rounds] for s in self.searches],
            "m_total": self.m_total_final,
            "result": {"bits": self.result.bitstring, "profit": self.result.profit},
            "resources": self.tallies.to_json(),
        }


def amplified_mass(q: float, j: int) -> float:
    """Marked probability after j amplification steps."""
    return math.sin((2 * j + 1) * math.asin(math.sqrt(q))) ** 2


def amplification_factor(q: float, j: int) -> float:
    if not 0 <= q <= 1:
        raise ValueError(f"probability out of range: {q}")
    if j < 0:
        raise ValueError("power must be non-negative")
    if q == 0:
        return 0.0
    if j == 0:
        return 1.0
    return amplified_mass(q, j) / q


def simulate_measurement(states: StateSet, j: int, rng: random.Random) -> TreeState | _Remainder:
    """Sample one outcome after applying the amplification operator j times.

    Walks the states in canonical order accumulating amplified probability and
    returns the first whose running sum exceeds a uniform draw.
    """
    u = rng.random()
    q = float(states.total_probability)
    if q <= 0 or len(states) == 0:
        return REMAINDER
    scale = amplification_factor(min(q, 1.0), j)
    if scale == 0:
        return REMAINDER
    # cum_i * scale > u  <=>  cum_i > u / scale
    idx = int(np.searchsorted(states.cumulative, u / scale, side="right"))
    if idx >= len(states):
        return REMAINDER
    return states.states[idx]


def _power_range(growth: Fraction, level: int) -> int:
    return math.ceil(growth**level)


def qsearch(
    instance: KnapsackInstance,
    config: SearchConfig,
    bias_config: BiasConfig,
    threshold: int,
    rng: random.Random,
    *,
    states: StateSet | None = None,
) -> QSearchResult:
    """Exponential-schedule search for any path with profit above ``threshold``.

    Stops on the first above-threshold measurement, or unsuccessfully once the
    accumulated generator applications reach the cutoff.
    """
    if states is None:
        states = build_state_set(instance, bias_config, threshold, prune_by_bound=True)
    cutoff = config.cutoff_for(instance.n)
    growth = Fraction(str(config.growth))
    level = 0
    m_total = 0
    rounds: list[QSearchRound] = []
    while True:
        level += 1
        m = _power_range(growth, level)
        j = rng.randint(1, m)
        m_total += 2 * j + 1
        outcome = simulate_measurement(states, j, rng)
        rounds.append(QSearchRound(level, m, j, outcome))
        if outcome is not REMAINDER and outcome.profit > threshold:
            assignment = Assignment(outcome.path, outcome.profit, outcome.residual_capacity)
            return QSearchResult(threshold, True, assignment, rounds, m_total, outcome, len(states), float(states.total_probability))
        if m_total >= cutoff:
            return QSearchResult(threshold, False, None, rounds, m_total, outcome, len(states), float(states.total_probability))


def qmaxsearch(
    instance: KnapsackInstance, config: SearchConfig, *, state_sets: list[StateSet] | None = None
) -> SearchTrace:
    """Threshold-ascending maximum finding seeded with the integer greedy solution.

    Pass a list as ``state_sets`` to collect the state set used at each threshold.
    """
    rng = random.Random(config.seed)
    n = instance.n
    bias = config.bias_for(n)
    incumbent = integer_greedy(instance)
    threshold = incumbent.profit
    searches: list[QSearchResult] = []
    while True:
        bias_config = BiasConfig(bias, incumbent.bits)
        states = build_state_set(instance, bias_config, threshold, prune_by_bound=True)
        if state_sets is not None:
            state_sets.append(states)
        outcome = qsearch(instance, config, bias_config, threshold, rng, states=states)
        searches.append(outcome)
        if not outcome.success:
            break
        incumbent = outcome.assignment
        threshold = incumbent.profit
    trace = SearchTrace(
        instance_digest=instance.digest(),
        seed=config.seed,
        config=config,
        bias=bias,
        searches=searches,
        result=incumbent,
        greedy_profit=searches[0].threshold,
    )
    bound = profit_register_bound(instance, config.tight_profit_bound)
    return replace(trace, tallies=search_tally(trace, instance, bound))
