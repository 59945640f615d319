"""High-level simulation of the Quantum Tree Generator.

Instead of a state vector we keep the computational basis states the
generator produces: one row per feasible path, with its residual capacity,
accumulated profit and sampling probability. Layers are expanded
breadth-first and vectorised with numpy; nodes whose subtree cannot beat the
threshold are dropped using the exact suffix bounds from :mod:`core`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .core import BudgetExceededError, KnapsackInstance, suffix_bounds

DEFAULT_MAX_STATES = 10**7
BRUTE_FORCE_MAX_N = 20


@dataclass(frozen=True)
class BiasConfig:
    bias: float = 0.0
    reference: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if not self.bias >= 0:
            raise ValueError(f"bias must be non-negative, got {self.bias}")
        if self.reference is not None:
            object.__setattr__(self, "reference", tuple(int(b) for b in self.reference))

    def reference_for(self, n: int) -> tuple[int, ...]:
        if self.reference is None:
            return (0,) * n
        if len(self.reference) != n:
            raise ValueError(f"reference has {len(self.reference)} bits, instance has {n}")
        return self.reference


@dataclass(frozen=True)
class TreeState:
    path: tuple[int, ...]
    residual_capacity: int
    profit: int
    probability: float

    @property
    def bitstring(self) -> str:
        return "".join(str(b) for b in self.path)


@dataclass
class StateSet:
    """Above-threshold leaves of the tree, in lexicographic path order.

    The columns are kept as arrays; ``states`` materialises them as
    :class:`TreeState` objects on first access.
    """

    threshold: int
    paths: np.ndarray = field(repr=False)
    residual: np.ndarray = field(repr=False)
    profit: np.ndarray = field(repr=False)
    probability: np.ndarray = field(repr=False)
    total_probability: float | Fraction = 0.0

    def __len__(self) -> int:
        return len(self.profit)

    @property
    def remainder_probability(self) -> float | Fraction:
        return 1 - self.total_probability

    @cached_property
    def states(self) -> tuple[TreeState, ...]:
        return tuple(
            TreeState(tuple(int(b) for b in row), int(x), int(p), q if isinstance(q, Fraction) else float(q))
            for row, x, p, q in zip(self.paths, self.residual, self.profit, self.probability)
        )

    @cached_property
    def cumulative(self) -> np.ndarray:
        """Running probability sum as float64, last entry pinned to the total."""
        cum = np.cumsum(self.probability.astype(np.float64))
        if len(cum):
            cum[-1] = float(self.total_probability)
        return cum

    def to_json(self) -> dict:
        return {
            "schema": "qtg-knapsack/stateset/1",
            "threshold": self.threshold,
            "q_T": float(self.total_probability),
            "states": [
                {"path": s.bitstring, "x": s.residual_capacity, "P": s.profit, "q": float(s.probability)}
                for s in self.states
            ],
        }


def optimal_bias(n: int, hamming: int) -> float:
    """Bias maximising the sampling probability of a path at the given distance.

    Clamped at zero: for distances above n/2 the unbiased gate is used.
    """
    if not 1 <= hamming <= n:
        raise ValueError(f"Hamming distance must lie in [1, {n}], got {hamming}")
    return max(0.0, n / hamming - 2)


def path_sampling_probability(n: int, hamming: int, bias: float) -> float:
    if not 0 <= hamming <= n:
        raise ValueError(f"Hamming distance must lie in [0, {n}]")
    return ((bias + 1) / (bias + 2)) ** (n - hamming) * (1 / (bias + 2)) ** hamming


def _factors(bias: float, exact: bool):
    if exact:
        b = Fraction(bias)
        return (b + 1) / (b + 2), 1 / (b + 2)
    return (bias + 1) / (bias + 2), 1 / (bias + 2)


def branch_factors(bias: float, reference_bit: int, exact: bool = False):
    """(exclude, include) probability factors of one branching layer."""
    if bias < 0:
        raise ValueError("bias must be non-negative")
    agree, disagree = _factors(bias, exact)
    return (agree, disagree) if reference_bit == 0 else (disagree, agree)


def build_state_set(
    instance: KnapsackInstance,
    config: BiasConfig,
    threshold: int,
    prune_by_bound: bool = True,
    *,
    exact: bool = False,
    max_states: int = DEFAULT_MAX_STATES,
) -> StateSet:
    """Breadth-first expansion keeping feasible paths with profit > threshold.

    ``threshold = -1`` keeps every feasible path. With ``exact=True`` the
    probabilities are :class:`fractions.Fraction` objects.
    """
    if threshold < -1:
        raise ValueError("threshold must be >= -1")
    n, cap = instance.n, instance.capacity
    reference = config.reference_for(n)
    dtype = object if exact else np.float64
    one = Fraction(1) if exact else 1.0
    bounds = suffix_bounds(instance).table if prune_by_bound else None

    residual = np.array([cap], dtype=np.int64)
    profit = np.zeros(1, dtype=np.int64)
    prob = np.array([one], dtype=dtype)
    if bounds is not None and bounds[0, cap] <= threshold:
        residual, profit, prob = residual[:0], profit[:0], prob[:0]

    parents: list[np.ndarray] = []
    included: list[np.ndarray] = []
    for m in range(n):
        z, p = instance.costs[m], instance.profits[m]
        left, right = branch_factors(config.bias, reference[m], exact)
        fits = residual >= z
        counts = 1 + fits.astype(np.int64)
        idx = np.repeat(np.arange(len(residual)), counts)
        take = np.zeros(len(idx), dtype=bool)
        take[(np.cumsum(counts) - 1)[fits]] = True
        branched = fits[idx]
        factor = np.full(len(idx), one, dtype=dtype)
        factor[branched & ~take] = left
        factor[take] = right

        residual = residual[idx] - z * take
        profit = profit[idx] + p * take
        prob = prob[idx] * factor
        if bounds is not None:
            keep = profit + bounds[m + 1][residual] > threshold
            idx, take = idx[keep], take[keep]
            residual, profit, prob = residual[keep], profit[keep], prob[keep]
        if len(idx) > max_states:
            raise BudgetExceededError(f"layer {m + 1} holds {len(idx)} states, cap is {max_states}")
        parents.append(idx)
        included.append(take)

    keep = profit > threshold
    rows = np.nonzero(keep)[0]
    paths = np.zeros((len(rows), n), dtype=np.uint8)
    cursor = rows
    for m in range(n - 1, -1, -1):
        paths[:, m] = included[m][cursor]
        cursor = parents[m][cursor]
    prob = prob[keep]
    total = sum(prob, Fraction(0)) if exact else math.fsum(prob)
    return StateSet(threshold, paths, residual[keep], profit[keep], prob, total)


def brute_force_state_set(
    instance: KnapsackInstance, config: BiasConfig, threshold: int, *, exact: bool = False
) -> StateSet:
    """Independent reference: replay the layer rule on each of the 2^n strings."""
    n = instance.n
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}")
    reference = config.reference_for(n)
    agree, disagree = _factors(config.bias, exact)
    one = Fraction(1) if exact else 1.0
    rows, residuals, profits, probs = [], [], [], []
    for bits in itertools.product((0, 1), repeat=n):
        x, total, q = instance.capacity, 0, one
        for m, bit in enumerate(bits):
            if instance.costs[m] > x:
                if bit:
                    break
                continue
            q = q * (agree if bit == reference[m] else disagree)
            if bit:
                x -= instance.costs[m]
                total += instance.profits[m]
        else:
            if total > threshold:
                rows.append(bits)
                residuals.append(x)
                profits.append(total)
                probs.append(q)
    prob = np.array(probs, dtype=object if exact else np.float64)
    total_q = sum(probs, Fraction(0)) if exact else math.fsum(probs)
    return StateSet(
        threshold,
        np.array(rows, dtype=np.uint8).reshape(len(rows), n),
        np.array(residuals, dtype=np.int64),
        np.array(profits, dtype=np.int64),
        prob,
        total_q,
    )


def hamming_distance(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x != y for x, y in zip(a, b, strict=True))
