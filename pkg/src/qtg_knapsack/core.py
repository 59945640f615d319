"""Knapsack instances, text I/O, instance generation and classical solvers.

The exact solver here is a capacity-indexed dynamic program. It is the
correctness oracle for the search and also supplies the per-subtree upper
bounds used to prune the simulated tree generator.
"""

from __future__ import annotations

import hashlib
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

DEFAULT_WORK_BUDGET = 10**9

_INT = re.compile(r"[+-]?\d+")


class InstanceFormatError(ValueError):
    """Raised for malformed instance text; carries the offending line number."""

    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class BudgetExceededError(RuntimeError):
    """Raised when an exact computation would exceed its configured work cap."""


@dataclass(frozen=True)
class KnapsackInstance:
    profits: tuple[int, ...]
    costs: tuple[int, ...]
    capacity: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "profits", tuple(int(p) for p in self.profits))
        object.__setattr__(self, "costs", tuple(int(z) for z in self.costs))
        if len(self.profits) != len(self.costs):
            raise ValueError("profits and costs must have the same length")
        if not self.profits:
            raise ValueError("an instance needs at least one item")
        if min(self.profits) < 1 or min(self.costs) < 1:
            raise ValueError("profits and costs must be positive integers")
        if self.capacity < 1:
            raise ValueError("capacity must be a positive integer")

    @property
    def n(self) -> int:
        return len(self.profits)

    def digest(self) -> str:
        return hashlib.sha256(serialize_instance(self).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class Assignment:
    bits: tuple[int, ...]
    profit: int
    residual_capacity: int

    @classmethod
    def from_bits(cls, instance: KnapsackInstance, bits: Sequence[int]) -> Assignment:
        bits = tuple(int(b) for b in bits)
        if len(bits) != instance.n or any(b not in (0, 1) for b in bits):
            raise ValueError(f"expected {instance.n} bits, got {bits!r}")
        cost = sum(z for z, b in zip(instance.costs, bits) if b)
        if cost > instance.capacity:
            raise ValueError(f"assignment {bits!r} exceeds capacity")
        profit = sum(p for p, b in zip(instance.profits, bits) if b)
        return cls(bits, profit, instance.capacity - cost)

    @property
    def bitstring(self) -> str:
        return "".join(str(b) for b in self.bits)


def parse_instance(text: str) -> KnapsackInstance:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 2:
        raise InstanceFormatError(len(lines) + 1, "expected item count and capacity lines")

    def scalar(lineno: int) -> int:
        raw = lines[lineno - 1].rstrip("\r")
        if not _INT.fullmatch(raw):
            raise InstanceFormatError(lineno, f"expected an integer, got {raw!r}")
        value = int(raw)
        if value < 1:
            raise InstanceFormatError(lineno, f"non-positive value {value}")
        return value

    n = scalar(1)
    capacity = scalar(2)
    items = lines[2:]
    if len(items) != n:
        raise InstanceFormatError(
            min(len(lines) + 1, n + 3), f"item count mismatch: header says {n}, found {len(items)}"
        )
    profits, costs = [], []
    for offset, raw in enumerate(items):
        lineno = offset + 3
        fields = raw.rstrip("\r").split(" ")
        if len(fields) != 2 or not all(_INT.fullmatch(f) for f in fields):
            raise InstanceFormatError(lineno, f"expected 'profit cost', got {raw!r}")
        p, z = int(fields[0]), int(fields[1])
        if p < 1 or z < 1:
            raise InstanceFormatError(lineno, f"non-positive value in {raw!r}")
        profits.append(p)
        costs.append(z)
    return KnapsackInstance(tuple(profits), tuple(costs), capacity)


def serialize_instance(instance: KnapsackInstance) -> str:
    rows = [str(instance.n), str(instance.capacity)]
    rows += [f"{p} {z}" for p, z in zip(instance.profits, instance.costs)]
    return "\n".join(rows) + "\n"


def generate_instance(
    n: int,
    profit_range: tuple[int, int],
    cost_range: tuple[int, int],
    capacity_fraction: Fraction | float | str = Fraction(1, 2),
    seed: int | None = None,
) -> KnapsackInstance:
    """Draw a uniform random instance.

    Capacity is ``max(min(z), floor(capacity_fraction * sum(z)))`` so that at
    least one item always fits.
    """
    for lo, hi in (profit_range, cost_range):
        if lo < 1 or hi < lo:
            raise ValueError(f"invalid range [{lo}, {hi}]")
    if n < 1:
        raise ValueError("n must be positive")
    fraction = Fraction(capacity_fraction)
    if not 0 < fraction <= 1:
        raise ValueError("capacity_fraction must lie in (0, 1]")
    rng = random.Random(seed)
    profits = tuple(rng.randint(*profit_range) for _ in range(n))
    costs = tuple(rng.randint(*cost_range) for _ in range(n))
    capacity = max(min(costs), int(fraction * sum(costs)))
    return KnapsackInstance(profits, costs, capacity)


def efficiency_order(instance: KnapsackInstance) -> list[int]:
    # ties go to the smaller index
    return sorted(
        range(instance.n),
        key=lambda m: (-Fraction(instance.profits[m], instance.costs[m]), m),
    )


def integer_greedy(instance: KnapsackInstance) -> Assignment:
    bits = [0] * instance.n
    left = instance.capacity
    for m in efficiency_order(instance):
        if instance.costs[m] <= left:
            bits[m] = 1
            left -= instance.costs[m]
    return Assignment.from_bits(instance, bits)


def _check_budget(instance: KnapsackInstance, budget: int) -> None:
    work = instance.n * (instance.capacity + 1)
    if work > budget:
        raise BudgetExceededError(f"DP needs {work} cell updates, budget is {budget}")
    if sum(instance.profits) >= 2**62:
        raise BudgetExceededError("profit sum does not fit the 64-bit DP table")


def exact_optimum(instance: KnapsackInstance, budget: int = DEFAULT_WORK_BUDGET) -> Assignment:
    """Maximum-profit feasible assignment by O(n*Z) time, O(Z) value-space DP.

    Decisions are kept as packed bit rows (n*Z/8 bytes) for recovery.
    """
    _check_budget(instance, budget)
    cap = instance.capacity
    best = np.zeros(cap + 1, dtype=np.int64)
    taken = []
    for p, z in zip(instance.profits, instance.costs):
        row = np.zeros(cap + 1, dtype=bool)
        if z <= cap:
            candidate = best[: cap + 1 - z] + p
            better = candidate > best[z:]
            row[z:] = better
            best[z:] = np.where(better, candidate, best[z:])
        taken.append(np.packbits(row))
    bits = [0] * instance.n
    c = cap
    for m in range(instance.n - 1, -1, -1):
        if (taken[m][c >> 3] >> (7 - (c & 7))) & 1:
            bits[m] = 1
            c -= instance.costs[m]
    result = Assignment.from_bits(instance, bits)
    assert result.profit == int(best[cap])
    return result


class SuffixBounds:
    """Exact optimum of every suffix subinstance, for every residual capacity.

    ``table[k, c]`` is the best profit obtainable from items ``k..n-1`` with
    capacity ``c``. This is the memo keyed by (first free item, residual
    capacity), filled eagerly; it is read-only after construction.
    """

    def __init__(self, instance: KnapsackInstance, budget: int = DEFAULT_WORK_BUDGET) -> None:
        _check_budget(instance, budget)
        n, cap = instance.n, instance.capacity
        table = np.zeros((n + 1, cap + 1), dtype=np.int64)
        for k in range(n - 1, -1, -1):
            p, z = instance.profits[k], instance.costs[k]
            table[k] = table[k + 1]
            if z <= cap:
                table[k, z:] = np.maximum(table[k + 1, z:], table[k + 1, : cap + 1 - z] + p)
        table.flags.writeable = False
        self.instance = instance
        self.table = table

    def bound(self, prefix: Sequence[int]) -> int:
        inst = self.instance
        k = len(prefix)
        if k > inst.n:
            raise ValueError("prefix longer than the instance")
        cost = sum(z for z, b in zip(inst.costs, prefix) if b)
        if cost > inst.capacity:
            raise ValueError(f"infeasible prefix {tuple(prefix)!r}")
        profit = sum(p for p, b in zip(inst.profits, prefix) if b)
        return profit + int(self.table[k, inst.capacity - cost])


@lru_cache(maxsize=64)
def suffix_bounds(instance: KnapsackInstance) -> SuffixBounds:
    return SuffixBounds(instance)


def subinstance_bound(instance: KnapsackInstance, prefix: Sequence[int]) -> int:
    """Best total profit over all completions of a fixed, feasible prefix."""
    return suffix_bounds(instance).bound(prefix)


def profit_register_bound(instance: KnapsackInstance, tight: bool = False) -> int:
    """Upper bound P on the optimum used to size the profit register.

    ``tight=False`` gives the plain profit sum. ``tight=True`` adds the floor
    of the LP-relaxation (Dantzig) bound, capped by the sum.
    """
    total = sum(instance.profits)
    if not tight:
        return total
    left = instance.capacity
    bound = 0
    for m in efficiency_order(instance):
        p, z = instance.profits[m], instance.costs[m]
        if z <= left:
            bound += p
            left -= z
        else:
            bound += left * p // z
            break
    return max(1, min(total, bound))
