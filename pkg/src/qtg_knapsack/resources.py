"""Closed-form qubit, gate and cycle counts for the tree generator and search.

Conventions used throughout:

* Bit positions are 1-based, position 1 being the least significant bit.
* A register holding values up to ``v`` has ``bitlen(v)`` qubits. With
  ``paper_literal=True`` the plain ``ceil(log2 v)`` sizes and summation
  limits are reproduced instead (clamped to one qubit), for comparison only.
* A k-controlled single-qubit gate costs ``2(k-1) + 1`` gates (Toffoli
  ladder plus one singly-controlled gate); controlling on 0 costs the same.
* Fourier-space additions of a constant are taken modulo ``2**s``, so bits
  of an operand above the register width contribute nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Literal

from .core import KnapsackInstance

if TYPE_CHECKING:
    from .search import SearchTrace

ComparisonKind = Literal["geq", "eq0", "gt"]


@dataclass(frozen=True)
class ResourceCounts:
    qubits: int = 0
    gates: int = 0
    cycles: int = 0

    def to_json(self) -> dict:
        return {"qubits": self.qubits, "gates": self.gates, "cycles": self.cycles}


@dataclass(frozen=True)
class RegisterSizes:
    path: int
    capacity: int
    profit: int

    @property
    def ancilla(self) -> int:
        # comparator ladder + oracle ladder + one phase-flip qubit
        return (self.capacity - 1) + (self.profit - 1) + 1

    @property
    def total(self) -> int:
        return self.path + self.capacity + self.profit + self.ancilla

    def to_json(self) -> dict:
        return {
            "path": self.path,
            "capacity": self.capacity,
            "profit": self.profit,
            "ancilla": self.ancilla,
        }


def bitlen(v: int) -> int:
    if v < 1:
        raise ValueError(f"bitlen needs a positive integer, got {v}")
    return v.bit_length()


def ceil_log2(v: int) -> int:
    if v < 1:
        raise ValueError(f"ceil_log2 needs a positive integer, got {v}")
    return (v - 1).bit_length()


def register_size(v: int, paper_literal: bool = False) -> int:
    return max(1, ceil_log2(v)) if paper_literal else bitlen(v)


def _operand_width(v: int, paper_literal: bool) -> int:
    """Upper summation limit over the operand's bits."""
    if v < 1:
        return 0
    return ceil_log2(v) if paper_literal else bitlen(v)


def _bit(v: int, i: int) -> int:
    return (v >> (i - 1)) & 1


def qubit_counts(instance: KnapsackInstance, profit_bound: int, paper_literal: bool = False) -> RegisterSizes:
    if profit_bound < 1:
        raise ValueError("profit bound must be positive")
    return RegisterSizes(
        path=instance.n,
        capacity=register_size(instance.capacity, paper_literal),
        profit=register_size(profit_bound, paper_literal),
    )


def qft_counts(s: int) -> ResourceCounts:
    if s < 1:
        raise ValueError("register size must be positive")
    return ResourceCounts(qubits=s, gates=s * (s + 1) // 2, cycles=2 * s - 1)


def direct_injection_gates(v: int, s: int, paper_literal: bool = False) -> int:
    """Rotations needed to add the constant ``v`` to an s-qubit Fourier register."""
    if v < 0:
        raise ValueError("operand must be non-negative")
    width = _operand_width(v, paper_literal)
    if not paper_literal and width > s:
        raise ValueError(f"value {v} exceeds a {s}-qubit register")
    return sum(s + 1 - i for i in range(1, min(width, s) + 1) if _bit(v, i))


def _reduced(v: int, s: int, paper_literal: bool) -> int:
    return v if paper_literal else v % (1 << s)


def adder_totals(instance: KnapsackInstance, profit_bound: int, paper_literal: bool = False) -> ResourceCounts:
    s = register_size(profit_bound, paper_literal)
    direct = sum(direct_injection_gates(_reduced(p, s, paper_literal), s, paper_literal) for p in instance.profits)
    qft = qft_counts(s)
    return ResourceCounts(qubits=s, gates=2 * qft.gates + direct, cycles=2 * qft.cycles + direct)


def subtractor_totals(instance: KnapsackInstance, paper_literal: bool = False) -> ResourceCounts:
    # SUB of the last item is omitted but all n QFT pairs are still counted.
    s = register_size(instance.capacity, paper_literal)
    n = instance.n
    direct = sum(
        direct_injection_gates(_reduced(z, s, paper_literal), s, paper_literal) for z in instance.costs[:-1]
    )
    return ResourceCounts(qubits=s, gates=n * s * (s + 1) + direct, cycles=4 * n * s - 2 * n + direct)


def _clause_price(s: int, i: int) -> int:
    # the clause anchored at position i has s - i + 1 literals
    return 2 * (s - i) + 1


def comparison_strategies(
    kind: ComparisonKind, operand: int, s: int, paper_literal: bool = False
) -> tuple[int, int]:
    """Gate counts of both controlled-gate strategies for ``x >= z`` / ``x > T``.

    Strategy 1 applies the gate iff ``x > b`` with ``b = z - 1`` (or ``T``);
    strategy 2 applies it unconditionally and undoes it iff ``x < b + 1``.
    """
    if kind == "geq":
        if operand < 1:
            raise ValueError("geq comparison needs an operand >= 1")
        below = operand - 1
    elif kind == "gt":
        if operand < 0:
            raise ValueError("gt comparison needs a threshold >= 0")
        below = operand
    else:
        raise ValueError(f"no strategies for comparison kind {kind!r}")
    top = (1 << s) - 1
    if below > top:
        raise ValueError(f"operand {operand} does not fit a {s}-qubit register")
    if paper_literal:
        limit1 = min(s, ceil_log2(below + 1))
        limit2 = min(s, ceil_log2(below + 1))
    else:
        limit1 = s
        limit2 = s
    first = sum(_clause_price(s, i) for i in range(1, limit1 + 1) if not _bit(below, i))
    if below == top:
        # x > 2^s - 1 never holds; the unconditional variant would need an operand of s + 1 bits
        return first, first
    b_next = below + 1
    second = 1 + sum(_clause_price(s, i) for i in range(1, limit2 + 1) if _bit(b_next, i))
    return first, second


def comparison_gates(kind: ComparisonKind, operand: int, s: int, paper_literal: bool = False) -> int:
    if kind == "eq0":
        if s < 1:
            raise ValueError("register size must be positive")
        return 2 * s - 1
    return min(comparison_strategies(kind, operand, s, paper_literal))


def cost_comparison_gates(z: int, s: int, paper_literal: bool = False) -> int:
    """Controlled biased-Hadamard cost of ``x >= z``; zero when z exceeds the register."""
    if z > (1 << s) - 1:
        return 0
    return comparison_gates("geq", z, s, paper_literal)


def threshold_comparison_gates(threshold: int, s: int, paper_literal: bool = False) -> int:
    if threshold >= (1 << s) - 1:
        return 0
    return comparison_gates("gt", threshold, s, paper_literal)


@dataclass(frozen=True)
class QTGLayer:
    comparison: int
    direct_cost: int
    direct_profit: int
    cycles: int


def qtg_layers(instance: KnapsackInstance, profit_bound: int, paper_literal: bool = False) -> list[QTGLayer]:
    n = instance.n
    s_z = register_size(instance.capacity, paper_literal)
    s_p = register_size(profit_bound, paper_literal)
    qz, qp = qft_counts(s_z).cycles, qft_counts(s_p).cycles
    layers = []
    for m in range(n):
        cmp_ = cost_comparison_gates(instance.costs[m], s_z, paper_literal)
        dp = direct_injection_gates(_reduced(instance.profits[m], s_p, paper_literal), s_p, paper_literal)
        last = m == n - 1
        dz = 0 if last else direct_injection_gates(_reduced(instance.costs[m], s_z, paper_literal), s_z, paper_literal)
        if n == 1:
            # first and last layer at once: QFT, addition, inverse QFT on the profit register
            cycles = cmp_ + dp + 2 * qp
        elif m == 0:
            cycles = cmp_ + dz + max(2 * qz, qp + dp)
        elif last:
            cycles = cmp_ + dp + qp
        else:
            cycles = cmp_ + dz + max(2 * qz, dp)
        layers.append(QTGLayer(cmp_, dz, dp, cycles))
    return layers


def qtg_totals(instance: KnapsackInstance, profit_bound: int, paper_literal: bool = False) -> ResourceCounts:
    layers = qtg_layers(instance, profit_bound, paper_literal)
    gates = (
        sum(layer.comparison for layer in layers)
        + subtractor_totals(instance, paper_literal).gates
        + adder_totals(instance, profit_bound, paper_literal).gates
    )
    qubits = qubit_counts(instance, profit_bound, paper_literal).total
    return ResourceCounts(qubits=qubits, gates=gates, cycles=sum(layer.cycles for layer in layers))


def search_tally(
    trace: SearchTrace, instance: KnapsackInstance, profit_bound: int, paper_literal: bool = False
) -> ResourceCounts:
    """Gates and cycles of every amplification round recorded in a trace.

    Each round of power j runs the generator 2j + 1 times and the zero and
    threshold reflections j times each. Comparisons do not parallelise, so
    their cycle counts equal their gate counts.
    """
    if trace.instance_digest != instance.digest():
        raise ValueError("trace was produced on a different instance")
    qtg = qtg_totals(instance, profit_bound, paper_literal)
    s_p = register_size(profit_bound, paper_literal)
    zero = comparison_gates("eq0", 0, s_p)
    gates = cycles = 0
    for threshold, powers in zip(trace.thresholds, trace.power_sequences):
        oracle = threshold_comparison_gates(threshold, s_p, paper_literal)
        for j in powers:
            gates += (2 * j + 1) * qtg.gates + j * (zero + oracle)
            cycles += (2 * j + 1) * qtg.cycles + j * (zero + oracle)
    return ResourceCounts(qubits=qtg.qubits, gates=gates, cycles=cycles)


def estimate(instance: KnapsackInstance, profit_bound: int, paper_literal: bool = False) -> dict:
    """Resource document consumed by the ``estimate`` command."""
    regs = qubit_counts(instance, profit_bound, paper_literal)
    layers = qtg_layers(instance, profit_bound, paper_literal)
    qtg = qtg_totals(instance, profit_bound, paper_literal)
    adder = adder_totals(instance, profit_bound, paper_literal)
    subtractor = subtractor_totals(instance, paper_literal)
    return {
        "schema": "qtg-knapsack/estimate/1",
        "instance_digest": instance.digest(),
        "profit_bound": profit_bound,
        "paper_literal": paper_literal,
        "registers": regs.to_json(),
        "qubits_total": regs.total,
        "qtg": {"gates": qtg.gates, "cycles": qtg.cycles},
        "per_layer": [
            {
                "item": m + 1,
                "comparison": layer.comparison,
                "direct_cost": layer.direct_cost,
                "direct_profit": layer.direct_profit,
                "cycles": layer.cycles,
            }
            for m, layer in enumerate(layers)
        ],
        "comparisons": [layer.comparison for layer in layers],
        "zero_comparison": comparison_gates("eq0", 0, regs.profit),
        "adder": {"gates": adder.gates, "cycles": adder.cycles},
        "subtractor": {"gates": subtractor.gates, "cycles": subtractor.cycles},
    }
