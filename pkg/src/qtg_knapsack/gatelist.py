"""Literal gate list of the tree generator, used to check the closed forms.

Every gate carries the wires it touches. Multi-controlled gates from the
comparator are expanded into their Toffoli ladders over a shared ancilla
pool, QFTs into Hadamard/controlled-phase cascades, and constant additions
into the individual controlled rotations of the direct method.

Two schedules are provided:

* :func:`asap_schedule` places each gate at the earliest cycle its wires are
  free, in program order. It is a lower bound on any schedule of the list.
* :func:`layered_depths` applies the layer rules the closed forms assume:
  layers never overlap, comparator gates run one per cycle, and the cost
  subtraction holds the path qubit so the whole layer pauses while it runs;
  the capacity QFT pair and the profit chain (QFT, additions, inverse QFT)
  fill the time before and after that pause.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import KnapsackInstance
from .resources import register_size

MAX_ENUMERATION_N = 8


@dataclass(frozen=True)
class Gate:
    name: str
    wires: tuple[str, ...]
    layer: int
    block: str
    # counted in the gate total, but a QFT directly followed by
    # its inverse is the identity and never executes
    cancelled: bool = False


@dataclass
class Enumeration:
    gates: list[Gate]
    cycles: list[int | None]
    asap_depth: int
    layer_depths: list[int]

    @property
    def layered_depth(self) -> int:
        return sum(self.layer_depths)

    def __len__(self) -> int:
        return len(self.gates)


def _bit(v: int, i: int) -> int:
    return (v >> (i - 1)) & 1


def odnf_clauses(operand: int, s: int, greater: bool) -> list[list[tuple[int, int]]]:
    """Clauses of ``x > operand`` (or ``x < operand``) as (position, value) literals."""
    anchor = 0 if greater else 1
    clauses = []
    for i in range(1, s + 1):
        if _bit(operand, i) == anchor:
            clause = [(i, 1 - anchor)] + [(j, _bit(operand, j)) for j in range(i + 1, s + 1)]
            clauses.append(clause)
    return clauses


def _controlled(name: str, controls: list[str], target: str, layer: int, block: str, ancilla: str) -> list[Gate]:
    if len(controls) == 1:
        return [Gate(name, (controls[0], target), layer, block)]
    anc = [f"{ancilla}{t}" for t in range(len(controls) - 1)]
    ladder = [Gate("TOF", (controls[0], controls[1], anc[0]), layer, block)]
    for t in range(1, len(controls) - 1):
        ladder.append(Gate("TOF", (anc[t - 1], controls[t + 1], anc[t]), layer, block))
    return ladder + [Gate(name, (anc[-1], target), layer, block)] + ladder[::-1]


def _clause_cost(clauses: list[list[tuple[int, int]]]) -> int:
    return sum(2 * (len(c) - 1) + 1 for c in clauses)


def _predicate_gates(
    z: int, s: int, register: str, target: str, layer: int, block: str, gate: str, ancilla: str
) -> list[Gate]:
    """``gate`` on ``target`` iff the register holds >= z, cheaper strategy first on ties."""
    if z > (1 << s) - 1:
        return []
    direct = odnf_clauses(z - 1, s, greater=True)
    undo = odnf_clauses(z, s, greater=False)

    def wires(clause):
        return [f"{register}{i}" for i, _ in clause]

    if _clause_cost(direct) <= 1 + _clause_cost(undo):
        gates = []
        for clause in direct:
            gates += _controlled(f"C{gate}", wires(clause), target, layer, block, ancilla)
        return gates
    gates = [Gate(gate, (target,), layer, block)]
    for clause in undo:
        gates += _controlled(f"C{gate}_dg", wires(clause), target, layer, block, ancilla)
    return gates


def comparator_gates(z: int, s: int, target: str, layer: int) -> list[Gate]:
    """Controlled biased Hadamard on ``target`` iff the capacity register holds >= z."""
    return _predicate_gates(z, s, "b", target, layer, "cmp", "H_b", "ab")


def threshold_gates(threshold: int, s: int, target: str = "flip") -> list[Gate]:
    """Phase flip iff the profit register holds more than ``threshold``."""
    return _predicate_gates(threshold + 1, s, "c", target, -1, "gt", "Z", "ao")


def zero_check_gates(s: int, target: str = "flip") -> list[Gate]:
    """Phase flip iff the profit register is all zeros (controls on 0)."""
    return _controlled("CZ0", [f"c{i}" for i in range(1, s + 1)], target, -1, "eq0", "ao")


def qft_gates(register: str, s: int, layer: int, block: str, inverse: bool = False, cancelled: bool = False) -> list[Gate]:
    gates = []
    for i in range(s, 0, -1):
        gates.append(Gate("H", (f"{register}{i}",), layer, block, cancelled))
        for j in range(i - 1, 0, -1):
            gates.append(Gate(f"CR{i - j + 1}", (f"{register}{j}", f"{register}{i}"), layer, block, cancelled))
    return gates[::-1] if inverse else gates


def direct_gates(v: int, s: int, register: str, control: str, layer: int, block: str) -> list[Gate]:
    v %= 1 << s
    gates = []
    for i in range(1, s + 1):
        if _bit(v, i):
            for j in range(i, s + 1):
                gates.append(Gate(f"CR{j - i + 1}", (control, f"{register}{j}"), layer, block))
    return gates


def asap_schedule(gates: list[Gate]) -> tuple[list[int | None], int]:
    ready: dict[str, int] = {}
    cycles: list[int | None] = []
    depth = 0
    for gate in gates:
        if gate.cancelled:
            cycles.append(None)
            continue
        t = max((ready.get(w, 0) for w in gate.wires), default=0)
        for w in gate.wires:
            ready[w] = t + 1
        cycles.append(t)
        depth = max(depth, t + 1)
    return cycles, depth


def _block_depth(gates: list[Gate]) -> int:
    return asap_schedule(gates)[1]


def layered_depths(gates: list[Gate]) -> list[int]:
    by_layer: dict[int, list[Gate]] = {}
    for gate in gates:
        if not gate.cancelled:
            by_layer.setdefault(gate.layer, []).append(gate)
    depths = []
    for layer in sorted(by_layer):
        blocks: dict[str, list[Gate]] = {}
        for gate in by_layer[layer]:
            blocks.setdefault(gate.block, []).append(gate)
        comparator = len(blocks.get("cmp", []))
        chain = (
            _block_depth(blocks.get("qft_p", []))
            + len(blocks.get("add", []))
            + _block_depth(blocks.get("iqft_p", []))
        )
        if "qft_c" in blocks:
            before = _block_depth(blocks["qft_c"])
            after = _block_depth(blocks["iqft_c"])
            pause = len(blocks.get("sub", []))
            window = min(max(before, x) + max(after, chain - x) for x in range(chain + 1))
            depths.append(comparator + pause + window)
        else:
            depths.append(comparator + chain)
    return depths


def enumerate_gates(instance: KnapsackInstance, profit_bound: int) -> Enumeration:
    n = instance.n
    if n > MAX_ENUMERATION_N:
        raise ValueError(f"gate enumeration limited to n <= {MAX_ENUMERATION_N}")
    s_z = register_size(instance.capacity)
    s_p = register_size(profit_bound)
    gates: list[Gate] = []
    for m in range(n):
        path = f"a{m + 1}"
        last = m == n - 1
        gates += comparator_gates(instance.costs[m], s_z, path, m)
        profit_qft = qft_gates("c", s_p, m, "qft_p") if m == 0 else []
        gates += profit_qft
        additions = direct_gates(instance.profits[m], s_p, "c", path, m, "add")
        if last:
            gates += qft_gates("b", s_z, m, "qft_c", cancelled=True)
            gates += qft_gates("b", s_z, m, "iqft_c", inverse=True, cancelled=True)
            gates += additions
            gates += qft_gates("c", s_p, m, "iqft_p", inverse=True)
            continue
        capacity_qft = qft_gates("b", s_z, m, "qft_c")
        gates += capacity_qft
        # additions that fit beside the capacity QFT go before the subtraction
        early = min(len(additions), max(0, _block_depth(capacity_qft) - _block_depth(profit_qft)))
        gates += additions[:early]
        gates += direct_gates(instance.costs[m], s_z, "b", path, m, "sub")
        gates += qft_gates("b", s_z, m, "iqft_c", inverse=True)
        gates += additions[early:]
    cycles, depth = asap_schedule(gates)
    return Enumeration(gates, cycles, depth, layered_depths(gates))
