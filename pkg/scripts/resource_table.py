"""Closed-form QTG resources across instance sizes, bit-length vs literal sizing.

    python3 scripts/resource_table.py --n 4 8 16 32 64 --seed 3
"""

import argparse
import csv
import sys
from fractions import Fraction

from qtg_knapsack import generate_instance, profit_register_bound
from qtg_knapsack.resources import qtg_totals


def rows(ns, seed, value_max, tight):
    for n in ns:
        inst = generate_instance(n, (1, value_max), (1, value_max), Fraction(1, 2), seed)
        bound = profit_register_bound(inst, tight)
        for literal in (False, True):
            total = qtg_totals(inst, bound, paper_literal=literal)
            yield {
                "n": n,
                "capacity": inst.capacity,
                "profit_bound": bound,
                "sizing": "ceil_log2" if literal else "bitlen",
                "qubits": total.qubits,
                "gates": total.gates,
                "cycles": total.cycles,
            }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=[4, 8, 16, 32, 64, 128])
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--value-max", type=int, default=1000)
    parser.add_argument("--tight-profit-bound", action="store_true")
    args = parser.parse_args()
    writer = csv.DictWriter(
        sys.stdout, fieldnames=["n", "capacity", "profit_bound", "sizing", "qubits", "gates", "cycles"], lineterminator="\n"
    )
    writer.writeheader()
    writer.writerows(rows(args.n, args.seed, args.value_max, args.tight_profit_bound))


if __name__ == "__main__":
    main()
