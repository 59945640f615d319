"""How often does the simulated maximum search land on the DP optimum?

Sweeps item counts and seeds with default settings and prints one CSV
row per (n, growth) cell. Example:

    python3 scripts/optimality_sweep.py --n 8 12 16 --seeds 50
"""

import argparse
import csv
import random
import sys
import time
from fractions import Fraction

from qtg_knapsack import SearchConfig, exact_optimum, generate_instance, integer_greedy, qmaxsearch


def sweep(ns, growths, seeds, value_max):
    for n in ns:
        for growth in growths:
            hits = greedy_hits = 0
            rounds = cycles = 0
            start = time.perf_counter()
            for seed in range(1, seeds + 1):
                inst = generate_instance(n, (1, value_max), (1, value_max), Fraction(1, 2), random.Random(seed).randrange(2**32))
                trace = qmaxsearch(inst, SearchConfig(growth=growth, seed=seed))
                optimum = exact_optimum(inst).profit
                hits += trace.result.profit == optimum
                greedy_hits += integer_greedy(inst).profit == optimum
                rounds += sum(len(s.rounds) for s in trace.searches)
                cycles += trace.tallies.cycles
            yield {
                "n": n,
                "growth": growth,
                "runs": seeds,
                "optimal": hits / seeds,
                "greedy_optimal": greedy_hits / seeds,
                "mean_rounds": rounds / seeds,
                "mean_cycles": cycles / seeds,
                "seconds": round(time.perf_counter() - start, 2),
            }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=[8, 12, 16, 20])
    parser.add_argument("--growth", type=float, nargs="+", default=[1.2])
    parser.add_argument("--seeds", type=int, default=30)
    parser.add_argument("--value-max", type=int, default=100)
    args = parser.parse_args()
    writer = None
    for row in sweep(args.n, args.growth, args.seeds, args.value_max):
        if writer is None:
            writer = csv.DictWriter(sys.stdout, fieldnames=list(row), lineterminator="\n")
            writer.writeheader()
        writer.writerow(row)
        sys.stdout.flush()


if __name__ == "__main__":
    main()
