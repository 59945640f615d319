"""Command-line front end: ``generate``, ``simulate``, ``estimate``, ``benchmark``.

Documents go to stdout, diagnostics to stderr. Exit codes: 0 success,
2 verification mismatch (``simulate --verify``; argparse also uses 2 for
usage errors), 3 I/O error, 4 malformed instance or invalid parameter,
5 work budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .core import (
    BudgetExceededError,
    InstanceFormatError,
    KnapsackInstance,
    exact_optimum,
    generate_instance,
    parse_instance,
    profit_register_bound,
    serialize_instance,
)
from .resources import estimate
from .search import SearchConfig, SearchTrace, qmaxsearch

log = logging.getLogger("qtg_knapsack")

EXIT_MISMATCH = 2
EXIT_IO = 3
EXIT_PARSE = 4
EXIT_BUDGET = 5

REPORT_SCHEMA = "qtg-knapsack/run-report/1"
BENCHMARK_SCHEMA = "qtg-knapsack/benchmark/1"
BENCHMARK_COLUMNS = [
    "schema", "file", "seed", "n", "optimum", "result", "match",
    "m_total", "gates", "cycles", "qubits", "millis", "error",
]


@dataclass
class RunReport:
    instance_digest: str
    trace: SearchTrace
    oracle_optimum: int | None
    elapsed_ms: float

    @property
    def match(self) -> bool | None:
        if self.oracle_optimum is None:
            return None
        return self.trace.result.profit == self.oracle_optimum

    def to_json(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "instance_digest": self.instance_digest,
            "trace": self.trace.to_json(),
            "result": {"bits": self.trace.result.bitstring, "profit": self.trace.result.profit},
            "oracle_optimum": self.oracle_optimum,
            "match": self.match,
            "elapsed_ms": self.elapsed_ms,
            "resources": self.trace.tallies.to_json(),
        }


def default_seed() -> int:
    return int(os.environ.get("QTG_SEED", "1"))


def _int_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    return lo, hi


def _search_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="PRNG seed (default: $QTG_SEED or 1)")
    parser.add_argument("--bias", type=float, default=None, help="fixed bias, overrides --delta-target")
    parser.add_argument("--delta-target", type=int, default=None)
    parser.add_argument("--growth-c", type=float, default=1.2)
    parser.add_argument("--cutoff-M", dest="cutoff", type=int, default=None)
    parser.add_argument("--tight-profit-bound", action="store_true")


def _config(args: argparse.Namespace, seed: int | None = None) -> SearchConfig:
    return SearchConfig(
        growth=args.growth_c,
        cutoff=args.cutoff,
        delta_target=args.delta_target,
        bias_override=args.bias,
        seed=seed if seed is not None else (args.seed if args.seed is not None else default_seed()),
        tight_profit_bound=args.tight_profit_bound,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtg-knapsack", description="Simulated tree-generator search and resource estimates for 0-1 knapsack."
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a random instance")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--profit-range", type=_int_range, default=(1, 100))
    gen.add_argument("--cost-range", type=_int_range, default=(1, 100))
    gen.add_argument("--capacity-fraction", default="1/2")
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--out", type=Path, default=None)

    sim = sub.add_parser("simulate", help="run the simulated maximum search")
    sim.add_argument("--instance", type=Path, required=True)
    _search_flags(sim)
    sim.add_argument("--verify", action="store_true", help="cross-check against the exact DP optimum")
    sim.add_argument("--dump-states", type=Path, default=None, help="write per-threshold state sets as JSON")

    est = sub.add_parser("estimate", help="closed-form resource estimate")
    est.add_argument("--instance", type=Path, required=True)
    est.add_argument("--profit-bound", choices=("sum", "dantzig"), default="sum")
    est.add_argument("--tight-profit-bound", action="store_true", help="same as --profit-bound dantzig")
    est.add_argument("--paper-literal", action="store_true", help="size registers by ceil(log2 v) instead of bit length")

    bench = sub.add_parser("benchmark", help="run every instance in a directory over several seeds")
    bench.add_argument("directory", type=Path)
    bench.add_argument("--seeds", type=int, default=1, help="number of consecutive seeds per instance")
    _search_flags(bench)
    bench.add_argument("--csv", type=Path, default=None, help="output file (default stdout)")
    bench.add_argument("--jobs", type=int, default=1)
    return parser


def _load(path: Path) -> KnapsackInstance:
    return parse_instance(path.read_text(encoding="utf-8"))


def run_simulation(instance: KnapsackInstance, config: SearchConfig, verify: bool, state_sets=None) -> RunReport:
    start = time.perf_counter()
    trace = qmaxsearch(instance, config, state_sets=state_sets)
    optimum = exact_optimum(instance).profit if verify else None
    elapsed = (time.perf_counter() - start) * 1000
    return RunReport(instance.digest(), trace, optimum, round(elapsed, 3))


def cmd_generate(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    instance = generate_instance(
        args.n, args.profit_range, args.cost_range, Fraction(args.capacity_fraction), seed
    )
    text = serialize_instance(instance)
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text, encoding="utf-8")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    instance = _load(args.instance)
    state_sets = [] if args.dump_states else None
    report = run_simulation(instance, _config(args), args.verify, state_sets)
    if args.dump_states:
        args.dump_states.write_text(json.dumps([s.to_json() for s in state_sets], indent=1), encoding="utf-8")
    json.dump(report.to_json(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    if report.match is False:
        log.error("result %d differs from optimum %d", report.trace.result.profit, report.oracle_optimum)
        return EXIT_MISMATCH
    return 0


def cmd_estimate(args: argparse.Namespace) -> int:
    instance = _load(args.instance)
    tight = args.tight_profit_bound or args.profit_bound == "dantzig"
    bound = profit_register_bound(instance, tight)
    json.dump(estimate(instance, bound, args.paper_literal), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _benchmark_row(path: Path, config: SearchConfig) -> dict:
    row = {"schema": BENCHMARK_SCHEMA, "file": path.name, "seed": config.seed}
    try:
        instance = _load(path)
        report = run_simulation(instance, config, verify=True)
    except (OSError, ValueError, BudgetExceededError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    trace = report.trace
    row.update(
        n=instance.n,
        optimum=report.oracle_optimum,
        result=trace.result.profit,
        match=int(bool(report.match)),
        m_total=trace.m_total_final,
        gates=trace.tallies.gates,
        cycles=trace.tallies.cycles,
        qubits=trace.tallies.qubits,
        millis=report.elapsed_ms,
    )
    return row


def cmd_benchmark(args: argparse.Namespace) -> int:
    if not args.directory.is_dir():
        raise FileNotFoundError(f"not a directory: {args.directory}")
    files = sorted(p for p in args.directory.iterdir() if p.is_file() and not p.name.startswith("."))
    base = args.seed if args.seed is not None else default_seed()
    jobs = [(path, _config(args, seed=base + k)) for path in files for k in range(args.seeds)]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_benchmark_row, *zip(*jobs)))
    else:
        rows = [_benchmark_row(path, config) for path, config in jobs]
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=BENCHMARK_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.csv is None:
        sys.stdout.write(buffer.getvalue())
    else:
        args.csv.write_text(buffer.getvalue(), encoding="utf-8")
    failures = sum(1 for r in rows if r.get("error"))
    if failures:
        log.warning("%d of %d runs failed", failures, len(rows))
    return 0


COMMANDS = {
    "generate": cmd_generate,
    "simulate": cmd_simulate,
    "estimate": cmd_estimate,
    "benchmark": cmd_benchmark,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except InstanceFormatError as exc:
        log.error("malformed instance: %s", exc)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        log.error("work budget exceeded: %s", exc)
        return EXIT_BUDGET
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_IO
    except ValueError as exc:
        log.error("invalid input: %s", exc)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
