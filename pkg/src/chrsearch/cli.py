"""Command line front end.

    chrsearch solve FILE [--strategy cbt|cbj|dbt|fbt] [--timeout SECS]
    chrsearch bench DIR [--strategies cbt,cbj,dbt,fbt] [--timeout SECS] [--jobs N]
    chrsearch verify [--trials N] [--vars K] [--seed S]

``solve`` exits 10 (SAT), 20 (UNSAT) or 1 (error / timeout).
"""
from __future__ import annotations

import argparse
import logging
import sys
import time

from .bench import DEFAULT_TIMEOUT, find_instances, run_bench, summarize, write_csv
from .cnf import DimacsError, read_dimacs, satisfies
from .search import STRATEGIES, SearchTimeout, solve
from .verify import check_instance, fuzz_trials, pigeonhole, strategy_trials

EXIT_SAT, EXIT_UNSAT, EXIT_ERROR = 10, 20, 1


def cmd_solve(args) -> int:
    try:
        instance = read_dimacs(args.file)
    except (OSError, DimacsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        out = solve(instance, args.strategy, args.timeout)
    except SearchTimeout:
        print(f"error: {args.strategy} timed out after {args.timeout}s", file=sys.stderr)
        return EXIT_ERROR
    c = out.counters
    print(f"c instance {instance.name} ({instance.num_vars} vars, {len(instance.clauses)} clauses)")
    print(f"c strategy {args.strategy}: steps={c.unlabel_calls} label_calls={c.label_calls} "
          f"value_attempts={c.value_attempts} deleted_assignments={c.deleted_assignments} "
          f"time={out.elapsed * 1000:.0f}ms")
    if out.sat:
        if not satisfies(instance.clauses, out.model):
            print("error: model does not satisfy the clauses", file=sys.stderr)
            return EXIT_ERROR
        print("s SATISFIABLE")
        lits = [j if v else -j for j, v in sorted(out.model.items())]
        print("v " + " ".join(map(str, lits + [0])))
        return EXIT_SAT
    print("s UNSATISFIABLE")
    return EXIT_UNSAT


def cmd_bench(args) -> int:
    strategies = [s.strip() for s in args.strategies.split(",") if s.strip()]
    unknown = [s for s in strategies if s not in STRATEGIES]
    if unknown:
        print(f"error: unknown strategies {unknown}", file=sys.stderr)
        return EXIT_ERROR
    paths = find_instances(args.dir)
    if not paths:
        print(f"error: no .cnf files in {args.dir}", file=sys.stderr)
        return EXIT_ERROR
    records = run_bench(paths, strategies, args.timeout, args.jobs)
    write_csv(records + summarize(records, strategies), sys.stdout)
    return EXIT_ERROR if any(r.completed and not r.verified for r in records) else 0


def cmd_verify(args) -> int:
    if args.vars > 16 or args.vars < 3:
        print("error: --vars must be between 3 and 16", file=sys.stderr)
        return EXIT_ERROR
    start = time.monotonic()
    bad = strategy_trials(args.seed, args.trials, min(8, args.vars), args.vars)
    php = check_instance(pigeonhole(3))
    bad_fuzz = fuzz_trials(args.seed, args.trials, min(12, args.vars))
    for d in bad:
        print(f"strategy disagreement, seed {d.seed}: {d.detail}")
    if php is not None:
        print(f"pigeonhole check failed: {php}")
    for d in bad_fuzz:
        print(f"store fuzz failure, seed {d.seed}: {d.detail}")
    ok = not bad and php is None and not bad_fuzz
    print(f"{args.trials} instance trials, {args.trials} store trials, "
          f"{time.monotonic() - start:.1f}s: {'all agree' if ok else 'FAILED'}")
    return 0 if ok else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chrsearch", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve one DIMACS file")
    s.add_argument("file")
    s.add_argument("--strategy", choices=sorted(STRATEGIES), default="cbj")
    s.add_argument("--timeout", type=float, default=None)
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="run every .cnf in a directory, CSV to stdout")
    b.add_argument("dir")
    b.add_argument("--strategies", default="cbt,cbj,dbt,fbt")
    b.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT)
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="random cross-checks against the oracles")
    v.add_argument("--trials", type=int, default=500)
    v.add_argument("--vars", type=int, default=10)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
