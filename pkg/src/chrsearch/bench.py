"""Benchmark runner: one CSV row per (instance, strategy) plus per-strategy totals."""
from __future__ import annotations

import csv
import logging
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

from .cnf import DimacsError, read_dimacs, satisfies
from .oracle import dpll
from .search import STRATEGIES, SearchTimeout, solve

log = logging.getLogger(__name__)

DEFAULT_TIMEOUT = 600.0
COLUMNS = ["instance", "strategy", "result", "steps", "label_calls",
           "value_attempts", "deleted_assignments", "millis", "verified"]


@dataclass
class BenchRecord:
    instance: str
    strategy: str
    result: str  # SAT, UNSAT, TIMEOUT or ERROR
    steps: Optional[int] = None
    label_calls: Optional[int] = None
    value_attempts: Optional[int] = None
    deleted_assignments: Optional[int] = None
    millis: Optional[int] = None
    verified: bool = False
    expected: Optional[bool] = None  # True yes-instance, False no-instance

    @property
    def completed(self) -> bool:
        return self.result in ("SAT", "UNSAT")

    def row(self) -> List:
        d = asdict(self)
        return ["" if d[c] is None else d[c] for c in COLUMNS]


def _natural_key(name: str):
    return [int(tok) if tok.isdigit() else tok for tok in re.split(r"(\d+)", name)]


def find_instances(directory) -> List[Path]:
    return sorted(Path(directory).glob("*.cnf"), key=lambda p: _natural_key(p.name))


def run_cell(path, strategy: str, timeout: Optional[float] = DEFAULT_TIMEOUT) -> BenchRecord:
    name = os.path.basename(str(path))
    try:
        instance = read_dimacs(path)
    except (OSError, DimacsError) as exc:
        log.error("%s: %s", name, exc)
        return BenchRecord(name, strategy, "ERROR")
    oracle = dpll(instance)
    try:
        out = solve(instance, strategy, timeout)
    except SearchTimeout:
        return BenchRecord(name, strategy, "TIMEOUT", expected=oracle.sat)
    verified = out.sat == oracle.sat and (not out.sat or satisfies(instance.clauses, out.model))
    c = out.counters
    return BenchRecord(name, strategy, out.result, c.unlabel_calls, c.label_calls, c.value_attempts,
                       c.deleted_assignments, round(out.elapsed * 1000), verified, oracle.sat)


def _cell(args):
    return run_cell(*args)


def run_bench(paths: Sequence, strategies: Sequence[str], timeout: Optional[float] = DEFAULT_TIMEOUT,
              jobs: int = 1) -> List[BenchRecord]:
    cells = [(p, s, timeout) for p in paths for s in strategies]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_cell, cells))
    return [run_cell(*c) for c in cells]


def summarize(records: Iterable[BenchRecord], strategies: Sequence[str]) -> List[BenchRecord]:
    """Totals over completed runs, split into yes- and no-instances."""
    records = list(records)
    out = []
    for group, want in (("yes1-instances", True), ("no-instances", False)):
        for s in strategies:
            done = [r for r in records if r.strategy == s and r.completed and r.expected is want]
            total = BenchRecord(f"SUM {group}", s, f"{len(done)} runs", 0, 0, 0, 0, 0,
                                all(r.verified for r in done))
            for r in done:
                total.steps += r.steps
                total.label_calls += r.label_calls
                total.value_attempts += r.value_attempts
                total.deleted_assignments += r.deleted_assignments
                total.millis += r.millis
            out.append(total)
    return out


def write_csv(records: Iterable[BenchRecord], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in records:
        w.writerow(r.row())


def read_csv(fh) -> List[Dict[str, str]]:
    return list(csv.DictReader(fh))
