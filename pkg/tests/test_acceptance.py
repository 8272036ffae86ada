"""Acceptance gate.  Each criterion prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (the lines appear in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
Criteria 1-3 need the aim-50 DIMACS files in ``$AIM_DIR`` (default
``tests/data/aim``).
"""
import os
import sys
import time
from functools import lru_cache
from pathlib import Path

import pytest

from chrsearch.bench import run_bench
from chrsearch.verify import fuzz_trials, strategy_trials

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

STRATEGY_NAMES = ("cbt", "cbj", "dbt", "fbt")
TIME_LIMITS = {"cbt": 600.0, "cbj": 60.0, "dbt": 600.0, "fbt": 600.0}
YES = [f"aim-50-{r}-yes1-{k}.cnf" for r in ("1_6", "2_0", "3_4", "6_0") for k in range(1, 5)]
NO = [f"aim-50-{r}-no-{k}.cnf" for r in ("1_6", "2_0") for k in range(1, 5)]
TINY = ["aim-50-3_4-yes1-2.cnf", "aim-50-6_0-yes1-4.cnf", "aim-50-1_6-yes1-3.cnf"]
MAX_TINY_STEPS = 20
MAX_CBT_TIMEOUTS = 2
RATIO_LIMIT = 0.1

RESULTS = {}


def aim_dir() -> Path:
    return Path(os.environ.get("AIM_DIR", HERE / "data" / "aim"))


@lru_cache(maxsize=None)
def aim_records():
    """All (instance, strategy) runs over the aim-50 suite, or an error string."""
    d = aim_dir()
    missing = [n for n in YES + NO if not (d / n).is_file()]
    if missing:
        return f"{len(missing)} of 24 aim-50 files missing from {d} (set AIM_DIR)"
    jobs = os.cpu_count() or 1
    recs = {}
    for s in STRATEGY_NAMES:
        for r in run_bench([d / n for n in YES + NO], [s], TIME_LIMITS[s], jobs):
            recs[r.instance, s] = r
    return recs


def criterion_1():
    recs = aim_records()
    if isinstance(recs, str):
        return False, recs
    problems = []
    cbt_timeouts = []
    for s in STRATEGY_NAMES:
        for name in YES + NO:
            r = recs[name, s]
            want = "SAT" if name in YES else "UNSAT"
            if s == "cbt" and r.result == "TIMEOUT" and name in NO:
                cbt_timeouts.append(name)
                continue
            if r.result != want or not r.verified:
                problems.append(f"{s}/{name}: {r.result}{'' if r.verified else ' unverified'}")
    if len(cbt_timeouts) > MAX_CBT_TIMEOUTS:
        problems.append(f"cbt timed out on {len(cbt_timeouts)} no-instances")
    detail = f"96 runs, cbt timeouts {cbt_timeouts or 'none'}"
    return not problems, detail + ("; " + "; ".join(problems[:5]) if problems else "")


def criterion_2():
    recs = aim_records()
    if isinstance(recs, str):
        return False, recs
    ok, parts = True, []
    for group, names in (("yes", YES), ("no", NO)):
        common = [n for n in names if recs[n, "cbt"].completed and recs[n, "cbj"].completed]
        cbt = sum(recs[n, "cbt"].steps for n in common)
        cbj = sum(recs[n, "cbj"].steps for n in common)
        ratio = cbj / cbt if cbt else float("inf")
        ok &= ratio <= RATIO_LIMIT
        parts.append(f"{group}: cbj {cbj} / cbt {cbt} = {ratio:.4f} over {len(common)}")
    return ok, "; ".join(parts) + f" (limit {RATIO_LIMIT})"


def criterion_3():
    recs = aim_records()
    if isinstance(recs, str):
        return False, recs
    steps = {(n, s): recs[n, s].steps for n in TINY for s in STRATEGY_NAMES}
    ok = all(recs[n, s].result == "SAT" and recs[n, s].verified and (steps[n, s] or 0) <= MAX_TINY_STEPS
             for n in TINY for s in STRATEGY_NAMES)
    detail = ", ".join(f"{n[7:-4]}: " + "/".join(str(steps[n, s]) for s in STRATEGY_NAMES) for n in TINY)
    return ok, f"steps cbt/cbj/dbt/fbt {detail} (limit {MAX_TINY_STEPS})"


def criterion_4():
    start = time.monotonic()
    bad = strategy_trials(seed=0, trials=500, min_vars=8, max_vars=12)
    took = time.monotonic() - start
    detail = f"500 random 3-CNFs, 8-12 vars, {took:.1f}s"
    if bad:
        detail += f"; {len(bad)} disagreements, first seed {bad[0].seed}: {bad[0].detail}"
    return not bad, detail


def criterion_5():
    start = time.monotonic()
    bad = fuzz_trials(seed=0, trials=1000, max_vars=12, max_ops=30)
    detail = f"1000 add/equal/delete interleavings, {time.monotonic() - start:.1f}s"
    if bad:
        detail += f"; {len(bad)} failures, first seed {bad[0].seed}: {bad[0].detail}"
    return not bad, detail


def criterion_6():
    import test_engine
    import test_search

    checks = [
        test_engine.test_or_one_forces_output,
        test_engine.test_neg_self_fails,
        test_engine.test_duplicate_or_merges_outputs,
        test_engine.test_unit_chain,
        test_engine.test_backjump_example_store,
        test_engine.test_inconsistency_scenario_and_repair,
        test_search.test_cbj_backjump_example,
        test_search.test_dbt_go_back_example,
        test_search.test_fbt_cascade_example,
    ]
    failed = []
    for check in checks:
        try:
            check()
        except AssertionError as exc:
            failed.append(f"{check.__name__}: {exc}")
    return not failed, f"{len(checks) - len(failed)}/{len(checks)} worked examples" + (
        "; " + "; ".join(failed) if failed else "")


CRITERIA = {
    1: ("aim-50 classification, all strategies", criterion_1),
    2: ("CBJ/CBT summed step ratio", criterion_2),
    3: ("near-trivial aim-50 instances", criterion_3),
    4: ("oracle equivalence on random instances", criterion_4),
    5: ("store rebuild-equivalence fuzz", criterion_5),
    6: ("worked examples", criterion_6),
}


def report(num: int) -> str:
    title, fn = CRITERIA[num]
    ok, detail = fn()
    line = f"criterion {num} {'PASS' if ok else 'FAIL'}: {title}: {detail}"
    RESULTS[num] = (ok, line)
    return line


@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num):
    line = report(num)
    assert RESULTS[num][0], line


if __name__ == "__main__":
    outcome = [report(n) for n in sorted(CRITERIA)]
    print("\n".join(outcome))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
