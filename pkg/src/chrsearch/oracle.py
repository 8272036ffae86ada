"""Reference deciders used to check the search strategies.

Nothing here touches the constraint store: clauses are plain integer lists.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional

from .cnf import CnfInstance

BRUTE_FORCE_LIMIT = 20


@dataclass
class OracleVerdict:
    sat: bool
    model: Optional[Dict[int, int]]
    assignments_examined: int


def _holds(clause, bits) -> bool:
    for lit in clause:
        if bits[abs(lit) - 1] == (lit > 0):
            return True
    return False


def brute_force(instance: CnfInstance) -> OracleVerdict:
    n = instance.num_vars
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_LIMIT} variables, got {n}")
    examined = 0
    for bits in itertools.product((False, True), repeat=n):
        examined += 1
        if all(_holds(c, bits) for c in instance.clauses):
            return OracleVerdict(True, {i + 1: int(b) for i, b in enumerate(bits)}, examined)
    return OracleVerdict(False, None, examined)


def count_models(instance: CnfInstance) -> int:
    """Number of satisfying total assignments, enumerated by DPLL."""
    return sum(1 for _ in _dpll_models(instance.clauses, {}, instance.num_vars))


def dpll(instance: CnfInstance) -> OracleVerdict:
    counter = [0]
    for model in _dpll_models(instance.clauses, {}, instance.num_vars, counter):
        return OracleVerdict(True, model, counter[0])
    return OracleVerdict(False, None, counter[0])


def _simplify(clauses: List[List[int]], lit: int):
    out = []
    for c in clauses:
        if lit in c:
            continue
        if -lit in c:
            c = [l for l in c if l != -lit]
            if not c:
                return None
        out.append(c)
    return out


def _dpll_models(clauses, assign, n, counter=None):
    """Yield every total model extending ``assign``.  Branches 0 before 1."""
    assign = dict(assign)
    while True:
        unit = next((c[0] for c in clauses if len(c) == 1), None)
        if unit is None:
            break
        assign[abs(unit)] = int(unit > 0)
        clauses = _simplify(clauses, unit)
        if clauses is None:
            return
    if any(not c for c in clauses):
        return
    free = next((v for v in range(1, n + 1) if v not in assign), None)
    if free is None:
        if counter is not None:
            counter[0] += 1
        yield assign
        return
    for lit in (-free, free):
        if counter is not None:
            counter[0] += 1
        rest = _simplify(clauses, lit)
        if rest is None:
            continue
        yield from _dpll_models(rest, {**assign, free: int(lit > 0)}, n, counter)
