"""Randomised cross-checks: strategies vs. oracles, and store deletion vs. replay."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .cnf import CnfInstance, satisfies
from .core import Var
from .engine import EQ, NEG, OR, BoolStore
from .oracle import brute_force, dpll
from .search import STRATEGIES, solve


def random_3cnf(rng: random.Random, num_vars: int, num_clauses: int, name: str = "") -> CnfInstance:
    clauses = []
    for _ in range(num_clauses):
        vs = rng.sample(range(1, num_vars + 1), 3)
        clauses.append([v if rng.random() < 0.5 else -v for v in vs])
    return CnfInstance(num_vars, clauses, name)


def pigeonhole(holes: int) -> CnfInstance:
    """holes+1 pigeons into ``holes`` holes; unsatisfiable."""
    pigeons = holes + 1
    var = lambda p, h: p * holes + h + 1
    clauses = [[var(p, h) for h in range(holes)] for p in range(pigeons)]
    for h in range(holes):
        for p in range(pigeons):
            for q in range(p + 1, pigeons):
                clauses.append([-var(p, h), -var(q, h)])
    return CnfInstance(pigeons * holes, clauses, f"php-{pigeons}-{holes}")


@dataclass
class Disagreement:
    seed: int
    detail: str


def check_instance(instance: CnfInstance, strategies: Sequence[str] = tuple(STRATEGIES)) -> Optional[str]:
    """None if every strategy and both oracles agree; else a description."""
    bf = brute_force(instance)
    dp = dpll(instance)
    if bf.sat != dp.sat:
        return f"brute_force={bf.sat} dpll={dp.sat}"
    if dp.sat and not satisfies(instance.clauses, dp.model):
        return "dpll model fails clause check"
    for name in strategies:
        out = solve(instance, name)
        if out.sat != bf.sat:
            return f"{name} says {out.result}, brute force says {'SAT' if bf.sat else 'UNSAT'}"
        if out.sat and not satisfies(instance.clauses, out.model):
            return f"{name} model fails clause check"
    return None


def strategy_trials(seed: int, trials: int, min_vars: int = 8, max_vars: int = 12) -> List[Disagreement]:
    bad = []
    for t in range(trials):
        s = seed + t
        rng = random.Random(s)
        n = rng.randint(min_vars, max_vars)
        m = rng.randint(2 * n, 6 * n)
        problem = check_instance(random_3cnf(rng, n, m, f"rand-{s}"))
        if problem is not None:
            bad.append(Disagreement(s, problem))
    return bad


# -- store fuzzing ---------------------------------------------------------


def observe(store: BoolStore, variables: Sequence[Var]):
    """The externally visible state: status plus constant bindings."""
    return store.is_consistent(), tuple(store.value(v) for v in variables)


def random_ops(rng: random.Random, variables: Sequence[Var], num_ops: int, label_pool: int = 6):
    """A random interleaving of additions and deletions by label."""

    def term():
        return rng.choice(variables) if rng.random() < 0.85 else rng.randint(0, 1)

    def just():
        return frozenset() if rng.random() < 0.3 else frozenset({rng.randint(1, label_pool)})

    ops = []
    for _ in range(num_ops):
        r = rng.random()
        if r < 0.35:
            ops.append((OR, (term(), term(), term()), just()))
        elif r < 0.55:
            ops.append((NEG, (term(), term()), just()))
        elif r < 0.8:
            ops.append((EQ, (rng.choice(variables), rng.randint(0, 1)), just()))
        else:
            ops.append(("delete", frozenset(rng.sample(range(1, label_pool + 1), rng.randint(1, 2))), None))
    return ops


def apply_op(store: BoolStore, op) -> None:
    kind, args, lab = op
    if kind == OR:
        store.add_or(*args, lab)
    elif kind == NEG:
        store.add_neg(*args, lab)
    elif kind == EQ:
        store.equal(*args, lab)
    else:
        store.delete(args)


def explanation_is_sound(store: BoolStore) -> bool:
    expl = store.get_explanation()
    subset = [it for it in store.source_items() if it.label <= expl]
    return not BoolStore.replay(subset).is_consistent()


def fuzz_trial(seed: int, max_vars: int = 12, max_ops: int = 30) -> Optional[str]:
    """Run one random interleaving; None if every check passes."""
    rng = random.Random(seed)
    variables = [Var(f"X{i}") for i in range(rng.randint(2, max_vars))]
    store = BoolStore()
    for step, op in enumerate(random_ops(rng, variables, rng.randint(1, max_ops))):
        apply_op(store, op)
        fresh = BoolStore.replay(store.source_items())
        if observe(store, variables) != observe(fresh, variables):
            return f"step {step}: incremental state differs from replay after {op}"
        if not store.is_consistent() and not explanation_is_sound(store):
            return f"step {step}: explanation {set(store.get_explanation())} does not reproduce the failure"
    return None


def fuzz_trials(seed: int, trials: int, max_vars: int = 12, max_ops: int = 30) -> List[Disagreement]:
    bad = []
    for t in range(trials):
        problem = fuzz_trial(seed + t, max_vars, max_ops)
        if problem is not None:
            bad.append(Disagreement(seed + t, problem))
    return bad
