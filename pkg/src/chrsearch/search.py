"""Search strategies driving a :class:`~chrsearch.engine.BoolStore`.

Every strategy talks to the store only through ``equal``, ``delete``,
``is_consistent`` and ``get_explanation`` (plus ``is_bound``/``value`` to
read variables).  The driver :func:`cssp` alternates ``label``/``unlabel``
calls until every variable is labelled or the problem is refuted.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .core import EMPTY, LabelSet, Var
from .engine import BoolStore


class SearchTimeout(Exception):
    pass


@dataclass
class Counters:
    label_calls: int = 0
    value_attempts: int = 0
    unlabel_calls: int = 0
    deleted_assignments: int = 0

    @property
    def steps(self) -> int:
        return self.unlabel_calls


class SearchVar:
    """A problem variable plus the per-strategy bookkeeping.

    ``info[k]`` is ``None`` (undefined) or a label set: the conflict set
    (CBJ) or elimination explanation (DBT/FBT) of value ``k``.
    """

    __slots__ = ("id", "var", "num", "info")

    def __init__(self, id: int, var: Var):
        self.id = id
        self.var = var
        self.num = 0
        self.info: List[Optional[LabelSet]] = [None, None]

    def __repr__(self) -> str:
        return f"SearchVar({self.id}, num={self.num}, info={self.info})"


class Strategy:
    name = "?"

    def __init__(self, store: BoolStore, problem_vars: Sequence[Var]):
        self.store = store
        self.n = len(problem_vars)
        # 1-based like the variable array of the algorithms; slot 0 unused
        self.vars: List[Optional[SearchVar]] = [None] + [
            SearchVar(i, v) for i, v in enumerate(problem_vars, 1)
        ]
        self.counters = Counters()
        self.live: set = set()  # labels of live search assignments

    def is_bound(self, sv: SearchVar) -> bool:
        return self.store.is_bound(sv.var)

    def value(self, sv: SearchVar) -> int:
        v = self.store.value(sv.var)
        if v is None:
            raise RuntimeError(f"{sv} is not bound")
        return v

    def probe(self, sv: SearchVar, k: int, label: int) -> bool:
        self.counters.value_attempts += 1
        self.store.equal(sv.var, k, (label,))
        return self.store.is_consistent()

    def retract(self, labels) -> None:
        """Delete search assignments from within ``unlabel``."""
        labels = frozenset(labels)
        gone = self.live & labels
        self.counters.deleted_assignments += len(gone)
        self.live -= gone
        self.store.delete(labels)

    def label(self, i: int) -> int:
        raise NotImplementedError

    def unlabel(self, i: int) -> int:
        raise NotImplementedError


class ChronologicalBacktracking(Strategy):
    name = "cbt"

    def label(self, i: int) -> int:
        self.counters.label_calls += 1
        sv = self.vars[i]
        if self.is_bound(sv):
            return i + 1
        while sv.num <= 1:
            k = sv.num
            sv.num += 1
            if self.probe(sv, k, i):
                self.live.add(i)
                return i + 1
            self.store.delete((i,))
        return i

    def unlabel(self, i: int) -> int:
        self.counters.unlabel_calls += 1
        self.retract((i,))
        self.vars[i].num = 0
        # Step back over variables fixed by propagation (num == 0): they hold
        # no choice, and re-entering label on them would just return i again.
        h = i - 1
        while h >= 1 and self.vars[h].num == 0:
            h -= 1
        if h >= 1:
            self.retract((h,))
        return h


class ConflictDirectedBackjumping(Strategy):
    name = "cbj"

    def label(self, i: int) -> int:
        self.counters.label_calls += 1
        sv = self.vars[i]
        if self.is_bound(sv):
            return i + 1
        for k in (0, 1):
            if sv.info[k] is None:
                if self.probe(sv, k, i):
                    self.live.add(i)
                    return i + 1
                sv.info[k] = self.store.get_explanation() - {i}
                self.store.delete((i,))
        return i

    def unlabel(self, i: int) -> int:
        self.counters.unlabel_calls += 1
        sv = self.vars[i]
        cs0, cs1 = sv.info
        if cs0 == EMPTY and cs1 == EMPTY:
            return 0
        both = cs0 | cs1
        h = max(both)
        target = self.vars[h]
        target.info[self.value(target)] = both - {h}
        self.retract(range(h, i))
        for j in range(h, self.n + 1):
            info = self.vars[j].info
            for k in (0, 1):
                cs = info[k]
                if cs and max(cs) >= h:
                    info[k] = None
        return h


class DynamicBacktracking(Strategy):
    name = "dbt"

    def __init__(self, store: BoolStore, problem_vars: Sequence[Var]):
        super().__init__(store, problem_vars)
        self.labelled: List[SearchVar] = []
        self.unlabelled: List[SearchVar] = list(reversed(self.vars[1:]))
        self.cntr = 0
        for sv in self.vars[1:]:
            sv.num = -1

    def label(self, i: int) -> int:
        self.counters.label_calls += 1
        sv = self.unlabelled.pop()
        if self.is_bound(sv):
            # fixed by propagation: owns no assignment label
            sv.num = -1
            self.labelled.append(sv)
            return i + 1
        for k in (0, 1):
            if sv.info[k] is None:
                if self.probe(sv, k, self.cntr):
                    sv.num = self.cntr
                    self.live.add(self.cntr)
                    self.cntr += 1
                    self.labelled.append(sv)
                    return i + 1
                sv.info[k] = self.store.get_explanation() - {self.cntr}
                self.store.delete((self.cntr,))
        self.unlabelled.append(sv)
        return i

    def _go_back(self):
        """Shared head of both unlabel variants.

        Returns ``(h, bt)`` or ``None`` when the dead end is unconditional.
        """
        dead = self.unlabelled.pop()
        e0, e1 = dead.info
        if e0 == EMPTY and e1 == EMPTY:
            self.unlabelled.append(dead)
            return None
        both = e0 | e1
        h = max(both)
        for j in range(len(self.labelled) - 1, -1, -1):
            if self.labelled[j].num == h:
                bt = self.labelled.pop(j)
                break
        else:
            raise RuntimeError(f"no labelled variable owns assignment label {h}")
        bt.info[self.value(bt)] = both - {h}
        self.unlabelled.append(dead)
        self.unlabelled.append(bt)
        return h, bt

    def _release_unbound(self) -> None:
        for j in range(len(self.labelled) - 1, -1, -1):
            sv = self.labelled[j]
            if not self.is_bound(sv):
                del self.labelled[j]
                self.unlabelled.append(sv)

    def unlabel(self, i: int) -> int:
        self.counters.unlabel_calls += 1
        back = self._go_back()
        if back is None:
            return 0
        h, _ = back
        self.retract((h,))
        for sv in self.vars[1:]:
            for k in (0, 1):
                e = sv.info[k]
                if e is not None and h in e:
                    sv.info[k] = None
        self._release_unbound()
        return len(self.labelled) + 1


class FancyBacktracking(DynamicBacktracking):
    """Dynamic backtracking that also retracts assignments determined by the culprit."""

    name = "fbt"

    def unlabel(self, i: int) -> int:
        self.counters.unlabel_calls += 1
        back = self._go_back()
        if back is None:
            return 0
        h, _ = back
        doomed = {h}
        changed = True
        while changed:
            changed = False
            for sv in list(self.labelled):
                hit = False
                for k in (0, 1):
                    e = sv.info[k]
                    if e is not None and not e.isdisjoint(doomed):
                        sv.info[k] = None
                        hit = True
                if hit:
                    if sv.num >= 0:
                        doomed.add(sv.num)
                    self.labelled.remove(sv)
                    self.unlabelled.append(sv)
                    changed = True
        self.retract(doomed)
        self._release_unbound()
        for sv in self.vars[1:]:
            for k in (0, 1):
                e = sv.info[k]
                if e is not None and not e.isdisjoint(doomed):
                    sv.info[k] = None
        return len(self.labelled) + 1


STRATEGIES: Dict[str, type] = {
    cls.name: cls
    for cls in (ChronologicalBacktracking, ConflictDirectedBackjumping, DynamicBacktracking, FancyBacktracking)
}


def cssp(n: int, strategy: Strategy, deadline: Optional[float] = None) -> bool:
    """Label variables 1..n; True if all get labelled, False if refuted."""
    i = 1
    spins = 0
    while 1 <= i <= n:
        j = strategy.label(i)
        if j == i:
            i = strategy.unlabel(i)
        else:
            i = j
        spins += 1
        if deadline is not None and not spins & 63 and time.monotonic() > deadline:
            raise SearchTimeout
    return i > n


@dataclass
class SolveOutcome:
    sat: bool
    model: Optional[Dict[int, int]]
    counters: Counters
    elapsed: float
    strategy: str = ""

    @property
    def result(self) -> str:
        return "SAT" if self.sat else "UNSAT"


def solve(instance, strategy: str = "cbj", timeout: Optional[float] = None) -> SolveOutcome:
    """Encode ``instance``, run ``strategy`` and decode the model."""
    from .cnf import decode_model, encode

    start = time.monotonic()
    deadline = start + timeout if timeout is not None else None
    store = BoolStore()
    enc = encode(instance, store)
    strat = STRATEGIES[strategy](store, enc.problem_vars)
    if not store.is_consistent():
        # refuted by propagation alone; the explanation is necessarily empty
        return SolveOutcome(False, None, strat.counters, time.monotonic() - start, strategy)
    sat = cssp(enc.num_vars, strat, deadline)
    model = decode_model(enc, store) if sat else None
    return SolveOutcome(sat, model, strat.counters, time.monotonic() - start, strategy)
