"""Adaptive Boolean constraint store.

The store accepts justified ``or(X,Y,Z)`` (X or Y = Z) and ``neg(X,Y)``
(not X = Y) constraints and equations, rewrites them with the rule set
below until nothing applies, and reports an inconsistency together with
the union of the labels that took part in deriving it.

    or(0,X,Y) <=> Y=X.            or(X,Y,A) \\ or(X,Y,B) <=> A=B.
    or(X,0,Y) <=> Y=X.            or(X,Y,A) \\ or(Y,X,B) <=> A=B.
    or(X,Y,0) <=> X=0,Y=0.        neg(X,Y) \\ neg(Y,Z) <=> X=Z.
    or(1,X,Y) <=> Y=1.            neg(X,Y) \\ neg(Z,Y) <=> X=Z.
    or(X,1,Y) <=> Y=1.            neg(Y,X) \\ neg(Y,Z) <=> X=Z.
    or(X,X,Z) <=> X=Z.            neg(X,Y) \\ or(X,Y,Z) <=> Z=1.
    neg(0,X) <=> X=1.             neg(Y,X) \\ or(X,Y,Z) <=> Z=1.
    neg(X,0) <=> X=1.             neg(X,Z) , or(X,Y,Z) <=> X=0,Y=1,Z=1.
    neg(1,X) <=> X=0.             neg(Z,X) , or(X,Y,Z) <=> X=0,Y=1,Z=1.
    neg(X,1) <=> X=0.             neg(Y,Z) , or(X,Y,Z) <=> X=1,Y=0,Z=1.
    neg(X,X) <=> fail.            neg(Z,Y) , or(X,Y,Z) <=> X=1,Y=0,Z=1.

Deletion by label is exact: the store rolls back to the point where the
earliest affected source item was added and re-adds the surviving later
items in their original order, so the result is the state a fresh store
would reach from the surviving items.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, List, NamedTuple, Optional, Sequence

from .core import EMPTY, Bindings, LabelSet, Term, Var, check_term

OR = "or"
NEG = "neg"
EQ = "eq"


class ConsistentStoreError(RuntimeError):
    """Raised when an explanation is requested from a consistent store."""


class Constraint:
    __slots__ = ("id", "kind", "args", "label", "alive")

    def __init__(self, cid: int, kind: str, args: tuple, label: LabelSet):
        self.id = cid
        self.kind = kind
        self.args = args
        self.label = label
        self.alive = True

    def __repr__(self) -> str:
        return f"{self.kind}({', '.join(map(str, self.args))})#{self.id}{set(self.label) or ''}"


class SourceItem(NamedTuple):
    kind: str  # OR, NEG or EQ
    args: tuple
    label: LabelSet


def _kill(c: Constraint) -> None:
    c.alive = False


def _revive(c: Constraint) -> None:
    c.alive = True


def _truncate(arg) -> None:
    lst, n = arg
    del lst[n:]


class BoolStore:
    def __init__(self):
        self._trail = []
        self._bindings = Bindings(self._trail)
        self._bindings.on_bind = self._on_bind
        self._ref = self._bindings._ref
        self._log: List[SourceItem] = []
        self._marks: List[int] = []
        self._first_labelled: Optional[int] = None
        self._index = {}
        self._agenda = deque()
        self._explanation: Optional[LabelSet] = None
        self._next_id = 0
        self.firings = 0

    # -- public interface -------------------------------------------------

    def add_or(self, x: Term, y: Term, z: Term, just: Iterable[int] = EMPTY) -> None:
        self._add(SourceItem(OR, (check_term(x), check_term(y), check_term(z)), frozenset(just)))

    def add_neg(self, x: Term, y: Term, just: Iterable[int] = EMPTY) -> None:
        self._add(SourceItem(NEG, (check_term(x), check_term(y)), frozenset(just)))

    def equal(self, var: Term, value: Term, just: Iterable[int] = EMPTY) -> None:
        self._add(SourceItem(EQ, (check_term(var), check_term(value)), frozenset(just)))

    def delete(self, just: Iterable[int]) -> None:
        just = frozenset(just)
        start = self._first_labelled
        if not just or start is None:
            return
        log = self._log
        for k in range(start, len(log)):
            if not log[k].label.isdisjoint(just):
                break
        else:
            return
        survivors = [it for it in log[k + 1:] if it.label.isdisjoint(just)]
        self._undo(self._marks[k])
        del log[k:]
        del self._marks[k:]
        if self._first_labelled >= k:
            self._first_labelled = None
        for it in survivors:
            self._add(it)

    def is_consistent(self) -> bool:
        return self._explanation is None

    def get_explanation(self) -> LabelSet:
        if self._explanation is None:
            raise ConsistentStoreError("store is consistent; there is nothing to explain")
        return self._explanation

    def value(self, t: Term) -> Optional[int]:
        """0 or 1 if ``t`` dereferences to a constant, else None."""
        return self._bindings.value(t)

    def is_bound(self, t: Term) -> bool:
        return self._bindings.value(t) is not None

    def deref(self, t: Term):
        return self._bindings.deref(t)

    @property
    def bindings(self) -> Bindings:
        return self._bindings

    def source_items(self) -> List[SourceItem]:
        return list(self._log)

    def live_constraints(self) -> List[Constraint]:
        seen = set()
        out = []
        for lst in self._index.values():
            for c in lst:
                if c.alive and c.id not in seen:
                    seen.add(c.id)
                    out.append(c)
        out.sort(key=lambda c: c.id)
        return out

    @classmethod
    def replay(cls, items: Iterable[SourceItem]) -> "BoolStore":
        """A fresh store built from ``items`` in order."""
        store = cls()
        for it in items:
            store._add(SourceItem(it.kind, tuple(it.args), frozenset(it.label)))
        return store

    # -- bookkeeping ------------------------------------------------------

    def _add(self, item: SourceItem) -> None:
        self._marks.append(len(self._trail))
        self._log.append(item)
        if item.label and self._first_labelled is None:
            self._first_labelled = len(self._log) - 1
        if self._explanation is not None:
            return
        if item.kind == EQ:
            clash = self._bindings.bind(item.args[0], item.args[1], item.label)
            if clash is not None:
                self._fail(clash)
                return
        else:
            c = Constraint(self._next_id, item.kind, item.args, item.label)
            self._next_id += 1
            self._trail.append((_kill, c))
            for v in self._var_args(c):
                self._index_add(v, c)
            self._agenda.append(c)
        self._run()

    def _undo(self, mark: int) -> None:
        trail = self._trail
        while len(trail) > mark:
            fn, arg = trail.pop()
            fn(arg)
        self._agenda.clear()

    def _set_explanation(self, e) -> None:
        self._explanation = e

    def _fail(self, explanation: LabelSet) -> None:
        self._trail.append((self._set_explanation, self._explanation))
        self._explanation = explanation
        self._agenda.clear()

    def _var_args(self, c: Constraint) -> List[Var]:
        out = []
        deref = self._bindings.deref
        for a in c.args:
            t, _ = deref(a)
            if t.__class__ is Var and t not in out:
                out.append(t)
        return out

    def _index_add(self, v: Var, c: Constraint) -> None:
        lst = self._index.get(v)
        if lst is None:
            self._index[v] = [c]
            self._trail.append((self._index.pop, v))
        else:
            self._trail.append((_truncate, (lst, len(lst))))
            lst.append(c)

    def _on_bind(self, v: Var, t: Term) -> None:
        lst = self._index.get(v)
        if not lst:
            return
        agenda = self._agenda
        for c in lst:
            if c.alive:
                agenda.append(c)
        if t.__class__ is Var:
            # the representative inherits v's constraints so partner lookup sees them
            target = self._index.get(t)
            if target is None:
                self._index[t] = list(lst)
                self._trail.append((self._index.pop, t))
            else:
                self._trail.append((_truncate, (target, len(target))))
                target.extend(lst)

    def _kill(self, c: Constraint) -> None:
        c.alive = False
        self._trail.append((_revive, c))

    def _eq(self, s: Term, t: Term, lab: LabelSet) -> bool:
        clash = self._bindings.bind(s, t, lab)
        if clash is not None:
            self._fail(clash)
            return False
        return True

    # -- propagation ------------------------------------------------------

    def _run(self) -> None:
        agenda = self._agenda
        while agenda:
            c = agenda.popleft()
            if not c.alive:
                continue
            if c.kind is OR:
                self._activate_or(c)
            else:
                self._activate_neg(c)
            if self._explanation is not None:
                agenda.clear()
                return

    def _activate_or(self, c: Constraint) -> None:
        ref = self._ref
        lab = c.label
        x, y, z = c.args
        while x.__class__ is Var:
            b = ref.get(x)
            if b is None:
                break
            x, l = b
            if l:
                lab = lab | l
        while y.__class__ is Var:
            b = ref.get(y)
            if b is None:
                break
            y, l = b
            if l:
                lab = lab | l
        while z.__class__ is Var:
            b = ref.get(z)
            if b is None:
                break
            z, l = b
            if l:
                lab = lab | l
        if x == 0:
            self._fire1(c)
            self._eq(z, y, lab)
        elif y == 0:
            self._fire1(c)
            self._eq(z, x, lab)
        elif z == 0:
            self._fire1(c)
            self._eq(x, 0, lab) and self._eq(y, 0, lab)
        elif x == 1 or y == 1:
            self._fire1(c)
            self._eq(z, 1, lab)
        elif x is y:
            self._fire1(c)
            self._eq(x, z, lab)
        else:
            self._match_pairs(c, (x, y, z), lab)

    def _activate_neg(self, c: Constraint) -> None:
        ref = self._ref
        lab = c.label
        x, y = c.args
        while x.__class__ is Var:
            b = ref.get(x)
            if b is None:
                break
            x, l = b
            if l:
                lab = lab | l
        while y.__class__ is Var:
            b = ref.get(y)
            if b is None:
                break
            y, l = b
            if l:
                lab = lab | l
        if x == 0:
            self._fire1(c)
            self._eq(y, 1, lab)
        elif y == 0:
            self._fire1(c)
            self._eq(x, 1, lab)
        elif x == 1:
            self._fire1(c)
            self._eq(y, 0, lab)
        elif y == 1:
            self._fire1(c)
            self._eq(x, 0, lab)
        elif x is y:
            self._fire1(c)
            self._fail(lab)
        else:
            self._match_pairs(c, (x, y), lab)

    def _fire1(self, c: Constraint) -> None:
        self.firings += 1
        c.alive = False
        self._trail.append((_revive, c))

    def _partners(self, c: Constraint, args: Sequence[Term]):
        """Live constraints sharing a variable with ``c``, with dereferenced arguments."""
        ref = self._ref
        index = self._index
        seen = {c}
        out = []
        for a in args:
            if a.__class__ is not Var:
                continue
            for p in index.get(a, ()):
                if p.alive and p not in seen:
                    seen.add(p)
                    terms = []
                    for t in p.args:
                        while t.__class__ is Var:
                            b = ref.get(t)
                            if b is None:
                                break
                            t = b[0]
                        terms.append(t)
                    out.append((p, terms))
        return out

    def _label_of(self, p: Constraint) -> LabelSet:
        lab = p.label
        deref = self._bindings.deref
        for t in p.args:
            _, l = deref(t)
            if l:
                lab = lab | l
        return lab

    def _match_pairs(self, c: Constraint, args: tuple, lab: LabelSet) -> None:
        partners = self._partners(c, args)
        if not partners:
            return
        if c.kind is OR:
            hit = _match_or_active(args, partners)
        else:
            hit = _match_neg_active(args, partners)
        if hit is None:
            return
        p, keep_c, keep_p, body = hit
        self.firings += 1
        if not keep_c:
            self._kill(c)
        if not keep_p:
            self._kill(p)
        both = lab | self._label_of(p)
        for s, t in body:
            if not self._eq(s, t, both):
                return
        if keep_c:
            self._agenda.append(c)


# Pair matching.  Each matcher walks the two-headed rules in listing order;
# for the symmetric rules (12, 13, 15, 16) the active constraint takes the
# kept head.  ``partners`` holds (constraint, dereferenced args) pairs.  The
# first match is returned as (partner, keep_active, keep_partner, body) with
# body a list of equations over dereferenced terms.


def _match_or_active(o, partners):
    x, y, z = o
    ors = [(p, t) for p, t in partners if p.kind is OR]
    negs = [(p, t) for p, t in partners if p.kind is NEG]
    # or(X,Y,A) \ or(X,Y,B) <=> A=B.
    for p, (px, py, pz) in ors:
        if px is x and py is y:
            return p, True, False, [(z, pz)]
    # or(X,Y,A) \ or(Y,X,B) <=> A=B.
    for p, (px, py, pz) in ors:
        if px is y and py is x:
            return p, True, False, [(z, pz)]
    # neg(X,Y) \ or(X,Y,Z) <=> Z=1.
    for p, (na, nb) in negs:
        if na is x and nb is y:
            return p, False, True, [(z, 1)]
    # neg(Y,X) \ or(X,Y,Z) <=> Z=1.
    for p, (na, nb) in negs:
        if na is y and nb is x:
            return p, False, True, [(z, 1)]
    for first, second, body in _NEG_OR_BOTH:
        ta, tb = o[first], o[second]
        for p, (na, nb) in negs:
            if na is ta and nb is tb:
                return p, False, False, [(x, body[0]), (y, body[1]), (z, body[2])]
    return None


def _match_neg_active(n, partners):
    a, b = n
    ors = [(p, t) for p, t in partners if p.kind is OR]
    negs = [(p, t) for p, t in partners if p.kind is NEG]
    # neg(X,Y) \ neg(Y,Z) <=> X=Z, active as either head.
    for p, (pa, pb) in negs:
        if b is pa:
            return p, True, False, [(a, pb)]
    for p, (pa, pb) in negs:
        if pb is a:
            return p, False, True, [(pa, b)]
    # neg(X,Y) \ neg(Z,Y) <=> X=Z.
    for p, (pa, pb) in negs:
        if pb is b:
            return p, True, False, [(a, pa)]
    # neg(Y,X) \ neg(Y,Z) <=> X=Z.
    for p, (pa, pb) in negs:
        if pa is a:
            return p, True, False, [(b, pb)]
    # neg(X,Y) \ or(X,Y,Z) <=> Z=1.
    for p, (ox, oy, oz) in ors:
        if ox is a and oy is b:
            return p, True, False, [(oz, 1)]
    # neg(Y,X) \ or(X,Y,Z) <=> Z=1.
    for p, (ox, oy, oz) in ors:
        if oy is a and ox is b:
            return p, True, False, [(oz, 1)]
    for first, second, body in _NEG_OR_BOTH:
        for p, o in ors:
            if o[first] is a and o[second] is b:
                return p, False, False, [(o[0], body[0]), (o[1], body[1]), (o[2], body[2])]
    return None


# neg(A,B), or(X,Y,Z) <=> X=bx,Y=by,Z=bz; A and B given as positions in (X,Y,Z)
_NEG_OR_BOTH = (
    (0, 2, (0, 1, 1)),  # neg(X,Z)
    (2, 0, (0, 1, 1)),  # neg(Z,X)
    (1, 2, (1, 0, 1)),  # neg(Y,Z)
    (2, 1, (1, 0, 1)),  # neg(Z,Y)
)
