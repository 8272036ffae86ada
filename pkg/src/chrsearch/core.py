"""Justification labels, Boolean terms and a justified binding substrate.

Labels are plain ``frozenset`` objects of non-negative integers.  Terms are
either the integer constants ``0``/``1`` or :class:`Var` instances.
"""
from __future__ import annotations

from typing import Callable, Iterable, List, Optional, Tuple, Union

LabelSet = frozenset
EMPTY: LabelSet = frozenset()


def labels(*xs: int) -> LabelSet:
    return frozenset(xs)


def set_union(a: LabelSet, b: LabelSet) -> LabelSet:
    return a | b


def set_minus(a: LabelSet, b: LabelSet) -> LabelSet:
    return a - b


def set_intersects(a: LabelSet, b: LabelSet) -> bool:
    return not a.isdisjoint(b)


def set_contains(a: LabelSet, x: int) -> bool:
    return x in a


def set_max(a: LabelSet) -> int:
    if not a:
        raise ValueError("max of an empty label set")
    return max(a)


class Var:
    """A logical variable.  Identity is object identity; the binding lives in a store."""

    __slots__ = ("name",)

    def __init__(self, name: str = "_"):
        self.name = name

    def __repr__(self) -> str:
        return self.name


Term = Union[int, Var]


def check_term(t) -> Term:
    if isinstance(t, Var):
        return t
    if t in (0, 1) and not isinstance(t, float):
        return int(t)
    raise TypeError(f"not a Boolean term: {t!r}")


# An undo trail entry is a callable and its single argument.
Trail = List[Tuple[Callable, object]]


class Bindings:
    """Justified variable bindings with lazy label accumulation.

    ``bind`` returns ``None`` on success and the clash explanation (a label
    set, possibly empty) when both sides dereference to distinct constants.
    Every new binding is recorded on ``trail`` so it can be undone, and
    reported to ``on_bind`` (if set) as ``on_bind(var, target)``.
    """

    def __init__(self, trail: Optional[Trail] = None):
        self._ref = {}
        self.trail: Trail = trail if trail is not None else []
        self.on_bind: Optional[Callable[[Var, Term], None]] = None

    def deref(self, t: Term) -> Tuple[Term, LabelSet]:
        acc = EMPTY
        ref = self._ref
        while t.__class__ is Var:
            b = ref.get(t)
            if b is None:
                break
            t, lab = b
            if lab:
                acc = acc | lab
        return t, acc

    def bind(self, var: Term, target: Term, label: LabelSet = EMPTY) -> Optional[LabelSet]:
        a, la = self.deref(var)
        b, lb = self.deref(target)
        if a is b or (a.__class__ is int and a == b):
            return None
        lab = label | la | lb
        if a.__class__ is Var:
            self._set(a, b, lab)
        elif b.__class__ is Var:
            self._set(b, a, lab)
        else:
            return lab
        return None

    def _set(self, v: Var, t: Term, lab: LabelSet) -> None:
        self._ref[v] = (t, lab)
        self.trail.append((self._ref.pop, v))
        if self.on_bind is not None:
            self.on_bind(v, t)

    def binding(self, v: Var) -> Optional[Tuple[Term, LabelSet]]:
        """The direct (one-hop) binding of ``v``, if any."""
        return self._ref.get(v)

    def value(self, t: Term) -> Optional[int]:
        t, _ = self.deref(t)
        return t if t.__class__ is int else None

    def bound_vars(self) -> Iterable[Var]:
        return self._ref.keys()
