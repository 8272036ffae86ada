import pytest
from hypothesis import given, strategies as st

from chrsearch.core import (EMPTY, Bindings, Var, check_term, labels, set_contains, set_intersects,
                            set_max, set_minus, set_union)

small_sets = st.frozensets(st.integers(0, 12), max_size=6)


def test_union_examples():
    assert set_union(labels(1), labels(3)) == {1, 3}
    assert set_union(EMPTY, EMPTY) == EMPTY
    assert set_union(labels(2, 5), labels(5, 7)) == {2, 5, 7}


def test_max_examples():
    assert set_max(labels(3, 7, 8, 10)) == 10
    assert set_max(labels(0)) == 0
    assert set_max(set_minus(labels(1, 3), labels(3))) == 1
    with pytest.raises(ValueError):
        set_max(EMPTY)


def test_minus_intersects_contains():
    assert set_minus(labels(1, 3, 7), labels(7)) == {1, 3}
    assert set_intersects(labels(4, 9), labels(9, 12))
    assert not set_contains(EMPTY, 5)


@given(small_sets, small_sets)
def test_set_laws(a, b):
    assert set_union(a, b) == set_union(b, a)
    assert set_minus(a, EMPTY) == a
    assert set_intersects(a, b) == any(set_contains(a, x) and set_contains(b, x) for x in range(13))


def test_terms():
    assert check_term(1) == 1 and check_term(False) == 0
    for bad in (2, "x", 0.0, None):
        with pytest.raises(TypeError):
            check_term(bad)


def test_bind_to_constant():
    b = Bindings()
    a = Var("A")
    assert b.bind(a, 1, labels(1)) is None
    assert b.deref(a) == (1, {1})


def test_rebind_same_constant_is_noop():
    b = Bindings()
    x = Var("X")
    b.bind(x, 0)
    before = len(b.trail)
    assert b.bind(x, 0) is None
    assert len(b.trail) == before


def test_clash_explanation():
    b = Bindings()
    x = Var("X")
    b.bind(x, 0, labels(2))
    assert b.bind(x, 1, labels(5)) == {2, 5}


def test_deref_chain():
    b = Bindings()
    x, y, z = Var("X"), Var("Y"), Var("Z")
    b.bind(x, y, labels(2))
    b.bind(y, 0, labels(4))
    assert b.deref(x) == (0, {2, 4})
    assert b.deref(1) == (1, EMPTY)
    assert b.deref(z) == (z, EMPTY)


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 7), st.integers(0, 3)), max_size=25))
def test_bind_acyclic_and_deref_idempotent(ops):
    vs = [Var(f"X{i}") for i in range(6)]
    b = Bindings()
    for i, j, lab in ops:
        target = vs[j] if j < 6 else j - 6
        b.bind(vs[i], target, labels(lab))
    for v in vs:
        hops, t = 0, v
        while isinstance(t, Var) and b.binding(t) is not None:
            t = b.binding(t)[0]
            hops += 1
            assert hops <= len(vs)
        term, _ = b.deref(v)
        assert b.deref(term) == (term, EMPTY)
