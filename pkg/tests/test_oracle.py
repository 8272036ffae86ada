import random

import pytest

from chrsearch.cnf import CnfInstance, satisfies
from chrsearch.oracle import brute_force, count_models, dpll
from chrsearch.verify import pigeonhole, random_3cnf


def test_contradiction():
    v = brute_force(CnfInstance(1, [[1], [-1]]))
    assert not v.sat and v.assignments_examined == 2
    assert not dpll(CnfInstance(1, [[1], [-1]])).sat


def test_simple_sat():
    v = brute_force(CnfInstance(2, [[1, 2]]))
    assert v.sat and satisfies([[1, 2]], v.model)


def test_size_guard():
    with pytest.raises(ValueError):
        brute_force(CnfInstance(21, []))


def test_pigeonhole_unsat():
    assert not dpll(pigeonhole(3)).sat
    assert not brute_force(pigeonhole(3)).sat


@pytest.mark.parametrize("seed", range(300))
def test_oracles_agree(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 16 if seed % 10 == 0 else 10)
    inst = random_3cnf(rng, n, rng.randint(n, 6 * n))
    bf, dp = brute_force(inst), dpll(inst)
    assert bf.sat == dp.sat
    if dp.sat:
        assert satisfies(inst.clauses, dp.model) and satisfies(inst.clauses, bf.model)


def test_count_models():
    assert count_models(CnfInstance(2, [[1, 2]])) == 3
    assert count_models(CnfInstance(3, [])) == 8
    assert count_models(CnfInstance(2, [[1], [-2]])) == 1
