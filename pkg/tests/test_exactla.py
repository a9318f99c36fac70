from fractions import Fraction as F

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from cosetkit import exactla

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7)


def test_rank_and_det_with_fractions():
    m = [[F(1, 2), F(1, 3)], [F(1, 4), F(1, 6)]]
    assert exactla.rank(m) == 1
    assert exactla.det(m) == 0
    assert exactla.det([[F(1, 2), 0], [0, F(2, 3)]]) == F(1, 3)


def test_matmul_falls_back_on_overflow():
    a = np.array([[2 ** 40, 1]], dtype=object)
    b = np.array([[2 ** 40], [1]], dtype=object)
    assert exactla.matmul(a, b)[0, 0] == 2 ** 80 + 1


def test_solve_inconsistent_returns_none():
    assert exactla.solve([[1, 1], [1, 1]], [1, 2]) is None


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_inverse_round_trip(m):
    if exactla.det(m) == 0:
        assert exactla.rank(m) < len(m)
        return
    inv = exactla.inverse(m)
    prod = exactla.matmul(exactla.to_object_array(m), exactla.to_object_array(inv))
    assert all(prod[i, j] == (1 if i == j else 0) for i in range(len(m)) for j in range(len(m)))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_nullspace_vectors_are_annihilated(r, c, data):
    m = data.draw(st.lists(st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r))
    basis = exactla.nullspace(m, c)
    assert len(basis) == c - exactla.rank(m)
    for v in basis:
        assert all(sum(row[j] * v[j] for j in range(c)) == 0 for row in m)
