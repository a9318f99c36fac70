import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cosetkit import fusion
from cosetkit.liealg import (LieDataError, OutsideAlcove, RepresentationTooLarge, alcove_sectors,
                             algebra_data, casimir_eigenvalue, dominant_conjugate,
                             parse_algebra_name, rep_dynkin_index, sector_data, weight_multiplicities,
                             weyl_dimension, weyl_orbit)

ALGEBRAS = [("A", 1), ("A", 2), ("A", 3), ("A", 8), ("B", 2), ("B", 3), ("C", 3), ("D", 4),
            ("D", 5), ("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
EXPECTED = {("A", 1): (3, 2), ("A", 8): (80, 9), ("E", 6): (78, 12), ("E", 7): (133, 18),
            ("E", 8): (248, 30), ("F", 4): (52, 9), ("G", 2): (14, 4), ("D", 4): (28, 6),
            ("B", 3): (21, 5), ("C", 3): (21, 4)}


@pytest.mark.parametrize("t,r", ALGEBRAS)
def test_root_system_invariants(t, r):
    alg = algebra_data(t, r)
    theta = alg.highest_root
    assert alg.inner(theta, theta) == 2
    assert alg.dimension == r + 2 * len(alg.positive_roots)
    assert casimir_eigenvalue(alg, alg.adjoint()) == 2 * alg.dual_coxeter
    assert rep_dynkin_index(alg, alg.adjoint()) == 2 * alg.dual_coxeter
    assert weyl_dimension(alg, alg.adjoint()) == alg.dimension
    if (t, r) in EXPECTED:
        assert (alg.dimension, alg.dual_coxeter) == EXPECTED[(t, r)]


def test_names():
    assert parse_algebra_name("su(9)") == ("A", 8)
    assert parse_algebra_name("so(10)") == ("D", 5)
    assert parse_algebra_name("so(7)") == ("B", 3)
    assert parse_algebra_name("sp(6)") == ("C", 3)
    assert algebra_data("E8") == algebra_data("E", 8)
    with pytest.raises(LieDataError):
        algebra_data("H", 3)
    with pytest.raises(LieDataError):
        algebra_data("E", 9)


def test_su2_data():
    a1 = algebra_data("A", 1)
    for l in range(8):
        assert casimir_eigenvalue(a1, (l,)) == F(l * (l + 2), 2)
        assert weyl_dimension(a1, (l,)) == l + 1
    assert rep_dynkin_index(a1, (1,)) == 1
    assert weight_multiplicities(a1, (2,)) == {(2,): 1, (0,): 1, (-2,): 1}
    assert weight_multiplicities(a1, (1,)) == {(1,): 1, (-1,): 1}


def test_su9_third_fundamental():
    a8 = algebra_data("A", 8)
    lam = (0, 0, 1, 0, 0, 0, 0, 0)
    assert casimir_eigenvalue(a8, lam) == 20
    assert weyl_dimension(a8, lam) == 84
    assert rep_dynkin_index(a8, lam) == 21


def test_su3_adjoint_zero_weight():
    mults = weight_multiplicities(algebra_data("A", 2), (1, 1))
    assert mults[(0, 0)] == 2
    assert sum(mults.values()) == 8


def test_dimension_cap():
    with pytest.raises(RepresentationTooLarge):
        weight_multiplicities(algebra_data("E", 8), (0, 0, 0, 0, 0, 0, 1, 1), cap=1000)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda r: st.lists(st.integers(0, 3), min_size=r, max_size=r)))
def test_freudenthal_sums_and_symmetry(lam):
    lam = tuple(lam)
    alg = algebra_data("A", len(lam))
    if weyl_dimension(alg, lam) > 500:
        return
    mults = weight_multiplicities(alg, lam)
    assert sum(mults.values()) == weyl_dimension(alg, lam)
    for mu, m in mults.items():
        dom = dominant_conjugate(alg, mu)
        assert mults[dom] == m
        assert all(mults[w] == m for w in weyl_orbit(alg, mu))


@pytest.mark.parametrize("t,r,lam", [("B", 2, (1, 1)), ("G", 2, (1, 0)), ("G", 2, (0, 1)),
                                     ("F", 4, (0, 0, 0, 1)), ("C", 3, (0, 1, 0)), ("D", 4, (1, 0, 1, 0))])
def test_freudenthal_non_simply_laced(t, r, lam):
    alg = algebra_data(t, r)
    assert sum(weight_multiplicities(alg, lam).values()) == weyl_dimension(alg, lam)


def test_alcoves():
    a1 = algebra_data("A", 1)
    assert alcove_sectors(a1, 1) == [(0,), (1,)]
    assert len(alcove_sectors(a1, 16)) == 17
    assert len(alcove_sectors(algebra_data("A", 8), 1)) == 9
    labels = alcove_sectors(algebra_data("A", 2), 3)
    assert labels == sorted(labels) and len(labels) == 10


def test_su2_level16_sectors():
    a1 = algebra_data("A", 1)
    assert sector_data(a1, 16, (16,)).h == 4
    assert sector_data(a1, 16, (2,)).h == F(1, 9)
    assert abs(sector_data(a1, 16, (8,)).d - 5.758770) < 1e-5
    with pytest.raises(OutsideAlcove):
        sector_data(a1, 16, (17,))


@pytest.mark.parametrize("k", range(1, 21))
def test_su2_dimension_specialisation_and_mu(k):
    a1 = algebra_data("A", 1)
    dims = []
    for (l,) in alcove_sectors(a1, k):
        d = sector_data(a1, k, (l,)).d
        assert abs(d - math.sin((l + 1) * math.pi / (k + 2)) / math.sin(math.pi / (k + 2))) < 1e-9
        dims.append(d)
    # sum of squares equals (k+2) / (2 sin^2(pi/(k+2)))
    expected = (k + 2) / (2 * math.sin(math.pi / (k + 2)) ** 2)
    assert abs(fusion.mu_index(dims) - expected) < 1e-9 * expected


def test_su3_level6_dimensions():
    a2 = algebra_data("A", 2)
    assert abs(sector_data(a2, 6, (2, 2)).d - 8.638156) < 1e-5
    assert abs(sector_data(a2, 6, (1, 1)).d - 5.411474) < 1e-5
    assert abs(sector_data(a2, 6, (3, 0)).d - 4.411474) < 1e-5
    assert sector_data(a2, 6, (6, 0)).h == 2
