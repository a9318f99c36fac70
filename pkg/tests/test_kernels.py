import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cosetkit import _kernels_py, kernels

BACKENDS = [_kernels_py]
try:
    from cosetkit import _kernels
    BACKENDS.append(_kernels)
except ImportError:
    pass

small = st.integers(min_value=-50, max_value=50)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_matmul_matches_numpy(mod):
    rng = np.random.default_rng(7)
    a = rng.integers(-1000, 1000, size=(13, 9))
    b = rng.integers(-1000, 1000, size=(9, 5))
    assert np.array_equal(mod.matmul_int64(a, b), a @ b)


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_matmul_overflow_raises(mod):
    big = np.full((2, 2), 2 ** 40, dtype=np.int64)
    with pytest.raises(OverflowError):
        mod.matmul_int64(big, big)


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_bareiss_small_cases(mod):
    assert mod.bareiss_rank([[1, 2], [2, 4]]) == 1
    assert mod.bareiss_rank([[0, 0], [0, 0]]) == 0
    assert mod.bareiss_det([[1, 2], [3, 4]]) == -2
    assert mod.bareiss_det([[0, 1], [1, 0]]) == -1
    assert mod.bareiss_rank([]) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: matrices(n, n)))
def test_backends_agree_on_det_and_rank(m):
    dets = {mod.BACKEND: mod.bareiss_det(m) for mod in BACKENDS}
    ranks = {mod.BACKEND: mod.bareiss_rank(m) for mod in BACKENDS}
    assert len(set(dets.values())) == 1
    assert len(set(ranks.values())) == 1
    assert dets["python"] == round(np.linalg.det(np.array(m, dtype=float))) or abs(dets["python"]) > 1e12
    assert ranks["python"] == np.linalg.matrix_rank(np.array(m, dtype=float))


def test_dispatcher_exposes_backend():
    assert kernels.BACKEND in ("compiled", "python")


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_bareiss_beyond_int64(mod):
    # entries and minors far outside int64 force arbitrary-precision elimination
    rng = np.random.default_rng(3)
    m = [[int(x) * 10 ** 12 + 1 for x in row] for row in rng.integers(-9, 9, size=(14, 14))]
    assert mod.bareiss_det(m) == _kernels_py.bareiss_det(m)
    deficient = m[:7] + [[a + b for a, b in zip(m[i], m[(i + 1) % 7])] for i in range(7)]
    assert mod.bareiss_rank(deficient) == 7
    huge = [[2 ** 70, 1], [1, 2 ** 70]]
    assert mod.bareiss_det(huge) == 2 ** 140 - 1


@settings(max_examples=40, deadline=None)
@given(st.integers(6, 12).flatmap(lambda n: matrices(n, n)))
def test_backends_agree_on_larger_matrices(m):
    assert len({mod.bareiss_det(m) for mod in BACKENDS}) == 1
    assert len({mod.bareiss_rank([r[:-1] for r in m]) for mod in BACKENDS}) == 1
