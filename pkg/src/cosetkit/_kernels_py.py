"""Pure-Python exact-arithmetic kernels.

Reference implementation of the compiled ``_kernels`` extension. Both
modules expose the same three functions:

matmul_int64(a, b)
    Exact product of two int64 matrices. Raises ``OverflowError`` when the
    result cannot be represented in int64; callers then fall back to
    Python-integer arithmetic.
bareiss_rank(rows)
    Rank of an integer matrix given as a list of rows of Python ints.
bareiss_det(rows)
    Determinant of a square integer matrix.
"""

import numpy as np

BACKEND = "python"

_INT64_SAFE = 2**62


def matmul_int64(a, b):
    A = np.ascontiguousarray(a, dtype=np.int64)
    B = np.ascontiguousarray(b, dtype=np.int64)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
    if A.size == 0 or B.size == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    amax = int(np.abs(A).max())
    bmax = int(np.abs(B).max())
    # a priori bound: no partial sum can exceed inner * |A|max * |B|max
    if amax * bmax * A.shape[1] >= _INT64_SAFE:
        raise OverflowError("int64 overflow in exact matmul")
    return A @ B


def bareiss_rank(rows):
    M = [list(r) for r in rows]
    nrows = len(M)
    if nrows == 0:
        return 0
    ncols = len(M[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        r = rank
        while r < nrows and M[r][col] == 0:
            r += 1
        if r == nrows:
            continue
        M[r], M[rank] = M[rank], M[r]
        Mr = M[rank]
        piv = Mr[col]
        for i in range(rank + 1, nrows):
            Mi = M[i]
            mik = Mi[col]
            if mik == 0:
                for j in range(col + 1, ncols):
                    Mi[j] = (Mi[j] * piv) // prev
            else:
                for j in range(col + 1, ncols):
                    Mi[j] = (Mi[j] * piv - mik * Mr[j]) // prev
            Mi[col] = 0
        prev = piv
        rank += 1
    return rank


def bareiss_det(rows):
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    if len(M[0]) != n:
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        r = k
        while r < n and M[r][k] == 0:
            r += 1
        if r == n:
            return 0
        if r != k:
            M[r], M[k] = M[k], M[r]
            sign = -sign
        Mk = M[k]
        piv = Mk[k]
        for i in range(k + 1, n):
            Mi = M[i]
            mik = Mi[k]
            for j in range(k + 1, n):
                Mi[j] = (Mi[j] * piv - mik * Mk[j]) // prev
            Mi[k] = 0
        prev = piv
    return sign * M[n - 1][n - 1]
