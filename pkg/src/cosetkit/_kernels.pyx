# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled exact-arithmetic kernels.

Same contract as :mod:`cosetkit._kernels_py`; see that module for details.
"""

import numpy as np

cdef extern from *:
    """
    static inline int cosetkit_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int cosetkit_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int cosetkit_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int cosetkit_mul_ovf(long long a, long long b, long long *r) nogil
    int cosetkit_add_ovf(long long a, long long b, long long *r) nogil
    int cosetkit_sub_ovf(long long a, long long b, long long *r) nogil


BACKEND = "compiled"


def matmul_int64(a, b):
    """Exact product of two int64 matrices; raises OverflowError on wrap-around."""
    cdef long long[:, :] A = np.ascontiguousarray(a, dtype=np.int64)
    cdef long long[:, :] B = np.ascontiguousarray(b, dtype=np.int64)
    cdef Py_ssize_t n = A.shape[0], m = A.shape[1], p = B.shape[1]
    if B.shape[0] != m:
        raise ValueError("shape mismatch %r x %r" % ((n, m), (B.shape[0], p)))
    out = np.zeros((n, p), dtype=np.int64)
    cdef long long[:, :] C = out
    cdef Py_ssize_t i, j, l
    cdef long long aij, prod, acc
    cdef int bad = 0
    with nogil:
        for i in range(n):
            for l in range(m):
                aij = A[i, l]
                if aij == 0:
                    continue
                for j in range(p):
                    if B[l, j] == 0:
                        continue
                    if cosetkit_mul_ovf(aij, B[l, j], &prod):
                        bad = 1
                        break
                    if cosetkit_add_ovf(C[i, j], prod, &acc):
                        bad = 1
                        break
                    C[i, j] = acc
                if bad:
                    break
            if bad:
                break
    if bad:
        raise OverflowError("int64 overflow in exact matmul")
    return out


cdef int _fits(list rows):
    for row in rows:
        for x in row:
            if not -9223372036854775807 <= x <= 9223372036854775807:
                return 0
    return 1


cdef long long _eliminate(long long[:, :] M, bint det_mode, int *sign, int *overflow) nogil:
    """Fraction-free elimination in place; rank, or the pivot count in det mode."""
    cdef Py_ssize_t nrows = M.shape[0], ncols = M.shape[1]
    cdef Py_ssize_t rank = 0, col, r, i, j
    cdef long long prev = 1, piv, mik, t1, t2, tmp
    for col in range(ncols):
        if rank == nrows:
            break
        r = rank
        while r < nrows and M[r, col] == 0:
            r += 1
        if r == nrows:
            if det_mode:
                return rank
            continue
        if r != rank:
            for j in range(ncols):
                tmp = M[r, j]
                M[r, j] = M[rank, j]
                M[rank, j] = tmp
            sign[0] = -sign[0]
        piv = M[rank, col]
        for i in range(rank + 1, nrows):
            mik = M[i, col]
            for j in range(col + 1, ncols):
                if cosetkit_mul_ovf(M[i, j], piv, &t1) or cosetkit_mul_ovf(mik, M[rank, j], &t2) \
                        or cosetkit_sub_ovf(t1, t2, &t1):
                    overflow[0] = 1
                    return 0
                M[i, j] = t1 // prev
            M[i, col] = 0
        prev = piv
        rank += 1
    return rank


def _native(rows, bint det_mode):
    arr = np.array(rows, dtype=np.int64)
    cdef long long[:, :] M = arr
    cdef int sign = 1, overflow = 0
    cdef long long rank
    with nogil:
        rank = _eliminate(M, det_mode, &sign, &overflow)
    if overflow:
        return None
    if det_mode:
        n = arr.shape[0]
        return 0 if rank < n else sign * int(arr[n - 1, n - 1])
    return int(rank)


def bareiss_rank(rows):
    """Rank of an integer matrix (list of lists of Python ints) by fraction-free elimination."""
    cdef list M = [list(row) for row in rows]
    cdef Py_ssize_t nrows = len(M)
    if nrows == 0:
        return 0
    if len(M[0]) and _fits(M):
        hit = _native(M, False)
        if hit is not None:
            return hit
    cdef Py_ssize_t ncols = len(M[0])
    cdef Py_ssize_t rank = 0, col, r, i, j
    cdef object prev = 1, piv, mik
    cdef list Mi, Mr
    for col in range(ncols):
        if rank == nrows:
            break
        r = rank
        while r < nrows and (<list>M[r])[col] == 0:
            r += 1
        if r == nrows:
            continue
        if r != rank:
            M[r], M[rank] = M[rank], M[r]
        Mr = <list>M[rank]
        piv = Mr[col]
        for i in range(rank + 1, nrows):
            Mi = <list>M[i]
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
    """Determinant of a square integer matrix by fraction-free elimination."""
    cdef list M = [list(row) for row in rows]
    cdef Py_ssize_t n = len(M)
    if n == 0:
        return 1
    if len(M[0]) != n:
        raise ValueError("determinant of a non-square matrix")
    if _fits(M):
        hit = _native(M, True)
        if hit is not None:
            return hit
    cdef Py_ssize_t k, r, i, j
    cdef object prev = 1, piv, mik
    cdef int sign = 1
    cdef list Mi, Mk
    for k in range(n - 1):
        r = k
        while r < n and (<list>M[r])[k] == 0:
            r += 1
        if r == n:
            return 0
        if r != k:
            M[r], M[k] = M[k], M[r]
            sign = -sign
        Mk = <list>M[k]
        piv = Mk[k]
        for i in range(k + 1, n):
            Mi = <list>M[i]
            mik = Mi[k]
            for j in range(k + 1, n):
                Mi[j] = (Mi[j] * piv - mik * Mk[j]) // prev
            Mi[k] = 0
        prev = piv
    return sign * (<list>M[n - 1])[n - 1]
