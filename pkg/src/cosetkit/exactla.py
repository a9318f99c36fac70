"""Exact linear algebra over the rationals.

Matrices are accepted as nested sequences or numpy object arrays whose
entries are ``int`` or ``fractions.Fraction``. Rank and determinant clear
denominators and run fraction-free elimination in the kernel backend.
"""

from fractions import Fraction
from math import lcm

import numpy as np

from . import kernels

_I64 = 2**63 - 1


def to_object_array(M):
    arr = np.array(M, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    return arr


def _is_int64_matrix(arr):
    for x in arr.flat:
        if not isinstance(x, (int, np.integer)) or isinstance(x, bool):
            return False
        if not -_I64 <= int(x) <= _I64:
            return False
    return True


def _clear_denominators(arr):
    den = 1
    for x in arr.flat:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    if den == 1:
        return np.array([[int(x) for x in row] for row in arr], dtype=object).reshape(arr.shape), 1
    scaled = [[int(x * den) for x in row] for row in arr]
    return np.array(scaled, dtype=object).reshape(arr.shape), den


def matmul(A, B):
    """Exact product of rational matrices, returned as an object array."""
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    if A.ndim != 2 or B.ndim != 2:
        raise ValueError("matmul expects 2-d matrices")
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
    if not A.size or not B.size:
        return np.zeros((A.shape[0], B.shape[1]), dtype=object)
    Ai, da = _clear_denominators(A)
    Bi, db = _clear_denominators(B)
    prod = None
    if _is_int64_matrix(Ai) and _is_int64_matrix(Bi):
        try:
            prod = kernels.matmul_int64(Ai.astype(np.int64), Bi.astype(np.int64)).astype(object)
        except OverflowError:
            pass
    if prod is None:
        prod = Ai.dot(Bi)
    den = da * db
    if den == 1:
        return np.array([[int(x) for x in row] for row in prod], dtype=object).reshape(prod.shape)
    out = np.empty(prod.shape, dtype=object)
    for idx, x in np.ndenumerate(prod):
        out[idx] = Fraction(int(x), den)
    return out


def _integer_rows(M):
    rows = []
    for row in M:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        rows.append([int(Fraction(x) * den) for x in row])
    return rows


def rank(M):
    rows = [list(r) for r in M]
    if not rows or not rows[0]:
        return 0
    return kernels.bareiss_rank(_integer_rows(rows))


def det(M):
    rows = [list(r) for r in M]
    if not rows:
        return Fraction(1)
    scale = 1
    int_rows = []
    for row in rows:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        scale *= den
        int_rows.append([int(Fraction(x) * den) for x in row])
    return Fraction(kernels.bareiss_det(int_rows), scale)


def rref(M):
    """Reduced row echelon form over Q. Returns (rows, pivot_columns)."""
    R = [[Fraction(x) for x in row] for row in M]
    if not R:
        return R, []
    nrows, ncols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(nrows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return R, pivots


def nullspace(M, ncols=None):
    """Basis of the right kernel of M as a list of Fraction vectors."""
    rows = [list(r) for r in M]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][f]
        basis.append(v)
    return basis


def solve(A, b):
    """One exact solution of A x = b, or None when the system is inconsistent."""
    rows = [list(r) + [bv] for r, bv in zip(A, b)]
    ncols = len(rows[0]) - 1 if rows else 0
    R, pivots = rref(rows)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = R[i][ncols]
    return x


def inverse(M):
    n = len(M)
    aug = [list(M[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]
