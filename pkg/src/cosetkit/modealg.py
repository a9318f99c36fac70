"""Graded mode algebras acting on highest-weight modules.

A mode algebra is a Lie algebra spanned by modes ``x_n`` of finitely many
generators plus a central element. A module is induced from a finite top
space annihilated by positive modes; its states are PBW monomials of
negative modes applied to top vectors. Monomials are kept in ascending
``(mode, generator)`` order, so ``L_-2 L_-1 L_-1`` rather than any other
arrangement, and every operator is applied by commutator pushing.

Three families are provided:

* ``virasoro_module(c, h, N)``: Verma module, ``L_n^dagger = L_-n``.
* ``affine_su2_module(k, lam, N)``: generalized Verma module of affine su(2)
  with Cartan-Weyl generators e, f, h, ``[h,e] = 2e``, ``[h,f] = -2f``,
  ``[e,f] = h`` and central term ``k m <x,y>`` with ``<h,h> = 2``,
  ``<e,f> = 1``. The top is the spin lam/2 irrep with basis
  ``v_j = f_0^j v_0``. Adjoints: ``e_n^dagger = f_-n``, ``h_n^dagger = h_-n``.
* ``phi_module(n, N)``: the derivative fields with
  ``[P_m, P_m'] = delta(m + m') prod_{k=0}^{2n} (m - n + k)``.

Gram matrices are computed recursively from ``<x_-n u, w> = <u, x_-n^dagger w>``
and are exact. Ranks give the graded dimensions of the irreducible quotient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import exactla

VIRASORO_CAP = 12
AFFINE_CAP = 8
PHI_CAP = 12


class TruncationError(ValueError):
    pass


# algebras

class ModeAlgebra:
    """Interface: generators, brackets, top-space action and Hermitian structure."""

    generators: tuple = ()
    top_dim: int = 1

    def bracket(self, x: int, m: int, y: int, n: int):
        """[x_m, y_n] as ({generator: coefficient} at mode m+n, central scalar)."""
        raise NotImplementedError

    def top_action(self, x: int, j: int) -> dict:
        """Zero mode x_0 on top vector j."""
        raise NotImplementedError

    def adjoint(self, x: int) -> int:
        """Generator y with (x_n)^dagger = y_-n."""
        return x

    def top_gram(self):
        return [[Fraction(1)]]

    def generator_weight(self, x: int) -> int:
        return 0

    def top_weight(self, j: int) -> int:
        return 0


class Virasoro(ModeAlgebra):
    generators = ("L",)

    def __init__(self, c, h):
        self.c = Fraction(c)
        self.h = Fraction(h)

    def bracket(self, x, m, y, n):
        central = self.c / 12 * m * (m * m - 1) if m + n == 0 else 0
        return ({0: m - n} if m != n else {}), central

    def top_action(self, x, j):
        return {0: self.h} if self.h else {}


E, F, H = 0, 1, 2


class AffineSU2(ModeAlgebra):
    generators = ("e", "f", "h")
    _structure = {
        (E, F): {H: 1}, (F, E): {H: -1},
        (H, E): {E: 2}, (E, H): {E: -2},
        (H, F): {F: -2}, (F, H): {F: 2},
    }
    _form = {(H, H): 2, (E, F): 1, (F, E): 1}

    def __init__(self, k, lam=0):
        if not 0 <= lam:
            raise ValueError("spin label must be non-negative")
        self.k = k
        self.lam = lam
        self.top_dim = lam + 1

    def bracket(self, x, m, y, n):
        central = self.k * m * self._form.get((x, y), 0) if m + n == 0 else 0
        return dict(self._structure.get((x, y), {})), central

    def top_action(self, x, j):
        lam = self.lam
        if x == H:
            v = lam - 2 * j
            return {j: v} if v else {}
        if x == F:
            return {j + 1: 1} if j < lam else {}
        return {j - 1: j * (lam - j + 1)} if j > 0 else {}

    def adjoint(self, x):
        return {E: F, F: E, H: H}[x]

    def top_gram(self):
        n = self.top_dim
        G = [[Fraction(0)] * n for _ in range(n)]
        norm = Fraction(1)
        for j in range(n):
            if j:
                norm *= j * (self.lam - j + 1)
            G[j][j] = norm
        return G

    def generator_weight(self, x):
        return {E: 2, F: -2, H: 0}[x]

    def top_weight(self, j):
        return self.lam - 2 * j


def phi_pairing(n: int, m: int) -> int:
    """prod_{k=0}^{2n} (m - n + k)."""
    return math.prod(m - n + k for k in range(2 * n + 1))


class PhiField(ModeAlgebra):
    generators = ("P",)

    def __init__(self, n, q=0):
        self.n = n
        self.q = Fraction(q)

    def bracket(self, x, m, y, n):
        return {}, (phi_pairing(self.n, m) if m + n == 0 else 0)

    def top_action(self, x, j):
        return {0: self.q} if self.q else {}


# modules

def _add(acc: dict, vec: dict, scale=1):
    for key, v in vec.items():
        s = acc.get(key, 0) + scale * v
        if s:
            acc[key] = s
        else:
            acc.pop(key, None)


class GradedModule:
    """Level-truncated highest-weight module with exact mode action and Gram form."""

    def __init__(self, algebra: ModeAlgebra, N: int, tag: str = ""):
        self.algebra = algebra
        self.N = N
        self.tag = tag
        self._apply_memo = {}
        self._basis = {}
        self._index = {}
        self._gram = {}
        self._mode = {}

    # states are (monomial, top index); monomial is a tuple of (mode, generator)

    def basis(self, g: int) -> list:
        if g not in self._basis:
            if g < 0:
                return []
            monos = list(self._monomials(g, (-g, 0)))
            self._basis[g] = [(mono, j) for mono in monos for j in range(self.algebra.top_dim)]
            self._index[g] = {s: i for i, s in enumerate(self._basis[g])}
        return self._basis[g]

    def index(self, g: int) -> dict:
        self.basis(g)
        return self._index[g]

    def _monomials(self, g, lowest):
        if g == 0:
            yield ()
            return
        ngen = len(self.algebra.generators)
        for n in range(-lowest[0], 0, -1):
            if n > g:
                continue
            for x in range(ngen):
                if (-n, x) < lowest:
                    continue
                for rest in self._monomials(g - n, (-n, x)):
                    yield ((-n, x),) + rest

    @staticmethod
    def grade(state) -> int:
        return -sum(m for m, _ in state[0])

    def weight(self, state) -> int:
        return (sum(self.algebra.generator_weight(x) for _, x in state[0])
                + self.algebra.top_weight(state[1]))

    def apply(self, x: int, n: int, state) -> dict:
        """x_n applied to a basis state, as a sparse vector."""
        key = (x, n, state)
        hit = self._apply_memo.get(key)
        if hit is not None:
            return hit
        mono, j = state
        alg = self.algebra
        if not mono:
            if n < 0:
                out = {(((n, x),), j): 1}
            elif n == 0:
                out = {((), jj): v for jj, v in alg.top_action(x, j).items()}
            else:
                out = {}
        else:
            first, rest = mono[0], (mono[1:], j)
            if n < 0 and (n, x) <= first:
                out = {(((n, x),) + mono, j): 1}
            else:
                p, y = first
                out = {}
                for s, v in self.apply(x, n, rest).items():
                    _add(out, self.apply(y, p, s), v)
                terms, central = alg.bracket(x, n, y, p)
                for z, cz in terms.items():
                    _add(out, self.apply(z, n + p, rest), cz)
                if central:
                    _add(out, {rest: 1}, central)
        self._apply_memo[key] = out
        return out

    def act(self, x: int, n: int, vec: dict) -> dict:
        out = {}
        for s, v in vec.items():
            _add(out, self.apply(x, n, s), v)
        return out

    def _check(self, g):
        if g > self.N:
            raise TruncationError(f"grade {g} exceeds the truncation N = {self.N}")

    def mode_matrix(self, x: int, n: int, g: int) -> np.ndarray:
        """Matrix of x_n from grade g to grade g - n."""
        key = (x, n, g)
        if key not in self._mode:
            target = g - n
            self._check(g)
            src = self.basis(g)
            if target < 0:
                M = np.zeros((0, len(src)), dtype=object)
            else:
                self._check(target)
                idx = self.index(target)
                M = np.zeros((len(idx), len(src)), dtype=object)
                for col, s in enumerate(src):
                    for t, v in self.apply(x, n, s).items():
                        M[idx[t], col] = v
            self._mode[key] = M
        return self._mode[key]

    def gram(self, g: int) -> np.ndarray:
        if g in self._gram:
            return self._gram[g]
        self._check(g)
        basis = self.basis(g)
        if g == 0:
            G = np.array(self.algebra.top_gram(), dtype=object)
            self._gram[0] = G
            return G
        G = np.zeros((len(basis), len(basis)), dtype=object)
        groups = {}
        for row, (mono, j) in enumerate(basis):
            groups.setdefault(mono[0], []).append((row, (mono[1:], j)))
        for (p, y), rows in groups.items():
            lower = g + p
            sub = self.gram(lower)
            idx = self.index(lower)
            M = self.mode_matrix(self.algebra.adjoint(y), -p, g)
            picked = sub[[idx[s] for _, s in rows], :]
            block = exactla.matmul(picked, M)
            for (row, _), vals in zip(rows, block):
                G[row, :] = vals
        self._gram[g] = G
        return G

    def weights(self, g: int) -> list:
        return sorted({self.weight(s) for s in self.basis(g)}, reverse=True)

    def weight_block(self, g: int, w: int) -> np.ndarray:
        sel = [i for i, s in enumerate(self.basis(g)) if self.weight(s) == w]
        return self.gram(g)[np.ix_(sel, sel)]

    def rank(self, g: int, weight: int | None = None) -> int:
        if weight is not None:
            block = self.weight_block(g, weight)
            return exactla.rank(block) if block.size else 0
        return sum(self.rank(g, w) for w in self.weights(g)) if self.weights(g) else 0

    def irreducible_dims(self) -> list:
        return [self.rank(g) for g in range(self.N + 1)]


def virasoro_module(c, h, N: int) -> GradedModule:
    if N > VIRASORO_CAP:
        raise TruncationError(f"Virasoro grade cap is {VIRASORO_CAP}")
    return GradedModule(Virasoro(c, h), N, f"virasoro(c={c}, h={h})")


def virasoro_irrep_dims(c, h, N: int) -> list:
    return _virasoro_irrep_dims(Fraction(c), Fraction(h), N)


@lru_cache(maxsize=128)
def _virasoro_irrep_dims(c, h, N):
    return virasoro_module(c, h, N).irreducible_dims()


def affine_su2_module(k: int, lam: int, N: int) -> GradedModule:
    if N > AFFINE_CAP:
        raise TruncationError(f"affine grade cap is {AFFINE_CAP}")
    if not 0 <= lam <= k:
        raise ValueError(f"label {lam} outside the level-{k} alcove")
    return GradedModule(AffineSU2(k, lam), N, f"affine_su2(k={k}, lam={lam})")


def phi_module(n: int, N: int, q=0) -> GradedModule:
    if N > PHI_CAP:
        raise TruncationError(f"phi grade cap is {PHI_CAP}")
    return GradedModule(PhiField(n, q), N, f"phi({n})")


def gram_determinant(module: GradedModule, g: int) -> Fraction:
    return exactla.det(module.gram(g))


# operator identities

@dataclass
class ModeIdentityReport:
    name: str
    max_grade: int
    residual: Fraction
    checks: int = 0

    @property
    def passed(self) -> bool:
        return self.residual == 0


def _residual(vec: dict):
    return max((abs(v) for v in vec.values()), default=Fraction(0))


class Sugawara:
    """Scaled Segal-Sugawara modes S_m = 2(k+2) L_m acting on an affine su(2) module.

    S_m = sum_n :e_{m-n} f_n + f_{m-n} e_n + (1/2) h_{m-n} h_n:, with normal
    ordering putting the mode with index >= 0 on the right.
    """

    _pairs = ((E, F, 1), (F, E, 1), (H, H, Fraction(1, 2)))

    def __init__(self, module: GradedModule):
        self.module = module
        self.k = module.algebra.k
        self._memo = {}

    def apply(self, m: int, state) -> dict:
        key = (m, state)
        if key in self._memo:
            return self._memo[key]
        mod = self.module
        g = mod.grade(state)
        out = {}
        for x, y, coeff in self._pairs:
            for n in range(m - g, g + 1):
                p = m - n
                if p <= -1:
                    # x_p y_n with y_n on the right
                    if n > g:
                        continue
                    _add(out, mod.act(x, p, mod.apply(y, n, state)), coeff)
                else:
                    if p > g:
                        continue
                    _add(out, mod.act(y, n, mod.apply(x, p, state)), coeff)
        self._memo[key] = out
        return out

    def act(self, m: int, vec: dict) -> dict:
        out = {}
        for s, v in vec.items():
            _add(out, self.apply(m, s), v)
        return out


def sugawara_verify(k: int, N: int = 4, M: int = 2, lam: int = 0) -> list:
    """Check the Virasoro relations, [L_m, j_n] = -n j_{m+n} and L_0 grading exactly."""
    if M > 4 or N > 6:
        raise TruncationError("sugawara_verify needs M <= 4 and N <= 6")
    mod = GradedModule(AffineSU2(k, lam), N + 2 * M, f"affine_su2(k={k}, lam={lam})")
    S = Sugawara(mod)
    scale = 2 * (k + 2)
    central = Fraction(k * (k + 2))  # (c/12) scale^2 with c = 3k/(k+2)
    vir = Fraction(0)
    cur = Fraction(0)
    grading = Fraction(0)
    nvir = ncur = ngr = 0
    top_h2 = Fraction(lam * (lam + 2), 2)  # scale * lam(lam+2)/(4(k+2))
    for g in range(N + 1):
        for state in mod.basis(g):
            v = {state: 1}
            for m in range(-M, M + 1):
                for n in range(-M, M + 1):
                    lhs = S.act(m, S.act(n, v))
                    _add(lhs, S.act(n, S.act(m, v)), -1)
                    rhs = {}
                    _add(rhs, S.act(m + n, v), scale * (m - n))
                    if m + n == 0:
                        _add(rhs, v, central * m * (m * m - 1))
                    _add(lhs, rhs, -1)
                    vir = max(vir, _residual(lhs))
                    nvir += 1
                for x in range(3):
                    for n in range(-M, M + 1):
                        lhs = S.act(m, mod.apply(x, n, state))
                        _add(lhs, mod.act(x, n, S.apply(m, state)), -1)
                        _add(lhs, mod.apply(x, m + n, state), scale * n)
                        cur = max(cur, _residual(lhs))
                        ncur += 1
            diff = dict(S.apply(0, state))
            _add(diff, v, -(scale * g + top_h2))
            grading = max(grading, _residual(diff))
            ngr += 1
    return [
        ModeIdentityReport("virasoro relations", N, vir, nvir),
        ModeIdentityReport("[L_m, j_n] = -n j_(m+n)", N, cur, ncur),
        ModeIdentityReport("L_0 grading", N, grading, ngr),
    ]


def current_relations_verify(k: int, N: int = 4, M: int = 2, lam: int = 0) -> ModeIdentityReport:
    """Mode relations [x_m, y_n] = [x,y]_(m+n) + k m <x,y> delta on module states."""
    alg = AffineSU2(k, lam)
    mod = GradedModule(alg, N + 2 * M)
    worst = Fraction(0)
    count = 0
    for g in range(N + 1):
        for state in mod.basis(g):
            for x in range(3):
                for y in range(3):
                    for m in range(-M, M + 1):
                        for n in range(-M, M + 1):
                            lhs = mod.act(x, m, mod.apply(y, n, state))
                            _add(lhs, mod.act(y, n, mod.apply(x, m, state)), -1)
                            terms, central = alg.bracket(x, m, y, n)
                            for z, cz in terms.items():
                                _add(lhs, mod.apply(z, m + n, state), -cz)
                            if central:
                                _add(lhs, {state: 1}, -central)
                            worst = max(worst, _residual(lhs))
                            count += 1
    return ModeIdentityReport("current mode relations", N, worst, count)


def virasoro_relations_verify(c, h, N: int = 4, M: int = 2) -> ModeIdentityReport:
    alg = Virasoro(c, h)
    mod = GradedModule(alg, N + 2 * M)
    worst = Fraction(0)
    count = 0
    for g in range(N + 1):
        for state in mod.basis(g):
            for m in range(-M, M + 1):
                for n in range(-M, M + 1):
                    lhs = mod.act(0, m, mod.apply(0, n, state))
                    _add(lhs, mod.act(0, n, mod.apply(0, m, state)), -1)
                    terms, central = alg.bracket(0, m, 0, n)
                    for z, cz in terms.items():
                        _add(lhs, mod.apply(z, m + n, state), -cz)
                    if central:
                        _add(lhs, {state: 1}, -central)
                    worst = max(worst, _residual(lhs))
                    count += 1
    return ModeIdentityReport("virasoro mode relations", N, worst, count)


# energy bounds

def _orthogonal_basis(G: np.ndarray) -> list:
    """Exact Gram-Schmidt for a positive semidefinite form; null directions dropped."""
    n = G.shape[0]
    basis = []  # (vector, norm)
    for i in range(n):
        v = [Fraction(int(j == i)) for j in range(n)]
        for u, nu in basis:
            proj = sum(u[a] * G[a, i] for a in range(n) if u[a]) / nu
            if proj:
                v = [a - proj * b for a, b in zip(v, u)]
        norm = sum(v[a] * G[a, b] * v[b] for a in range(n) if v[a] for b in range(n) if v[b])
        if norm < 0:
            raise ArithmeticError("Gram form is not positive semidefinite")
        if norm:
            basis.append((v, norm))
    return basis


@dataclass
class EnergyBoundReport:
    k: int
    N: int
    checks: int
    violations: list
    worst_ratio: Fraction

    @property
    def passed(self) -> bool:
        return not self.violations


def energy_bound_check(k: int, N: int = 3) -> EnergyBoundReport:
    """Check ||j^a_n phi||^2 <= (3 k N_phi + 4 k |n|) ||phi||^2 on an orthogonal basis.

    Hermitian currents (e+f)/sqrt2, i(e-f)/sqrt2, h/sqrt2 give the squared norms
    (1/2)||(e+f)_n phi||^2, (1/2)||(e-f)_n phi||^2 and (1/2)||h_n phi||^2.
    """
    if N > AFFINE_CAP:
        raise TruncationError(f"affine grade cap is {AFFINE_CAP}")
    mod = GradedModule(AffineSU2(k, 0), N)
    checks = 0
    violations = []
    worst = Fraction(0)
    for g in range(N + 1):
        for vec, norm in _orthogonal_basis(mod.gram(g)):
            col = np.array(vec, dtype=object)
            for n in range(g - N, g + 1):
                target = g - n
                Gt = mod.gram(target)
                me, mf, mh = (mod.mode_matrix(x, n, g) for x in (E, F, H))
                for sign, name in ((1, "e+f"), (-1, "e-f"), (0, "h")):
                    M = mh if sign == 0 else me + sign * mf
                    w = exactla.matmul(M, col.reshape(-1, 1)).reshape(-1)
                    val = Fraction(sum(w[a] * Gt[a, b] * w[b] for a in range(len(w)) if w[a]
                                       for b in range(len(w)) if w[b])) / 2
                    bound = (3 * k * g + 4 * k * abs(n)) * norm
                    checks += 1
                    if bound:
                        worst = max(worst, val / bound)
                    if val > bound:
                        violations.append((g, n, name, val / norm))
    return EnergyBoundReport(k, N, checks, violations, worst)


# the derivative fields

@dataclass
class PhiNullReport:
    n: int
    dims: list
    null_grades: list

    @property
    def passed(self) -> bool:
        return self.null_grades == list(range(1, self.n + 1))


def phi_null_report(n: int, N: int) -> PhiNullReport:
    mod = phi_module(n, N)
    dims = mod.irreducible_dims()
    nulls = [g for g in range(1, N + 1) if dims[g] == 0]
    return PhiNullReport(n, dims, nulls)


@dataclass
class NoStressTensorCertificate:
    n: int
    kind: str
    grade_ranks: tuple
    phi_norm: Fraction | None = None
    c_gamma_squared: Fraction | None = None
    quasi_primary_norm: Fraction | None = None
    forced_zero_modes: tuple = ()
    ansatz_central_charge: Fraction | None = None

    @property
    def ansatz_feasible(self) -> bool:
        return self.ansatz_central_charge is None or self.ansatz_central_charge != 0


def no_set_certificate(n: int, modes: int = 4) -> NoStressTensorCertificate:
    """Certificate that the n-th derivative field carries no stress-energy tensor."""
    if n < 1:
        raise ValueError("n must be at least 1")
    mod = phi_module(n, 2)
    ranks = (mod.rank(1), mod.rank(2))
    if ranks[1] == 0:
        # c/2 = ||L_-2 Omega||^2 vanishes on a null grade
        return NoStressTensorCertificate(n, "null-level-2", ranks)
    norm = Fraction(mod.gram(2)[mod.index(2)[(((-2, 0),), 0)], mod.index(2)[(((-2, 0),), 0)]])
    # gamma L_-2 Omega = P_-2 Omega gives |gamma|^2 c/2 = ||P_-2 Omega||^2
    c_gamma_sq = 2 * norm
    quasi = norm - 2 * norm + c_gamma_sq / 2
    forced, c_fit = virasoro_ansatz(n, modes)
    return NoStressTensorCertificate(n, "gamma-contradiction", ranks, norm, c_gamma_sq, quasi,
                                     forced, c_fit)


def virasoro_ansatz(n: int, modes: int = 4):
    """Fit L_p = a_p P_p to the Virasoro bracket for |p| <= modes.

    The P modes commute up to a central term, so the coefficient of P_(m+p)
    in [L_m, L_p] vanishes while the bracket demands (m - p) a_(m+p). Only
    modes acting nontrivially on the truncated module are constrained. Returns
    the modes whose coefficient is forced to zero and the central charge the
    m = 2 central term then allows.
    """
    mod = phi_module(n, min(2 * modes, PHI_CAP))
    idx = list(range(-modes, modes + 1))
    rows = []
    for m in idx:
        for p in idx:
            s = m + p
            if s == 0 or m == p or abs(s) > modes:
                continue
            g = max(0, s)
            if not mod.mode_matrix(0, s, g).any() and not mod.mode_matrix(0, s, g + 1).any():
                continue
            row = [0] * len(idx)
            row[idx.index(s)] = m - p
            rows.append(row)
    kernel = exactla.nullspace(rows, len(idx))
    forced = tuple(p for i, p in enumerate(idx) if all(v[i] == 0 for v in kernel))
    c_fit = None
    if 2 in forced or -2 in forced:
        # a_2 a_-2 prod(2) = c/2 with a_2 a_-2 = 0
        c_fit = Fraction(0)
    return forced, c_fit


# partition function

@lru_cache(maxsize=None)
def partition_dims(N: int) -> tuple:
    """p(0..N) from Euler's pentagonal recurrence."""
    if N < 0:
        raise ValueError("N must be non-negative")
    p = [1] + [0] * N
    for n in range(1, N + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return tuple(p)


def partitions_min_part(N: int, smallest: int) -> list:
    """Number of partitions of 0..N with all parts >= smallest."""
    counts = [1] + [0] * N
    for part in range(smallest, N + 1):
        for total in range(part, N + 1):
            counts[total] += counts[total - part]
    return counts


ETA_BETA0 = math.pi ** 2 / 6 - 1 + 0.05


@dataclass
class EtaReport:
    beta0: float
    rows: list  # (beta, log partial sum, bound, ok)

    @property
    def passed(self) -> bool:
        return all(ok for *_, ok in self.rows)


def eta_asymptotic_check(betas, N: int = 200, beta0: float = ETA_BETA0) -> EtaReport:
    """Compare log sum_{n<=N} p(n) exp(-beta n) with beta0 / beta on a grid."""
    p = partition_dims(N)
    rows = []
    for beta in betas:
        if not 0.05 <= beta <= 2:
            raise ValueError("beta must lie in [0.05, 2]")
        value = math.log(math.fsum(pn * math.exp(-beta * n) for n, pn in enumerate(p)))
        bound = beta0 / beta
        rows.append((beta, value, bound, value < bound))
    return EtaReport(beta0, rows)
