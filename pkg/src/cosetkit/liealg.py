"""Discrete invariants of simple Lie algebras and their level-k sectors.

Weights are tuples of Dynkin labels (coordinates in the fundamental-weight
basis). The invariant form is normalized so that long roots have squared
length 2, and every inner product is an exact ``Fraction``.

Cartan matrix convention: ``A[i][j] = 2 (a_i, a_j) / (a_j, a_j)``, so row i
of A holds the Dynkin labels of the simple root a_i. Simple roots follow
Bourbaki numbering.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product

from . import exactla

DIMENSION_CAP = 10000


class LieDataError(ValueError):
    pass


class RepresentationTooLarge(LieDataError):
    pass


class OutsideAlcove(LieDataError):
    pass


def _simple_root_form(cartan_type: str, rank: int):
    """Gram matrix (a_i, a_j) of the simple roots, long roots of length 2."""
    F = Fraction
    n = rank
    if cartan_type in ("A", "B", "C", "D"):
        dim = n + 1
        vecs = []
        for i in range(n - 1):
            v = [0] * dim
            v[i], v[i + 1] = 1, -1
            vecs.append(v)
        last = [0] * dim
        if cartan_type == "A":
            last[n - 1], last[n] = 1, -1
        elif cartan_type == "B":
            last[n - 1] = 1
        elif cartan_type == "C":
            last[n - 1] = 2
        else:
            last[n - 2], last[n - 1] = 1, 1
        vecs.append(last)
        scale = F(1, 2) if cartan_type == "C" else F(1)
        return [[scale * sum(a * b for a, b in zip(u, v)) for v in vecs] for u in vecs]
    if cartan_type == "E":
        # Bourbaki: chain 1-3-4-5-6-7-8 with node 2 attached to 4
        edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]
        B = [[F(2) if i == j else F(0) for j in range(n)] for i in range(n)]
        for i, j in edges:
            if i <= n and j <= n:
                B[i - 1][j - 1] = B[j - 1][i - 1] = F(-1)
        return B
    if cartan_type == "F":
        h = F(1, 2)
        vecs = [[0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 0, 1], [h, -h, -h, -h]]
        return [[sum(a * b for a, b in zip(u, v)) for v in vecs] for u in vecs]
    if cartan_type == "G":
        return [[F(2, 3), F(-1)], [F(-1), F(2)]]
    raise LieDataError(f"unknown Cartan type {cartan_type!r}")


_VALID = {
    "A": lambda n: n >= 1, "B": lambda n: n >= 2, "C": lambda n: n >= 2,
    "D": lambda n: n >= 3, "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4, "G": lambda n: n == 2,
}


def parse_algebra_name(name: str) -> tuple[str, int]:
    """Accept Cartan names ("E8", "A1") and su(n)/so(n)/sp(2n) aliases."""
    s = name.strip().replace(" ", "")
    m = re.fullmatch(r"([A-Ga-g])_?(\d+)", s)
    if m:
        return m.group(1).upper(), int(m.group(2))
    m = re.fullmatch(r"(su|so|sp)\((\d+)\)", s.lower())
    if m:
        kind, n = m.group(1), int(m.group(2))
        if kind == "su":
            return "A", n - 1
        if kind == "sp":
            if n % 2:
                raise LieDataError(f"sp({n}) needs an even argument")
            return "C", n // 2
        return ("B", (n - 1) // 2) if n % 2 else ("D", n // 2)
    raise LieDataError(f"cannot parse algebra name {name!r}")


@dataclass(frozen=True)
class Sector:
    label: tuple
    h: Fraction
    d: float


@dataclass(frozen=True, eq=False)
class AlgebraData:
    cartan_type: str
    rank: int
    cartan_matrix: tuple
    root_form: tuple = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.cartan_type}{self.rank}"

    @cached_property
    def weight_form(self) -> tuple:
        """Matrix of (w_i, w_j) for the fundamental weights w_i."""
        A = [list(r) for r in self.cartan_matrix]
        Ainv = exactla.inverse(A)
        r = self.rank
        return tuple(tuple(Ainv[j][i] * self.root_form[i][i] / 2 for j in range(r))
                     for i in range(r))

    def inner(self, u, v) -> Fraction:
        G = self.weight_form
        return sum((G[i][j] * u[i] * v[j] for i in range(self.rank) for j in range(self.rank)
                    if u[i] and v[j]), Fraction(0))

    def simple_root_labels(self, i: int) -> tuple:
        return tuple(self.cartan_matrix[i])

    def root_to_labels(self, coeffs) -> tuple:
        """Dynkin labels of sum_i coeffs[i] a_i."""
        A = self.cartan_matrix
        return tuple(sum(coeffs[i] * A[i][j] for i in range(self.rank)) for j in range(self.rank))

    @cached_property
    def positive_roots_simple(self) -> tuple:
        """Positive roots in simple-root coordinates, by reflection closure."""
        r, A = self.rank, self.cartan_matrix
        simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(r):
                    pairing = sum(beta[j] * A[j][i] for j in range(r))
                    if pairing == 0:
                        continue
                    img = list(beta)
                    img[i] -= pairing
                    img = tuple(img)
                    if all(c >= 0 for c in img) and img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        return tuple(sorted(seen, key=lambda c: (sum(c), c)))

    @cached_property
    def positive_roots(self) -> tuple:
        return tuple(self.root_to_labels(c) for c in self.positive_roots_simple)

    @cached_property
    def weyl_vector(self) -> tuple:
        return (1,) * self.rank

    @cached_property
    def highest_root(self) -> tuple:
        return self.positive_roots[-1]

    @cached_property
    def dimension(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    @cached_property
    def dual_coxeter(self) -> int:
        theta = self.highest_root
        return int(1 + self.inner(theta, self.weyl_vector))

    @cached_property
    def comarks(self) -> tuple:
        """Coefficients of the highest coroot in the simple coroots."""
        coeffs = self.positive_roots_simple[-1]
        return tuple(Fraction(coeffs[i]) * self.root_form[i][i] / 2 for i in range(self.rank))

    def adjoint(self) -> tuple:
        return self.highest_root

    def zero(self) -> tuple:
        return (0,) * self.rank

    def __eq__(self, other):
        return isinstance(other, AlgebraData) and (self.cartan_type, self.rank) == (
            other.cartan_type, other.rank)

    def __hash__(self):
        return hash((self.cartan_type, self.rank))


@lru_cache(maxsize=None)
def algebra_data(cartan_type, rank: int | None = None) -> AlgebraData:
    """AlgebraData for ``algebra_data("E", 8)`` or ``algebra_data("E8")``."""
    if rank is None:
        cartan_type, rank = parse_algebra_name(cartan_type)
    cartan_type = cartan_type.upper()
    if cartan_type not in _VALID or not _VALID[cartan_type](rank):
        raise LieDataError(f"invalid Cartan type/rank {cartan_type}{rank}")
    B = _simple_root_form(cartan_type, rank)
    A = tuple(tuple(int(2 * B[i][j] / B[j][j]) for j in range(rank)) for i in range(rank))
    return AlgebraData(cartan_type, rank, A, tuple(tuple(row) for row in B))


def _check_label(alg: AlgebraData, lam) -> tuple:
    lam = tuple(int(x) for x in lam)
    if len(lam) != alg.rank or any(x < 0 for x in lam):
        raise LieDataError(f"invalid highest weight {lam} for {alg.name}")
    return lam


def casimir_eigenvalue(alg: AlgebraData, lam) -> Fraction:
    lam = _check_label(alg, lam)
    shifted = tuple(x + 2 for x in lam)
    return alg.inner(lam, shifted)


def weyl_dimension(alg: AlgebraData, lam) -> int:
    lam = _check_label(alg, lam)
    lr = tuple(x + 1 for x in lam)
    num, den = Fraction(1), Fraction(1)
    for alpha in alg.positive_roots_simple:
        # (v, a_i) = v_i (a_i, a_i)/2, so pairing with a root is linear in labels
        num *= sum(lr[i] * alpha[i] * alg.root_form[i][i] for i in range(alg.rank))
        den *= sum(alpha[i] * alg.root_form[i][i] for i in range(alg.rank))
    value = num / den
    assert value.denominator == 1
    return int(value)


def rep_dynkin_index(alg: AlgebraData, lam) -> Fraction:
    return weyl_dimension(alg, lam) * casimir_eigenvalue(alg, lam) / alg.dimension


def _root_pairing(alg: AlgebraData, weight, alpha_simple) -> Fraction:
    """(weight, alpha) for alpha given in simple-root coordinates."""
    return sum((Fraction(weight[i] * alpha_simple[i]) * alg.root_form[i][i] / 2
                for i in range(alg.rank) if alpha_simple[i]), Fraction(0))


def dominant_conjugate(alg: AlgebraData, mu) -> tuple:
    mu = list(mu)
    A = alg.cartan_matrix
    while True:
        for i, x in enumerate(mu):
            if x < 0:
                for j in range(alg.rank):
                    mu[j] -= x * A[i][j]
                break
        else:
            return tuple(mu)


def weyl_orbit(alg: AlgebraData, mu) -> set:
    A = alg.cartan_matrix
    start = tuple(mu)
    orbit = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(alg.rank):
                if v[i] == 0:
                    continue
                w = tuple(v[j] - v[i] * A[i][j] for j in range(alg.rank))
                if w not in orbit:
                    orbit.add(w)
                    nxt.append(w)
        frontier = nxt
    return orbit


def dominant_weights(alg: AlgebraData, lam) -> list:
    """Dominant weights of the irrep, ordered by depth below the highest weight."""
    lam = _check_label(alg, lam)
    roots = alg.positive_roots
    found = {lam: 0}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for alpha, coeffs in zip(roots, alg.positive_roots_simple):
                nu = tuple(a - b for a, b in zip(mu, alpha))
                if min(nu) < 0 or nu in found:
                    continue
                found[nu] = found[mu] + sum(coeffs)
                nxt.append(nu)
        frontier = nxt
    # depth in simple-root units fixes the processing order
    depth = {}
    A = exactla.inverse([list(r) for r in alg.cartan_matrix])
    for mu in found:
        diff = [a - b for a, b in zip(lam, mu)]
        depth[mu] = sum(sum(diff[j] * A[j][i] for j in range(alg.rank)) for i in range(alg.rank))
    return sorted(found, key=lambda m: (depth[m], tuple(-x for x in m)))


def weight_multiplicities(alg: AlgebraData, lam, cap: int = DIMENSION_CAP) -> dict:
    """All weights of the irrep with highest weight lam, with multiplicities (Freudenthal)."""
    lam = _check_label(alg, lam)
    dim = weyl_dimension(alg, lam)
    if dim > cap:
        raise RepresentationTooLarge(f"{alg.name} irrep {lam} has dimension {dim} > cap {cap}")
    return _weight_multiplicities(alg, lam)


@lru_cache(maxsize=256)
def _weight_multiplicities(alg: AlgebraData, lam: tuple) -> dict:
    rho = alg.weyl_vector
    lr = tuple(a + b for a, b in zip(lam, rho))
    norm_top = alg.inner(lr, lr)
    dom_mult = {}
    roots = list(zip(alg.positive_roots, alg.positive_roots_simple))

    def mult(nu):
        return dom_mult.get(dominant_conjugate(alg, nu), 0)

    for mu in dominant_weights(alg, lam):
        if mu == lam:
            dom_mult[mu] = 1
            continue
        total = Fraction(0)
        for alpha, coeffs in roots:
            nu = mu
            while True:
                nu = tuple(a + b for a, b in zip(nu, alpha))
                m = mult(nu)
                if m == 0:
                    break
                total += m * _root_pairing(alg, nu, coeffs)
        mr = tuple(a + b for a, b in zip(mu, rho))
        value = 2 * total / (norm_top - alg.inner(mr, mr))
        assert value.denominator == 1 and value >= 0
        dom_mult[mu] = int(value)
    out = {}
    for mu, m in dom_mult.items():
        if m:
            for w in weyl_orbit(alg, mu):
                out[w] = m
    return out


def level_of(alg: AlgebraData, lam) -> Fraction:
    """(lam, theta): the smallest level at which lam is integrable."""
    return alg.inner(tuple(lam), alg.highest_root)


def alcove_sectors(alg: AlgebraData, k: int) -> list:
    """Integrable highest weights at level k, in lexicographic order."""
    if k < 1:
        raise LieDataError("level must be a positive integer")
    out = []
    for lam in product(range(k + 1), repeat=alg.rank):
        if level_of(alg, lam) <= k:
            out.append(lam)
    return out


def conformal_weight(alg: AlgebraData, k: int, lam) -> Fraction:
    return casimir_eigenvalue(alg, lam) / (2 * (k + alg.dual_coxeter))


def asymptotic_dimension(alg: AlgebraData, k: int, lam) -> float:
    kg = k + alg.dual_coxeter
    lr = tuple(x + 1 for x in lam)
    d = 1.0
    for coeffs in alg.positive_roots_simple:
        d *= (math.sin(math.pi * float(_root_pairing(alg, lr, coeffs)) / kg)
              / math.sin(math.pi * float(_root_pairing(alg, alg.weyl_vector, coeffs)) / kg))
    return d


def sector_data(alg: AlgebraData, k: int, lam) -> Sector:
    lam = _check_label(alg, lam)
    if level_of(alg, lam) > k:
        raise OutsideAlcove(f"{lam} is not integrable at level {k} for {alg.name}")
    return Sector(lam, conformal_weight(alg, k, lam), asymptotic_dimension(alg, k, lam))


def coroot_projection_row(alg: AlgebraData, beta_simple) -> list:
    """Row r with sum_j r_j mu_j = <mu, beta coroot> for beta in simple-root coordinates."""
    beta_len = sum(beta_simple[i] * beta_simple[j] * alg.root_form[i][j]
                   for i in range(alg.rank) for j in range(alg.rank))
    return [Fraction(beta_simple[j]) * alg.root_form[j][j] / beta_len for j in range(alg.rank)]
