"""Central charges and the weighted-Casimir test for conformal inclusions.

An embedding h -> g is described by an ``EmbeddingSpec``: the ambient
algebra with its level(s), the ideals of h, and either a rational
projection matrix from ambient Dynkin labels to ideal labels or a declared
decomposition of the ambient adjoint. The ambient adjoint is branched,
Dynkin indices and induced levels are read off, and the weighted Casimir
eigenvalue of every complement component decides whether the coset stress
tensor vanishes.

All arithmetic here is exact.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, prod

from . import exactla
from .liealg import (AlgebraData, casimir_eigenvalue, rep_dynkin_index,
                     weight_multiplicities, weyl_dimension)


class InconsistencyError(ValueError):
    """Input data contradict each other (bad projection, indices or branching)."""


class TheoremViolation(InconsistencyError):
    """A computed quantity breaks a bound that must hold for consistent data."""


@dataclass(frozen=True)
class SubIdeal:
    algebra: AlgebraData | None = None
    abelian_dim: int = 0
    kappa: Fraction | None = None

    def __post_init__(self):
        if (self.algebra is None) == (self.abelian_dim == 0):
            raise ValueError("an ideal is either simple or abelian of positive dimension")

    @property
    def is_abelian(self) -> bool:
        return self.algebra is None

    @property
    def rank(self) -> int:
        return self.abelian_dim if self.is_abelian else self.algebra.rank

    @property
    def dimension(self) -> int:
        return self.abelian_dim if self.is_abelian else self.algebra.dimension

    @property
    def name(self) -> str:
        return f"u1^{self.abelian_dim}" if self.is_abelian else self.algebra.name


@dataclass(frozen=True)
class LeveledAlgebra:
    components: tuple = ()
    abelian_dim: int = 0

    def __post_init__(self):
        for _, k in self.components:
            if k <= 0:
                raise ValueError("levels must be positive")


@dataclass(frozen=True)
class BranchComponent:
    labels: tuple
    mult: int
    inside: bool = False
    factor: int = 0


@dataclass(frozen=True)
class AdjointBranching:
    components: tuple

    def total_dimension(self, ideals) -> int:
        return sum(c.mult * component_dimension(ideals, c.labels) for c in self.components)

    def canonical(self):
        """Order-independent summary used for agreement checks."""
        counts = Counter()
        for c in self.components:
            counts[(c.factor, c.labels, c.inside)] += c.mult
        return counts


@dataclass(frozen=True)
class EmbeddingSpec:
    ambient: tuple
    ideals: tuple
    projection: tuple | None = None
    declared: AdjointBranching | None = None
    name: str = ""

    @property
    def ambient_is_simple(self) -> bool:
        return len(self.ambient) == 1

    def ideal_rows(self, index: int) -> list:
        start = sum(s.rank for s in self.ideals[:index])
        return [list(r) for r in self.projection[start:start + self.ideals[index].rank]]


@dataclass
class InclusionReport:
    dynkin_indices: list
    induced_levels: list
    ambient_central_charge: Fraction
    sub_central_charge: Fraction
    coset_central_charge: Fraction
    casimir_spectrum: list
    verdict: str
    route: str
    covariant_colors: list = field(default_factory=list)
    coset_colors: list = field(default_factory=list)
    mixed_colors: list = field(default_factory=list)
    branching: AdjointBranching | None = None

    @property
    def conformal(self) -> bool:
        return self.verdict == "conformal"


def component_dimension(ideals, labels) -> int:
    return prod(1 if s.is_abelian else weyl_dimension(s.algebra, lab)
                for s, lab in zip(ideals, labels))


# central charges

def sugawara_central_charge(la: LeveledAlgebra) -> Fraction:
    c = Fraction(la.abelian_dim)
    for alg, k in la.components:
        k = Fraction(k)
        c += k * alg.dimension / (k + alg.dual_coxeter)
    return c


def coset_central_charge(ambient: LeveledAlgebra, sub: LeveledAlgebra) -> Fraction:
    c = sugawara_central_charge(ambient) - sugawara_central_charge(sub)
    if c < 0:
        raise InconsistencyError(f"negative coset central charge {c}")
    return c


def discrete_series(m: int) -> Fraction:
    if m < 0:
        raise ValueError("m must be non-negative")
    return 1 - Fraction(6, (m + 2) * (m + 3))


def is_discrete(c) -> int | None:
    """The m >= 0 with discrete_series(m) == c, or None."""
    c = Fraction(c)
    if c >= 1:
        return None
    x = Fraction(6) / (1 - c)
    if x.denominator != 1:
        return None
    disc = 1 + 4 * x.numerator
    r = isqrt(disc)
    if r * r != disc or (r - 5) % 2 or r < 5:
        return None
    return (r - 5) // 2


# branching of the ambient adjoint

def _ambient_adjoint_weights(spec: EmbeddingSpec):
    """(factor, concatenated weight, multiplicity) for the ambient adjoint."""
    ranks = [alg.rank for alg, _ in spec.ambient]
    offsets = [sum(ranks[:i]) for i in range(len(ranks))]
    total = sum(ranks)
    for i, (alg, _) in enumerate(spec.ambient):
        pad = lambda w: (0,) * offsets[i] + tuple(w) + (0,) * (total - offsets[i] - alg.rank)
        yield i, pad(alg.zero()), alg.rank
        for r in alg.positive_roots:
            yield i, pad(r), 1
            yield i, pad(tuple(-x for x in r)), 1


def _project(spec: EmbeddingSpec, weight) -> tuple:
    out = []
    row = 0
    for s in spec.ideals:
        part = []
        for _ in range(s.rank):
            v = sum((Fraction(p) * w for p, w in zip(spec.projection[row], weight) if w), Fraction(0))
            part.append(v)
            row += 1
        if not s.is_abelian:
            if any(v.denominator != 1 for v in part):
                raise InconsistencyError(f"projection of {weight} is not integral for {s.name}")
            part = [int(v) for v in part]
        out.append(tuple(part))
    return tuple(out)


def abelian_metric(spec: EmbeddingSpec, index: int) -> list:
    """Level-weighted induced metric sum_i k_i (H_a, H_b) on an abelian ideal.

    Row a of the projection block expresses H_a = sum_j P_aj coroot_j.
    """
    rows = spec.ideal_rows(index)
    n = len(rows)
    G = [[Fraction(0)] * n for _ in range(n)]
    col = 0
    for alg, k in spec.ambient:
        B = alg.root_form
        r = alg.rank
        coroot = [[4 * B[j][l] / (B[j][j] * B[l][l]) for l in range(r)] for j in range(r)]
        for a in range(n):
            for b in range(n):
                G[a][b] += k * sum(Fraction(rows[a][col + j]) * rows[b][col + l] * coroot[j][l]
                                   for j in range(r) for l in range(r))
        col += r
    return G


def _abelian_casimirs(spec: EmbeddingSpec):
    """For each abelian ideal, q -> q^T G^-1 q with the level-weighted metric."""
    out = {}
    for i, s in enumerate(spec.ideals):
        if s.is_abelian:
            Ginv = exactla.inverse(abelian_metric(spec, i))
            out[i] = lambda q, Ginv=Ginv: sum(
                (q[a] * Ginv[a][b] * q[b] for a in range(len(q)) for b in range(len(q))), Fraction(0))
    return out


def _component_casimir(spec: EmbeddingSpec, labels, abelian) -> Fraction:
    total = Fraction(0)
    for i, (s, lab) in enumerate(zip(spec.ideals, labels)):
        if s.is_abelian:
            # metric already carries the level; scale back to compare like terms
            total += abelian[i](lab)
        else:
            total += casimir_eigenvalue(s.algebra, lab)
    return total


def _peel(spec: EmbeddingSpec, factor: int, weights: Counter) -> list:
    abelian = _abelian_casimirs(spec)
    found = Counter()
    while weights:
        candidates = [w for w in weights
                      if all(s.is_abelian or min(lab, default=0) >= 0
                             for s, lab in zip(spec.ideals, w))]
        if not candidates:
            raise InconsistencyError("adjoint weights do not decompose into irreducibles")
        top = max(candidates, key=lambda w: (_component_casimir(spec, w, abelian), w))
        found[top] += 1
        mults = [({lab: 1} if s.is_abelian else weight_multiplicities(s.algebra, lab))
                 for s, lab in zip(spec.ideals, top)]
        for combo in _product_weights(mults):
            weights[combo[0]] -= combo[1]
            if weights[combo[0]] < 0:
                raise InconsistencyError(f"negative multiplicity while peeling {top}")
            if weights[combo[0]] == 0:
                del weights[combo[0]]
    return [(factor, labels, m) for labels, m in found.items()]


def _product_weights(mults):
    result = [((), 1)]
    for table in mults:
        result = [(w + (v,), m * n) for w, m in result for v, n in table.items()]
    return result


def _inside_labels(spec: EmbeddingSpec, index: int):
    """Labels of the component spanning ideal ``index`` and how often it occurs."""
    s = spec.ideals[index]
    labels = tuple(
        s.algebra.adjoint() if (j == index and not s.is_abelian)
        else (tuple(Fraction(0) for _ in range(t.rank)) if t.is_abelian else t.algebra.zero())
        for j, t in enumerate(spec.ideals))
    return labels, (s.abelian_dim if s.is_abelian else 1)


def _mark_inside(spec: EmbeddingSpec, raw: list) -> list:
    """Split off the components spanning h itself; raw is [(factor, labels, mult)]."""
    needed = [_inside_labels(spec, i) for i in range(len(spec.ideals))]
    remaining = [list(x) for x in raw]
    inside = []
    for labels, count in needed:
        for entry in remaining:
            if entry[1] == labels and entry[2] > 0:
                take = min(count, entry[2])
                entry[2] -= take
                count -= take
                inside.append((entry[0], labels, take))
                if count == 0:
                    break
        if count:
            raise InconsistencyError(f"the adjoint of ideal {labels} is missing from the branching")
    comps = [BranchComponent(labels, m, True, f) for f, labels, m in inside]
    comps += [BranchComponent(labels, m, False, f) for f, labels, m in remaining if m > 0]
    return comps


def branch_adjoint(spec: EmbeddingSpec) -> AdjointBranching:
    """Decompose the ambient adjoint under the sub-ideals."""
    if spec.projection is None:
        if spec.declared is None:
            raise InconsistencyError("embedding needs a projection or a declared branching")
        return _check_declared(spec, spec.declared)
    per_factor = {}
    for factor, weight, mult in _ambient_adjoint_weights(spec):
        per_factor.setdefault(factor, Counter())[_project(spec, weight)] += mult
    raw = []
    for factor in sorted(per_factor):
        raw += _peel(spec, factor, per_factor[factor])
    branching = _sorted_branching(spec, _mark_inside(spec, raw))
    if spec.declared is not None:
        declared = _check_declared(spec, spec.declared)
        if declared.canonical() != branching.canonical():
            raise InconsistencyError("declared branching disagrees with the projection")
    return branching


def _sorted_branching(spec, comps) -> AdjointBranching:
    abelian = _abelian_casimirs(spec)
    key = lambda c: (c.factor, not c.inside, -_component_casimir(spec, c.labels, abelian),
                     tuple(tuple(-x for x in lab) for lab in c.labels))
    return AdjointBranching(tuple(sorted(comps, key=key)))


def _check_declared(spec: EmbeddingSpec, declared: AdjointBranching) -> AdjointBranching:
    for c in declared.components:
        if len(c.labels) != len(spec.ideals):
            raise InconsistencyError(f"component {c.labels} does not match the ideal count")
        for s, lab in zip(spec.ideals, c.labels):
            if len(lab) != s.rank:
                raise InconsistencyError(f"label {lab} has the wrong length for {s.name}")
    for f, (alg, _) in enumerate(spec.ambient):
        dim = sum(c.mult * component_dimension(spec.ideals, c.labels)
                  for c in declared.components if c.factor == f)
        if dim != alg.dimension:
            raise InconsistencyError(f"declared branching has dimension {dim}, expected {alg.dimension}")
    for i in range(len(spec.ideals)):
        labels, want = _inside_labels(spec, i)
        got = sum(c.mult for c in declared.components if c.inside and c.labels == labels)
        if got != want:
            raise InconsistencyError(f"declared branching lacks the inside component {labels}")
    return _sorted_branching(spec, list(declared.components))


def embedding_index(spec: EmbeddingSpec, branching: AdjointBranching, ideal: int) -> list:
    """Dynkin index of a simple ideal relative to each ambient factor."""
    s = spec.ideals[ideal]
    if s.is_abelian:
        return [Fraction(1)] * len(spec.ambient)
    out = []
    for f, (alg, _) in enumerate(spec.ambient):
        total = Fraction(0)
        for c in branching.components:
            if c.factor != f:
                continue
            others = prod(1 if t.is_abelian else weyl_dimension(t.algebra, lab)
                          for j, (t, lab) in enumerate(zip(spec.ideals, c.labels)) if j != ideal)
            total += c.mult * rep_dynkin_index(s.algebra, c.labels[ideal]) * others
        out.append(total / (2 * alg.dual_coxeter))
    return out


def induced_levels(spec: EmbeddingSpec, indices) -> list:
    """Level of each ideal; abelian ideals carry level 1 against their level-weighted metric."""
    levels = []
    for s, per_factor in zip(spec.ideals, indices):
        if s.is_abelian:
            levels.append(Fraction(1))
        else:
            levels.append(sum((Fraction(i) * k for i, (_, k) in zip(per_factor, spec.ambient)),
                              Fraction(0)))
    return levels


def casimir_spectrum(spec: EmbeddingSpec, branching: AdjointBranching, indices) -> list:
    """Weighted Casimir eigenvalue on every branching component."""
    levels = induced_levels(spec, indices)
    abelian = _abelian_casimirs(spec)
    out = []
    for c in branching.components:
        if c.inside:
            value = Fraction(1)
        else:
            value = Fraction(0)
            for i, (s, lab) in enumerate(zip(spec.ideals, c.labels)):
                if s.is_abelian:
                    value += abelian[i](lab) / 2
                else:
                    value += casimir_eigenvalue(s.algebra, lab) / (
                        2 * (levels[i] + s.algebra.dual_coxeter))
        if value > 1 or value < 0:
            raise TheoremViolation(f"weighted Casimir eigenvalue {value} outside [0, 1] on {c.labels}")
        out.append((c, value))
    return out


def _check_kappa(spec: EmbeddingSpec):
    for s in spec.ideals:
        if s.is_abelian and s.kappa is not None:
            if len(spec.ambient) != 1 or Fraction(s.kappa) != spec.ambient[0][1]:
                raise InconsistencyError(
                    f"declared kappa {s.kappa} differs from the induced value I*k with I = 1")


def classify_inclusion(spec: EmbeddingSpec, indices=None) -> InclusionReport:
    """Decide whether the embedding is a conformal inclusion.

    ``indices`` overrides the computed Dynkin indices (one list of per-factor
    values per ideal); the override exists to exercise consistency guards.
    """
    _check_kappa(spec)
    branching = branch_adjoint(spec)
    if indices is None:
        indices = [embedding_index(spec, branching, i) for i in range(len(spec.ideals))]
    else:
        indices = [[Fraction(x) for x in (v if isinstance(v, (list, tuple)) else [v])]
                   for v in indices]
    levels = induced_levels(spec, indices)
    ambient_la = LeveledAlgebra(tuple((alg, Fraction(k)) for alg, k in spec.ambient))
    sub_la = LeveledAlgebra(
        tuple((s.algebra, lv) for s, lv in zip(spec.ideals, levels) if not s.is_abelian),
        sum(s.abelian_dim for s in spec.ideals))
    c_amb = sugawara_central_charge(ambient_la)
    c_sub = sugawara_central_charge(sub_la)
    coset_c = c_amb - c_sub
    if coset_c < 0:
        raise InconsistencyError(f"negative coset central charge {coset_c}")
    spectrum = casimir_spectrum(spec, branching, indices)
    saturated = all(v == 1 for _, v in spectrum)
    if spec.ambient_is_simple:
        route = "casimir"
        conformal = saturated
    else:
        route = "central-charge"
        conformal = coset_c == 0
    complement = [c for c, _ in spectrum if not c.inside]
    if conformal and complement and any(k >= 2 for _, k in spec.ambient):
        raise TheoremViolation("conformal inclusion with ambient level >= 2 and a nonempty complement")
    if spec.ambient_is_simple and saturated != (coset_c == 0):
        raise InconsistencyError(
            f"Casimir saturation ({saturated}) contradicts coset central charge {coset_c}")
    covariant = [c for c, v in spectrum if v == 1]
    coset = [c for c, v in spectrum if not c.inside and v == 0]
    mixed = [(c, v * (1 - v)) for c, v in spectrum if 0 < v < 1]
    return InclusionReport(
        dynkin_indices=indices, induced_levels=levels, ambient_central_charge=c_amb,
        sub_central_charge=c_sub, coset_central_charge=coset_c, casimir_spectrum=spectrum,
        verdict="conformal" if conformal else "nonconformal", route=route,
        covariant_colors=covariant, coset_colors=coset, mixed_colors=mixed, branching=branching)
