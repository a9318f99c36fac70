"""Sector arithmetic: Kac tables, fusion rings, indices and coupling matrices."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .liealg import Sector

DIM_TOLERANCE = 1e-4
_SQRT2 = math.sqrt(2)


class CouplingUnresolved(ValueError):
    def __init__(self, message, rows=()):
        super().__init__(message)
        self.rows = tuple(rows)


def kac_weight(m: int, r: int, s: int) -> Fraction:
    return Fraction(((m + 3) * r - (m + 2) * s) ** 2 - 1, 4 * (m + 2) * (m + 3))


def kac_dimension(m: int, r: int, s: int) -> float:
    p, q = m + 2, m + 3
    return (math.sin(r * math.pi / p) * math.sin(s * math.pi / q)
            / (math.sin(math.pi / p) * math.sin(math.pi / q)))


@dataclass(frozen=True, eq=False)
class KacLabel:
    """Minimal-model label (r, s) kept as written; compares by canonical form."""
    m: int
    r: int
    s: int

    def __post_init__(self):
        if self.m < 1 or not (1 <= self.r <= self.m + 1 and 1 <= self.s <= self.m + 2):
            raise ValueError(f"({self.r},{self.s}) is not a Kac label for m={self.m}")

    def canonical(self) -> tuple:
        r, s = self.r, self.s
        if s > r:
            r, s = self.m + 2 - r, self.m + 3 - s
        return r, s

    @property
    def is_canonical(self) -> bool:
        return (self.r, self.s) == self.canonical()

    @property
    def h(self) -> Fraction:
        return kac_weight(self.m, self.r, self.s)

    @property
    def d(self) -> float:
        return kac_dimension(self.m, self.r, self.s)

    def __eq__(self, other):
        return isinstance(other, KacLabel) and self.m == other.m and self.canonical() == other.canonical()

    def __hash__(self):
        return hash((self.m, self.canonical()))

    def __repr__(self):
        return f"KacLabel(m={self.m}, r={self.r}, s={self.s})"


def minimal_model_table(m: int) -> list:
    """(KacLabel, h, d) for every sector, canonical labels in (r, s) order."""
    if m < 1:
        raise ValueError("m must be at least 1")
    rows = []
    for r in range(1, m + 2):
        for s in range(1, r + 1):
            lab = KacLabel(m, r, s)
            rows.append((lab, lab.h, lab.d))
    return rows


@dataclass
class FusionRing:
    name: str
    sectors: tuple
    structure: dict  # (a, b) -> Counter
    dims: dict
    vacuum: object

    def fuse(self, a, b) -> Counter:
        if a not in self.dims or b not in self.dims:
            raise ValueError(f"unknown sector in {self.name}: {a if a not in self.dims else b}")
        return self.structure[(a, b)]

    def conjugate(self, a):
        hits = [c for c in self.sectors if self.structure[(a, c)].get(self.vacuum, 0)]
        return hits[0] if len(hits) == 1 else None

    def check_axioms(self, tol: float = 1e-6) -> dict:
        secs = self.sectors
        comm = all(self.structure[(a, b)] == self.structure[(b, a)] for a, b in product(secs, secs))
        unit = all(self.structure[(self.vacuum, a)] == Counter({a: 1}) for a in secs)
        conj = all(sum(self.structure[(a, c)].get(self.vacuum, 0) for c in secs) == 1 for a in secs)
        assoc = True
        for a, b, c in product(secs, secs, secs):
            left, right = Counter(), Counter()
            for x, n in self.structure[(a, b)].items():
                for y, k in self.structure[(x, c)].items():
                    left[y] += n * k
            for x, n in self.structure[(b, c)].items():
                for y, k in self.structure[(a, x)].items():
                    right[y] += n * k
            if left != right:
                assoc = False
                break
        dims = all(abs(self.dims[a] * self.dims[b]
                       - sum(n * self.dims[x] for x, n in self.structure[(a, b)].items())) <= tol
                   for a, b in product(secs, secs))
        return {"commutative": comm, "unit": unit, "conjugation": conj,
                "associative": assoc, "dimensions": dims}


def _su2_range(a: int, b: int, k: int):
    return range(abs(a - b), min(a + b, 2 * k - a - b) + 1, 2)


def su2_ring(k: int) -> FusionRing:
    secs = tuple(range(k + 1))
    structure = {(a, b): Counter({c: 1 for c in _su2_range(a, b, k)}) for a in secs for b in secs}
    dims = {l: math.sin((l + 1) * math.pi / (k + 2)) / math.sin(math.pi / (k + 2)) for l in secs}
    return FusionRing(f"su(2)_{k}", secs, structure, dims, 0)


def _minimal_product(m: int, a: tuple, b: tuple) -> Counter:
    (r1, s1), (r2, s2) = a, b
    out = Counter()
    for r in range(abs(r1 - r2) + 1, min(r1 + r2 - 1, 2 * m + 3 - r1 - r2) + 1, 2):
        for s in range(abs(s1 - s2) + 1, min(s1 + s2 - 1, 2 * m + 5 - s1 - s2) + 1, 2):
            out[KacLabel(m, r, s).canonical()] += 1
    return out


def minimal_ring(m: int) -> FusionRing:
    secs = tuple(lab.canonical() for lab, _, _ in minimal_model_table(m))
    structure = {(a, b): _minimal_product(m, a, b) for a in secs for b in secs}
    dims = {x: kac_dimension(m, *x) for x in secs}
    return FusionRing(f"minimal({m})", secs, structure, dims, (1, 1))


def fuse(ring: FusionRing, a, b) -> Counter:
    """Fusion product; minimal-model labels must be canonical (r, s) or KacLabel."""
    if isinstance(a, KacLabel):
        a = a.canonical()
    if isinstance(b, KacLabel):
        b = b.canonical()
    return ring.fuse(a, b)


def mu_index(dims) -> float:
    dims = list(dims)
    if not dims:
        raise ValueError("at least one sector is required")
    for d in dims:
        if d < 1 - 1e-9:
            raise ValueError(f"statistical dimension {d} is below 1")
    return math.fsum(d * d for d in dims)


_RELATIONS = {
    # mu_sub = index^2 mu_amb
    "mu-inclusion": ("mu_sub", "index", "mu_amb"),
    # [A'' (x) A' : A (x) C] = [A'':A][A':C]
    "tensor": ("total", "first", "second"),
    # [B : A (x) C] <= [B : X][X : A (x) C], with equality when irreducible
    "chain": ("total", "outer", "inner"),
}


def index_arithmetic(relation: str, knowns: dict, irreducible: bool = True):
    """Solve one of the index relations for its single unknown.

    Exact inputs (int or Fraction) give exact results where the algebra
    allows it. For ``chain`` without irreducibility only an upper bound on
    the total is available and the other unknowns cannot be solved.
    """
    if relation not in _RELATIONS:
        raise ValueError(f"unknown relation {relation!r}; choose from {sorted(_RELATIONS)}")
    names = _RELATIONS[relation]
    extra = set(knowns) - set(names)
    if extra:
        raise ValueError(f"unexpected quantities {sorted(extra)}")
    missing = [n for n in names if n not in knowns]
    if len(missing) > 1:
        raise ValueError(f"exactly one unknown allowed, got {missing}")
    for n, v in knowns.items():
        if v <= 0:
            raise ValueError(f"{n} must be positive")
    if relation == "mu-inclusion":
        mu_sub, index, mu_amb = (knowns.get(n) for n in names)
        if not missing:
            if not _close(mu_sub, index * index * mu_amb):
                raise ValueError("inconsistent: mu_sub != index^2 mu_amb")
            return None
        if missing[0] == "mu_amb":
            return _div(mu_sub, index * index)
        if missing[0] == "mu_sub":
            return index * index * mu_amb
        return _sqrt(_div(mu_sub, mu_amb))
    total, first, second = (knowns.get(n) for n in names)
    if relation == "chain" and not irreducible and missing != ["total"]:
        raise ValueError("a reducible chain only bounds the total index")
    if not missing:
        ok = _close(total, first * second) if (relation == "tensor" or irreducible) \
            else total <= first * second + 1e-12
        if not ok:
            raise ValueError(f"inconsistent {relation} relation")
        return None
    if missing[0] == "total":
        return first * second
    if missing[0] == "first":
        return _div(total, second)
    return _div(total, first)


def _div(a, b):
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        q = Fraction(a) / Fraction(b)
        return int(q) if q.denominator == 1 else q
    return a / b


def _sqrt(x):
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if n * n == x.numerator and d * d == x.denominator:
            q = Fraction(n, d)
            return int(q) if q.denominator == 1 else q
        return math.sqrt(x)
    return math.sqrt(x)


def _close(a, b):
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return Fraction(a) == Fraction(b)
    return abs(a - b) <= 1e-9 * max(1.0, abs(a), abs(b))


def snap_dimension(d: float) -> float:
    """Values below sqrt(2) can only be 1."""
    return 1.0 if d < _SQRT2 else d


def sharp_action_test(energies) -> tuple:
    """True when every 2h is a non-negative integer; also returns offenders."""
    offenders = []
    for h in energies:
        h = Fraction(h)
        if h < 0 or (2 * h).denominator != 1:
            offenders.append(h)
    return not offenders, offenders


# coupling matrices

@dataclass(frozen=True)
class TableRow:
    a_bundle: tuple  # ((Sector, mult), ...)
    c_bundle: tuple
    vacuum: bool = False

    @staticmethod
    def _dim(bundle):
        return math.fsum(mult * snap_dimension(s.d) for s, mult in bundle)

    @property
    def a_dim(self) -> float:
        return self._dim(self.a_bundle)

    @property
    def c_dim(self) -> float:
        return self._dim(self.c_bundle)

    @staticmethod
    def _key(bundle):
        return tuple(sorted((str(s.label), mult) for s, mult in bundle))


@dataclass
class BranchingTable:
    rows: tuple
    name: str = ""

    def __post_init__(self):
        flagged = [i for i, r in enumerate(self.rows) if r.vacuum]
        if len(flagged) != 1:
            raise ValueError(f"exactly one vacuum row is required, found {len(flagged)}")
        row = self.rows[flagged[0]]
        for side, bundle in (("A", row.a_bundle), ("C", row.c_bundle)):
            vac = [(s, m) for s, m in bundle if s.h == 0]
            if len(vac) != 1 or vac[0][1] != 1:
                raise ValueError(f"the vacuum row needs the {side}-vacuum exactly once")

    @property
    def vacuum_index(self) -> int:
        return next(i for i, r in enumerate(self.rows) if r.vacuum)

    def energies(self, side: str) -> list:
        seen, out = set(), []
        for row in self.rows:
            for s, _ in (row.a_bundle if side == "A" else row.c_bundle):
                if s.label not in seen:
                    seen.add(s.label)
                    out.append(s.h)
        return out


@dataclass
class CouplingMatrix:
    pairs: list  # (u, v) row indices
    a_index: float
    c_index: float
    a_dims: list
    c_dims: list
    unique: bool
    alternatives: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    @property
    def matrix(self) -> list:
        n = len(self.a_dims)
        z = [[0] * n for _ in range(n)]
        for u, v in self.pairs:
            z[u][v] = 1
        return z


def _energy_integrality(table: BranchingTable) -> bool:
    for row in table.rows:
        for (a, _), (c, _) in product(row.a_bundle, row.c_bundle):
            if (Fraction(a.h) + Fraction(c.h)).denominator != 1:
                return False
    return True


def coupling_solve(table: BranchingTable, tol: float = DIM_TOLERANCE,
                   max_alternatives: int = 256) -> CouplingMatrix:
    """Pair extended A-sectors with extended C-sectors by statistical dimension."""
    rows = table.rows
    n = len(rows)
    vac = table.vacuum_index
    a_index = rows[vac].a_dim
    c_index = rows[vac].c_dim
    a_dims = [r.a_dim / a_index for r in rows]
    c_dims = [r.c_dim / c_index for r in rows]
    cand = [[v for v in range(n) if abs(a_dims[u] - c_dims[v]) <= tol] for u in range(n)]
    cand[vac] = [vac] if vac in cand[vac] else []
    for u in range(n):
        if u != vac:
            cand[u] = [v for v in cand[u] if v != vac]
    bad = [u for u in range(n) if not cand[u]]
    if bad:
        raise CouplingUnresolved(f"no dimension match for rows {bad}", bad)

    found, seen = [], set()
    used = [False] * n
    current = []

    def search(u):
        if len(found) >= max_alternatives:
            return
        if u == n:
            key = tuple(sorted((TableRow._key(rows[a].a_bundle), TableRow._key(rows[c].c_bundle))
                               for a, c in current))
            if key not in seen:
                seen.add(key)
                found.append(list(current))
            return
        for v in cand[u]:
            if not used[v]:
                used[v] = True
                current.append((u, v))
                search(u + 1)
                current.pop()
                used[v] = False

    search(0)
    if not found:
        raise CouplingUnresolved("no permutation matches all dimensions",
                                 [u for u in range(n) if len(cand[u]) > 1])
    pairs = found[0]
    checks = {
        "permutation": sorted(u for u, _ in pairs) == list(range(n))
        and sorted(v for _, v in pairs) == list(range(n)),
        "dimensions": all(abs(a_dims[u] - c_dims[v]) <= tol for u, v in pairs),
        "normal": all((u == vac) == (v == vac) for u, v in pairs),
        "energies": _energy_integrality(table),
    }
    return CouplingMatrix(pairs, a_index, c_index, a_dims, c_dims, len(found) == 1,
                          found[1:], checks)


def trivial_table() -> BranchingTable:
    vac = Sector("0", Fraction(0), 1.0)
    return BranchingTable((TableRow(((vac, 1),), ((vac, 1),), True),), "trivial")
