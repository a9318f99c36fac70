"""Truncated affine su(2) characters and coset branching functions.

Characters are ``QSeries``: a rational leading exponent plus integer-step
coefficients, each either an integer or a ``{weight: multiplicity}`` map in
Dynkin units (z^w with w the eigenvalue of h). The product of two vacuum
characters is decomposed into characters of the diagonal subalgebra by
peeling at increasing absolute energy.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .conformal import discrete_series
from .modealg import virasoro_irrep_dims

CHARACTER_CAP = 10


class ClaimInconsistent(ValueError):
    pass


@dataclass
class QSeries:
    offset: Fraction
    coeffs: list

    @property
    def graded(self) -> bool:
        return any(isinstance(c, dict) for c in self.coeffs)

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def totals(self) -> list:
        return [sum(c.values()) if isinstance(c, dict) else c for c in self.coeffs]

    def weight_coefficient(self, grade: int, weight: int) -> int:
        c = self.coeffs[grade]
        return c.get(weight, 0) if isinstance(c, dict) else 0

    def __mul__(self, other: QSeries) -> QSeries:
        N = min(self.N, other.N)
        out = [Counter() for _ in range(N + 1)]
        for i in range(N + 1):
            for j in range(N + 1 - i):
                for w1, a in self.coeffs[i].items():
                    for w2, b in other.coeffs[j].items():
                        out[i + j][w1 + w2] += a * b
        return QSeries(self.offset + other.offset, [_clean(c) for c in out])

    def terms(self):
        """Yield (absolute exponent, coefficient) pairs."""
        for g, c in enumerate(self.coeffs):
            yield self.offset + g, c


def _clean(counter) -> dict:
    return {w: v for w, v in sorted(counter.items(), reverse=True) if v}


def _string(a: int) -> Counter:
    """(z^a - z^-a)/(z - z^-1) for a >= 0."""
    return Counter({a - 1 - 2 * i: 1 for i in range(a)})


def su2_conformal_weight(k: int, l: int) -> Fraction:
    return Fraction(l * (l + 2), 4 * (k + 2))


def affine_su2_character(k: int, l: int, N: int) -> QSeries:
    """Weyl-Kac character of the level-k, spin-l/2 integrable module to grade N."""
    if not 0 <= l <= k:
        raise ValueError(f"label {l} outside the level-{k} alcove")
    if N > CHARACTER_CAP:
        raise ValueError(f"character grade cap is {CHARACTER_CAP}")
    K = k + 2
    num = [Counter() for _ in range(N + 1)]
    n = 0
    bound = N + 1
    for n in range(-bound, bound + 1):
        grade = K * n * n + (l + 1) * n
        if not 0 <= grade <= N:
            continue
        a = l + 1 + 2 * K * n
        sign = 1 if a > 0 else -1
        for w, v in _string(abs(a)).items():
            num[grade][w] += sign * v
    # divide by prod (1 - q^n)(1 - q^n z^2)(1 - q^n z^-2)
    series = num
    for step in range(1, N + 1):
        for shift in (0, 2, -2):
            for g in range(step, N + 1):
                for w, v in list(series[g - step].items()):
                    series[g][w + shift] += v
    return QSeries(su2_conformal_weight(k, l), [_clean(c) for c in series])


def vacuum_product(k1: int, k2: int, N: int, l1: int = 0, l2: int = 0) -> QSeries:
    return affine_su2_character(k1, l1, N) * affine_su2_character(k2, l2, N)


@dataclass
class Branching:
    """Branching functions b_target as {absolute exponent: multiplicity}."""
    level: int
    functions: dict
    horizon: Fraction  # largest product energy covered

    def known_up_to(self, target: int) -> Fraction:
        return self.horizon - su2_conformal_weight(self.level, target)

    def leading(self, target: int):
        f = self.functions.get(target, {})
        if not f:
            return None
        e = min(f)
        return e, f[e]


def branching_functions(product: QSeries, level: int, targets=None) -> Branching:
    """Solve product = sum_t b_t(q) chi_t(q, z) for level-``level`` targets."""
    N = product.N
    allowed = set(range(level + 1)) if targets is None else set(targets)
    residual = {}
    for e, c in product.terms():
        for w, v in c.items():
            if v:
                residual[(e, w)] = v
    horizon = product.offset + N
    chars = {}
    functions = {t: {} for t in sorted(allowed)}
    while residual:
        energy = min(e for e, _ in residual)
        at = Counter({w: v for (e, w), v in residual.items() if e == energy})
        if any(at[w] != at.get(-w, 0) for w in at):
            raise ClaimInconsistent(f"weights at energy {energy} are not su(2)-symmetric")
        for top in sorted((w for w in at if w >= 0), reverse=True):
            mult = at[top] - at.get(top + 2, 0)
            if mult < 0:
                raise ClaimInconsistent(f"negative multiplicity for weight {top} at energy {energy}")
            if mult == 0:
                continue
            if top not in allowed:
                raise ClaimInconsistent(f"weight {top} at energy {energy} has no admissible target")
            exponent = energy - su2_conformal_weight(level, top)
            functions[top][exponent] = functions[top].get(exponent, 0) + mult
            depth = int(horizon - energy)
            if top not in chars or chars[top].N < depth:
                chars[top] = affine_su2_character(level, top, min(N, CHARACTER_CAP))
            for g in range(depth + 1):
                for w, v in chars[top].coeffs[g].items():
                    key = (energy + g, w)
                    left = residual.get(key, 0) - mult * v
                    if left < 0:
                        raise ClaimInconsistent(f"negative residual at energy {energy + g}, weight {w}")
                    if left:
                        residual[key] = left
                    else:
                        residual.pop(key, None)
        # anything left at this energy would mean a broken string
        if any(e == energy for e, _ in residual):
            raise ClaimInconsistent(f"could not peel energy {energy}")
    return Branching(level, {t: f for t, f in functions.items()}, horizon)


# claims

@dataclass
class ClaimRow:
    target: int
    cosets: list  # (h, mult)


@dataclass
class BranchingClaim:
    k1: int
    k2: int
    m: int
    rows: list
    l1: int = 0
    l2: int = 0

    @property
    def level(self) -> int:
        return self.k1 + self.k2


def gko_claim(m: int) -> BranchingClaim:
    """Vacuum branching of level 1 times level m under the diagonal level m+1."""
    from .fusion import kac_weight
    rows = [ClaimRow(2 * l, [(kac_weight(m, 1, 2 * l + 1), 1)])
            for l in range(0, (m + 1) // 2 + 1) if 2 * l <= m + 1]
    return BranchingClaim(1, m, m, rows)


@dataclass
class RowResult:
    target: int
    passed: bool
    first_failure: Fraction | None = None
    detail: str = ""


@dataclass
class BranchingReport:
    claim: BranchingClaim
    N: int
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


def _virasoro_series(c, cosets, limit: Fraction) -> dict:
    out = Counter()
    for h, mult in cosets:
        h = Fraction(h)
        if h > limit:
            continue
        dims = virasoro_irrep_dims(c, h, int(limit - h))
        for g, d in enumerate(dims):
            if d:
                out[h + g] += mult * d
    return out


def verify_branching(claim: BranchingClaim, N: int = 6) -> BranchingReport:
    """Peel the product character and compare with the claimed Virasoro content."""
    if N > 6:
        raise ValueError("verify_branching supports N <= 6")
    product = vacuum_product(claim.k1, claim.k2, N, claim.l1, claim.l2)
    report = BranchingReport(claim, N)
    try:
        br = branching_functions(product, claim.level)
    except ClaimInconsistent as exc:
        report.rows.append(RowResult(-1, False, None, str(exc)))
        return report
    c = discrete_series(claim.m)
    claimed = {row.target: row.cosets for row in claim.rows}
    for target in sorted(set(br.functions) | set(claimed)):
        got = br.functions.get(target, {})
        limit = br.known_up_to(target)
        cosets = claimed.get(target, [])
        want = _virasoro_series(c, cosets, limit)
        got_c = Counter({e: v for e, v in got.items() if e <= limit})
        if not got_c and not want:
            continue
        exps = sorted(set(got_c) | set(want))
        bad = [e for e in exps if got_c.get(e, 0) != want.get(e, 0)]
        # leading exponent and multiplicity must also agree with the claim
        lead_ok = True
        if cosets:
            h0 = min(Fraction(h) for h, _ in cosets)
            m0 = sum(mu for h, mu in cosets if Fraction(h) == h0)
            lead = min(got_c) if got_c else None
            lead_ok = lead == h0 and got_c.get(h0, 0) == m0
        if bad or not lead_ok:
            first = bad[0] if bad else (min(got_c) if got_c else None)
            report.rows.append(RowResult(target, False, first,
                                         f"peeled {got_c.get(first, 0)} vs claimed {want.get(first, 0)}"))
        else:
            report.rows.append(RowResult(target, True))
    return report
