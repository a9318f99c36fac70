"""Acceptance criteria, one pass/fail line each.

Run under pytest, or directly with ``python3 tests/test_acceptance.py``.
"""

import math
import random
import sys
import time
from fractions import Fraction as F

import pytest

from cosetkit import data_path
from cosetkit.characters import gko_claim, verify_branching
from cosetkit.conformal import (LeveledAlgebra, TheoremViolation, classify_inclusion,
                                coset_central_charge, discrete_series, sugawara_central_charge)
from cosetkit.fusion import (coupling_solve, index_arithmetic, kac_dimension, kac_weight, mu_index,
                             sharp_action_test, su2_ring)
from cosetkit.liealg import alcove_sectors, algebra_data, sector_data
from cosetkit.mobius import (compose, dilation, dilation_word, iwasawa_decompose, rotation,
                             rotation_word, sqrt_in_psl, translation)
from cosetkit.modealg import (gram_determinant, no_set_certificate, phi_null_report, sugawara_verify,
                              virasoro_module)
from cosetkit.specfiles import parse_branching_table, parse_embedding

DIM_TOL = 1e-4
MOBIUS_TOL = 1e-10
SQRT_TOL = 1e-9
SAMPLES = 1000

CRITERIA = {}


def criterion(number, seconds=None):
    def register(fn):
        CRITERIA[number] = (fn, seconds)
        return fn
    return register


def _close_all(got, want, tol=DIM_TOL):
    return len(got) == len(want) and all(abs(g - w) <= tol for g, w in zip(got, want))


@criterion(1)
def central_charges():
    a1, e8 = algebra_data("A1"), algebra_data("E8")
    ok = all(sugawara_central_charge(LeveledAlgebra(((a1, k),))) == F(3 * k, k + 2) for k in range(1, 41))
    ok &= sugawara_central_charge(LeveledAlgebra(((e8, 1),))) == 8
    for m in range(1, 21):
        amb = LeveledAlgebra(((a1, 1), (a1, m)))
        ok &= coset_central_charge(amb, LeveledAlgebra(((a1, m + 1),))) == 1 - F(6, (m + 2) * (m + 3))
    su9 = LeveledAlgebra(((algebra_data("A8"), 2),))
    ok &= coset_central_charge(LeveledAlgebra(((e8, 2),)), su9) == F(21, 22)
    return ok, "su(2)_k, E8_1, GKO m=1..20, SU(9)_2 in E8_2"


@criterion(2, seconds=10)
def conformal_inclusion():
    rep = classify_inclusion(parse_embedding(data_path("su9_in_e8_level1.txt")))
    ok = rep.conformal and [v for _, v in rep.casimir_spectrum] == [1, 1, 1]
    for m in (1, 2, 3):
        rep = classify_inclusion(parse_embedding(data_path(f"diagonal_su2_m{m}.txt")))
        comp = [v for c, v in rep.casimir_spectrum if not c.inside]
        ok &= not rep.conformal and comp == [F(2, m + 3)] and all(v < 1 for v in comp)
    guards = 0
    for name, indices in (("su9_in_e8_level2", [F(1, 2)]), ("diagonal_su2_m2", [[2, 4]])):
        try:
            classify_inclusion(parse_embedding(data_path(f"{name}.txt")), indices)
        except TheoremViolation:
            guards += 1
    ok &= guards == 2
    return ok, f"saturation, GKO complements 2/(m+3), {guards}/2 level guards"


@criterion(3)
def statistical_dimensions():
    phi1 = [kac_dimension(9, 2 * l + 1, 1) for l in range(5)]
    phi7 = [kac_dimension(9, 2 * l + 1, 7) for l in range(5)]
    ok = _close_all(phi1, [1, 2.682507, 3.513337, 3.228707, 1.918986])
    ok &= _close_all(phi7, [3.732051, 10.011252, 13.111953, 12.049700, 7.161753])
    a1 = algebra_data("A1")
    su2 = [sector_data(a1, 16, (lam,)).d for lam in (2, 8, 6, 4)]
    ok &= _close_all(su2, [2.879385, 5.758770, 5.411474, 4.411474])
    return ok, f"tolerance {DIM_TOL}"


@criterion(4)
def mu_indices():
    a1 = algebra_data("A1")
    ok = True
    for k in range(1, 17):
        direct = math.fsum(sector_data(a1, k, lab).d ** 2 for lab in alcove_sectors(a1, k))
        ok &= math.isclose(direct, mu_index(su2_ring(k).dims.values()), rel_tol=1e-12)
    a8 = algebra_data("A8")
    mu_su9 = mu_index(sector_data(a8, 1, lab).d for lab in alcove_sectors(a8, 1))
    ok &= abs(mu_su9 - 9) < 1e-12
    ok &= index_arithmetic("mu-inclusion", {"mu_sub": 9, "index": 3}) == 1
    return ok, "su(2)_k for k <= 16, mu(SU(9)_1) = 9, mu(E8_1) = 1"


@criterion(5)
def coupling_matrices():
    first = coupling_solve(parse_branching_table(data_path("su9_in_e8_level2_table.txt")))
    ok = len(first.pairs) == 5 and _close_all(first.a_dims, [1, 2.682507, 3.513337, 3.228707, 1.918986])
    ok &= abs(first.a_index - 3) <= DIM_TOL and abs(first.c_index - (3 + math.sqrt(3))) <= DIM_TOL
    second = coupling_solve(parse_branching_table(data_path("su2su3_in_e8_level1_table.txt")))
    ok &= len(second.pairs) == 6
    ok &= abs(second.a_index - 2) <= DIM_TOL and abs(second.c_index - 3) <= DIM_TOL
    for res in (first, second):
        ok &= res.checks["permutation"] and res.checks["normal"]
    return ok, "5 and 6 coupled pairs"


@criterion(6, seconds=60)
def mode_identities():
    residuals = []
    for k in (1, 2, 16):
        residuals += [r.residual for r in sugawara_verify(k, N=4, M=2)]
    return all(r == 0 for r in residuals), f"{len(residuals)} exact residuals, k in 1, 2, 16"


@criterion(7)
def derivative_fields():
    ok = all(phi_null_report(n, n + 2).null_grades == list(range(1, n + 1)) for n in (1, 2, 3))
    ok &= all(no_set_certificate(n).kind == "null-level-2" for n in (2, 3))
    one = no_set_certificate(1)
    ok &= one.kind == "gamma-contradiction"
    ok &= (one.phi_norm, one.c_gamma_squared, one.quasi_primary_norm) == (6, 12, 0)
    return ok, "nulls at grades 1..n, certificates for n = 1, 2, 3"


@criterion(8, seconds=120)
def gko_branching():
    reports = [verify_branching(gko_claim(m), N=5) for m in (1, 2)]
    return all(r.passed for r in reports), "m = 1, 2 to grade 5"


@criterion(9)
def sharp_action():
    su9 = [0, F(9, 11), F(16, 11), F(21, 11), F(24, 11), 2, F(20, 11), F(16, 11), F(10, 11), F(13, 11)]
    su2 = [0, F(1, 9), F(28, 9), 4, F(10, 9), F(2, 3), F(5, 3), F(1, 3), F(7, 3)]
    ok9, bad9 = sharp_action_test(su9)
    ok16, bad16 = sharp_action_test(su2)
    ok = not ok9 and bad9 == [h for h in su9 if (2 * F(h)).denominator != 1]
    ok &= not ok16 and bad16 == [h for h in su2 if (2 * F(h)).denominator != 1]
    ok &= sharp_action_test([0, F(1, 2), 1]) == (True, [])
    return ok, f"{len(bad9)} and {len(bad16)} offenders"


@criterion(10)
def mobius_suite():
    taus = [x / 8 for x in range(-24, 25)]
    ts = [math.pi * (k / 40) for k in range(-39, 40)]
    worst_word = max([dilation_word(t).distance(dilation(t)) for t in taus]
                     + [rotation_word(t).distance(rotation(2 * t)) for t in ts])
    rng = random.Random(2024)
    worst_iwasawa = worst_sqrt = 0.0
    for _ in range(SAMPLES):
        g = compose(translation(rng.uniform(-3, 3)), dilation(rng.uniform(-2, 2)),
                    rotation(rng.uniform(-math.pi, math.pi)))
        p, tau, t = iwasawa_decompose(g)
        worst_iwasawa = max(worst_iwasawa, compose(translation(p), dilation(tau), rotation(t)).distance(g))
        h = sqrt_in_psl(g)
        worst_sqrt = max(worst_sqrt, (h @ h).distance(g))
    ok = worst_word <= MOBIUS_TOL and worst_iwasawa <= MOBIUS_TOL and worst_sqrt < SQRT_TOL
    return ok, f"words {worst_word:.1e}, iwasawa {worst_iwasawa:.1e}, sqrt {worst_sqrt:.1e}"


@criterion(11)
def kac_degeneracy():
    ok = True
    for m, r, s in ((1, 1, 2), (1, 2, 2), (2, 1, 2)):
        mod = virasoro_module(discrete_series(m), kac_weight(m, r, s), r * s)
        ok &= gram_determinant(mod, r * s) == 0
    for c, h in ((F(7, 3), F(2, 7)), (F(1, 3), F(5, 11)), (F(30), F(3))):
        mod = virasoro_module(c, h, 4)
        ok &= all(gram_determinant(mod, g) != 0 for g in range(5))
    return ok, "zeros at grade r*s, generic determinants nonzero to grade 4"


def evaluate(number):
    fn, seconds = CRITERIA[number]
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    if seconds is not None and elapsed > seconds:
        ok, detail = False, f"{detail}; took {elapsed:.1f}s, limit {seconds}s"
    line = f"criterion {number}: {'pass' if ok else 'fail'} ({detail}; {elapsed:.2f}s)"
    return bool(ok), line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line = evaluate(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
