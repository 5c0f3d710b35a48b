"""Acceptance criteria, one test each.

Every test records a single ``PASS``/``FAIL`` line (printed inline with -s
and collected into the "acceptance criteria" section of the terminal
summary) and then asserts the verdict and its time budget.
"""
import time
from math import comb

import pytest

from qhodge.charring import blocks
from qhodge.complex import WoronowiczComplex, multi_prime_exterior
from qhodge.complex.checks import (antisymmetrizer_checks, duality_check,
                                   harmonic_coinvariant_check, hodge_check,
                                   spectrum_crosscheck, structural_suite,
                                   weak_isomorphism_check)
from qhodge.exactfield import FieldSpec, make_field
from qhodge.partitions import GenPartition, GroupSpec, Window, enumerate_partitions
from qhodge.spectral import (SpectralParams, e_tau, f_lambda_mu, lim1_formula,
                             lim2_formula, limit_checks, poincare_product,
                             recursion_check, zero_scan)

SIGNS = [(t, s) for t in (1, -1) for s in (1, -1)]


def verdict(log, num, title, ok, elapsed, budget, extra=""):
    ok_time = elapsed <= budget
    tag = "PASS" if ok and ok_time else "FAIL"
    msg = f"[{tag}] criterion {num:>2}: {title} ({elapsed:.1f}s / {budget}s)"
    if extra:
        msg += f" {extra}"
    print(msg)
    log.append(msg)
    assert ok, msg
    assert ok_time, msg


@pytest.fixture(scope="module")
def sym():
    t = time.perf_counter()
    cx = WoronowiczComplex(2, make_field(FieldSpec.gl()))
    return cx, time.perf_counter() - t


@pytest.fixture(scope="module")
def n3():
    """Exterior and coinvariant dimensions at N=3 up to degree 3 over 3 primes."""
    t = time.perf_counter()
    v = multi_prime_exterior(3, 3, count=3, seed=0, coinvariant=True)
    return v, time.perf_counter() - t


def pairs(labels):
    return [(a, b) for a in labels for b in labels]


def test_c01_z1_regular(acceptance_log):
    t = time.perf_counter()
    ok = True
    for N in (2, 3):
        g = GroupSpec("glq", N)
        scan = zero_scan(SpectralParams(g, 1), Window(max_part=3))
        ok &= len(scan.records) == len(enumerate_partitions(g, Window(max_part=3))) ** 2
        ok &= scan.zeros == [(GenPartition.zero(N), GenPartition.zero(N))]
    verdict(acceptance_log, 1, "z=1 regular for GL2, GL3, parts in [-3,3]", ok, time.perf_counter() - t, 60)


def test_c02_coding_equivalence(acceptance_log):
    t = time.perf_counter()
    count, ok = 0, True
    for N, b in ((2, 2), (3, 1), (4, 1)):
        for lam, mu in pairs(enumerate_partitions(GroupSpec("glq", N), Window(max_part=b))):
            ok &= (e_tau(lam, -1) + e_tau(mu, 1) - f_lambda_mu(lam, mu)).is_zero()
            count += 1
    verdict(acceptance_log, 2, "E = F symbolically", ok and count >= 500, time.perf_counter() - t, 30,
            f"pairs={count}")


def test_c03_recursion_and_limits(acceptance_log):
    t = time.perf_counter()
    ok, count = True, 0
    for N in (1, 2, 3, 4):
        for lam in enumerate_partitions(GroupSpec("glq", N), Window(max_boxes=6)):
            ok &= recursion_check(lam, 1) and recursion_check(lam, -1)
            ok &= limit_checks(lam)
            if lam.is_nonnegative:
                ok &= lim1_formula(lam) == 2 * lim2_formula(lam)
            count += 1
    verdict(acceptance_log, 3, "recursion and limit identities, |boxes| <= 6, N <= 4", ok, time.perf_counter() - t, 30,
            f"labels={count}")


def test_c04_root_of_unity(acceptance_log):
    t = time.perf_counter()
    ok = True
    for m in (1, 2, 3):
        scan = zero_scan(SpectralParams(GroupSpec("glq", 2), ("root", m)), Window(max_part=2 * m))
        diag = [GenPartition((n, n)) for n in range(-2 * m, 2 * m + 1) if n % m == 0]
        ok &= set(scan.zeros) == set(pairs(diag)) and len(scan.zeros) == len(diag) ** 2
        ok &= scan.branches_agree
    verdict(acceptance_log, 4, "root-of-unity zero sets, N=2, m=1,2,3", ok, time.perf_counter() - t, 60)


def test_c05_bcd_zero_sets(acceptance_log):
    t = time.perf_counter()
    ok = True
    for fam, N in (("oq", 3), ("oq", 4), ("spq", 4), ("soq", 3)):
        zero, ones = GenPartition.zero(N), GenPartition((1,) * N)
        if fam == "oq":
            want = {(a, b) for a, b in pairs([zero, ones]) if (a.size - b.size) % 2 == 0}
        else:
            want = {(zero, zero)}
        for z in (1, -1):
            scan = zero_scan(SpectralParams(GroupSpec(fam, N), z), Window(max_boxes=N + 2))
            ok &= set(scan.zeros_parity) == want
    verdict(acceptance_log, 5, "B/C/D zero sets (parity-filtered)", ok, time.perf_counter() - t, 60)


def test_c06_exterior_dimensions(sym, n3, acceptance_log):
    cx, t0 = sym
    t = time.perf_counter()
    ok = all(cx.towers[tau].dims() == [1, 4, 6, 4, 1] for tau in (1, -1))
    for tau in (1, -1):
        for s in (1, -1):
            ok &= [cx.towers[tau].antisymmetrizer(k, s).rank() for k in range(5)] == [1, 4, 6, 4, 1]
    v, t3 = n3
    runs = v.detail["runs"]
    ok &= v.ok and len({r["prime"] for r in runs}) == 3
    ok &= all(v.detail["dims"][tau] == [comb(9, k) for k in range(4)] for tau in (1, -1))
    verdict(acceptance_log, 6, "exterior dimensions N=2 symbolic, N=3 over 3 primes", ok,
            time.perf_counter() - t + t0 + t3, 300)


def test_c07_antisymmetrizer_oracle(sym, acceptance_log):
    cx, t0 = sym
    t = time.perf_counter()
    v = antisymmetrizer_checks(cx, 4)
    verdict(acceptance_log, 7, "recursive A_k equals permutation sum, k <= 4", v.ok, time.perf_counter() - t + t0, 120)


def test_c08_structural_identities(sym, acceptance_log):
    cx, t0 = sym
    t = time.perf_counter()
    res = structural_suite(cx, kmax_ctr=2)
    names = {v.name for v in res}
    ok = all(v.ok for v in res)
    ok &= {"hecke", "braid", "metric", "differential", "contraction", "laplace-alternative"} <= names
    f = cx.field
    ok &= cx.s == f.q + 1 / f.q
    bad = [v.name for v in res if not v.ok]
    verdict(acceptance_log, 8, "structural identities at N=2", ok, time.perf_counter() - t + t0, 300,
            f"failed={bad}" if bad else "")


def test_c09_hodge(sym, acceptance_log):
    cx, t0 = sym
    t = time.perf_counter()
    table = {}
    for tau, s in SIGNS:
        recs = [hodge_check(cx, k, tau, s) for k in range(5)]
        table[(tau, s)] = ([r.dim for r in recs], [r.rank_d_prev for r in recs],
                           [r.rank_del_next for r in recs], [r.harmonic for r in recs],
                           [r.hodge_ok for r in recs])
    want = ([1, 4, 6, 4, 1], [0, 0, 3, 3, 0], [0, 3, 3, 0, 0], [1, 1, 0, 1, 1], [True] * 5)
    ok = all(v == want for v in table.values())
    verdict(acceptance_log, 9, "Hodge decomposition N=2, degrees 0-4", ok, time.perf_counter() - t + t0, 300)


def test_c10_harmonic_coinvariant(sym, n3, acceptance_log):
    cx, t0 = sym
    t = time.perf_counter()
    ok = True
    p2 = poincare_product(2)
    for tau, s in SIGNS:
        for k in range(5):
            v = harmonic_coinvariant_check(cx, k, tau, s)
            ok &= v.ok and v.detail["dim_coinvariant"] == p2[k]
    v, t3 = n3
    p3 = poincare_product(3)
    chars = [blocks(3, k).trivial_multiplicity for k in range(4)]
    ok &= chars == p3[:4]
    ok &= all(v.detail["coinvariant"][tau] == chars for tau in (1, -1))
    verdict(acceptance_log, 10, "harmonic = coinvariant, dims match characters and product", ok,
            time.perf_counter() - t + t0 + t3, 600, f"N=3 coinvariant={chars}")


def test_c11_duality(sym, acceptance_log):
    cx, t0 = sym
    t = time.perf_counter()
    ok = all(duality_check(cx, k, tau, s).ok for k in range(4) for tau, s in SIGNS)
    verdict(acceptance_log, 11, "d and codifferential adjoint, full-rank pairings", ok, time.perf_counter() - t + t0, 120)


def test_c12_spectrum(sym, acceptance_log):
    cx, t0 = sym
    t = time.perf_counter()
    ok = all(spectrum_crosscheck(cx, k, tau, s).ok for k in range(5) for tau, s in SIGNS)
    f = cx.field
    q = f.q
    want = -(q - 1 / q) ** 2 * (q + 1 / q)
    for tau, s in SIGNS:
        vals = {e for _, e, _ in spectrum_crosscheck(cx, 1, tau, s).eigenvalues if e != f.zero}
        ok &= vals == {want}
    verdict(acceptance_log, 12, "annihilating polynomial and degree-one eigenvalue", ok, time.perf_counter() - t + t0, 120)


def test_c13_weak_isomorphism(sym, acceptance_log):
    cx, t0 = sym
    t = time.perf_counter()
    v = weak_isomorphism_check(cx)
    verdict(acceptance_log, 13, "Phi intertwines the two braidings", v.ok and v.detail["intertwines"],
            time.perf_counter() - t + t0, 60)


def test_c14_excluded(acceptance_log):
    msg = ("[EXCLUDED] criterion 14: B/C/D coinvariant truncation and the full "
           "infinite-dimensional complex are outside the desk-scale scope")
    print(msg)
    acceptance_log.append(msg)
    pytest.skip("excluded from the reproducible scope")
