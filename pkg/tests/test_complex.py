import itertools
from math import comb

import pytest
from hypothesis import given, strategies as st

from qhodge.charring import blocks
from qhodge.complex import (ComplexError, ResourceCapError, WoronowiczComplex,
                            modular_fields, multi_prime_exterior, perm_sign, reduced_word, shuffles)
from qhodge.complex.checks import (antisymmetrizer_checks, differential_checks, duality_check,
                                   harmonic_coinvariant_check, hodge_check, quotient_soundness,
                                   spectrum_crosscheck, structural_suite, wedge_checks,
                                   wedge_w0_w0)
from qhodge.complex.coinvariant import coinvariant_subspace
from qhodge.exactfield import is_zero_matrix, rank
from qhodge.spectral import poincare_product

SIGNS = [(t, s) for t in (1, -1) for s in (1, -1)]


# ---------------------------------------------------------------------------
# permutations


def inversions(p):
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


@given(st.permutations(list(range(6))))
def test_reduced_word_sorts_and_is_reduced(p):
    w = reduced_word(p)
    assert len(w) == inversions(p)
    x = list(p)
    for i in w:
        x[i - 1], x[i] = x[i], x[i - 1]
    assert x == sorted(p)


@given(st.permutations(list(range(5))))
def test_perm_sign_parity(p):
    assert perm_sign(p) == (-1) ** inversions(p)


@pytest.mark.parametrize("k,l", [(0, 3), (1, 1), (2, 2), (1, 3), (3, 2)])
def test_shuffles(k, l):
    sh = shuffles(k, l)
    assert len(sh) == len(set(sh)) == comb(k + l, k)
    for s in sh:
        assert list(s[:k]) == sorted(s[:k]) and list(s[k:]) == sorted(s[k:])


# ---------------------------------------------------------------------------
# N = 2 over Q(q, z)


def test_tower_dims(cx2):
    for tau in (1, -1):
        assert cx2.towers[tau].dims() == [1, 4, 6, 4, 1]
    assert cx2.dim(5) == 0 and cx2.dim(-1) == 0


def test_antisymmetrizer_oracle(cx2):
    v = antisymmetrizer_checks(cx2, 4)
    assert v.ok, v.detail
    assert all(r == [1, 4, 6, 4, 1] for r in v.detail["ranks"].values())


def test_quotient_soundness(cx2):
    assert quotient_soundness(cx2, 2).ok


def test_wedge_identities(cx2):
    v = wedge_checks(cx2)
    assert v.ok, v.detail


@pytest.mark.parametrize("tau", [1, -1])
def test_omega0_squared_vanishes(cx2, tau):
    # the quadratic exterior relations kill w0 (x) w0
    assert is_zero_matrix(wedge_w0_w0(cx2, tau))


def test_differential(cx2):
    v = differential_checks(cx2)
    assert v.ok, v.detail
    assert set(v.detail["del_squared_zero"]) == {"+1+", "+1-", "-1+", "-1-"}


def test_structural_suite(cx2):
    bad = [v.name for v in structural_suite(cx2) if not v.ok]
    assert not bad


def test_d_ranks(cx2):
    for tau in (1, -1):
        assert [rank(cx2.d(k, tau), cx2.field) for k in range(4)] == [0, 3, 3, 0]


@pytest.mark.parametrize("k", range(5))
def test_hodge_table(cx2, k):
    harm = poincare_product(2)
    for tau, s in SIGNS:
        h = hodge_check(cx2, k, tau, s)
        assert h.hodge_ok
        assert h.harmonic == harm[k]
        assert h.rank_d_prev == (0, 0, 3, 3, 0)[k]
        assert h.rank_del_next == (0, 3, 3, 0, 0)[k]


@pytest.mark.parametrize("k", range(5))
def test_harmonic_equals_coinvariant(cx2, k):
    for tau, s in SIGNS:
        v = harmonic_coinvariant_check(cx2, k, tau, s)
        assert v.ok, v.detail
        assert v.detail["dim_coinvariant"] == blocks(2, k).trivial_multiplicity


@pytest.mark.parametrize("k", range(4))
def test_duality(cx2, k):
    for tau, s in SIGNS:
        v = duality_check(cx2, k, tau, s)
        assert v.ok, v.detail


@pytest.mark.parametrize("k", range(5))
def test_laplacian_spectrum(cx2, k):
    for tau, s in SIGNS:
        r = spectrum_crosscheck(cx2, k, tau, s)
        assert r.ok
        assert sum(m for _, _, m in r.eigenvalues) == comb(4, k)


def test_degree_one_eigenvalue(cx2):
    # on 1-forms the adjoint block carries -(q - 1/q)^2 (q + 1/q)
    f = cx2.field
    q = f.q
    want = -(q - 1 / q) ** 2 * (q + 1 / q)
    r = spectrum_crosscheck(cx2, 1, 1, 1)
    vals = {e: m for _, e, m in r.eigenvalues}
    assert vals == {f.zero: 1, want: 3}


# ---------------------------------------------------------------------------
# truncation and modular runs


def test_cap_raises_without_truncate(gl):
    with pytest.raises(ResourceCapError):
        WoronowiczComplex(2, gl, cap=100)


def test_cap_truncates(gl):
    cx = WoronowiczComplex(2, gl, cap=100, truncate=True)
    assert cx.capped is not None
    assert cx.top < 4
    assert cx.towers[1].top == cx.towers[-1].top
    with pytest.raises(ComplexError):
        cx.laplacian(cx.top)
    cx.laplacian(cx.top - 1)
    assert differential_checks(cx).ok


def test_explicit_top(gl):
    cx = WoronowiczComplex(2, gl, top=2)
    assert cx.towers[1].dims() == [1, 4, 6]


def test_multi_prime_n2():
    v = multi_prime_exterior(2, 4, count=2, coinvariant=True)
    assert v.ok
    assert len({r["prime"] for r in v.detail["runs"]}) == 2
    for tau in (1, -1):
        assert v.detail["dims"][tau] == [1, 4, 6, 4, 1]
        assert v.detail["coinvariant"][tau] == [1, 1, 0, 1, 1]


def test_multi_prime_n3_low_degrees():
    v = multi_prime_exterior(3, 2, count=2)
    assert v.ok
    assert v.detail["dims"][1] == [comb(9, k) for k in range(3)]


def test_coinvariant_rank_is_scalar_one(cx2):
    C = coinvariant_subspace(cx2, 0, 1)
    assert C.shape == (1, 1)


@pytest.mark.parametrize("f", modular_fields(2, seed=3), ids=lambda f: f"p{f.p}")
def test_n3_modular_spectrum_and_hodge(f):
    cx = WoronowiczComplex(3, f, 3)
    for k in range(3):
        for tau, s in SIGNS:
            assert spectrum_crosscheck(cx, k, tau, s).ok
            assert hodge_check(cx, k, tau, s).hodge_ok
