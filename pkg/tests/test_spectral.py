from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from qhodge.exactfield import LPoly
from qhodge.partitions import GenPartition, GroupSpec, Window, enumerate_partitions
from qhodge.spectral import (SpectralParams, WrongFamilyError, cohomology_prediction,
                             determinant_data, e_bcd, e_tau, eigen_a, f_lambda_mu,
                             lim1_formula, lim2_formula, limit_checks, limit_values,
                             poincare_product, recursion_check, regularity_value,
                             zero_scan)

t, z = sp.symbols("t z")


@st.composite
def labels(draw, N=None, lo=-3, hi=3):
    N = N or draw(st.integers(1, 4))
    parts = sorted(draw(st.lists(st.integers(lo, hi), min_size=N, max_size=N)), reverse=True)
    return GenPartition(tuple(parts))


# --- an independent sympy coding of the eigenvalue formula ------------------


def sym_boxes(parts):
    for i, l in enumerate(parts, start=1):
        if l > 0:
            for j in range(1, l + 1):
                yield j - i, 1
        for j in range(l + 1, 1):
            yield j - i, -1


def sym_e(parts, tau, N):
    qn = sum(t ** (N - 1 - 2 * j) for j in range(N))
    s = sum((sg * t ** (tau * (N + 2 * c)) for c, sg in sym_boxes(parts)), sp.Integer(0))
    return z ** (-tau * sum(parts)) * (qn + tau * (t - 1 / t) * s) - qn


def to_sym(P: LPoly):
    if P.nvars == 2:
        return sum((c * t ** a * z ** b for (a, b), c in P.terms.items()), sp.Integer(0))
    return sum((c * t ** a for (a,), c in P.terms.items()), sp.Integer(0))


@given(labels(), st.sampled_from([1, -1]))
def test_e_tau_matches_sympy(lam, tau):
    assert sp.simplify(to_sym(e_tau(lam, tau)) - sym_e(lam.parts, tau, lam.N)) == 0


def test_trivial_label_has_zero_eigenvalue():
    for N in (1, 2, 3):
        for tau in (1, -1):
            assert e_tau(GenPartition.zero(N), tau).is_zero()


def test_adjoint_eigenvalue_value():
    # (q - q^-1)^2 (q + q^-1) for the adjoint label at N=2, both tau
    lam = GenPartition((1, -1))
    q = sp.symbols("q")
    want = sp.expand((q - 1 / q) ** 2 * (q + 1 / q))
    for tau in (1, -1):
        got = eigen_a(lam, tau, SpectralParams(GroupSpec("glq", 2), "symbolic", tau))
        assert sp.expand(to_sym(got).subs(t, q) - want) == 0


@st.composite
def label_pairs(draw):
    N = draw(st.integers(1, 4))
    return draw(labels(N=N)), draw(labels(N=N))


@given(label_pairs())
def test_coding_equivalence_random(pair):
    lam, mu = pair
    E = e_tau(lam, -1) + e_tau(mu, 1)
    assert (E - f_lambda_mu(lam, mu)).is_zero()


@given(labels(), st.sampled_from([1, -1]))
def test_recursion(lam, tau):
    assert recursion_check(lam, tau)


@given(labels(N=3, lo=-2, hi=2))
def test_limits_against_sympy(lam):
    # limit of (t - 1/t)^-2 e^tau(t, t^(2/N)) at t -> 1 by l'Hopital twice
    # in s = t^(1/N): numerator and denominator vanish to second order
    N = lam.N
    s = sp.symbols("s", positive=True)
    ep, em = limit_values(lam)
    den = (s ** N - s ** -N) ** 2
    for tau, got in ((1, ep), (-1, em)):
        num = sym_e(lam.parts, tau, N).subs({t: s ** N, z: s ** 2})
        assert num.subs(s, 1) == 0 and sp.diff(num, s).subs(s, 1) == 0
        lim = sp.diff(num, s, 2).subs(s, 1) / sp.diff(den, s, 2).subs(s, 1)
        assert lim == sp.Rational(got.numerator, got.denominator)
    assert limit_checks(lam)


@given(labels(lo=0))
def test_lim1_is_twice_lim2(lam):
    assert lim1_formula(lam) == 2 * lim2_formula(lam)


def test_lim2_is_positive_off_trivial():
    for lam in enumerate_partitions(GroupSpec("glq", 3), Window(max_part=2)):
        if lam.is_nonnegative and lam.parts[-1] == 0:
            v = lim2_formula(lam)
            assert (v > 0) == (lam != GenPartition.zero(3))


# --- specialisations ------------------------------------------------------------


def test_rational_z_specialisation():
    g = GroupSpec("glq", 2)
    lam = GenPartition((1, 0))
    P = eigen_a(lam, 1, SpectralParams(g, Fraction(3)))
    sym = sym_e(lam.parts, 1, 2).subs(z, 3)
    assert sp.simplify(to_sym(P) - sym) == 0


def test_sl_specialisation_uses_w():
    # q = w^N, z = w^2 in the SL presentation
    g = GroupSpec("slq", 3)
    lam = GenPartition((1, 0, 0))
    P = eigen_a(lam, 1, SpectralParams(g))
    w = sp.symbols("w")
    sym = sym_e(lam.parts, 1, 3).subs({t: w ** 3, z: w ** 2})
    assert sp.simplify(to_sym(P).subs(t, w) - sym) == 0


def test_bcd_requires_sign_z():
    with pytest.raises(ValueError):
        SpectralParams(GroupSpec("oq", 3), "symbolic")
    with pytest.raises(WrongFamilyError):
        determinant_data(SpectralParams(GroupSpec("spq", 4), 1))


def test_bcd_trivial_is_zero():
    assert e_bcd(GenPartition.zero(3), 1, 1).is_zero()


def test_regularity_value_consistency():
    g = GroupSpec("glq", 3)
    p = SpectralParams(g)
    r = regularity_value(GenPartition((1, 0, 0)), GenPartition((0, 0, -1)), p)
    assert not r.is_zero and r.F is not None


# --- zero scans -------------------------------------------------------------------


def test_generic_z_is_regular_small_window():
    scan = zero_scan(SpectralParams(GroupSpec("glq", 2)), Window(max_part=2))
    assert scan.zeros == [(GenPartition.zero(2), GenPartition.zero(2))]


def test_root_of_unity_branches_agree():
    scan = zero_scan(SpectralParams(GroupSpec("glq", 2), ("root", 2)), Window(max_part=2))
    assert scan.branches_agree
    want = {(GenPartition((a, a)), GenPartition((b, b))) for a in (-2, 0, 2) for b in (-2, 0, 2)}
    assert set(scan.zeros) == want


def test_determinant_closed_only_at_root():
    g = GroupSpec("glq", 2)
    assert not determinant_data(SpectralParams(g)).closed
    assert determinant_data(SpectralParams(g, ("root", 1))).closed
    assert determinant_data(SpectralParams(GroupSpec("slq", 2))).closed


@pytest.mark.parametrize("N,coeffs", [(1, [1, 1]), (2, [1, 1, 0, 1, 1]),
                                       (3, [1, 1, 0, 1, 1, 1, 1, 0, 1, 1])])
def test_poincare_product(N, coeffs):
    # expanded by hand from prod (1 + t^(2i-1))
    assert poincare_product(N) == coeffs


def test_cohomology_prediction_notes():
    pr = cohomology_prediction(SpectralParams(GroupSpec("glq", 2), ("root", 3)))
    assert pr.dims == [1, 1, 0, 1, 1]
    assert "D^3" in pr.note
