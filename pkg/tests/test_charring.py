import itertools
from math import comb

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from qhodge.charring import (CorepDecomp, NotACharacterError, SymLaurent, ad_character,
                             bialternant_multiplicity, blocks, exterior_power,
                             schur_expand, schur_polynomial, weyl_dimension)
from qhodge.partitions import GenPartition
from qhodge.spectral import poincare_product


def weights(chi):
    out = []
    for e, c in chi.terms.items():
        assert c > 0
        out.extend([e] * c)
    return out


def brute_exterior(chi, k):
    """e_k of the weight multiset, by listing k-subsets."""
    terms = {}
    for sub in itertools.combinations(range(len(weights(chi))), k):
        w = weights(chi)
        e = tuple(sum(w[i][a] for i in sub) for a in range(chi.N))
        terms[e] = terms.get(e, 0) + 1
    return SymLaurent(terms, chi.N)


@pytest.mark.parametrize("N,k", [(2, k) for k in range(5)] + [(3, k) for k in range(4)])
def test_exterior_power_matches_subsets(N, k):
    assert exterior_power(ad_character(N), k) == brute_exterior(ad_character(N), k)


def sympy_schur(parts):
    N = len(parts)
    xs = sp.symbols(f"x0:{N}")
    top = sp.Matrix(N, N, lambda i, j: xs[i] ** (parts[j] + N - 1 - j))
    bot = sp.Matrix(N, N, lambda i, j: xs[i] ** (N - 1 - j))
    return sp.Poly(sp.cancel(top.det() / bot.det()), *xs), xs


@pytest.mark.parametrize("parts", [(0, 0), (1, 0), (2, 1), (1, 1, 0), (2, 1, 0), (3, 1, 1), (2, 2, 0)])
def test_schur_matches_bialternant(parts):
    P, xs = sympy_schur(parts)
    got = schur_polynomial(GenPartition(parts))
    assert got.terms == {tuple(e): int(c) for e, c in P.terms()}


@st.composite
def small_labels(draw):
    N = draw(st.integers(1, 3))
    parts = sorted(draw(st.lists(st.integers(-2, 2), min_size=N, max_size=N)), reverse=True)
    return GenPartition(tuple(parts))


@given(small_labels())
def test_weyl_dimension_counts_monomials(lam):
    s = schur_polynomial(lam)
    assert s.dimension() == weyl_dimension(lam)
    assert s.is_symmetric()


@given(small_labels(), small_labels())
def test_expand_product_roundtrip(a, b):
    if a.N != b.N:
        return
    chi = schur_polynomial(a) * schur_polynomial(b)
    dec = schur_expand(chi)
    back = SymLaurent({}, a.N)
    for lam, m in dec.parts:
        back = back + schur_polynomial(lam).scale(m)
    assert back == chi
    for lam, m in dec.parts:
        assert bialternant_multiplicity(chi, lam) == m


def test_expand_rejects_non_characters():
    with pytest.raises(NotACharacterError):
        schur_expand(SymLaurent({(1, 0): 1}, 2))


def test_decomp_validation():
    with pytest.raises(ValueError):
        CorepDecomp([(GenPartition((0, 0)), 0)])


def test_adjoint_decomposition():
    dec = schur_expand(ad_character(3))
    assert dec.as_dict() == {GenPartition((0, 0, 0)): 1, GenPartition((1, 0, -1)): 1}


@pytest.mark.parametrize("N", [1, 2, 3])
def test_blocks_agree_with_product(N):
    prod = poincare_product(N)
    for k in range(N * N + 1):
        b = blocks(N, k)
        assert b.ok
        assert b.dimension == comb(N * N, k)
        assert b.trivial_multiplicity == (prod[k] if k < len(prod) else 0)


def test_adams_and_shift():
    chi = ad_character(2)
    assert chi.adams(2).terms == {(2, -2): 1, (-2, 2): 1, (0, 0): 2}
    assert SymLaurent.one(2).shift(1).terms == {(1, 1): 1}
