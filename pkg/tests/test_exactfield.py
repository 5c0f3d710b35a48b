import random
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st
from sympy.polys.matrices import DomainMatrix

from qhodge.exactfield import (FieldSpec, LPoly, LaurentMat, ModMat, bareiss,
                               identity, inverse, kernel_basis, make_field,
                               matmul, modular_rank, qint, random_prime, rank,
                               solve, specialize, zeros)
from qhodge.exactfield.field import SpecializationError

Q, Z = sp.symbols("q z")
DOM = sp.QQ.frac_field(Q, Z)

# Laurent polynomials as {(a, b): c} with small exponents and coefficients
terms_st = st.dictionaries(
    st.tuples(st.integers(-2, 2), st.integers(-1, 1)), st.integers(-3, 3), max_size=4)


def to_sympy(terms):
    return sum((c * Q ** a * Z ** b for (a, b), c in terms.items()), sp.Integer(0))


def field_matrix(rows, f):
    M = zeros(len(rows), len(rows[0]), f)
    for i, r in enumerate(rows):
        for j, t in enumerate(r):
            M[i, j] = f.from_laurent(t)
    return M


def sympy_matrix(rows):
    return DomainMatrix([[DOM.convert(to_sympy(t)) for t in r] for r in rows], (len(rows), len(rows[0])), DOM)


def mat_st(m, n):
    return st.lists(st.lists(terms_st, min_size=n, max_size=n), min_size=m, max_size=m)


# ---------------------------------------------------------------------------
# field arithmetic


@given(terms_st, terms_st)
def test_field_ops_match_sympy(gl, a, b):
    x, y = gl.from_laurent(a), gl.from_laurent(b)
    sa, sb = to_sympy(a), to_sympy(b)
    assert sp.simplify(sp.sympify(str(gl.to_str(x * y + x - y)).replace("^", "**")) - (sa * sb + sa - sb)) == 0
    if b and not y.is_zero():
        got = sp.sympify(gl.to_str(x / y).replace("^", "**"))
        assert sp.simplify(got - sa / sb) == 0


@given(terms_st)
def test_laurent_roundtrip(gl, t):
    t = {e: c for e, c in t.items() if c}
    assert gl.from_laurent(t).laurent() == t


def test_canonical_form_is_reduced(gl):
    q, z = gl.q, gl.z
    x = (q ** 2 - 1) / (q - 1)
    assert x == q + 1
    assert gl.to_str(x) == gl.to_str(q + 1)
    assert hash(x) == hash(q + 1)


def test_parse_and_monomial(gl):
    assert gl.parse("q^2/z") == gl.q ** 2 / gl.z
    assert gl.monomial((1, -2), 3) == gl(3) * gl.q / gl.z ** 2


def test_specialize_rational_and_modular(gl):
    x = (gl.q ** 2 - 1) / (gl.q * gl.z)
    r = make_field(FieldSpec("rational", images=(("q", 2), ("z", 3))))
    assert specialize(x, r) == Fraction(1, 2)
    p = 1000003
    m = make_field(FieldSpec("numeric", prime=p, images=(("q", 2), ("z", 3))))
    assert int(specialize(x, m)) == 3 * pow(6, -1, p) % p
    bad = make_field(FieldSpec("rational", images=(("q", 1), ("z", 3))))
    with pytest.raises(SpecializationError):
        specialize(1 / (gl.q - 1), bad)


def test_fieldspec_validation():
    with pytest.raises(ValueError):
        FieldSpec("numeric", prime=10, images=(("q", 2), ("z", 3)))
    with pytest.raises(ValueError):
        FieldSpec("rational", images=(("q", 2),))
    with pytest.raises(ValueError):
        FieldSpec("bogus")


def test_sl_presentation():
    s = make_field(FieldSpec.sl(3))
    assert s.q == s.w ** 3 and s.z == s.w ** 2
    # z^N = q^2
    assert s.z ** 3 == s.q ** 2


# ---------------------------------------------------------------------------
# linear algebra against sympy's exact domain matrices


@given(mat_st(3, 4))
def test_rank_matches_sympy(gl, rows):
    M = field_matrix(rows, gl)
    assert rank(M, gl) == sympy_matrix(rows).rank()
    assert bareiss(M, gl).rank == sympy_matrix(rows).rank()


@given(mat_st(3, 4))
def test_kernel_is_kernel(gl, rows):
    M = field_matrix(rows, gl)
    K = kernel_basis(M, gl)
    assert K.shape[1] == 4 - rank(M, gl)
    assert all(x.is_zero() for x in matmul(M, K, gl).flat)


@given(mat_st(3, 3))
def test_inverse_matches_sympy(gl, rows):
    sm = sympy_matrix(rows)
    if sm.rank() < 3:
        return
    M = field_matrix(rows, gl)
    inv = inverse(M, gl)
    oracle = sm.inv().to_Matrix()
    for i in range(3):
        for j in range(3):
            got = sp.sympify(gl.to_str(inv[i, j]).replace("^", "**"))
            assert sp.simplify(got - oracle[i, j]) == 0


def test_solve_rejects_inconsistent(gl):
    A = identity(2, gl)
    A[1, 1] = gl.zero
    b = zeros(2, 1, gl)
    b[1, 0] = gl.one
    with pytest.raises(ValueError):
        solve(A, b, gl)


def test_modular_rank_certifies(gl):
    q, z = gl.q, gl.z
    M = zeros(3, 3, gl)
    M[0, 0], M[0, 1] = q, z
    M[1, 0], M[1, 1] = q * q, q * z   # row 1 = q * row 0
    M[2, 2] = q - z
    mr = modular_rank(M, gl)
    assert mr.rank == 2 == rank(M, gl)
    assert mr.certified and len(set(mr.primes)) == 3


# ---------------------------------------------------------------------------
# Laurent polynomials


@given(terms_st, terms_st)
def test_lpoly_ring_ops(a, b):
    A, B = LPoly(a, 2), LPoly(b, 2)
    lhs = to_sympy((A * B + A).terms)
    assert sp.expand(lhs - (to_sympy(a) * to_sympy(b) + to_sympy(a))) == 0


def test_lpoly_renders_descending():
    P = LPoly({(2,): 1, (-1,): -3, (0,): 5}, 1)
    assert P.to_str() == "q^2 + 5 - 3*q^-1"


@given(st.integers(-6, 6))
def test_qint_definition(n):
    t = sp.symbols("t")
    expr = to_sympy({(e[0], 0): c for e, c in qint(n).terms.items()}).subs(Q, t)
    assert sp.simplify(expr - (t ** n - t ** -n) / (t - 1 / t)) == 0


# ---------------------------------------------------------------------------
# tensor backends


def _rand_field_matrix(f, m, n, rng, zmax=0):
    """Laurent polynomials in q (and z when zmax > 0)."""
    M = zeros(m, n, f)
    for i in range(m):
        for j in range(n):
            if rng.random() < 0.5:
                M[i, j] = f.from_laurent({(rng.randint(-2, 2), rng.randint(-zmax, zmax)): rng.randint(-2, 2)})
    return M


def _dense_local(X, op, dims, positions, f):
    """Reference: apply op on the chosen slots entry by entry."""
    n = int(np.prod(dims))
    out = zeros(n, X.shape[1], f)
    for r in range(n):
        idx = np.unravel_index(r, dims)
        src = np.ravel_multi_index([idx[p] for p in positions], [dims[p] for p in positions])
        for t in range(op.shape[0]):
            c = op[t, src]
            if not c:
                continue
            tgt = list(idx)
            sub = np.unravel_index(t, [dims[p] for p in positions])
            for p, v in zip(positions, sub):
                tgt[p] = v
            row = np.ravel_multi_index(tgt, dims)
            for j in range(X.shape[1]):
                if X[r, j]:
                    out[row, j] = out[row, j] + c * X[r, j]
    return out


@pytest.mark.parametrize("positions", [(0, 1), (1, 2), (2, 0), (1,)])
def test_laurent_local_matches_dense(gl, positions):
    rng = random.Random(len(positions) * 7 + positions[0])
    dims = [2, 2, 2]
    X = _rand_field_matrix(gl, 8, 3, rng)
    size = int(np.prod([dims[p] for p in positions]))
    op = _rand_field_matrix(gl, size, size, rng)
    got = LaurentMat.from_field(X, gl).local(LaurentMat.from_field(op, gl), dims, positions).to_field()
    want = _dense_local(X, op, dims, list(positions), gl)
    assert all((a - b).is_zero() for a, b in zip(got.flat, want.flat))


@pytest.mark.parametrize("bits", [31, 61])
def test_modmat_local_matches_dense(gl, bits):
    rng = random.Random(bits)
    f = make_field(gl.random_modular_spec(rng, prime=random_prime(rng, bits)))
    dims = [3, 2, 2]
    X = _rand_field_matrix(gl, 12, 2, rng, 1)
    op = _rand_field_matrix(gl, 6, 6, rng, 1)
    Xm = np.vectorize(lambda x: specialize(x, f), otypes=[object])(X)
    Om = np.vectorize(lambda x: specialize(x, f), otypes=[object])(op)
    got = ModMat.from_field(Xm, f).local(ModMat.from_field(Om, f), dims, (0, 2)).to_field()
    want = _dense_local(Xm, Om, dims, [0, 2], f)
    assert all(int(a) == int(b) for a, b in zip(got.flat, want.flat))


def test_backend_kron_rank_and_pivots(gl):
    rng = random.Random(5)
    A = _rand_field_matrix(gl, 3, 2, rng)
    B = _rand_field_matrix(gl, 2, 2, rng)
    K = LaurentMat.from_field(A, gl).kron(LaurentMat.from_field(B, gl))
    ref = np.empty((6, 4), dtype=object)
    for i in range(3):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    ref[i * 2 + k, j * 2 + l] = A[i, j] * B[k, l]
    assert all((a - b).is_zero() for a, b in zip(K.to_field().flat, ref.flat))
    assert K.rank() == rank(ref, gl)


def test_rows_to_cols_moves_slot(gl):
    X = LaurentMat.eye(4, gl)   # rows: slots (2, 2)
    Y = X.rows_to_cols([2, 2], [1])
    assert Y.shape == (2, 8)
    # column (c, b) carries e_c restricted to second slot b
    F = Y.to_field()
    for c in range(4):
        a, b = divmod(c, 2)
        assert F[a, c * 2 + b] == gl.one
