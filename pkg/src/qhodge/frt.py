"""Type-A R-matrix data and the right adjoint action on coinvariant 1-forms.

Indices are 0-based internally; a pair (i, j) is flattened as i*N + j.
Matrices of right actions follow the "source row" convention: F(a)[s, t] is
the coefficient of basis vector t in (basis vector s) acting by a, so that
F(ab) = F(a) F(b).

Calculus signs are +1 / -1 (Gamma_+ and Gamma_-).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exactfield import Field, identity, inverse, matmul, zeros

__all__ = [
    "build_rhat", "d_diag", "s_squared", "frak_s", "frak_r", "AdjointAction",
    "adjoint_on_generators", "adjoint_on_word", "functional_matrices",
    "functional_eval", "corep_entry", "braiding_matrix", "omega0",
    "metric_matrix", "weak_isomorphism", "kron", "braid_lift", "GeneratorWord",
]


def kron(a, b, field):
    m1, n1 = a.shape
    m2, n2 = b.shape
    out = zeros(m1 * m2, n1 * n2, field)
    for i in range(m1):
        for j in range(n1):
            x = a[i, j]
            if not x:
                continue
            for k in range(m2):
                for l in range(n2):
                    y = b[k, l]
                    if y:
                        out[i * m2 + k, j * n2 + l] = x * y
    return out


def braid_lift(op, dim, pos, nslots, field):
    """op on slots (pos, pos+1) of a tensor with ``nslots`` slots of size dim."""
    left = identity(dim ** pos, field)
    right = identity(dim ** (nslots - pos - 2), field)
    return kron(kron(left, op, field), right, field)


@lru_cache(maxsize=None)
def _rhat(N, field):
    q = field.q
    R = zeros(N * N, N * N, field)
    qq = q - field.one / q
    for i in range(N):
        for j in range(N):
            # q^{delta_ij} delta_il delta_jk
            R[i * N + j, j * N + i] = q if i == j else field.one
            if i < j:
                R[i * N + j, i * N + j] = R[i * N + j, i * N + j] + qq
    return R, inverse(R, field)


def build_rhat(N: int, field: Field):
    """(R, R^-1) as N^2 x N^2 matrices, R[(i,j),(k,l)] = Rhat^{ij}_{kl}."""
    return _rhat(N, field)


def d_diag(N: int, field: Field):
    """d_i = q^(N+1-2i) for i = 1..N (returned 0-based)."""
    return [field.q ** (N - 1 - 2 * i) for i in range(N)]


def s_squared(N: int, field: Field):
    """c[i][j] with S^2(u^i_j) = c[i][j] u^i_j; here c = d_j / d_i."""
    d = d_diag(N, field)
    return [[d[j] / d[i] for j in range(N)] for i in range(N)]


def frak_s(N, field):
    """s = tr D = [N]_q."""
    s = field.zero
    for x in d_diag(N, field):
        s = s + x
    return s


def frak_r(N, field):
    return field.q ** N


# ---------------------------------------------------------------------------
# words in generators


@dataclass(frozen=True)
class GeneratorWord:
    """A product of letters ("u", i, j) or ("Su", i, j), 0-based indices."""
    letters: tuple = ()

    @property
    def balanced(self):
        nu = sum(1 for l in self.letters if l[0] == "u")
        return 2 * nu == len(self.letters)

    def __mul__(self, other):
        return GeneratorWord(self.letters + other.letters)


@dataclass
class AdjointAction:
    tau: int
    N: int
    field: Field
    Tu: list   # Tu[m][n] = F(u^m_n)
    TSu: list  # TSu[m][n] = F(S u^m_n)


def _block_inverse(blocks, N, field):
    n = blocks[0][0].shape[0]
    U = zeros(N * n, N * n, field)
    for m in range(N):
        for k in range(N):
            U[m * n:(m + 1) * n, k * n:(k + 1) * n] = blocks[m][k]
    V = inverse(U, field)
    return [[V[k * n:(k + 1) * n, l * n:(l + 1) * n].copy() for l in range(N)] for k in range(N)]


@lru_cache(maxsize=None)
def adjoint_on_generators(tau: int, N: int, field: Field) -> AdjointAction:
    """Matrices of the right adjoint action of u^m_n and S u^m_n on Gamma_tau."""
    R, Ri = build_rhat(N, field)
    d = d_diag(N, field)
    z = field.z
    n = N * N
    Tu = [[None] * N for _ in range(N)]
    for m in range(N):
        for nn in range(N):
            M = zeros(n, n, field)
            for i in range(N):
                for j in range(N):
                    for k in range(N):
                        for l in range(N):
                            s = field.zero
                            if tau == 1:
                                for v in range(N):
                                    a = R[m * N + k, i * N + v]
                                    if a:
                                        b = R[j * N + v, nn * N + l]
                                        if b:
                                            s = s + a * b
                                if s:
                                    s = s / z
                            else:
                                for v in range(N):
                                    a = Ri[m * N + k, i * N + v]
                                    if a:
                                        b = Ri[j * N + v, nn * N + l]
                                        if b:
                                            s = s + a * b
                                if s:
                                    s = s * z * d[i] / d[k]
                            M[i * N + j, k * N + l] = s
            Tu[m][nn] = M
    TSu = _block_inverse(Tu, N, field)
    return AdjointAction(tau, N, field, Tu, TSu)


def adjoint_on_word(action: AdjointAction, word: GeneratorWord):
    f = action.field
    out = identity(action.N ** 2, f)
    for kind, i, j in word.letters:
        M = action.Tu[i][j] if kind == "u" else action.TSu[i][j]
        out = matmul(out, M, f)
    return out


@lru_cache(maxsize=None)
def functional_matrices(sign: int, N: int, field: Field):
    """(L(u), L(Su)) for l^+ (sign=+1) or l^- (sign=-1) at unit scalars.

    L(u)[a][b] is the N x N matrix [l^j_k(u^a_b)]_{j,k}.
    """
    R, Ri = build_rhat(N, field)
    Lu = [[None] * N for _ in range(N)]
    for a in range(N):
        for b in range(N):
            M = zeros(N, N, field)
            for j in range(N):
                for k in range(N):
                    if sign == 1:
                        # l^+{}^j_k(u^a_b) = Rhat^{ja}_{bk}
                        M[j, k] = R[j * N + a, b * N + k]
                    else:
                        # l^-{}^j_k(u^a_b) = Rhat^-1{}^{ja}_{bk}
                        M[j, k] = Ri[j * N + a, b * N + k]
            Lu[a][b] = M
    LSu = _block_inverse(Lu, N, field)
    return Lu, LSu


def functional_eval(sign: int, word: GeneratorWord, N: int, field: Field):
    if not word.balanced:
        raise ValueError("functional evaluation needs a balanced word")
    Lu, LSu = functional_matrices(sign, N, field)
    out = identity(N, field)
    for kind, i, j in word.letters:
        out = matmul(out, Lu[i][j] if kind == "u" else LSu[i][j], field)
    return out


def corep_entry(tau: int, K, J, N: int, field: Field):
    """v^K_J for the coaction on the coinvariant basis of Gamma_tau.

    Returns (scalar, word) with v^{kl}_{ij} = scalar * u^k_i S(u^j_l).
    """
    k, l = K
    i, j = J
    c = field.one
    if tau == -1:
        d = d_diag(N, field)
        c = d[i] / d[k]
    return c, GeneratorWord((("u", k, i), ("Su", j, l)))


@lru_cache(maxsize=None)
def braiding_matrix(X: int, Y: int, N: int, field: Field):
    """sigma: Gamma_X (x) Gamma_Y -> Gamma_Y (x) Gamma_X as an n^2 x n^2 matrix.

    sigma(w_a (x) w_J) = sum_K w_K (x) (w_a . v^K_J), column-vector convention
    (entry [out, in]).
    """
    act = adjoint_on_generators(X, N, field)
    n = N * N
    S = zeros(n * n, n * n, field)
    for K in range(n):
        for J in range(n):
            c, w = corep_entry(Y, divmod(K, N), divmod(J, N), N, field)
            M = adjoint_on_word(act, w)
            for a in range(n):
                for b in range(n):
                    x = M[a, b]
                    if x:
                        S[K * n + b, a * n + J] = c * x
    return S


def omega0(tau: int, N: int, field: Field):
    """Coefficients of the bi-invariant 1-form on the basis w_(ij)."""
    v = [field.zero] * (N * N)
    d = d_diag(N, field)
    for i in range(N):
        v[i * N + i] = field.one if tau == 1 else field.one / d[i]
    return v


def metric_matrix(X: int, N: int, field: Field):
    """G[a, b] = g(w^X_a, w^{-X}_b)."""
    d = d_diag(N, field)
    n = N * N
    G = zeros(n, n, field)
    for i in range(N):
        for j in range(N):
            # nonzero only for (k, l) = (j, i)
            G[i * N + j, j * N + i] = (d[j] / d[i]) if X == 1 else field.one
    return G


def weak_isomorphism(N: int, field: Field):
    """Phi: Gamma_+ -> Gamma_- on coinvariant bases, [out, in] convention.

    Phi(w+_{bc}) = sum r Rhat^-1{}^{jc}_{ib} d_b^-1 d_i w-_{i'j'}, i' = N-1-i.
    """
    R, Ri = build_rhat(N, field)
    d = d_diag(N, field)
    r = frak_r(N, field)
    n = N * N
    P = zeros(n, n, field)
    for i in range(N):
        for j in range(N):
            out = (N - 1 - i) * N + (N - 1 - j)
            for b in range(N):
                for c in range(N):
                    x = Ri[j * N + c, i * N + b]
                    if x:
                        P[out, b * N + c] = r * x * d[i] / d[b]
    return P
