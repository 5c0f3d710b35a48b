"""Bi-invariant forms as joint fixed points of the generator functionals.

A left-coinvariant k-form y is also right-coinvariant iff every functional
l^{+-}{}^i_j acts on it like on the unit, i.e.
(L^{(0,1)} ... L^{(0,k)} - I)(e_j (x) y) = 0 for all j, where L^{(0,p)}
applies the functional matrix to the auxiliary slot 0 and tensor slot p.
"""
from __future__ import annotations

from ..exactfield import kernel_basis, zeros
from ..frt import corep_entry, functional_eval

__all__ = ["functional_operator", "coinvariant_subspace"]


def functional_operator(sign, tau, N, field):
    """(N n) x (N n) matrix of l^sign on C^N (x) Gamma_tau, index (i, K)."""
    n = N * N
    M = zeros(N * n, N * n, field)
    for K in range(n):
        for J in range(n):
            c, word = corep_entry(tau, divmod(K, N), divmod(J, N), N, field)
            F = functional_eval(sign, word, N, field)
            for i in range(N):
                for j in range(N):
                    x = F[i, j]
                    if x:
                        M[i * n + K, j * n + J] = c * x
    return M


def coinvariant_subspace(cx, k, tau=1):
    """Columns (level-k coordinates) spanning the bi-invariant k-forms."""
    T = cx.towers[tau]
    f, N, n = cx.field, cx.N, cx.n
    r = cx.dim(k, tau)
    if r == 0:
        return zeros(0, 0, f)
    if k == 0:
        out = zeros(1, 1, f)
        out[0, 0] = f.one
        return out
    Bk = T.backend
    X = Bk.eye(N, f).kron(T.levels[k].B[1])
    blocks = None
    for sign in (1, -1):
        op = Bk.from_field(functional_operator(sign, tau, N, f), f)
        Z = X
        for p in range(k, 0, -1):
            Z = Z.local(op, [N] + [n] * k, (0, p))
        Z = Z - X
        for j in range(N):
            part = Z.take_cols(range(j * r, (j + 1) * r))
            blocks = part if blocks is None else blocks.vstack(part)
    # only the independent rows matter
    rows = blocks.T.pivots()
    M = blocks.take_rows(rows).to_field() if rows else zeros(0, r, f)
    return kernel_basis(M, f)
