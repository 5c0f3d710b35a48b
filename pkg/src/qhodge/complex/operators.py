"""Wedge, contraction, d, codifferentials and Laplacians on coinvariant forms.

All operators are field matrices acting on level coordinates: column j of an
operator from level k is the image of the j-th basis class of level k.
Binary operations use column index i * dim(second) + j.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..exactfield import Field, identity, matmul, zeros
from ..frt import frak_s, metric_matrix, omega0
from .tower import ComplexError, Tower

__all__ = ["WoronowiczComplex", "build_complex"]


class WoronowiczComplex:
    """Both towers (Gamma_+ and Gamma_-) with the operators between them."""

    def __init__(self, N: int, field: Field, top: int | None = None, cap=None,
                 truncate=False):
        self.N = N
        self.n = N * N
        self.field = field
        top = self.n if top is None else min(top, self.n)
        kw = {"truncate": truncate}
        if cap is not None:
            kw["cap"] = cap
        self.towers = {t: Tower(t, N, field, top, **kw) for t in (1, -1)}
        self.capped = self.towers[1].capped or self.towers[-1].capped
        low = min(T.top for T in self.towers.values())
        for T in self.towers.values():
            del T.levels[low + 1:]
        self.G = {t: metric_matrix(t, N, field) for t in (1, -1)}
        self.w0 = {t: omega0(t, N, field) for t in (1, -1)}
        self.s = frak_s(N, field)
        self._cache = {}

    # -- helpers -----------------------------------------------------------------
    @property
    def top(self):
        return self.towers[1].top

    def dim(self, k, tau=1):
        T = self.towers[tau]
        return T.levels[k].dim if 0 <= k <= T.top else 0

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def _bk(self, M):
        return self.towers[1].backend.from_field(M, self.field)

    def _row_op(self, vec):
        f = self.field
        M = zeros(1, len(vec), f)
        for a, x in enumerate(vec):
            M[0, a] = x
        return self._bk(M)

    def _metric_op(self, tau, l, first_slots_reversed):
        """n^l x n^l operator pairing l slots of Gamma_tau with e_J of Gamma_-tau.

        first_slots_reversed=False: rows J, columns I'' (the last l slots of
        the first argument), weight prod_p G[I''_{l-1-p}, J_p].
        True: rows I (the first argument), columns J' (first l slots of the
        second argument), weight prod_p G[I_{l-1-p}, J'_p].
        """
        f, n = self.field, self.n
        G = self.G[tau]
        size = n ** l
        M = zeros(size, size, f)
        for a in range(size):
            ta = np.unravel_index(a, [n] * l) if l else ()
            for b in range(size):
                tb = np.unravel_index(b, [n] * l) if l else ()
                if first_slots_reversed:
                    I, J = ta, tb
                else:
                    J, I = ta, tb
                x = f.one
                for p in range(l):
                    x = x * G[I[l - 1 - p], J[p]]
                    if not x:
                        break
                if x:
                    M[a, b] = x
        return self._bk(M)

    # -- wedge ---------------------------------------------------------------------
    def wedge(self, k, l, tau=1, s=1):
        """Structure constants of Lambda^k x Lambda^l -> Lambda^{k+l}."""
        def make():
            T = self.towers[tau]
            f = self.field
            rk, rl = self.dim(k, tau), self.dim(l, tau)
            if k + l > T.top:
                if k + l > self.n:
                    return zeros(0, rk * rl, f)
                raise ComplexError(f"degree {k + l} was not built")
            if rk * rl == 0 or self.dim(k + l, tau) == 0:
                return zeros(self.dim(k + l, tau), rk * rl, f)
            X = T.levels[k].B[s].kron(T.levels[l].B[s])
            Y = T.shuffle_apply(X, k, l, s)
            return T.coords(k + l, Y, s)
        return self._memo(("wedge", k, l, tau, s), make)

    def left_mult(self, k, tau=1, s=1):
        """Gamma x Lambda^{k-1} -> Lambda^k, column a * dim_{k-1} + j."""
        def make():
            T = self.towers[tau]
            f, n = self.field, self.n
            prev = self.dim(k - 1, tau)
            if self.dim(k, tau) == 0 or prev == 0:
                return zeros(self.dim(k, tau), n * prev, f)
            X = T.backend.eye(n, f).kron(T.levels[k - 1].B[s])
            return T.coords(k, T.left_build(X, k, s), s)
        return self._memo(("lm", k, tau, s), make)

    def right_mult(self, k, tau=1):
        """Lambda^{k-1} x Gamma -> Lambda^k, column j * n + a."""
        T = self.towers[tau]
        if k == 1:
            return identity(self.n, self.field)
        return T.levels[k].gen_coords

    # -- d -----------------------------------------------------------------------------
    def d(self, k, tau=1):
        """d rho = w0 ^ rho - (-1)^k rho ^ w0 from level k to level k+1."""
        def make():
            f, n = self.field, self.n
            rk, rk1 = self.dim(k, tau), self.dim(k + 1, tau)
            D = zeros(rk1, rk, f)
            if rk * rk1 == 0:
                return D
            if k + 1 > self.top:
                raise ComplexError(f"degree {k + 1} was not built")
            Lm = self.left_mult(k + 1, tau)
            Rm = self.right_mult(k + 1, tau)
            w = self.w0[tau]
            sg = -1 if k % 2 else 1
            for j in range(rk):
                for a in range(n):
                    if not w[a]:
                        continue
                    for i in range(rk1):
                        x = Lm[i, a * rk + j] - Rm[i, j * n + a] * sg
                        if x:
                            D[i, j] = D[i, j] + w[a] * x
            return D
        return self._memo(("d", k, tau), make)

    # -- contractions ------------------------------------------------------------------
    def contraction(self, k, l, tau=1, s=1):
        """<xi, zeta>^s for xi in Lambda^k of Gamma_tau, zeta in Lambda^l of Gamma_-tau.

        The result lives in level |k-l| of Gamma_tau (k >= l) or Gamma_-tau.
        Columns are indexed i * dim_l + j.
        """
        def make():
            f, n = self.field, self.n
            Ta, Tb = self.towers[tau], self.towers[-tau]
            rk, rl = self.dim(k, tau), self.dim(l, -tau)
            if k >= l:
                out_t, m = Ta, k - l
                X = Ta.levels[k].B[s]
                if rk * rl == 0 or out_t.levels[m].dim == 0:
                    return zeros(out_t.levels[m].dim, rk * rl, f)
                W = self._metric_op(tau, l, False)
                Y = X.local(W, [n] * k, range(k - l, k))
                Y = Y.rows_to_cols([n] * k, range(k - l, k))
                sel = [i * n ** l + Tb.flat(Tb.levels[l].reps[j]) for i in range(rk) for j in range(rl)]
            else:
                out_t, m = Tb, l - k
                X = Tb.levels[l].B[s]
                if rk * rl == 0 or out_t.levels[m].dim == 0:
                    return zeros(out_t.levels[m].dim, rk * rl, f)
                W = self._metric_op(tau, k, True)
                Y = X.local(W, [n] * l, range(k))
                Y = Y.rows_to_cols([n] * l, range(k))
                sel = [j * n ** k + Ta.flat(Ta.levels[k].reps[i]) for i in range(rk) for j in range(rl)]
            Y = Y.take_cols(sel)
            return out_t.coords(m, Y, s)
        return self._memo(("ctr", k, l, tau, s), make)

    def _ctr_w0_last(self, X, k, tau):
        """g~(X, w0^{-tau}) contracting the last of k slots of Gamma_tau."""
        f, n = self.field, self.n
        G, v = self.G[tau], self.w0[-tau]
        vec = []
        for a in range(n):
            x = f.zero
            for b in range(n):
                if G[a, b] and v[b]:
                    x = x + G[a, b] * v[b]
            vec.append(x)
        return X.local(self._row_op(vec), [n] * k, (k - 1,), [1])

    def _ctr_w0_first(self, X, k, tau):
        """g~(w0^{-tau}, X) contracting the first of k slots of Gamma_tau."""
        f, n = self.field, self.n
        G, v = self.G[-tau], self.w0[-tau]
        vec = []
        for a in range(n):
            x = f.zero
            for b in range(n):
                if v[b] and G[b, a]:
                    x = x + v[b] * G[b, a]
            vec.append(x)
        return X.local(self._row_op(vec), [n] * k, (0,), [1])

    def codifferential(self, k, tau=1, s=1):
        """d*^s rho = <rho, w0^{-tau}> + (-1)^k <w0^{-tau}, rho>, level k -> k-1."""
        def make():
            f = self.field
            T = self.towers[tau]
            if k == 0:
                return zeros(0, 1, f)
            rk, rk1 = self.dim(k, tau), self.dim(k - 1, tau)
            if rk * rk1 == 0:
                return zeros(rk1, rk, f)
            X = T.levels[k].B[s]
            Y1 = self._ctr_w0_last(X, k, tau)
            Y2 = self._ctr_w0_first(X, k, tau)
            Y = Y1 - Y2 if k % 2 else Y1 + Y2
            return T.coords(k - 1, Y, s)
        return self._memo(("del", k, tau, s), make)

    def laplacian(self, k, tau=1, s=1):
        """-d del + del d on level k."""
        def make():
            f = self.field
            r = self.dim(k, tau)
            out = zeros(r, r, f)
            if r == 0:
                return out
            if k + 1 > self.top and self.top < self.n:
                raise ComplexError(f"the Laplacian in degree {k} needs degree {k + 1}")
            if k >= 1 and self.dim(k - 1, tau):
                out = out - matmul(self.d(k - 1, tau), self.codifferential(k, tau, s), f)
            if self.dim(k + 1, tau):
                out = out + matmul(self.codifferential(k + 1, tau, s), self.d(k, tau), f)
            return out
        return self._memo(("lap", k, tau, s), make)

    def laplacian_braided(self, k, tau=1, s=1):
        """(-1)^k (-2 s rho + g~(sigma(w0 (x) rho), w0) + g~(w0, sigma(rho (x) w0)))."""
        f, n = self.field, self.n
        T = self.towers[tau]
        r = self.dim(k, tau)
        out = zeros(r, r, f)
        if r == 0:
            return out
        B = T.levels[k].B[s]
        w = self._column(self.w0[tau])
        X1 = w.kron(B)
        for i in range(1, k + 1):
            X1 = T.apply_sigma(X1, i, s, k + 1)
        X2 = B.kron(w)
        for i in range(k, 0, -1):
            X2 = T.apply_sigma(X2, i, s, k + 1)
        Y = self._ctr_w0_last(X1, k + 1, tau) + self._ctr_w0_first(X2, k + 1, tau)
        M = T.coords(k, Y, s)
        two_s = self.s + self.s
        for i in range(r):
            M[i, i] = M[i, i] - two_s
        if k % 2:
            M = -M
        return M

    def _column(self, vec):
        f = self.field
        M = zeros(len(vec), 1, f)
        for a, x in enumerate(vec):
            M[a, 0] = x
        return self._bk(M)

    # -- pairing -------------------------------------------------------------------
    def pairing(self, k, tau=1, s=1):
        """P[i, j] = <e_i, e_j>^s between level k of Gamma_tau and of Gamma_-tau."""
        C = self.contraction(k, k, tau, s)
        rk, rl = self.dim(k, tau), self.dim(k, -tau)
        P = zeros(rk, rl, self.field)
        for i in range(rk):
            for j in range(rl):
                P[i, j] = C[0, i * rl + j]
        return P


@lru_cache(maxsize=8)
def build_complex(N: int, field: Field, top: int | None = None) -> WoronowiczComplex:
    return WoronowiczComplex(N, field, top)
