"""Braided exterior powers of the coinvariant 1-forms of one calculus.

Level k stores representatives (index tuples) of a basis of the k-th
exterior power together with their images under both antisymmetrizers
A^+_k and A^-_k (built from sigma and sigma^-1). Coordinates of any element
of im A^s_k are read off from a set of pivot rows of that basis.

Permutations act on tensor slots; sigma_i (1-based) acts on slots i, i+1.
A permutation pi = s_{i1} ... s_{ir} (reduced) is lifted to
sigma_pi = sigma_{i1} ... sigma_{ir}.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from ..exactfield import Field, backend_for, identity, inverse, matmul, pivot_rows, zeros
from ..frt import braiding_matrix

__all__ = [
    "ComplexError", "ResourceCapError", "Level", "Tower", "reduced_word",
    "shuffles", "perm_sign",
]

DEFAULT_CAP = 60_000_000  # entries in a single generating matrix


class ComplexError(RuntimeError):
    """An exterior-algebra consistency check failed."""


class ResourceCapError(MemoryError):
    pass


def reduced_word(perm):
    """Letters (1-based) of a reduced word, in the order they are applied.

    ``perm`` is one-line notation, perm[x] = pi(x) (0-based).
    """
    p = list(perm)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                p[i], p[i + 1] = p[i + 1], p[i]
                word.append(i + 1)
                changed = True
                break
    return word


def perm_sign(perm):
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def shuffles(k, l):
    """Permutations increasing on {0..k-1} and on {k..k+l-1}."""
    n = k + l
    out = []
    for first in itertools.combinations(range(n), k):
        rest = [x for x in range(n) if x not in first]
        out.append(tuple(first) + tuple(rest))
    return out


@dataclass
class Level:
    k: int
    reps: list                      # index tuples
    B: dict = dc_field(default_factory=dict)      # s -> backend matrix n^k x r
    rows: dict = dc_field(default_factory=dict)   # s -> pivot row indices
    inv: dict = dc_field(default_factory=dict)    # s -> field matrix r x r
    gen_coords: np.ndarray | None = None          # classes of rep (x) e_a

    @property
    def dim(self):
        return len(self.reps)


class Tower:
    """Exterior powers Lambda^0 .. Lambda^top of one calculus Gamma_tau."""

    def __init__(self, tau: int, N: int, field: Field, top: int, cap: int = DEFAULT_CAP,
                 truncate=False):
        """With ``truncate`` a level exceeding ``cap`` ends the tower early
        (recorded in ``capped``) instead of raising."""
        self.tau = tau
        self.N = N
        self.n = N * N
        self.field = field
        self.backend = backend_for(field)
        self.cap = cap
        self.truncate = truncate
        self.capped = None
        S = braiding_matrix(tau, tau, N, field)
        Si = inverse(S, field)
        self.sigma_field = {1: S, -1: Si}
        self.sigma = {s: self.backend.from_field(m, field) for s, m in self.sigma_field.items()}
        self._sigmaT = {}
        self.levels = []
        self._build(top)

    # -- slot operations ---------------------------------------------------
    def apply_sigma(self, X, i, s, k):
        """sigma^s_i on a matrix whose rows are k-fold tensors."""
        return X.local(self.sigma[s], [self.n] * k, (i - 1, i))

    def apply_word(self, X, word, s, k):
        for i in word:
            X = self.apply_sigma(X, i, s, k)
        return X

    def right_build(self, X, k, s):
        """sum_j (-1)^j sigma_{k-j} ... sigma_{k-1} X, X = (A_{k-1} v) (x) w."""
        acc = X
        T = X
        for j in range(1, k):
            T = self.apply_sigma(T, k - j, s, k)
            acc = acc - T if j % 2 else acc + T
        return acc

    def left_build(self, X, k, s):
        """sum_j (-1)^j sigma_j ... sigma_1 X, X = w (x) (A_{k-1} v)."""
        acc = X
        T = X
        for j in range(1, k):
            T = self.apply_sigma(T, j, s, k)
            acc = acc - T if j % 2 else acc + T
        return acc

    # -- construction --------------------------------------------------------
    def _build(self, top):
        f, Bk = self.field, self.backend
        n = self.n
        L0 = Level(0, [()])
        L1 = Level(1, [(a,) for a in range(n)])
        for s in (1, -1):
            L0.B[s] = Bk.eye(1, f)
            L0.rows[s] = [0]
            L0.inv[s] = identity(1, f)
            L1.B[s] = Bk.eye(n, f)
            L1.rows[s] = list(range(n))
            L1.inv[s] = identity(n, f)
        self.levels = [L0, L1]
        for k in range(2, top + 1):
            try:
                self.levels.append(self._next_level(k))
            except ResourceCapError as e:
                if not self.truncate:
                    raise
                self.capped = str(e)
                break

    def _next_level(self, k):
        f, Bk, n = self.field, self.backend, self.n
        prev = self.levels[k - 1]
        if prev.dim == 0:
            return self._empty(k)
        if n ** k * prev.dim * n > self.cap:
            raise ResourceCapError(f"level {k} needs {n ** k * prev.dim * n} entries (cap {self.cap})")
        Y = {}
        for s in (1, -1):
            X = prev.B[s].kron(Bk.eye(n, f))
            Y[s] = self.right_build(X, k, s)
        piv = Y[1].pivots()
        if not piv:
            return self._empty(k)
        lev = Level(k, [prev.reps[c // n] + (c % n,) for c in piv])
        for s in (1, -1):
            B = Y[s].take_cols(piv)
            rows = B.T.pivots()
            if len(rows) != len(piv):
                raise ComplexError(f"A^+_{k} and A^-_{k} have different ranks on the chosen basis")
            lev.B[s] = B
            lev.rows[s] = rows
            lev.inv[s] = inverse(B.take_rows(rows).to_field(), f)
        lev.gen_coords = self.coords(k, Y[1], 1, level=lev)
        return lev

    def _empty(self, k):
        f, Bk = self.field, self.backend
        lev = Level(k, [])
        for s in (1, -1):
            lev.B[s] = Bk.zeros(self.n ** k, 0, f)
            lev.rows[s] = []
            lev.inv[s] = zeros(0, 0, f)
        lev.gen_coords = zeros(0, self.levels[k - 1].dim * self.n, self.field)
        return lev

    # -- coordinates -----------------------------------------------------------
    def coords(self, k, Y, s, level=None):
        """Coordinates of the columns of Y (assumed in im A^s_k) on level k."""
        lev = level or self.levels[k]
        m = Y.shape[1]
        if lev.dim == 0:
            return zeros(0, m, self.field)
        sub = Y.take_rows(lev.rows[s]).to_field()
        return matmul(lev.inv[s], sub, self.field)

    def dims(self):
        return [lev.dim for lev in self.levels]

    @property
    def top(self):
        return len(self.levels) - 1

    def flat(self, tup):
        x = 0
        for a in tup:
            x = x * self.n + a
        return x

    def unit_columns(self, k, tuples):
        """Backend matrix whose columns are the standard tensors e_I."""
        f = self.field
        M = zeros(self.n ** k, len(tuples), f)
        for j, t in enumerate(tuples):
            M[self.flat(t), j] = f.one
        return self.backend.from_field(M, f)

    # -- full antisymmetrizers (small degrees only) ----------------------------
    def _sigmaT_op(self, s):
        if s not in self._sigmaT:
            self._sigmaT[s] = self.backend.from_field(np.ascontiguousarray(self.sigma_field[s].T), self.field)
        return self._sigmaT[s]

    def antisymmetrizer(self, k, s):
        """A^s_k on the full tensor power via A_k = (A_{k-1} (x) id) B_{k-1,1}."""
        f, Bk, n = self.field, self.backend, self.n
        if (n ** k) ** 2 > self.cap:
            raise ResourceCapError(f"A_{k} has {(n ** k) ** 2} entries (cap {self.cap})")
        A = Bk.eye(1, f)
        for m in range(1, k + 1):
            X = A.kron(Bk.eye(n, f))
            Z = X.T
            acc, T = Z, Z
            # right multiplication by id - sigma_{m-1} + sigma_{m-1} sigma_{m-2} - ...
            for j in range(1, m):
                T = T.local(self._sigmaT_op(s), [n] * m, (m - j - 1, m - j))
                acc = acc - T if j % 2 else acc + T
            A = acc.T
        return A

    def antisymmetrizer_bruteforce(self, k, s):
        """sum over all permutations of sgn(pi) sigma_pi."""
        f, Bk, n = self.field, self.backend, self.n
        if (n ** k) ** 2 > self.cap:
            raise ResourceCapError(f"A_{k} has {(n ** k) ** 2} entries (cap {self.cap})")
        I = Bk.eye(n ** k, f)
        acc = None
        for perm in itertools.permutations(range(k)):
            word = reduced_word(perm)
            T = self.apply_word(I, word, s, k)
            T = T if len(word) % 2 == 0 else -T
            acc = T if acc is None else acc + T
        return acc

    def shuffle_apply(self, X, k, l, s):
        """sum over c in C_{k,l} of sgn(c) sigma_c applied to X (rows: k+l slots)."""
        acc = None
        for c in shuffles(k, l):
            word = reduced_word(c)
            T = self.apply_word(X, word, s, k + l)
            T = T if len(word) % 2 == 0 else -T
            acc = T if acc is None else acc + T
        return acc
