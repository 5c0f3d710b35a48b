"""Exact linear algebra on small dense matrices.

Matrices are numpy object arrays whose entries live in one of the fields of
``qhodge.exactfield.field``. Over F_p everything is delegated to flint's
nmod_mat; over symbolic fields rank uses fraction-free (Bareiss) elimination
on cleared numerators, while kernels and solves use plain Gauss-Jordan.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

import flint
import numpy as np

from .field import (Field, FieldElement, ModularField, SpecializationError,
                    SymbolicField, make_field, random_prime, specialize)

__all__ = [
    "fmat", "identity", "zeros", "matmul", "rank", "rref", "kernel_basis",
    "column_space", "pivot_rows", "solve", "inverse", "is_zero_matrix",
    "ModularRank", "modular_rank", "bareiss", "to_nmod_mat", "from_nmod_mat",
]


def fmat(rows, field: Field) -> np.ndarray:
    """Object matrix from nested lists, coercing entries into the field."""
    rows = [[field(x) for x in r] for r in rows]
    m = len(rows)
    n = len(rows[0]) if m else 0
    out = np.empty((m, n), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = x
    return out


def zeros(m, n, field: Field) -> np.ndarray:
    out = np.empty((m, n), dtype=object)
    out.fill(field.zero)
    return out


def identity(n, field: Field) -> np.ndarray:
    out = zeros(n, n, field)
    for i in range(n):
        out[i, i] = field.one
    return out


def matmul(a: np.ndarray, b: np.ndarray, field: Field) -> np.ndarray:
    if isinstance(field, ModularField):
        return from_nmod_mat(to_nmod_mat(a, field) * to_nmod_mat(b, field))
    m, k = a.shape
    k2, n = b.shape
    assert k == k2, (a.shape, b.shape)
    out = zeros(m, n, field)
    if k == 0:
        return out
    for i in range(m):
        row = a[i]
        nz = [t for t in range(k) if row[t]]
        for j in range(n):
            s = field.zero
            for t in nz:
                y = b[t, j]
                if y:
                    s = s + row[t] * y
            out[i, j] = s
    return out


def is_zero_matrix(a: np.ndarray) -> bool:
    return not any(bool(x) for x in a.flat)


# ---------------------------------------------------------------------------
# F_p fast path


def to_nmod_mat(a: np.ndarray, field: ModularField):
    m, n = a.shape
    return flint.nmod_mat(m, n, [int(x) for x in a.flat], field.p)


def from_nmod_mat(M) -> np.ndarray:
    m, n = M.nrows(), M.ncols()
    out = np.empty((m, n), dtype=object)
    ent = M.entries()
    for i in range(m):
        for j in range(n):
            out[i, j] = ent[i * n + j]
    return out


def _nmod_pivots(M):
    R, r = M.rref()
    n = M.ncols()
    piv = []
    for i in range(r):
        for j in range(n):
            if int(R[i, j]):
                piv.append(j)
                break
    return R, piv


# ---------------------------------------------------------------------------
# fraction-free elimination


@dataclass
class BareissResult:
    rank: int
    pivot_cols: list
    pivot_rows: list


def _clear_rows(a: np.ndarray, field: SymbolicField):
    """Row-wise common-denominator clearing into fmpz_mpoly entries."""
    m, n = a.shape
    rows = []
    for i in range(m):
        den = field._one_poly
        for x in a[i]:
            if x and not x.den.is_one():
                g = den.gcd(x.den)
                den = den * (x.den / g)
        rows.append([(x.num * (den / x.den)) if x else field.ctx.from_dict({}) for x in a[i]])
    return rows


def bareiss(a: np.ndarray, field: SymbolicField) -> BareissResult:
    """Fraction-free Gaussian elimination; records pivot rows and columns."""
    m, n = a.shape
    M = _clear_rows(a, field)
    order = list(range(m))
    prev = field._one_poly
    r = 0
    pcols = []
    for c in range(n):
        if r == m:
            break
        piv = None
        best = None
        for i in range(r, m):
            if not M[i][c].is_zero():
                size = len(M[i][c].to_dict())
                if best is None or size < best:
                    piv, best = i, size
                    if size == 1:
                        break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        order[r], order[piv] = order[piv], order[r]
        p = M[r][c]
        for i in range(r + 1, m):
            e = M[i][c]
            row = M[i]
            prow = M[r]
            for j in range(c + 1, n):
                v = p * row[j]
                if not e.is_zero() and not prow[j].is_zero():
                    v = v - e * prow[j]
                if not v.is_zero() and not prev.is_one():
                    v = v / prev
                row[j] = v
            row[c] = field.ctx.from_dict({})
        prev = p
        pcols.append(c)
        r += 1
    return BareissResult(r, pcols, sorted(order[:r]))


def _gauss_rref(a: np.ndarray, field: Field):
    m, n = a.shape
    M = [list(a[i]) for i in range(m)]
    piv = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = None
        for i in range(r, m):
            if M[i][c]:
                p = i
                break
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = field.one / M[r][c]
        M[r] = [x * inv if x else x for x in M[r]]
        for i in range(m):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y if y else x for x, y in zip(M[i], M[r])]
        piv.append(c)
        r += 1
    out = np.empty((m, n), dtype=object)
    for i in range(m):
        for j in range(n):
            out[i, j] = M[i][j]
    return out, piv


def rref(a: np.ndarray, field: Field):
    """Reduced row echelon form and pivot columns."""
    if isinstance(field, ModularField):
        R, piv = _nmod_pivots(to_nmod_mat(a, field))
        return from_nmod_mat(R), piv
    return _gauss_rref(a, field)


# ---------------------------------------------------------------------------
# public API


def rank(a: np.ndarray, field: Field, strategy: str = "fraction-free", **kw) -> int:
    """Rank of ``a``. strategy is "fraction-free" (exact) or "modular"."""
    if a.size == 0:
        return 0
    if strategy == "modular":
        return modular_rank(a, field, **kw).rank
    if isinstance(field, ModularField):
        return to_nmod_mat(a, field).rank()
    if isinstance(field, SymbolicField):
        return bareiss(a, field).rank
    M = flint.fmpq_mat(a.shape[0], a.shape[1], [flint.fmpq(x.numerator, x.denominator) for x in a.flat])
    return M.rank()


def column_space(a: np.ndarray, field: Field):
    """Indices of a greedy (leftmost) maximal set of independent columns."""
    if a.size == 0:
        return []
    if isinstance(field, ModularField):
        return _nmod_pivots(to_nmod_mat(a, field))[1]
    if isinstance(field, SymbolicField):
        return bareiss(a, field).pivot_cols
    return _gauss_rref(a, field)[1]


def pivot_rows(a: np.ndarray, field: Field):
    """Indices of a maximal set of independent rows (leftmost greedy)."""
    return column_space(np.ascontiguousarray(a.T), field)


def kernel_basis(a: np.ndarray, field: Field) -> np.ndarray:
    """Columns spanning the right kernel of ``a``."""
    m, n = a.shape
    if m == 0:
        return identity(n, field)
    R, piv = rref(a, field)
    free = [j for j in range(n) if j not in piv]
    out = zeros(n, len(free), field)
    for t, f in enumerate(free):
        out[f, t] = field.one
        for i, c in enumerate(piv):
            out[c, t] = -R[i, f]
    return out


def solve(a: np.ndarray, b: np.ndarray, field: Field) -> np.ndarray:
    """The unique x with a x = b, for a of full column rank.

    Raises ValueError if the system is inconsistent or underdetermined.
    """
    m, n = a.shape
    aug = np.concatenate([a, b], axis=1)
    R, piv = rref(aug, field)
    if any(c >= n for c in piv):
        raise ValueError("inconsistent system")
    if len(piv) != n:
        raise ValueError("solution is not unique")
    return R[:n, n:].copy()


def inverse(a: np.ndarray, field: Field) -> np.ndarray:
    n = a.shape[0]
    if isinstance(field, ModularField):
        return from_nmod_mat(to_nmod_mat(a, field).inv())
    return solve(a, identity(n, field), field)


# ---------------------------------------------------------------------------
# modular rank certification


@dataclass
class ModularRank:
    rank: int
    agreeing: int
    ranks: list
    primes: list

    @property
    def certified(self) -> bool:
        return self.agreeing >= 3


def modular_rank(a: np.ndarray, field: Field, n_primes: int = 3, seed: int = 0,
                 max_tries: int = 20) -> ModularRank:
    """Rank of a symbolic matrix from images modulo random large primes.

    Specializations that make any entry denominator vanish are resampled.
    The reported rank is the maximum seen; ``agreeing`` counts the primes that
    attain it.
    """
    if isinstance(field, ModularField):
        r = to_nmod_mat(a, field).rank()
        return ModularRank(r, 1, [r], [field.p])
    if not isinstance(field, SymbolicField):
        r = rank(a, field)
        return ModularRank(r, n_primes, [r] * n_primes, [])
    rng = random.Random(seed)
    ranks, primes = [], []
    for _ in range(n_primes):
        for _ in range(max_tries):
            spec = field.random_modular_spec(rng)
            tgt = make_field(spec)
            try:
                img = np.empty(a.shape, dtype=object)
                for idx, x in np.ndenumerate(a):
                    img[idx] = specialize(x, tgt)
            except SpecializationError:
                continue
            break
        else:
            raise SpecializationError("could not find a good specialization")
        ranks.append(to_nmod_mat(img, tgt).rank())
        primes.append(spec.prime)
    best = max(ranks)
    return ModularRank(best, ranks.count(best), ranks, primes)
