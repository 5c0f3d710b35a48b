"""Matrices acting on tensor powers, in two concrete backends.

``LaurentMat`` stores a matrix of integer Laurent polynomials in one
generator as a stack of integer coefficient matrices (one per exponent).
``ModMat`` stores a matrix over F_p as an int64 array and multiplies through
flint. Both support the operations the exterior-algebra tower needs: applying
a small operator on a few tensor slots of the row index, products, Kronecker
products, column selection and conversion to field matrices.
"""
from __future__ import annotations

import flint
import numpy as np

from .field import Field, ModularField, SymbolicField
from .linalg import bareiss, _nmod_pivots

__all__ = ["LaurentMat", "ModMat", "backend_for"]

_SAFE = 1 << 62


def _fits(a, b, inner):
    if a.dtype == object or b.dtype == object:
        return False
    ma = int(np.abs(a).max()) if a.size else 0
    mb = int(np.abs(b).max()) if b.size else 0
    return ma * mb * max(inner, 1) < _SAFE


def _shrink(data):
    if data.dtype == object and data.size:
        m = max(abs(int(x)) for x in data.flat)
        if m < (1 << 62):
            return data.astype(np.int64)
    return data


class LaurentMat:
    """Matrix of integer Laurent polynomials in a single generator."""

    __slots__ = ("data", "low", "field", "var")

    def __init__(self, data, low, field: SymbolicField, var: int = 0):
        self.data = data
        self.low = low
        self.field = field
        self.var = var
        self._trim()

    def _trim(self):
        d = self.data
        if d.shape[0] == 0:
            self.low = 0
            return
        nz = [i for i in range(d.shape[0]) if d[i].any()]
        if not nz:
            self.data = d[:0]
            self.low = 0
            return
        a, b = nz[0], nz[-1] + 1
        if a or b < d.shape[0]:
            self.data = d[a:b]
            self.low += a

    @property
    def shape(self):
        return self.data.shape[1:]

    def _like(self, data, low):
        return LaurentMat(data, low, self.field, self.var)

    @staticmethod
    def _var_for(field):
        return 0 if len(field.names) == 1 else field.names.index("q")

    # constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, m, n, field):
        return cls(np.zeros((0, m, n), dtype=np.int64), 0, field, cls._var_for(field))

    @classmethod
    def eye(cls, n, field):
        return cls(np.eye(n, dtype=np.int64)[None], 0, field, cls._var_for(field))

    @classmethod
    def from_field(cls, arr: np.ndarray, field: SymbolicField):
        var = cls._var_for(field)
        m, n = arr.shape
        terms = {}
        for (i, j), x in np.ndenumerate(arr):
            if not x:
                continue
            for e, c in x.laurent().items():
                if any(v for k, v in enumerate(e) if k != var):
                    raise ValueError(f"entry {x} involves more than one generator")
                terms[(e[var], i, j)] = c
        if not terms:
            return cls.zeros(m, n, field)
        lo = min(k[0] for k in terms)
        hi = max(k[0] for k in terms)
        big = max(abs(c) for c in terms.values()) >= (1 << 62)
        data = np.zeros((hi - lo + 1, m, n), dtype=object if big else np.int64)
        for (e, i, j), c in terms.items():
            data[e - lo, i, j] = c
        return cls(data, lo, field, var)

    @classmethod
    def from_scalar(cls, x, field):
        arr = np.empty((1, 1), dtype=object)
        arr[0, 0] = field(x) if not hasattr(x, "laurent") else x
        return cls.from_field(arr, field)

    def to_field(self) -> np.ndarray:
        f = self.field
        m, n = self.shape
        out = np.empty((m, n), dtype=object)
        nv = len(f.names)
        for i in range(m):
            for j in range(n):
                col = self.data[:, i, j]
                terms = {}
                for d in np.nonzero(col)[0]:
                    e = [0] * nv
                    e[self.var] = int(d) + self.low
                    terms[tuple(e)] = int(col[d])
                out[i, j] = f.from_laurent(terms)
        return out

    # algebra ----------------------------------------------------------
    def _aligned(self, other):
        if self.data.shape[0] == 0:
            return other.low, np.zeros((0,) + self.shape, dtype=np.int64), other.data
        if other.data.shape[0] == 0:
            return self.low, self.data, np.zeros((0,) + self.shape, dtype=np.int64)
        lo = min(self.low, other.low)
        hi = max(self.low + self.data.shape[0], other.low + other.data.shape[0])
        dt = object if (self.data.dtype == object or other.data.dtype == object) else np.int64
        a = np.zeros((hi - lo,) + self.shape, dtype=dt)
        b = np.zeros((hi - lo,) + self.shape, dtype=dt)
        a[self.low - lo:self.low - lo + self.data.shape[0]] = self.data
        b[other.low - lo:other.low - lo + other.data.shape[0]] = other.data
        return lo, a, b

    def __add__(self, other):
        assert self.shape == other.shape, (self.shape, other.shape)
        lo, a, b = self._aligned(other)
        if a.shape[0] == 0:
            return self._like(b.copy(), lo)
        if b.shape[0] == 0:
            return self._like(a.copy(), lo)
        return self._like(_shrink(_safe_add(a, b)), lo)

    def __neg__(self):
        return self._like(-self.data, self.low)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, x):
        """Multiply by a scalar (int or Laurent field element)."""
        if isinstance(x, int):
            terms = {0: x}
        else:
            terms = {e[self.var]: c for e, c in self.field(x).laurent().items()}
        out = None
        for e, c in terms.items():
            t = self._like(_safe_scale(self.data, c), self.low + e)
            out = t if out is None else out + t
        return out if out is not None else LaurentMat.zeros(*self.shape, self.field)

    def __matmul__(self, other):
        m, k = self.shape
        k2, n = other.shape
        assert k == k2, (self.shape, other.shape)
        A, B = self.data, other.data
        if A.shape[0] == 0 or B.shape[0] == 0:
            return LaurentMat.zeros(m, n, self.field)
        D = A.shape[0] + B.shape[0] - 1
        big = not _fits(A, B, k * min(A.shape[0], B.shape[0]))
        dt = object if big else np.int64
        if big:
            A, B = A.astype(object), B.astype(object)
        out = np.zeros((D, m, n), dtype=dt)
        for i in range(A.shape[0]):
            Ai = A[i]
            if not Ai.any():
                continue
            for j in range(B.shape[0]):
                out[i + j] += Ai @ B[j]
        return self._like(_shrink(out), self.low + other.low)

    def kron(self, other):
        A, B = self.data, other.data
        m1, n1 = self.shape
        m2, n2 = other.shape
        if A.shape[0] == 0 or B.shape[0] == 0:
            return LaurentMat.zeros(m1 * m2, n1 * n2, self.field)
        D = A.shape[0] + B.shape[0] - 1
        big = not _fits(A, B, min(A.shape[0], B.shape[0]))
        dt = object if big else np.int64
        out = np.zeros((D, m1 * m2, n1 * n2), dtype=dt)
        for i in range(A.shape[0]):
            for j in range(B.shape[0]):
                out[i + j] += np.kron(A[i].astype(dt), B[j].astype(dt))
        return self._like(out, self.low + other.low)

    def local(self, op: "LaurentMat", dims, positions, out_dims=None):
        """Apply ``op`` to the tensor slots ``positions`` of the row index.

        The rows are read as a tensor with slot dimensions ``dims``; ``op``
        maps the chosen slots (in the given order) to slots of sizes
        ``out_dims`` (default: unchanged).
        """
        positions = list(positions)
        out_dims = list(out_dims) if out_dims is not None else [dims[p] for p in positions]
        R, C = self.shape
        assert R == int(np.prod(dims)), (R, dims)
        X = self.data
        if X.shape[0] == 0 or op.data.shape[0] == 0:
            new_dims = list(dims)
            for p, d in zip(positions, out_dims):
                new_dims[p] = d
            return LaurentMat.zeros(int(np.prod(new_dims)), C, self.field)
        D = X.shape[0]
        k = len(dims)
        T = X.reshape((D,) + tuple(dims) + (C,))
        src = [1 + p for p in positions]
        T = np.moveaxis(T, src, list(range(1, 1 + len(positions))))
        rest_shape = T.shape[1 + len(positions):]
        din = int(np.prod([dims[p] for p in positions]))
        T = T.reshape(D, din, -1)
        O = op.data
        dout = int(np.prod(out_dims))
        assert O.shape[1:] == (dout, din), (O.shape, dout, din)
        big = not _fits(O, T, din * min(O.shape[0], D))
        if big:
            O, T = O.astype(object), T.astype(object)
        res = np.zeros((O.shape[0] + D - 1, dout, T.shape[2]), dtype=object if big else np.int64)
        for i in range(O.shape[0]):
            Oi = O[i]
            if not Oi.any():
                continue
            for j in range(D):
                res[i + j] += Oi @ T[j]
        res = res.reshape((res.shape[0],) + tuple(out_dims) + tuple(rest_shape))
        res = np.moveaxis(res, list(range(1, 1 + len(positions))), src)
        new_dims = list(dims)
        for p, d in zip(positions, out_dims):
            new_dims[p] = d
        res = res.reshape(res.shape[0], int(np.prod(new_dims)), C)
        return self._like(_shrink(np.ascontiguousarray(res)), self.low + op.low)

    def transpose(self):
        return self._like(np.ascontiguousarray(np.transpose(self.data, (0, 2, 1))), self.low)

    @property
    def T(self):
        return self.transpose()

    def take_cols(self, idx):
        return self._like(self.data[:, :, list(idx)], self.low)

    def take_rows(self, idx):
        return self._like(self.data[:, list(idx), :], self.low)

    def hstack(self, other):
        lo, a, b = self._aligned_any(other)
        return self._like(np.concatenate([a, b], axis=2), lo)

    def vstack(self, other):
        lo, a, b = self._aligned_any(other)
        return self._like(np.concatenate([a, b], axis=1), lo)

    def _aligned_any(self, other):
        if self.data.shape[0] == 0 and other.data.shape[0] == 0:
            return 0, self.data, other.data
        lows, highs = [], []
        for t in (self, other):
            if t.data.shape[0]:
                lows.append(t.low)
                highs.append(t.low + t.data.shape[0])
        lo, hi = min(lows), max(highs)
        dt = object if (self.data.dtype == object or other.data.dtype == object) else np.int64
        out = []
        for t in (self, other):
            a = np.zeros((hi - lo,) + t.shape, dtype=dt)
            if t.data.shape[0]:
                a[t.low - lo:t.low - lo + t.data.shape[0]] = t.data
            out.append(a)
        return lo, out[0], out[1]

    def is_zero(self):
        return self.data.shape[0] == 0

    def __eq__(self, other):
        return (self - other).is_zero()

    def pivots(self):
        """Leftmost independent columns (over the fraction field)."""
        if self.is_zero():
            return []
        return bareiss(self.to_field(), self.field).pivot_cols

    def rank(self):
        return len(self.pivots())

    def col_vector(self, j):
        return self.take_cols([j])

    def rows_to_cols(self, dims, positions):
        """Move the row slots ``positions`` into the column index.

        New columns are indexed by (old column, moved slots in order).
        """
        positions = list(positions)
        R, C = self.shape
        D = self.data.shape[0]
        rest = [d for i, d in enumerate(dims) if i not in positions]
        moved = [dims[p] for p in positions]
        T = self.data.reshape((D,) + tuple(dims) + (C,))
        T = np.moveaxis(T, [1 + p for p in positions], list(range(T.ndim - len(positions), T.ndim)))
        T = T.reshape(D, int(np.prod(rest)), C * int(np.prod(moved)))
        return self._like(np.ascontiguousarray(T), self.low)

    def copy(self):
        return self._like(self.data.copy(), self.low)


def _safe_add(a, b):
    if a.dtype != object and b.dtype != object:
        if (int(np.abs(a).max(initial=0)) + int(np.abs(b).max(initial=0))) < _SAFE:
            return a + b
    return a.astype(object) + b.astype(object)


def _safe_scale(a, c):
    if a.dtype != object and abs(c) * int(np.abs(a).max(initial=0)) < _SAFE:
        return a * c
    return a.astype(object) * c


_SMALL_P = 1 << 31


def _sparse_apply(O, T, p):
    """(O @ T) mod p entry by entry of O; exact in int64 for p < 2^31."""
    res = np.zeros((O.shape[0], T.shape[1]), dtype=np.int64)
    for a, b in zip(*np.nonzero(O)):
        res[a] += (T[b] * int(O[a, b])) % p
        res[a] %= p
    return res


class ModMat:
    """Matrix over F_p stored as int64 residues (p < 2^62)."""

    __slots__ = ("data", "field")

    def __init__(self, data, field: ModularField):
        self.data = data
        self.field = field

    @property
    def p(self):
        return self.field.p

    @property
    def shape(self):
        return self.data.shape

    def _like(self, data):
        return ModMat(data, self.field)

    def _nm(self):
        m, n = self.data.shape
        return flint.nmod_mat(m, n, self.data.ravel().tolist(), self.p)

    def _from_nm(self, M):
        m, n = M.nrows(), M.ncols()
        if m * n == 0:
            return self._like(np.zeros((m, n), dtype=np.int64))
        arr = np.fromiter((int(x) for x in M.entries()), dtype=np.int64, count=m * n)
        return self._like(arr.reshape(m, n))

    @classmethod
    def zeros(cls, m, n, field):
        return cls(np.zeros((m, n), dtype=np.int64), field)

    @classmethod
    def eye(cls, n, field):
        return cls(np.eye(n, dtype=np.int64), field)

    @classmethod
    def from_field(cls, arr: np.ndarray, field: ModularField):
        data = np.array([[int(x) for x in row] for row in arr], dtype=np.int64).reshape(arr.shape)
        return cls(data, field)

    @classmethod
    def from_scalar(cls, x, field):
        return cls(np.array([[int(field(x))]], dtype=np.int64), field)

    def to_field(self) -> np.ndarray:
        m, n = self.shape
        out = np.empty((m, n), dtype=object)
        p = self.p
        for (i, j), v in np.ndenumerate(self.data):
            out[i, j] = flint.nmod(int(v), p)
        return out

    def __add__(self, other):
        return self._like((self.data + other.data) % self.p)

    def __neg__(self):
        return self._like((-self.data) % self.p)

    def __sub__(self, other):
        return self._like((self.data - other.data) % self.p)

    def scale(self, x):
        c = int(self.field(x))
        if c == 1:
            return self._like(self.data.copy())
        if c == self.p - 1:
            return -self
        return self._from_nm(self._nm() * flint.nmod(c, self.p))

    def __matmul__(self, other):
        if 0 in self.shape or 0 in other.shape:
            return ModMat.zeros(self.shape[0], other.shape[1], self.field)
        return self._from_nm(self._nm() * other._nm())

    def kron(self, other):
        A, B = self.data, other.data
        m1, n1 = A.shape
        m2, n2 = B.shape
        if (B == np.eye(m2, n2, dtype=np.int64)).all() and m2 == n2:
            out = np.zeros((m1, m2, n1, n2), dtype=np.int64)
            for t in range(m2):
                out[:, t, :, t] = A
            return self._like(out.reshape(m1 * m2, n1 * n2))
        if (A == np.eye(m1, n1, dtype=np.int64)).all() and m1 == n1:
            out = np.zeros((m1, m2, n1, n2), dtype=np.int64)
            for t in range(m1):
                out[t, :, t, :] = B
            return self._like(out.reshape(m1 * m2, n1 * n2))
        Ao, Bo = A.astype(object), B.astype(object)
        return self._like((np.kron(Ao, Bo) % self.p).astype(np.int64))

    def local(self, op: "ModMat", dims, positions, out_dims=None):
        positions = list(positions)
        out_dims = list(out_dims) if out_dims is not None else [dims[p] for p in positions]
        R, C = self.shape
        assert R == int(np.prod(dims)), (R, dims)
        T = self.data.reshape(tuple(dims) + (C,))
        T = np.moveaxis(T, positions, list(range(len(positions))))
        rest_shape = T.shape[len(positions):]
        din = int(np.prod([dims[p] for p in positions]))
        T = T.reshape(din, -1)
        if self.p < _SMALL_P:
            res = _sparse_apply(op.data, T, self.p)
        else:
            res = (op @ self._like(np.ascontiguousarray(T))).data
        res = res.reshape(tuple(out_dims) + tuple(rest_shape))
        res = np.moveaxis(res, list(range(len(positions))), positions)
        new_dims = list(dims)
        for p, d in zip(positions, out_dims):
            new_dims[p] = d
        return self._like(np.ascontiguousarray(res.reshape(int(np.prod(new_dims)), C)))

    def transpose(self):
        return self._like(np.ascontiguousarray(self.data.T))

    @property
    def T(self):
        return self.transpose()

    def take_cols(self, idx):
        return self._like(np.ascontiguousarray(self.data[:, list(idx)]))

    def take_rows(self, idx):
        return self._like(np.ascontiguousarray(self.data[list(idx), :]))

    def hstack(self, other):
        return self._like(np.concatenate([self.data, other.data], axis=1))

    def vstack(self, other):
        return self._like(np.concatenate([self.data, other.data], axis=0))

    def is_zero(self):
        return not self.data.any()

    def __eq__(self, other):
        return self.shape == other.shape and bool((self.data == other.data).all())

    def pivots(self):
        if self.is_zero():
            return []
        return _nmod_pivots(self._nm())[1]

    def rank(self):
        if self.is_zero():
            return 0
        return self._nm().rank()

    def rows_to_cols(self, dims, positions):
        positions = list(positions)
        R, C = self.shape
        rest = [d for i, d in enumerate(dims) if i not in positions]
        moved = [dims[p] for p in positions]
        T = self.data.reshape(tuple(dims) + (C,))
        T = np.moveaxis(T, positions, list(range(T.ndim - len(positions), T.ndim)))
        return self._like(np.ascontiguousarray(T.reshape(int(np.prod(rest)), C * int(np.prod(moved)))))

    def copy(self):
        return self._like(self.data.copy())


def backend_for(field: Field):
    if isinstance(field, SymbolicField):
        return LaurentMat
    if isinstance(field, ModularField):
        if field.p >= (1 << 62):
            raise ValueError("modular tensor backend needs p < 2^62")
        return ModMat
    raise ValueError("no tensor backend for rational fields; use a symbolic or prime field")
