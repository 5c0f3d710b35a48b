"""Character arithmetic for rational GL(N) representations.

Characters are symmetric Laurent polynomials in x_1..x_N with integer
coefficients. They are stored as a full monomial dict (exponent tuple ->
coefficient); ``dominant_terms`` gives the orbit-representative view.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .partitions import GenPartition
from .spectral import poincare_product

__all__ = [
    "SymLaurent", "CorepDecomp", "NotACharacterError", "ad_character",
    "exterior_power", "schur_polynomial", "schur_expand", "weyl_dimension",
    "blocks", "BlockData", "bialternant_multiplicity",
]


class NotACharacterError(ValueError):
    pass


class SymLaurent:
    __slots__ = ("terms", "N")

    def __init__(self, terms: dict, N: int):
        self.N = N
        self.terms = {tuple(e): c for e, c in terms.items() if c}

    @classmethod
    def one(cls, N):
        return cls({(0,) * N: 1}, N)

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return SymLaurent(out, self.N)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return SymLaurent({e: c * v for e, v in self.terms.items()}, self.N)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SymLaurent(out, self.N)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SymLaurent) and self.terms == other.terms

    def adams(self, j: int):
        """psi^j: x_i -> x_i^j."""
        return SymLaurent({tuple(j * a for a in e): c for e, c in self.terms.items()}, self.N)

    def shift(self, k: int):
        """Multiply by (x_1 ... x_N)^k."""
        return SymLaurent({tuple(a + k for a in e): c for e, c in self.terms.items()}, self.N)

    def dimension(self) -> int:
        return sum(self.terms.values())

    def is_symmetric(self) -> bool:
        for e, c in self.terms.items():
            for p in set(itertools.permutations(e)):
                if self.terms.get(p, 0) != c:
                    return False
        return True

    def dominant_terms(self) -> dict:
        return {e: c for e, c in self.terms.items() if all(a >= b for a, b in zip(e, e[1:]))}

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return f"SymLaurent({self.dominant_terms()!r}, N={self.N})"


@dataclass
class CorepDecomp:
    parts: list  # list of (GenPartition, multiplicity), sorted

    def __post_init__(self):
        seen = set()
        for lam, m in self.parts:
            if m < 1:
                raise ValueError("multiplicities must be positive")
            if lam in seen:
                raise ValueError("duplicate label")
            seen.add(lam)

    def multiplicity(self, lam: GenPartition) -> int:
        for l, m in self.parts:
            if l == lam:
                return m
        return 0

    def dimension(self) -> int:
        return sum(m * weyl_dimension(l) for l, m in self.parts)

    def as_dict(self):
        return {l: m for l, m in self.parts}


def ad_character(N: int) -> SymLaurent:
    """Character of u tensor u^c, i.e. (sum x_i)(sum x_j^-1)."""
    terms = {}
    for i in range(N):
        for j in range(N):
            e = [0] * N
            e[i] += 1
            e[j] -= 1
            terms[tuple(e)] = terms.get(tuple(e), 0) + 1
    return SymLaurent(terms, N)


def exterior_power(chi: SymLaurent, k: int) -> SymLaurent:
    """Character of the k-th exterior power via Newton's identities."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    N = chi.N
    e = [SymLaurent.one(N)]
    psi = [None] + [chi.adams(j) for j in range(1, k + 1)]
    for n in range(1, k + 1):
        acc = SymLaurent({}, N)
        for j in range(1, n + 1):
            t = psi[j] * e[n - j]
            acc = acc + (t if j % 2 == 1 else t.scale(-1))
        for ex, c in acc.terms.items():
            if c % n:
                raise ArithmeticError("Newton identity produced a non-integral coefficient")
        e.append(SymLaurent({ex: c // n for ex, c in acc.terms.items()}, N))
    return e[k]


def _h(k: int, N: int) -> SymLaurent:
    if k < 0:
        return SymLaurent({}, N)
    terms = {}
    for combo in itertools.combinations_with_replacement(range(N), k):
        e = [0] * N
        for i in combo:
            e[i] += 1
        terms[tuple(e)] = 1
    return SymLaurent(terms, N)


_SCHUR: dict = {}


def schur_polynomial(lam: GenPartition) -> SymLaurent:
    """s_lambda via Jacobi-Trudi, shifted for negative parts."""
    lam_t = tuple(lam.parts)
    hit = _SCHUR.get(lam_t)
    if hit is not None:
        return hit
    N = len(lam_t)
    low = min(lam_t) if lam_t else 0
    shift = min(low, 0)
    mu = [a - shift for a in lam_t]
    total = SymLaurent({}, N)
    for perm in itertools.permutations(range(N)):
        sign = _perm_sign(perm)
        term = SymLaurent.one(N)
        for i in range(N):
            term = term * _h(mu[i] - i + perm[i], N)
            if term.is_zero():
                break
        if not term.is_zero():
            total = total + term.scale(sign)
    out = total.shift(shift)
    _SCHUR[lam_t] = out
    return out


def _perm_sign(p):
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def schur_expand(chi: SymLaurent) -> CorepDecomp:
    """Decompose a character into irreducible characters s_lambda."""
    N = chi.N
    rest = SymLaurent(dict(chi.terms), N)
    out = {}
    guard = 0
    while not rest.is_zero():
        top = max(rest.terms)
        c = rest.terms[top]
        if any(a < b for a, b in zip(top, top[1:])):
            raise NotACharacterError("not symmetric")
        if c < 0:
            raise NotACharacterError(f"negative multiplicity at {top}")
        lam = GenPartition(top)
        out[lam] = out.get(lam, 0) + c
        rest = rest - schur_polynomial(lam).scale(c)
        guard += 1
        if guard > 100000:
            raise RuntimeError("expansion did not terminate")
    return CorepDecomp(sorted(out.items()))


def weyl_dimension(lam: GenPartition) -> int:
    p = lam.parts
    N = len(p)
    num = Fraction(1)
    for i in range(N):
        for j in range(i + 1, N):
            num *= Fraction(p[i] - p[j] + j - i, j - i)
    assert num.denominator == 1
    return int(num)


def bialternant_multiplicity(chi: SymLaurent, lam: GenPartition) -> int:
    """Coefficient of x^(lambda + delta) in chi * a_delta (independent oracle)."""
    N = chi.N
    delta = tuple(N - 1 - i for i in range(N))
    target = tuple(a + d for a, d in zip(lam.parts, delta))
    tot = 0
    for perm in itertools.permutations(range(N)):
        wd = tuple(delta[perm[i]] for i in range(N))
        need = tuple(a - b for a, b in zip(target, wd))
        c = chi.terms.get(need, 0)
        if c:
            tot += _perm_sign(perm) * c
    return tot


@dataclass
class BlockData:
    N: int
    k: int
    decomposition: CorepDecomp
    trivial_multiplicity: int
    dimension: int
    expected_dimension: int
    product_coefficient: int

    @property
    def ok(self):
        return (self.dimension == self.expected_dimension
                and self.trivial_multiplicity == self.product_coefficient)


def blocks(N: int, k: int) -> BlockData:
    """Isotypic decomposition of the k-th exterior power of 1 + ad."""
    if not 0 <= k <= N * N:
        raise ValueError("degree out of range")
    ch = exterior_power(ad_character(N), k)
    dec = schur_expand(ch)
    triv = dec.multiplicity(GenPartition.zero(N))
    prodc = poincare_product(N)
    pc = prodc[k] if k < len(prodc) else 0
    return BlockData(N, k, dec, triv, dec.dimension(), comb(N * N, k), pc)

