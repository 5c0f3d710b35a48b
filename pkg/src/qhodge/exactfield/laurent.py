"""Sparse Laurent polynomials and cyclotomic numbers."""
from __future__ import annotations

from fractions import Fraction

import flint

__all__ = ["LPoly", "Cyclo", "qint"]


class LPoly:
    """Laurent polynomial in ``nvars`` variables, coefficients in any ring.

    Terms are kept as a dict exponent-tuple -> nonzero coefficient.
    """

    __slots__ = ("terms", "nvars")

    def __init__(self, terms=None, nvars=1):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[tuple(e)] = c

    @classmethod
    def const(cls, c, nvars=1):
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def mono(cls, exps, c=1):
        exps = tuple(exps)
        return cls({exps: c}, len(exps))

    def _lift(self, other):
        if isinstance(other, LPoly):
            return other
        return LPoly.const(other, self.nvars)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        r = LPoly(None, self.nvars)
        r.terms = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = LPoly(None, self.nvars)
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, LPoly):
            if not other:
                return LPoly(None, self.nvars)
            r = LPoly(None, self.nvars)
            r.terms = {e: c * other for e, c in self.terms.items() if c * other}
            return r
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                v = c1 * c2 if v is None else v + c1 * c2
                out[e] = v
        return LPoly({e: c for e, c in out.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            (e, c), = self.terms.items()
            inv = Fraction(1, c) if isinstance(c, int) else 1 / c
            if isinstance(inv, Fraction) and inv.denominator == 1:
                inv = inv.numerator
            return LPoly({tuple(-a for a in e): inv}, self.nvars) ** (-k)
        r = LPoly.const(1, self.nvars)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, other):
        other = self._lift(other)
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def map(self, fn, nvars):
        """Substitute monomials: fn(exp) -> (coeff_factor, new_exp)."""
        out = LPoly(None, nvars)
        for e, c in self.terms.items():
            f, ne = fn(e)
            out = out + LPoly({ne: c * f}, nvars)
        return out

    def evaluate(self, values):
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                t = t * (v ** k)
            total = total + t
        return total

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def degree_range(self, var=0):
        es = [e[var] for e in self.terms]
        return (min(es), max(es)) if es else (0, 0)

    def to_str(self, names=("q",)):
        """Human rendering, descending powers of the first variable."""
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(names, e) if k
            )
            parts.append((c, mono))
        s = ""
        for i, (c, mono) in enumerate(parts):
            neg = _is_negative(c)
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{_fmt(a)}*{mono}"
            else:
                body = _fmt(a)
            if i == 0:
                s = ("-" if neg else "") + body
            else:
                s += (" - " if neg else " + ") + body
        return s

    def __str__(self):
        names = ("t", "z", "u", "v")[: self.nvars] if self.nvars > 1 else ("q",)
        return self.to_str(names)

    __repr__ = __str__


def _is_negative(c):
    try:
        return c < 0
    except TypeError:
        return False


def _fmt(c):
    s = str(c)
    if isinstance(c, Cyclo) and ("+" in s or " - " in s):
        return f"({s})"
    return s


def qint(n: int, nvars: int = 1, var: int = 0) -> LPoly:
    """The balanced quantum integer [n] = (t^n - t^-n)/(t - t^-1)."""
    if n == 0:
        return LPoly(None, nvars)
    sign = 1 if n > 0 else -1
    n = abs(n)
    terms = {}
    for j in range(n):
        e = [0] * nvars
        e[var] = n - 1 - 2 * j
        terms[tuple(e)] = sign
    return LPoly(terms, nvars)


# ---------------------------------------------------------------------------


class Cyclo:
    """Element of Q(zeta_M), reduced modulo the M-th cyclotomic polynomial."""

    __slots__ = ("poly", "M")

    _phi: dict = {}

    def __init__(self, poly, M: int):
        phi = Cyclo.phi(M)
        if not isinstance(poly, flint.fmpq_poly):
            poly = flint.fmpq_poly(poly)
        self.poly = poly % phi if poly.degree() >= phi.degree() else poly
        self.M = M

    @classmethod
    def phi(cls, M):
        p = cls._phi.get(M)
        if p is None:
            p = flint.fmpq_poly(flint.fmpz_poly.cyclotomic(M).coeffs())
            cls._phi[M] = p
        return p

    @classmethod
    def root(cls, M, k=1):
        """zeta_M^k."""
        k %= M
        return cls(flint.fmpq_poly([0] * k + [1]), M)

    def _lift(self, o):
        if isinstance(o, Cyclo):
            return o
        return Cyclo(flint.fmpq_poly([Fraction(o).numerator]) / Fraction(o).denominator, self.M)

    def __add__(self, o):
        o = self._lift(o)
        return Cyclo(self.poly + o.poly, self.M)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(-self.poly, self.M)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        return Cyclo(self.poly * o.poly, self.M)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers of cyclotomic numbers are not needed")
        r = Cyclo(flint.fmpq_poly([1]), self.M)
        for _ in range(k):
            r = r * self
        return r

    def __bool__(self):
        return not self.poly.is_zero()

    def __eq__(self, o):
        return not (self - o)

    def __hash__(self):
        return hash((str(self.poly), self.M))

    def __str__(self):
        return str(self.poly).replace("x", "zeta")

    __repr__ = __str__
