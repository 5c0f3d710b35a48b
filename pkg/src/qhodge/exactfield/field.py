"""Exact coefficient fields.

Three kinds of field are supported:

* symbolic: reduced fractions of integer polynomials in (q, z), or in a single
  generator w with q = w^N and z = w^2 (the SL presentation);
* numeric: a prime field F_p with fixed images of the generators;
* rational: the rationals with fixed rational images of the generators.

Symbolic elements are kept in lowest terms with a positive leading
denominator coefficient, so equality is structural and hashing is cheap.
Numeric elements are plain ``flint.nmod`` values, rational ones are
``fractions.Fraction``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import flint

__all__ = [
    "FieldSpec", "Field", "SymbolicField", "ModularField", "RationalField",
    "FieldElement", "make_field", "specialize", "SpecializationError",
    "random_prime",
]


class SpecializationError(ArithmeticError):
    """Raised when a specialization hits a vanishing denominator."""


@dataclass(frozen=True)
class FieldSpec:
    """Description of a coefficient field.

    mode is one of "gl-symbolic", "sl-symbolic", "numeric", "rational".
    For numeric and rational modes ``base`` says which symbolic presentation
    is being specialised ("gl" or "sl") and ``images`` holds the generator
    images as (name, value) pairs.
    """
    mode: str
    N: int | None = None
    prime: int | None = None
    images: tuple = ()
    base: str = "gl"
    seed: int | None = None

    def __post_init__(self):
        if self.mode not in ("gl-symbolic", "sl-symbolic", "numeric", "rational"):
            raise ValueError(f"unknown field mode {self.mode!r}")
        if self.mode == "sl-symbolic" or self.base == "sl":
            if not self.N or self.N < 1:
                raise ValueError("the SL presentation needs N >= 1")
        if self.mode == "numeric":
            if self.prime is None or not flint.fmpz(self.prime).is_prime():
                raise ValueError("numeric field needs a prime modulus")
        if self.mode in ("numeric", "rational"):
            names = dict(self.images)
            need = ("w",) if self.base == "sl" else ("q", "z")
            for n in need:
                if n not in names:
                    raise ValueError(f"missing image for generator {n}")
                if names[n] == 0 or (self.mode == "numeric" and names[n] % self.prime == 0):
                    raise ValueError("generator images must be nonzero")

    @property
    def image_map(self) -> dict:
        return dict(self.images)

    @staticmethod
    def gl():
        return FieldSpec("gl-symbolic")

    @staticmethod
    def sl(N):
        return FieldSpec("sl-symbolic", N=N, base="sl")


def random_prime(rng: random.Random, bits: int = 61) -> int:
    """A random prime in [2^(bits-1), 2^bits)."""
    while True:
        c = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if flint.fmpz(c).is_prime():
            return c


# ---------------------------------------------------------------------------
# symbolic elements


def _key(p):
    return tuple(sorted(p.to_dict().items()))


class FieldElement:
    """An element of a symbolic field, stored as a reduced fraction num/den."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: "SymbolicField", num, den=None, reduced=False):
        self.field = field
        ctx = field.ctx
        if den is None:
            den = ctx.from_dict({(0,) * ctx.nvars(): 1})
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            if num.is_zero():
                den = field._one_poly
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num / g
                    den = den / g
                if den.leading_coefficient() < 0:
                    num = -num
                    den = -den
        self.num = num
        self.den = den
        self._hash = None

    # construction helpers
    def _new(self, num, den):
        return FieldElement(self.field, num, den)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field.spec != self.field.spec:
                raise TypeError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction, flint.fmpz, flint.fmpq)):
            return self.field(other)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return self._new(self.num + o.num, self.den)
        return self._new(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.num, self.den, reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.num.is_zero() or o.num.is_zero():
            return self.field.zero
        # cross cancellation keeps the intermediate gcds small
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        n1, d2 = (self.num / g1, o.den / g1) if not g1.is_one() else (self.num, o.den)
        n2, d1 = (o.num / g2, self.den / g2) if not g2.is_one() else (o.num, self.den)
        num, den = n1 * n2, d1 * d2
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return FieldElement(self.field, num, den, reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return self._new(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.field, self.num ** e, self.den ** e, reduced=True)

    # comparison
    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.num == o.num and self.den == o.den

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((_key(self.num), _key(self.den)))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    # rendering
    def __str__(self):
        return self.field.to_str(self)

    def __repr__(self):
        return f"FieldElement({self.field.to_str(self)!r})"

    def laurent(self) -> dict:
        """Exponent -> integer coefficient, when the element is a Laurent
        polynomial with integer coefficients. Raises ValueError otherwise."""
        d = self.den.to_dict()
        if len(d) != 1:
            raise ValueError(f"{self} is not a Laurent polynomial")
        (dexp, dc), = d.items()
        out = {}
        for e, c in self.num.to_dict().items():
            c = int(c)
            if c % int(dc):
                raise ValueError(f"{self} has non-integral Laurent coefficients")
            out[tuple(a - b for a, b in zip(e, dexp))] = c // int(dc)
        return out


# ---------------------------------------------------------------------------
# fields


class Field:
    spec: FieldSpec
    names: tuple

    def __call__(self, x):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return not x

    @property
    def N(self):
        return self.spec.N

    def gen(self, name):
        return self.gens_map[name]


class SymbolicField(Field):
    """Reduced fractions over Z[q, z] (GL) or Z[w] (SL with q = w^N, z = w^2)."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        if spec.mode == "gl-symbolic":
            self.names = ("q", "z")
        else:
            self.names = ("w",)
        self.ctx = flint.fmpz_mpoly_ctx.get(self.names, "lex")
        nv = len(self.names)
        self._one_poly = self.ctx.from_dict({(0,) * nv: 1})
        self.one = FieldElement(self, self._one_poly, reduced=True)
        self.zero = FieldElement(self, self.ctx.from_dict({}), reduced=True)
        gens = [FieldElement(self, g, reduced=True) for g in self.ctx.gens()]
        self.gens_map = dict(zip(self.names, gens))
        if spec.mode == "gl-symbolic":
            self.q, self.z = gens
        else:
            self.w = gens[0]
            self.q = self.w ** spec.N
            self.z = self.w ** 2
        self.gens_map.setdefault("q", self.q)
        self.gens_map.setdefault("z", self.z)

    @property
    def symbolic(self):
        return True

    def __call__(self, x):
        if isinstance(x, FieldElement):
            return x
        if isinstance(x, (Fraction, flint.fmpq)):
            x = Fraction(int(x.numerator if isinstance(x, Fraction) else x.p),
                         int(x.denominator if isinstance(x, Fraction) else x.q))
            nv = len(self.names)
            return FieldElement(self, self.ctx.from_dict({(0,) * nv: x.numerator}),
                                self.ctx.from_dict({(0,) * nv: x.denominator}))
        nv = len(self.names)
        return FieldElement(self, self.ctx.from_dict({(0,) * nv: int(x)}), reduced=True)

    def monomial(self, exps: dict | tuple, coeff=1):
        """coeff * prod gen^e for integer (possibly negative) exponents."""
        if isinstance(exps, dict):
            exps = tuple(exps.get(n, 0) for n in self.names)
        pos = tuple(max(e, 0) for e in exps)
        neg = tuple(max(-e, 0) for e in exps)
        return FieldElement(self, self.ctx.from_dict({pos: coeff}), self.ctx.from_dict({neg: 1}))

    def from_laurent(self, terms: dict):
        """Inverse of FieldElement.laurent."""
        if not terms:
            return self.zero
        nv = len(self.names)
        low = tuple(min(e[i] for e in terms) for i in range(nv))
        low = tuple(min(v, 0) for v in low)
        num = self.ctx.from_dict({tuple(a - b for a, b in zip(e, low)): c for e, c in terms.items() if c})
        den = self.ctx.from_dict({tuple(-b for b in low): 1})
        return FieldElement(self, num, den)

    def to_str(self, x: FieldElement) -> str:
        """Canonical rendering "num/den" (denominator omitted when 1);
        monomials are printed in lexicographic order."""
        num = str(x.num)
        if x.den.is_one():
            return num
        return f"({num})/({x.den})"

    def parse(self, s: str) -> FieldElement:
        s = s.strip()
        if "/" in s:
            a, b = s.split("/", 1)
            return self._parse_poly(a) / self._parse_poly(b)
        return self._parse_poly(s)

    def _parse_poly(self, s: str):
        s = s.strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        s = s.replace(" ", "").replace("-", "+-")
        total = self.zero
        for term in s.split("+"):
            if not term:
                continue
            c = 1
            if term.startswith("-"):
                c, term = -1, term[1:]
            val = self(c)
            for f in term.split("*"):
                if not f:
                    continue
                if "^" in f:
                    base, e = f.split("^")
                    val = val * self.gens_map[base] ** int(e)
                elif f in self.gens_map:
                    val = val * self.gens_map[f]
                else:
                    val = val * int(f)
            total = total + val
        return total

    def random_modular_spec(self, rng: random.Random, prime=None, order_bound=64):
        """A numeric FieldSpec specialising this field at random images."""
        p = prime or random_prime(rng)
        while True:
            imgs = tuple((n, rng.randrange(2, p - 1)) for n in self.names)
            key = "w" if self.spec.mode == "sl-symbolic" else "q"
            g = dict(imgs)[key]
            x, ok = 1, True
            for _ in range(order_bound):
                x = x * g % p
                if x == 1:
                    ok = False
                    break
            if ok:
                base = "sl" if self.spec.mode == "sl-symbolic" else "gl"
                return FieldSpec("numeric", N=self.spec.N, prime=p, images=imgs, base=base)


class ModularField(Field):
    """F_p with fixed generator images; elements are flint.nmod."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.prime
        imgs = spec.image_map
        self.one = flint.nmod(1, self.p)
        self.zero = flint.nmod(0, self.p)
        if spec.base == "sl":
            self.names = ("w",)
            self.w = flint.nmod(imgs["w"], self.p)
            self.q = self.w ** spec.N
            self.z = self.w ** 2
            self.gens_map = {"w": self.w, "q": self.q, "z": self.z}
        else:
            self.names = ("q", "z")
            self.q = flint.nmod(imgs["q"], self.p)
            self.z = flint.nmod(imgs["z"], self.p)
            self.gens_map = {"q": self.q, "z": self.z}

    symbolic = False

    def __call__(self, x):
        if isinstance(x, flint.nmod):
            return x
        if isinstance(x, Fraction):
            return flint.nmod(x.numerator, self.p) / flint.nmod(x.denominator, self.p)
        return flint.nmod(int(x), self.p)

    def to_str(self, x) -> str:
        return str(int(x))

    def monomial(self, exps, coeff=1):
        if isinstance(exps, dict):
            exps = tuple(exps.get(n, 0) for n in self.names)
        v = self(coeff)
        for n, e in zip(self.names, exps):
            v = v * self.gens_map[n] ** e
        return v


class RationalField(Field):
    """Q with fixed rational generator images; elements are Fraction."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        imgs = {k: Fraction(v) for k, v in spec.image_map.items()}
        self.one = Fraction(1)
        self.zero = Fraction(0)
        if spec.base == "sl":
            self.names = ("w",)
            self.w = imgs["w"]
            self.q = self.w ** spec.N
            self.z = self.w ** 2
            self.gens_map = {"w": self.w, "q": self.q, "z": self.z}
        else:
            self.names = ("q", "z")
            self.q, self.z = imgs["q"], imgs["z"]
            self.gens_map = {"q": self.q, "z": self.z}

    symbolic = False

    def __call__(self, x):
        return Fraction(x)

    def to_str(self, x) -> str:
        return str(Fraction(x))

    def monomial(self, exps, coeff=1):
        if isinstance(exps, dict):
            exps = tuple(exps.get(n, 0) for n in self.names)
        v = Fraction(coeff)
        for n, e in zip(self.names, exps):
            v = v * self.gens_map[n] ** e
        return v


_CACHE: dict = {}


def make_field(spec: FieldSpec) -> Field:
    """Field for a spec; identical specs return the same object."""
    f = _CACHE.get(spec)
    if f is None:
        if spec.mode in ("gl-symbolic", "sl-symbolic"):
            f = SymbolicField(spec)
        elif spec.mode == "numeric":
            f = ModularField(spec)
        else:
            f = RationalField(spec)
        _CACHE[spec] = f
    return f


def _eval_poly(p, values, reduce=None):
    if reduce is not None:
        # evaluate term by term mod p
        acc = 0
        for e, c in p.to_dict().items():
            t = int(c) % reduce
            for v, k in zip(values, e):
                t = t * pow(v, int(k), reduce) % reduce
            acc = (acc + t) % reduce
        return acc
    acc = Fraction(0)
    for e, c in p.to_dict().items():
        t = Fraction(int(c))
        for v, k in zip(values, e):
            t *= v ** int(k)
        acc += t
    return acc


def specialize(x: FieldElement, target: Field):
    """Image of a symbolic element in a numeric or rational field."""
    src = x.field
    spec = target.spec
    if (src.spec.mode == "gl-symbolic") != (spec.base == "gl"):
        raise ValueError("specialization between incompatible presentations")
    if spec.base == "sl" and spec.N != src.spec.N:
        raise ValueError("SL specialization with a different N")
    imgs = spec.image_map
    vals = [imgs[n] for n in src.names]
    if spec.mode == "numeric":
        p = spec.prime
        vals = [int(v) % p for v in vals]
        d = _eval_poly(x.den, vals, p)
        if d == 0:
            raise SpecializationError(f"denominator of {x} vanishes mod {p}")
        n = _eval_poly(x.num, vals, p)
        return flint.nmod(n, p) / flint.nmod(d, p)
    vals = [Fraction(v) for v in vals]
    d = _eval_poly(x.den, vals)
    if d == 0:
        raise SpecializationError(f"denominator of {x} vanishes")
    return _eval_poly(x.num, vals) / d
