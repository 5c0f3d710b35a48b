"""Closed-form Laplace-Beltrami eigenvalues over generalised partitions.

Eigenvalues are built as Laurent polynomials in (t, z) and then specialised
to the requested parameter regime:

* GL, symbolic z: kept as a polynomial in (t, z);
* GL, rational z: z replaced by the rational number;
* GL, root of unity: t = w^N, z = xi w^2 with xi a primitive (mN)-th root of
  unity, so that z^N t^-2 = xi^N is a primitive m-th root of unity;
* SL: t = w^N, z = w^2;
* B/C/D: univariate in t with z = +1 or -1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactfield import Cyclo, LPoly, qint
from .partitions import GenPartition, GroupSpec, Window, enumerate_partitions

__all__ = [
    "SpectralParams", "EigenRecord", "ConsistencyError", "WrongFamilyError",
    "e_tau", "f_lambda_mu", "eigen_a", "eigen_bcd", "regularity_value",
    "zero_scan", "ZeroScan", "limit_values", "limit_checks", "recursion_check",
    "lim1_formula", "lim2_formula", "e_bcd",
    "determinant_data", "cohomology_prediction", "poincare_product",
]


class ConsistencyError(AssertionError):
    """Two independent codings of the same quantity disagree."""


class WrongFamilyError(ValueError):
    pass


T, Z = 0, 1


def _tz(a=0, b=0, c=1):
    return LPoly({(a, b): c}, 2)


def _qn(n):
    return qint(n, 2, T)


@dataclass(frozen=True)
class SpectralParams:
    """Parameter regime for eigenvalue evaluation.

    z is "symbolic", a Fraction, or ("root", m); for the B/C/D families z is
    +1 or -1; ``branch`` selects xi = zeta_{mN}^(1 + m*branch) in root mode.
    """
    group: GroupSpec
    z: object = "symbolic"
    tau: int = 1
    branch: int = 0

    def __post_init__(self):
        if self.tau not in (1, -1):
            raise ValueError("tau must be +1 or -1")
        fam = self.group.family
        if fam in ("oq", "soq", "spq"):
            if self.z not in (1, -1, Fraction(1), Fraction(-1)):
                raise ValueError("B/C/D families need z = +1 or -1")
        elif fam == "slq":
            if self.z != "symbolic":
                raise ValueError("the SL family fixes z through z^N = q^2")
        else:
            if isinstance(self.z, tuple):
                if self.z[0] != "root" or int(self.z[1]) < 1:
                    raise ValueError("root-of-unity mode needs m >= 1")
            elif self.z != "symbolic":
                if Fraction(self.z) == 0:
                    raise ValueError("z must be nonzero")

    @property
    def N(self):
        return self.group.N

    @property
    def mode(self):
        fam = self.group.family
        if fam in ("oq", "soq", "spq"):
            return "bcd"
        if fam == "slq":
            return "sl"
        if isinstance(self.z, tuple):
            return "root"
        if self.z == "symbolic":
            return "symbolic"
        return "rational"

    def describe(self):
        if self.mode == "root":
            return f"root-of-unity:{self.z[1]}"
        return str(self.z)


# ---------------------------------------------------------------------------
# formulas in (t, z)


def e_tau(lam: GenPartition, tau: int, N: int | None = None) -> LPoly:
    """e^tau_lambda(t, z) as a Laurent polynomial in (t, z)."""
    N = N or lam.N
    m = lam.size
    s = LPoly(None, 2)
    for c, sg in lam.contents():
        s = s + _tz(tau * (N + 2 * c), 0, sg)
    inner = _qn(N) + (_tz(1) - _tz(-1)) * s * tau
    return _tz(0, -tau * m) * inner - _qn(N)


def f_lambda_mu(lam: GenPartition, mu: GenPartition, N: int | None = None) -> LPoly:
    """The regularity number F_{lambda mu}(t, z), coded directly."""
    N = N or lam.N
    a, b = lam.size, mu.size
    first = (_tz(0, -b) - 2 + _tz(0, a)) * _qn(N)
    smu = LPoly(None, 2)
    for c, sg in mu.contents():
        smu = smu + _tz(N + 2 * c, 0, sg)
    slam = LPoly(None, 2)
    for c, sg in lam.contents():
        slam = slam + _tz(-N - 2 * c, 0, sg)
    second = (_tz(1) - _tz(-1)) * (_tz(0, -b) * smu - _tz(0, a) * slam)
    return first + second


def e_bcd(lam: GenPartition, eps: int, z: int, N: int | None = None) -> LPoly:
    """e_lambda(t) for the B/C/D families (univariate in t)."""
    N = N or lam.N
    s = LPoly(None, 1)
    for c, sg in lam.contents():
        s = s + qint(N - eps + 2 * c)
    tt = LPoly({(1,): 1}) - LPoly({(-1,): 1})
    return tt * tt * s * (eps * z ** lam.size)


# ---------------------------------------------------------------------------
# specialisation


def _specialize(P: LPoly, params: SpectralParams) -> LPoly:
    mode = params.mode
    N = params.N
    if mode == "symbolic":
        return P
    if mode == "rational":
        z = Fraction(params.z)

        def fn(e):
            f = z ** e[Z]
            if f.denominator == 1:
                f = f.numerator
            return f, (e[T],)
        return P.map(fn, 1)
    if mode == "sl":
        return P.map(lambda e: (1, (N * e[T] + 2 * e[Z],)), 1)
    if mode == "root":
        m = int(params.z[1])
        M = m * N
        k = 1 + m * params.branch
        one = Cyclo.root(M, 0)

        def fn(e):
            return Cyclo.root(M, k * e[Z]), (N * e[T] + 2 * e[Z],)

        out = P.map(fn, 1)
        # make the coefficient ring uniform for printing/equality
        return LPoly({e: (c if isinstance(c, Cyclo) else one * c) for e, c in out.terms.items()}, 1)
    raise WrongFamilyError("B/C/D eigenvalues are univariate already")


def eigen_a(lam: GenPartition, tau: int, params: SpectralParams) -> LPoly:
    """E^tau_lambda in the regime of ``params`` (A-series only)."""
    if not params.group.is_gl_type:
        raise WrongFamilyError("eigen_a needs the GL or SL family")
    if not params.group.admits(lam):
        raise ValueError(f"{lam.label()} is not a label for {params.group.family}")
    return _specialize(e_tau(lam, tau, params.N), params)


def eigen_bcd(lam: GenPartition, params: SpectralParams) -> LPoly:
    if params.group.is_gl_type:
        raise WrongFamilyError("eigen_bcd needs an orthogonal or symplectic family")
    if not params.group.admits(lam):
        raise ValueError(f"{lam.label()} is not a label for {params.group.family}")
    return e_bcd(lam, params.group.epsilon, int(params.z), params.N)


@dataclass
class EigenRecord:
    lam: GenPartition
    mu: GenPartition
    E_minus: LPoly
    E_plus: LPoly
    E: LPoly
    F: LPoly | None
    is_zero: bool

    def names(self):
        return ("t", "z") if self.E.nvars == 2 else ("q",)


def regularity_value(lam: GenPartition, mu: GenPartition, params: SpectralParams) -> EigenRecord:
    """E_{lambda mu} = E^-_lambda + E^+_mu, checked against F_{lambda mu}."""
    if params.mode == "bcd":
        el = eigen_bcd(lam, params)
        em = eigen_bcd(mu, params)
        E = el + em
        return EigenRecord(lam, mu, el, em, E, None, E.is_zero())
    em_ = eigen_a(lam, -1, params)
    ep_ = eigen_a(mu, 1, params)
    E = em_ + ep_
    F = None
    if params.group.family == "glq":
        F = _specialize(f_lambda_mu(lam, mu, params.N), params)
        if not (E - F).is_zero():
            raise ConsistencyError(f"E != F at {lam.label()}, {mu.label()}")
    return EigenRecord(lam, mu, em_, ep_, E, F, E.is_zero())


@dataclass
class ZeroScan:
    params: SpectralParams
    window: Window
    records: list
    zeros: list
    zeros_parity: list = field(default_factory=list)
    branches_agree: bool = True


def zero_scan(params: SpectralParams, window: Window, keep_records=True) -> ZeroScan:
    """All pairs (lambda, mu) in the window with E_{lambda mu} = 0.

    In root-of-unity mode every branch xi*eta (eta^N = 1) is scanned and the
    branches must agree. For B/C/D the parity-filtered subset
    (|lambda| = |mu| mod 2) is reported alongside the raw set.
    """
    labels = enumerate_partitions(params.group, window)
    branches = [params.branch]
    if params.mode == "root":
        branches = list(range(params.N))
    records, zeros = [], None
    agree = True
    for b in branches:
        p = SpectralParams(params.group, params.z, params.tau, b)
        # per-label eigenvalues, then pairwise sums
        em = {l: (eigen_bcd(l, p) if p.mode == "bcd" else eigen_a(l, -1, p)) for l in labels}
        ep = {l: (eigen_bcd(l, p) if p.mode == "bcd" else eigen_a(l, 1, p)) for l in labels}
        zs = []
        for l in labels:
            for m in labels:
                E = em[l] + ep[m]
                if b == branches[0] and keep_records:
                    records.append(EigenRecord(l, m, em[l], ep[m], E, None, E.is_zero()))
                if E.is_zero():
                    zs.append((l, m))
        if zeros is None:
            zeros = zs
        elif zs != zeros:
            agree = False
    parity = [(l, m) for l, m in zeros if (l.size - m.size) % 2 == 0]
    return ZeroScan(params, window, records, zeros, parity, agree)


# ---------------------------------------------------------------------------
# t -> 1 limits


def _series_at_one(P: LPoly):
    """Taylor coefficients a0, a1, a2 of P(s) at s = 1 (P univariate)."""
    a0 = a1 = a2 = Fraction(0)
    for (e,), c in P.terms.items():
        a0 += c
        a1 += c * e
        a2 += Fraction(c * e * (e - 1), 2)
    return a0, a1, a2


def limit_values(lam: GenPartition, N: int | None = None):
    """(E~+, E~-) = lim_{t->1} (t - t^-1)^-2 e^tau(t, t^{2/N}).

    With s = t^{1/N} the numerator is a Laurent polynomial in s and
    (t - t^-1)^2 = (2N)^2 (s-1)^2 + O((s-1)^3).
    """
    N = N or lam.N
    out = []
    for tau in (1, -1):
        P = e_tau(lam, tau, N).map(lambda e: (1, (N * e[T] + 2 * e[Z],)), 1)
        a0, a1, a2 = _series_at_one(P)
        if a0 or a1:
            raise ConsistencyError("numerator does not vanish to second order")
        out.append(a2 / (4 * N * N))
    return tuple(out)


def lim2_formula(lam: GenPartition) -> Fraction:
    N, m, c = lam.N, lam.size, lam.signed_content_sum()
    return Fraction(m * N * N + 2 * c * N - m * m, 2 * N)


def lim1_formula(lam: GenPartition) -> Fraction:
    N = lam.N
    mm = lam.multiplicities()
    tot = Fraction(0)
    for i in range(1, N):
        mi = mm[i - 1]
        inner = i * (mi + N) + 2 * sum(j * mm[j - 1] for j in range(1, i))
        tot += Fraction((N - i) * mi, N) * inner
    return tot


def limit_checks(lam: GenPartition, N: int | None = None) -> bool:
    """Series limits equal the closed form, and the m_i-sum is their total."""
    ep, em = limit_values(lam, N)
    f = lim2_formula(lam)
    return ep == em == f and lim1_formula(lam) == 2 * f


def recursion_check(lam: GenPartition, tau: int, N: int | None = None) -> bool:
    """e_{lambda+(1^N)} + [N] == t^{2 tau} z^{-N tau} (e_lambda + [N])."""
    N = N or lam.N
    lhs = e_tau(lam.shift(1), tau, N) + _qn(N)
    rhs = _tz(2 * tau, -N * tau) * (e_tau(lam, tau, N) + _qn(N))
    return (lhs - rhs).is_zero()


# ---------------------------------------------------------------------------


@dataclass
class DeterminantData:
    coefficient: LPoly
    closed: bool


def determinant_data(params: SpectralParams) -> DeterminantData:
    """Coefficient c with d(D) = c * D * omega_0 and whether D is closed."""
    fam = params.group.family
    N = params.N
    if fam == "slq":
        return DeterminantData(LPoly(None, 1), True)
    if fam == "glq":
        c = _tz(2 * params.tau, -params.tau * N) - 1
        c = _specialize(c, params)
        return DeterminantData(c, c.is_zero())
    if fam == "oq":
        z = int(params.z)
        v = Fraction(1, z ** N) - 1
        return DeterminantData(LPoly.const(int(v), 1), v == 0)
    raise WrongFamilyError("determinant data is defined for GL, SL and O")


def poincare_product(N: int) -> list:
    """Coefficients of prod_{i=1}^N (1 + t^{2i-1})."""
    coeffs = [1]
    for i in range(1, N + 1):
        d = 2 * i - 1
        new = coeffs + [0] * d
        for k, c in enumerate(coeffs):
            new[k + d] += c
        coeffs = new
    return coeffs


@dataclass
class CohomologyPrediction:
    degrees: list
    dims: list
    note: str = ""


def cohomology_prediction(params: SpectralParams, coinvariant_dims=None) -> CohomologyPrediction:
    """Predicted de Rham dimensions of the left-coinvariant complex per degree.

    coinvariant_dims defaults to the product formula; pass the charring
    values to tie the prediction to the character computation.
    """
    N = params.N
    dims = list(coinvariant_dims) if coinvariant_dims is not None else poincare_product(N)
    note = ""
    if params.mode == "root":
        m = int(params.z[1])
        note = f"full complex: C[D^{m}, D^-{m}] tensor the coinvariant cohomology"
    elif params.mode == "symbolic" and params.group.family == "glq":
        note = "valid for regular z"
    return CohomologyPrediction(list(range(len(dims))), dims, note)
