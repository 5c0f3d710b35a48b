"""Report assembly and emission for the command-line front end.

Every builder returns a ``Report``; all values inside are already plain
JSON types (field elements and q-polynomials are rendered to canonical
strings), so emission is pure formatting.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import random
from dataclasses import dataclass, field as dc_field
from math import comb

import flint

from . import charring
from .complex import WoronowiczComplex
from .complex.checks import (antisymmetrizer_checks, duality_check, hodge_check,
                             spectrum_crosscheck, structural_suite,
                             weak_isomorphism_check)
from .complex.coinvariant import coinvariant_subspace
from .exactfield import FieldSpec, LPoly, make_field, random_prime
from .exactfield import rank
from .partitions import GenPartition, GroupSpec, Window, enumerate_partitions
from .spectral import (ConsistencyError, SpectralParams, cohomology_prediction,
                       determinant_data, eigen_a, eigen_bcd, limit_checks,
                       poincare_product, recursion_check, regularity_value,
                       zero_scan)

__all__ = [
    "Report", "FieldChoice", "resolve_field", "render", "emit",
    "predicted_zero_set", "spectrum_report", "regularity_report",
    "root_of_unity_report", "poincare_report", "exterior_report",
    "hodge_report", "braid_report", "duality_report", "complex_spectrum_report",
    "UsageError",
]

log = logging.getLogger("qhodge")

FORMATS = ("json", "csv", "text")


class UsageError(ValueError):
    """Invalid combination of options."""


@dataclass
class Report:
    command: str
    config: dict
    columns: list
    rows: list = dc_field(default_factory=list)
    summary: dict = dc_field(default_factory=dict)
    checks: list = dc_field(default_factory=list)
    warnings: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return all(c["ok"] for c in self.checks)

    @property
    def failing(self):
        return [c["name"] for c in self.checks if not c["ok"]]

    def check(self, name, ok, **detail):
        item = {"name": name, "ok": bool(ok)}
        if detail:
            item["detail"] = detail
        self.checks.append(item)
        return bool(ok)

    def as_dict(self):
        return {
            "command": self.command,
            "config": self.config,
            "ok": self.ok,
            "failing": self.failing,
            "summary": self.summary,
            "columns": self.columns,
            "results": [{c: r.get(c) for c in self.columns} for r in self.rows],
            "checks": self.checks,
            "warnings": self.warnings,
        }


# ---------------------------------------------------------------------------
# rendering


def render(x, field=None):
    """Canonical string for polynomials and field elements."""
    if isinstance(x, LPoly):
        names = ("q", "z", "u", "v")[: x.nvars] if x.nvars > 1 else ("q",)
        return x.to_str(names)
    if isinstance(x, GenPartition):
        return x.label()
    if field is not None:
        if getattr(field, "symbolic", False):
            try:
                terms = x.laurent()
            except ValueError:
                return field.to_str(x)
            names = field.names if len(field.names) > 1 else (field.names[0],)
            return LPoly(terms, len(field.names)).to_str(names)
        return field.to_str(x)
    return str(x)


def _plain(v):
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    return render(v)


def emit(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(_plain(report.as_dict()), indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(report.columns)
        for r in report.rows:
            w.writerow([_csv_cell(r.get(c)) for c in report.columns])
        return buf.getvalue().encode()
    if fmt == "text":
        return _text(report).encode()
    raise UsageError(f"unknown format {fmt!r}")


def _csv_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(_plain(v))
    return _plain(v)


def _text(report: Report) -> str:
    out = [f"{report.command}"]
    for k, v in report.config.items():
        out.append(f"  {k}: {_plain(v)}")
    for k, v in report.summary.items():
        out.append(f"{k}: {json.dumps(_plain(v)) if isinstance(v, (list, dict)) else _csv_cell(v)}")
    rows = [[str(_csv_cell(r.get(c))) for c in report.columns] for r in report.rows]
    if rows:
        widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(report.columns)]
        out.append("  ".join(c.ljust(w) for c, w in zip(report.columns, widths)).rstrip())
        for r in rows:
            out.append("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
    for c in report.checks:
        out.append(f"{'PASS' if c['ok'] else 'FAIL'} {c['name']}")
    for w in report.warnings:
        out.append(f"warning: {w}")
    out.append(f"status: {'ok' if report.ok else 'FAILED'}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# configuration helpers


@dataclass
class FieldChoice:
    field: object
    label: str


def resolve_field(spec: str | None, N: int, seed: int) -> FieldChoice:
    """gl-symbolic | sl-w | fp:<prime>:<seed> | None (auto by N)."""
    if spec is None:
        if N <= 2:
            spec = "gl-symbolic"
        else:
            p = random_prime(random.Random(seed), 31)
            spec = f"fp:{p}:{seed}"
    if spec == "gl-symbolic":
        return FieldChoice(make_field(FieldSpec.gl()), spec)
    if spec == "sl-w":
        return FieldChoice(make_field(FieldSpec.sl(N)), spec)
    if spec.startswith("fp:"):
        parts = spec.split(":")
        if len(parts) != 3:
            raise UsageError("fp fields are written fp:<prime>:<seed>")
        try:
            p, s = int(parts[1]), int(parts[2])
        except ValueError:
            raise UsageError("fp fields are written fp:<prime>:<seed>") from None
        if not 257 <= p < 1 << 62 or not flint.fmpz(p).is_prime():
            raise UsageError("fp needs a prime between 257 and 2^62")
        sym = make_field(FieldSpec.gl())
        try:
            fs = sym.random_modular_spec(random.Random(s), prime=p)
        except ValueError as e:
            raise UsageError(str(e)) from None
        return FieldChoice(make_field(fs), spec)
    raise UsageError(f"unknown field {spec!r}")


def _taus(sel):
    return {"+": [1], "-": [-1], "both": [1, -1]}[sel]


def _sgn(x):
    return "+" if x > 0 else "-"


def _check_degree(N, k):
    if k is not None and not 0 <= k <= N * N:
        raise UsageError(f"degree bound must lie in [0, {N * N}]")


def _complex(N, fc: FieldChoice, top, report: Report):
    log.info("building exterior algebra up to degree %d over %s", top, fc.label)
    cx = WoronowiczComplex(N, fc.field, top, truncate=True)
    if cx.capped:
        report.warnings.append(f"resource cap reached, scope limited to degree {cx.top}: {cx.capped}")
    return cx


# ---------------------------------------------------------------------------
# spectral reports


def spectrum_report(group: GroupSpec, z, lam=None, max_boxes=2, taus=(1, -1), config=None) -> Report:
    """Eigenvalues E^tau_lambda of the labels (one label or a box window)."""
    params = SpectralParams(group, z)
    labels = [lam] if lam is not None else enumerate_partitions(group, Window(max_boxes=max_boxes))
    bcd = params.mode == "bcd"
    rep = Report("spectrum", config or {}, ["lambda", "tau", "E"])
    if bcd:
        taus = (1,)
    for l in labels:
        if not group.admits(l):
            raise UsageError(f"{l.label()} is not a label for {group.family}")
        for t in taus:
            p = SpectralParams(group, z, tau=t)
            E = eigen_bcd(l, p) if bcd else eigen_a(l, t, p)
            rep.rows.append({"lambda": l.label(), "tau": _sgn(t), "E": render(E)})
    if group.family == "glq":
        rec = all(recursion_check(l, t) for l in labels for t in (1, -1))
        rep.check("recursion", rec)
        lim = all(limit_checks(l) for l in labels)
        rep.check("limits", lim)
    rep.summary = {"labels": len(labels), "mode": params.mode}
    return rep


def predicted_zero_set(params: SpectralParams, labels):
    """Zero set expected from the regularity classification, or None."""
    N = params.N
    fam = params.group.family
    zero = GenPartition.zero(N)
    trivial = [(zero, zero)] if zero in labels else []
    if params.mode == "bcd":
        if fam == "oq":
            S = [x for x in (zero, GenPartition((1,) * N)) if x in labels]
            return sorted((a, b) for a in S for b in S if (a.size - b.size) % 2 == 0)
        return trivial
    if params.mode == "root":
        m = int(params.z[1])
        S = [l for l in labels if len(set(l.parts)) == 1 and l.parts[0] % m == 0]
        return sorted((a, b) for a in S for b in S)
    if params.mode in ("symbolic", "sl"):
        return trivial
    if params.z == 1:
        return trivial
    return None


def _pairs(ps):
    return [[a.label(), b.label()] for a, b in ps]


def regularity_report(group: GroupSpec, z, window: Window, config=None) -> Report:
    params = SpectralParams(group, z)
    rep = Report("regularity", config or {}, ["lambda", "mu", "E", "is_zero"])
    labels = enumerate_partitions(group, window)
    log.info("scanning %d x %d label pairs", len(labels), len(labels))
    scan = zero_scan(params, window)
    for r in scan.records:
        rep.rows.append({"lambda": r.lam.label(), "mu": r.mu.label(), "E": render(r.E), "is_zero": r.is_zero})
    # the scan sums per-label values; the closed product form is checked
    # against that sum for every pair
    if group.family == "glq":
        ok, bad = True, None
        for a in labels:
            for b in labels:
                try:
                    regularity_value(a, b, params)
                except ConsistencyError:
                    ok, bad = False, (a.label(), b.label())
                    break
            if not ok:
                break
        rep.check("E=F", ok, **({"first_mismatch": list(bad)} if bad else {}))
    if params.mode == "root":
        rep.check("branches-agree", scan.branches_agree)
    zeros = scan.zeros_parity if params.mode == "bcd" else scan.zeros
    pred = predicted_zero_set(params, labels)
    if pred is not None:
        rep.check("zero-set", sorted(zeros) == pred, expected=_pairs(pred))
    rep.summary = {
        "pairs": len(scan.records),
        "zero_set": _pairs(scan.zeros),
        "regular": [(a.label(), b.label()) for a, b in scan.zeros] == [(GenPartition.zero(group.N).label(),) * 2],
    }
    if params.mode == "bcd":
        rep.summary["zero_set_parity"] = _pairs(scan.zeros_parity)
    return rep


def root_of_unity_report(N, m, window: int, config=None) -> Report:
    group = GroupSpec("glq", N)
    params = SpectralParams(group, ("root", m))
    win = Window(max_part=window)
    labels = enumerate_partitions(group, win)
    log.info("scanning %d x %d label pairs over %d branches", len(labels), len(labels), N)
    scan = zero_scan(params, win, keep_records=False)
    rep = Report("root-of-unity", config or {}, ["lambda", "mu"])
    for a, b in scan.zeros:
        rep.rows.append({"lambda": a.label(), "mu": b.label()})
    pred = predicted_zero_set(params, labels)
    rep.check("branches-agree", scan.branches_agree)
    rep.check("zero-set", sorted(scan.zeros) == pred, expected=_pairs(pred))
    dets = {}
    for t in (1, -1):
        dd = determinant_data(SpectralParams(group, ("root", m), tau=t))
        dets[_sgn(t)] = {"coefficient": render(dd.coefficient), "closed": dd.closed}
    pr = cohomology_prediction(params)
    rep.summary = {"pairs": len(labels) ** 2, "zeros": len(scan.zeros), "determinant": dets,
                   "coinvariant_series": pr.dims, "note": pr.note}
    return rep


# ---------------------------------------------------------------------------
# characters


def poincare_report(group: GroupSpec, max_degree=None, matrix_degree=None, fc=None, config=None) -> Report:
    """Coinvariant dimensions from characters, the product formula and,
    optionally, the matrix engine."""
    if group.family not in ("glq", "slq"):
        raise UsageError("coinvariant series are available for glq and slq only")
    N = group.N
    top = N * N if max_degree is None else max_degree
    _check_degree(N, top)
    cols = ["degree", "dim", "binomial", "coinvariant", "product"]
    if matrix_degree is not None:
        cols.append("matrix")
    rep = Report("poincare", config or {}, cols)
    prod = poincare_product(N)
    cx = None
    if matrix_degree is not None:
        _check_degree(N, matrix_degree)
        cx = _complex(N, fc, min(matrix_degree, top), rep)
    for k in range(top + 1):
        log.info("character of degree %d", k)
        b = charring.blocks(N, k)
        row = {"degree": k, "dim": b.dimension, "binomial": comb(N * N, k),
               "coinvariant": b.trivial_multiplicity, "product": prod[k] if k < len(prod) else 0}
        rep.check(f"characters-{k}", b.ok)
        if cx is not None:
            if k <= cx.top:
                dims = {coinvariant_subspace(cx, k, t).shape[1] for t in (1, -1)}
                row["matrix"] = dims.pop() if len(dims) == 1 else None
                rep.check(f"matrix-{k}", row["matrix"] == row["coinvariant"])
        rep.rows.append(row)
    rep.summary = {"coinvariant_series": [r["coinvariant"] for r in rep.rows], "product": prod}
    return rep


# ---------------------------------------------------------------------------
# matrix engine


def _exterior_rows(cx, k, tau):
    f = cx.field
    r = cx.dim(k, tau)
    row = {"tau": _sgn(tau), "degree": k, "dim": r}
    row["rank_d"] = rank(cx.d(k, tau), f) if (k < cx.top or cx.top == cx.n) else None
    for s in (1, -1):
        key = _sgn(s).replace("+", "plus").replace("-", "minus")
        row[f"rank_del_{key}"] = rank(cx.codifferential(k, tau, s), f) if k >= 1 else 0
    hodge, harm, spec = True, {}, True
    if k == cx.top < cx.n:
        # the Laplacian needs the next degree
        hodge = spec = None
        harm = {"plus": None, "minus": None}
    else:
        for s in (1, -1):
            h = hodge_check(cx, k, tau, s)
            hodge = hodge and h.ok
            harm["plus" if s > 0 else "minus"] = h.harmonic
            spec = spec and spectrum_crosscheck(cx, k, tau, s).ok
    row["dim_harmonic_plus"] = harm["plus"]
    row["dim_harmonic_minus"] = harm["minus"]
    row["dim_coinvariant"] = coinvariant_subspace(cx, k, tau).shape[1]
    row["hodge_ok"] = hodge
    row["spectrum_ok"] = spec
    return row


EXTERIOR_COLUMNS = ["tau", "degree", "dim", "rank_d", "rank_del_plus", "rank_del_minus",
                    "dim_harmonic_plus", "dim_harmonic_minus", "dim_coinvariant",
                    "hodge_ok", "spectrum_ok"]


def exterior_report(N, fc: FieldChoice, max_degree, taus=(1, -1), config=None) -> Report:
    _check_degree(N, max_degree)
    rep = Report("exterior", config or {}, EXTERIOR_COLUMNS)
    cx = _complex(N, fc, min(max_degree + 1, N * N), rep)
    last = min(max_degree, cx.top)
    if last < max_degree:
        rep.warnings.append(f"degrees above {last} were not computed")
    prod = poincare_product(N)
    for tau in taus:
        for k in range(last + 1):
            log.info("degree %d, tau %s", k, _sgn(tau))
            row = _exterior_rows(cx, k, tau)
            rep.rows.append(row)
            rep.check(f"binomial-{_sgn(tau)}{k}", row["dim"] == comb(N * N, k))
            pk = prod[k] if k < len(prod) else 0
            if row["hodge_ok"] is None:
                rep.warnings.append(f"degree {k}: Laplacian checks need degree {k + 1}")
                rep.check(f"coinvariant-{_sgn(tau)}{k}", row["dim_coinvariant"] == pk)
                continue
            rep.check(f"hodge-{_sgn(tau)}{k}", row["hodge_ok"])
            rep.check(f"spectrum-{_sgn(tau)}{k}", row["spectrum_ok"])
            rep.check(f"harmonic=coinvariant-{_sgn(tau)}{k}",
                      row["dim_harmonic_plus"] == row["dim_harmonic_minus"] == row["dim_coinvariant"] == pk)
    rep.summary = {"field": fc.label, "computed_degrees": last,
                   "dims": {_sgn(t): cx.towers[t].dims()[: last + 1] for t in taus}}
    return rep


HODGE_COLUMNS = ["tau", "sign", "degree", "dim", "rank_d_prev", "rank_del_next", "harmonic",
                 "hodge_ok", "rank_d", "rank_del_plus", "rank_del_minus", "dim_harmonic_plus",
                 "dim_harmonic_minus", "dim_coinvariant", "spectrum_ok"]


def hodge_report(N, fc: FieldChoice, degree, taus=(1,), signs=(1,), config=None) -> Report:
    _check_degree(N, degree)
    rep = Report("hodge", config or {}, HODGE_COLUMNS)
    cx = _complex(N, fc, min(degree + 1, N * N), rep)
    if degree > cx.top or (degree == cx.top and cx.top < cx.n):
        raise UsageError(f"degree {degree} is beyond the computable range")
    for tau in taus:
        ext = _exterior_rows(cx, degree, tau)
        for s in signs:
            h = hodge_check(cx, degree, tau, s)
            row = dict(ext)
            row.update({"sign": _sgn(s), "dim": h.dim, "rank_d_prev": h.rank_d_prev,
                        "rank_del_next": h.rank_del_next, "harmonic": h.harmonic, "hodge_ok": h.ok})
            rep.rows.append(row)
            rep.check(f"hodge-{_sgn(tau)}{_sgn(s)}", h.ok)
            rep.check(f"spectrum-{_sgn(tau)}{_sgn(s)}", ext["spectrum_ok"])
    return rep


def braid_report(N, fc: FieldChoice, max_degree, antisym_degree, config=None) -> Report:
    _check_degree(N, max_degree)
    rep = Report("braid-check", config or {}, ["check", "ok", "detail"])
    cx = _complex(N, fc, max_degree, rep)
    log.info("structural identities")
    verdicts = structural_suite(cx)
    verdicts.append(weak_isomorphism_check(cx))
    if antisym_degree:
        log.info("antisymmetrizer oracle up to degree %d", antisym_degree)
        verdicts.append(antisymmetrizer_checks(cx, min(antisym_degree, cx.top)))
    for v in verdicts:
        name = v.name
        if "degree" in v.detail:
            d = v.detail
            name = f"{name}-{_sgn(d['tau'])}{_sgn(d['sign'])}{d['degree']}"
        rep.rows.append({"check": name, "ok": v.ok, "detail": _plain(v.detail)})
        rep.check(name, v.ok)
    rep.summary = {"field": fc.label, "degrees": cx.top}
    return rep


def duality_report(N, fc: FieldChoice, max_degree, taus=(1, -1), signs=(1, -1), config=None) -> Report:
    _check_degree(N, max_degree)
    rep = Report("duality-check", config or {}, ["tau", "sign", "degree", "identity", "pairing_full_rank"])
    cx = _complex(N, fc, min(max_degree + 1, N * N), rep)
    for tau in taus:
        for s in signs:
            for k in range(min(max_degree, cx.top) + 1):
                v = duality_check(cx, k, tau, s)
                rep.rows.append({"tau": _sgn(tau), "sign": _sgn(s), "degree": k,
                                 "identity": v.detail["identity"],
                                 "pairing_full_rank": v.detail["pairing_full_rank"]})
                rep.check(f"duality-{_sgn(tau)}{_sgn(s)}{k}", v.ok)
    return rep


def complex_spectrum_report(N, fc: FieldChoice, degree, taus=(1, -1), signs=(1, -1), config=None) -> Report:
    """Laplacian eigenvalues on one degree against the character prediction."""
    _check_degree(N, degree)
    rep = Report("spectrum", config or {}, ["tau", "sign", "degree", "labels", "eigenvalue",
                                            "multiplicity", "measured"])
    cx = _complex(N, fc, min(degree + 1, N * N), rep)
    if degree > cx.top:
        raise UsageError(f"degree {degree} is beyond the computable range")
    for tau in taus:
        for s in signs:
            sr = spectrum_crosscheck(cx, degree, tau, s)
            for (lab, e, m), got in zip(sr.eigenvalues, sr.measured):
                rep.rows.append({"tau": _sgn(tau), "sign": _sgn(s), "degree": degree, "labels": lab,
                                 "eigenvalue": render(e, fc.field), "multiplicity": m, "measured": got})
            rep.check(f"annihilated-{_sgn(tau)}{_sgn(s)}", sr.annihilated)
            rep.check(f"multiplicities-{_sgn(tau)}{_sgn(s)}", sr.multiplicities_ok)
    return rep
