"""qhodge command-line interface.

Reports go to stdout (or --out); progress goes to stderr. Exit status is 0
when every verification in the report passes, 1 when one fails and 2 for
usage errors.
"""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from . import __version__
from . import reports as R
from .partitions import FAMILIES, GenPartition, GroupSpec, Window

log = logging.getLogger("qhodge")

SIGNS = ("+", "-", "both")


def parse_z(text: str, family: str):
    if text is None:
        return 1 if family in ("oq", "soq", "spq") else "symbolic"
    if text == "symbolic":
        return text
    if text.startswith("root-of-unity:"):
        try:
            m = int(text.split(":", 1)[1])
        except ValueError:
            raise R.UsageError("root-of-unity needs an integer order") from None
        return ("root", m)
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise R.UsageError(f"cannot read z={text!r}") from None
    if family in ("oq", "soq", "spq"):
        if v not in (1, -1):
            raise R.UsageError("B/C/D families need z = 1 or -1")
        return int(v)
    return v


def _common(p):
    p.add_argument("--format", choices=R.FORMATS, default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quiet", action="store_true", help="no progress messages")


def _matrix(p, degree_help="largest degree"):
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--field", help="gl-symbolic, sl-w or fp:<prime>:<seed> (default: symbolic for N <= 2)")
    p.add_argument("--group", choices=("glq", "slq"), default="glq")


def build_parser():
    ap = argparse.ArgumentParser(prog="qhodge", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="eigenvalues E^tau_lambda or Laplacian blocks")
    p.add_argument("--group", choices=FAMILIES, default="glq")
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--z")
    p.add_argument("--lambda", dest="lam", help="a single label, e.g. 2,-1")
    p.add_argument("--max-boxes", type=int, default=2)
    p.add_argument("--tau", choices=SIGNS, default="both")
    p.add_argument("--sign", choices=SIGNS, default="both")
    p.add_argument("--degree", type=int, help="compare the Laplacian in this degree instead")
    p.add_argument("--field")
    _common(p)

    p = sub.add_parser("regularity", help="zero set of E_{lambda mu} over a window")
    p.add_argument("--group", choices=FAMILIES, default="glq")
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--z")
    p.add_argument("--max-boxes", type=int)
    p.add_argument("--window", type=int, help="bound on |parts|")
    _common(p)

    p = sub.add_parser("root-of-unity", help="zero set for z^N q^-2 a primitive m-th root of unity")
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--window", type=int, help="bound on |parts| (default 2m)")
    _common(p)

    p = sub.add_parser("poincare", help="coinvariant series from characters")
    p.add_argument("--group", choices=FAMILIES, default="glq")
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--matrix-degree", type=int, help="also count with the matrix engine up to this degree")
    p.add_argument("--field")
    _common(p)

    p = sub.add_parser("exterior", help="ranks, harmonic and coinvariant dimensions per degree")
    _matrix(p)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--tau", choices=SIGNS, default="both")
    _common(p)

    p = sub.add_parser("hodge", help="Hodge decomposition in one degree")
    _matrix(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--sign", choices=SIGNS, default="+")
    p.add_argument("--tau", choices=SIGNS, default="+")
    _common(p)

    p = sub.add_parser("braid-check", help="braid, Hecke, metric and contraction identities")
    _matrix(p)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--antisym-degree", type=int, help="antisymmetrizer oracle up to this degree")
    _common(p)

    p = sub.add_parser("duality-check", help="d and the codifferential are adjoint under the pairing")
    _matrix(p)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--sign", choices=SIGNS, default="both")
    p.add_argument("--tau", choices=SIGNS, default="both")
    _common(p)
    return ap


def _field(a):
    spec = a.field
    if spec is None and getattr(a, "group", "glq") == "slq":
        spec = "sl-w"
    if a.group == "slq" and spec not in ("sl-w",):
        raise R.UsageError("the slq group uses --field sl-w")
    return R.resolve_field(spec, a.N, a.seed)


def run(a) -> R.Report:
    if a.N < 1:
        raise R.UsageError("N must be positive")
    cfg = {"command": a.command, "N": a.N, "seed": a.seed}
    cmd = a.command
    if cmd == "spectrum":
        group = GroupSpec(a.group, a.N)
        if a.degree is not None:
            if a.group != "glq":
                raise R.UsageError("Laplacian blocks are computed for glq")
            fc = _field(a)
            cfg.update(field=fc.label, degree=a.degree, tau=a.tau, sign=a.sign)
            return R.complex_spectrum_report(a.N, fc, a.degree, R._taus(a.tau), R._taus(a.sign), cfg)
        z = parse_z(a.z, a.group)
        lam = GenPartition.parse(a.lam, a.N) if a.lam else None
        if a.max_boxes < 0:
            raise R.UsageError("window bounds must be nonnegative")
        cfg.update(group=a.group, z=_zs(z), tau=a.tau)
        cfg["lambda" if lam else "max_boxes"] = lam.label() if lam else a.max_boxes
        return R.spectrum_report(group, z, lam, a.max_boxes, R._taus(a.tau), cfg)
    if cmd == "regularity":
        group = GroupSpec(a.group, a.N)
        z = parse_z(a.z, a.group)
        mb = a.max_boxes
        if mb is None and a.window is None:
            mb = a.N + 2 if a.group in ("oq", "soq", "spq") else 6
        if (mb is not None and mb <= 0) or (a.window is not None and a.window <= 0):
            raise R.UsageError("window bounds must be positive")
        cfg.update(group=a.group, z=_zs(z), max_boxes=mb, window=a.window)
        return R.regularity_report(group, z, Window(max_boxes=mb, max_part=a.window), cfg)
    if cmd == "root-of-unity":
        if a.m < 1:
            raise R.UsageError("m must be positive")
        w = 2 * a.m if a.window is None else a.window
        if w <= 0:
            raise R.UsageError("window bounds must be positive")
        cfg.update(m=a.m, window=w)
        return R.root_of_unity_report(a.N, a.m, w, cfg)
    if cmd == "poincare":
        group = GroupSpec(a.group, a.N)
        fc = None
        if a.matrix_degree is not None:
            if a.group != "glq":
                raise R.UsageError("the matrix engine is used for glq")
            fc = _field(a)
            cfg["field"] = fc.label
        cfg.update(group=a.group, max_degree=a.max_degree, matrix_degree=a.matrix_degree)
        return R.poincare_report(group, a.max_degree, a.matrix_degree, fc, cfg)
    fc = _field(a)
    cfg.update(group=a.group, field=fc.label)
    if cmd == "exterior":
        top = a.max_degree if a.max_degree is not None else (a.N ** 2 if a.N <= 2 else 3)
        cfg.update(max_degree=top, tau=a.tau)
        return R.exterior_report(a.N, fc, top, R._taus(a.tau), cfg)
    if cmd == "hodge":
        cfg.update(degree=a.degree, tau=a.tau, sign=a.sign)
        return R.hodge_report(a.N, fc, a.degree, R._taus(a.tau), R._taus(a.sign), cfg)
    if cmd == "braid-check":
        top = a.max_degree if a.max_degree is not None else (a.N ** 2 if a.N <= 2 else 2)
        anti = a.antisym_degree if a.antisym_degree is not None else (3 if a.N <= 2 else 2)
        cfg.update(max_degree=top, antisym_degree=anti)
        return R.braid_report(a.N, fc, top, anti, cfg)
    if cmd == "duality-check":
        top = a.max_degree if a.max_degree is not None else min(3, a.N ** 2)
        cfg.update(max_degree=top, tau=a.tau, sign=a.sign)
        return R.duality_report(a.N, fc, top, R._taus(a.tau), R._taus(a.sign), cfg)
    raise R.UsageError(f"unknown command {cmd}")


def _zs(z):
    if isinstance(z, tuple):
        return f"root-of-unity:{z[1]}"
    return str(z)


def main(argv=None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    # own handler so progress reaches stderr whatever the host logging setup is
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.WARNING if a.quiet else logging.INFO)
    log.propagate = False
    try:
        return _main(ap, a)
    finally:
        log.removeHandler(handler)


def _main(ap, a) -> int:
    try:
        rep = run(a)
    except (R.UsageError, ValueError) as e:
        ap.print_usage(sys.stderr)
        print(f"qhodge: error: {e}", file=sys.stderr)
        return 2
    data = R.emit(rep, a.format)
    if a.out:
        with open(a.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    for name in rep.failing:
        log.warning("failed: %s", name)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
