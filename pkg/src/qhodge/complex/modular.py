"""Exterior ranks over several random prime fields.

Ranks over F_p never exceed the ranks over Q(q, z), and agree with them for
all but finitely many specialisations; agreement across independently drawn
primes and generator images is the certificate used here.
"""
from __future__ import annotations

import logging
import random

from ..exactfield import FieldSpec, make_field, random_prime
from .checks import Verdict
from .coinvariant import coinvariant_subspace
from .operators import WoronowiczComplex

__all__ = ["modular_fields", "multi_prime_exterior"]

log = logging.getLogger(__name__)


def modular_fields(count=3, seed=0, bits=31, base="gl", N=None):
    """``count`` prime fields with distinct primes and random images of q, z."""
    rng = random.Random(seed)
    sym = make_field(FieldSpec.gl() if base == "gl" else FieldSpec.sl(N))
    out, primes = [], set()
    while len(out) < count:
        p = random_prime(rng, bits)
        if p in primes:
            continue
        primes.add(p)
        out.append(make_field(sym.random_modular_spec(rng, prime=p)))
    return out


def multi_prime_exterior(N, top, count=3, seed=0, coinvariant=False) -> Verdict:
    """Exterior dimensions (and optionally coinvariant dimensions) per prime."""
    per = []
    for f in modular_fields(count, seed):
        log.info("building degree <= %d over F_%d", top, f.p)
        cx = WoronowiczComplex(N, f, top)
        row = {"prime": f.p, "dims": {t: cx.towers[t].dims() for t in (1, -1)}}
        if coinvariant:
            row["coinvariant"] = {t: [coinvariant_subspace(cx, k, t).shape[1] for k in range(cx.top + 1)]
                                  for t in (1, -1)}
        per.append(row)
    key = [{k: v for k, v in r.items() if k != "prime"} for r in per]
    agree = all(k == key[0] for k in key)
    return Verdict("multi-prime", agree, {"runs": per, "dims": key[0]["dims"],
                                          "coinvariant": key[0].get("coinvariant")})
