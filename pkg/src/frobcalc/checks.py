"""Identity suite over a seeded random corpus (the ``check`` subcommand).

Every identity here is a theorem for polynomial rings, so a failure points at
an implementation bug; the first failing instance is kept as a witness.
"""

from __future__ import annotations

import random

from .content import (
    SplitContext,
    content_additivity_check,
    frobenius_content,
    weak_content_check,
)
from .corpus import random_ideal, random_poly
from .frobenius import bracket_power, frobenius_root, if_identity_check, psi, root_additivity_check
from .groebner import Ideal
from .ring import RingContext

PRIMES = (2, 3, 5)


class _Tally:
    def __init__(self):
        self.rows = {}

    def record(self, name, ok, witness):
        row = self.rows.setdefault(name, {"passed": 0, "failed": 0, "first_failure": None})
        if ok:
            row["passed"] += 1
        else:
            row["failed"] += 1
            if row["first_failure"] is None:
                row["first_failure"] = witness


def _ideal_witness(**ideals):
    return {k: v.to_dict() for k, v in ideals.items()}


def _root_identities(tally, ctx, rng):
    p = ctx.p
    I = random_ideal(ctx, rng, max_gens=2, max_deg=5)
    q = rng.choice([p, p * p])
    root = frobenius_root(I, q)
    tally.record("root_containment", I.issubset(bracket_power(root, q)), _ideal_witness(I=I))
    composed = frobenius_root(frobenius_root(I, p), p)
    tally.record("root_composition", composed == frobenius_root(I, p * p), _ideal_witness(I=I))
    f = random_poly(ctx, rng, 2, 2)
    twisted = frobenius_root(Ideal(ctx, [f.frobenius(q) * g for g in I.gens]), q)
    scaled = Ideal(ctx, [f * g for g in root.gens])
    tally.record("skew_linearity", twisted == scaled, {"f": str(f), "q": q, **_ideal_witness(I=I)})
    x = ctx.gens()[rng.randrange(ctx.nvars)]
    m = rng.randint(1, 2)
    local = frobenius_root(Ideal(ctx, [x ** (q * m) * g for g in I.gens]), q)
    tally.record(
        "localization_proxy",
        local == Ideal(ctx, [x**m * g for g in root.gens]),
        {"var": str(x), "m": m, "q": q, **_ideal_witness(I=I)},
    )
    J = random_ideal(ctx, rng, max_gens=2, max_deg=5)
    res = root_additivity_check(I, J, q)
    tally.record("root_additivity", res.ok, res.witness)
    bridged = frobenius_content(f, 1) == frobenius_root(Ideal(ctx, [f]), p)
    tally.record("frobenius_content_bridge", bridged, {"f": str(f)})


def _flatness_identity(tally, ctx, rng):
    family = [random_ideal(ctx, rng, max_gens=2, max_deg=3, max_terms=3) for _ in range(rng.randint(2, 4))]
    res = if_identity_check(family, ctx.p)
    tally.record("intersection_flatness", res.ok, res.witness)


def _content_identities(tally, p, rng):
    base = ["u", "v"][: rng.randint(1, 2)]
    ctx = RingContext(p, base + ["x"])
    split = SplitContext(ctx, tuple(base))
    f = random_poly(ctx, rng, 3, 3)
    g = random_poly(ctx, rng, 3, 3)
    res = content_additivity_check([f, g], split, seed=rng.randrange(2**31))
    tally.record("content_additivity", res.ok, res.witness)
    res = weak_content_check(f, g, split)
    tally.record("weak_content", res.ok, res.witness)


def run_identity_suite(seed: int = 0, count: int = 20) -> dict:
    """Run each identity family ``count`` times; returns the per-identity tally."""
    rng = random.Random(seed)
    tally = _Tally()
    for _ in range(count):
        p = rng.choice(PRIMES)
        ctx = RingContext(p, ("x", "y"))
        _root_identities(tally, ctx, rng)
        _flatness_identity(tally, ctx, rng)
        _content_identities(tally, p, rng)
    for t in (2, 3, 5, 7, 9):
        for s in range(21):
            tally.record("psi_recurrence", psi(s + 1, t) == t * psi(s, t) + 1, {"s": s, "t": t})
    return dict(sorted(tally.rows.items()))
