"""Seeded random polynomials and ideals for the identity checks and tests."""

from __future__ import annotations

import random

from .groebner import Ideal
from .ring import Polynomial, RingContext


def random_monomial(ctx: RingContext, rng: random.Random, max_deg: int):
    deg = rng.randint(0, max_deg)
    exps = [0] * ctx.nvars
    for _ in range(deg):
        exps[rng.randrange(ctx.nvars)] += 1
    return tuple(exps)


def random_poly(
    ctx: RingContext, rng: random.Random, max_deg: int = 4, max_terms: int = 4, constant: bool = True
) -> Polynomial:
    """Nonzero polynomial with up to ``max_terms`` terms of degree <= max_deg."""
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            m = random_monomial(ctx, rng, max_deg)
            if not constant and not any(m):
                continue
            terms[m] = rng.randrange(1, ctx.p)
        f = Polynomial(ctx, terms)
        if not f.is_zero():
            return f


def random_ideal(
    ctx: RingContext, rng: random.Random, max_gens: int = 3, max_deg: int = 4, max_terms: int = 3
) -> Ideal:
    k = rng.randint(1, max_gens)
    return Ideal(ctx, [random_poly(ctx, rng, max_deg, max_terms, constant=False) for _ in range(k)])


def random_combination(I: Ideal, rng: random.Random, max_deg: int = 2) -> Polynomial:
    """Explicit element sum h_i g_i of I with random multipliers."""
    ctx = I.ctx
    acc = ctx.zero()
    for g in I.gens:
        acc = acc + random_poly(ctx, rng, max_deg, 2) * g
    return acc
