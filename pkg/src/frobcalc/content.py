"""Ohm-Rush content for polynomial extensions R = F_p[base] -> S = R[ext].

S is free over R with the ext-monomials as basis, so the content c(f) of f
is the ideal of R generated by its coefficients in the ext variables.  Content
ideals are kept as ideals of the whole ring S generated by base-only
polynomials; extension from R to S is faithful, so equality, containment and
radical membership can be decided there.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import FrobcalcError
from .frobenius import CheckResult, validate_q
from .groebner import Ideal, ideal_product, radical_membership
from .ring import Polynomial, RingContext


@dataclass(frozen=True)
class SplitContext:
    """``ctx`` with its variables partitioned into base and extension blocks."""

    ctx: RingContext
    base: tuple

    def __post_init__(self):
        base = tuple(self.base)
        unknown = set(base) - set(self.ctx.vars)
        if unknown:
            raise FrobcalcError(f"base variables {sorted(unknown)} are not ring variables")
        if len(set(base)) != len(base):
            raise FrobcalcError("repeated base variable")
        object.__setattr__(self, "base", tuple(v for v in self.ctx.vars if v in base))

    @classmethod
    def parse(cls, ctx: RingContext, base_text: str) -> "SplitContext":
        return cls(ctx, tuple(v.strip() for v in base_text.split(",") if v.strip()))

    @property
    def ext(self) -> tuple:
        return tuple(v for v in self.ctx.vars if v not in self.base)

    @property
    def base_mask(self) -> tuple:
        return tuple(v in self.base for v in self.ctx.vars)

    def coefficients(self, f: Polynomial) -> dict:
        """{ext exponent vector: base-only coefficient polynomial}."""
        if f.ctx != self.ctx:
            raise FrobcalcError("polynomial from a different ring")
        mask = self.base_mask
        grouped = {}
        for m, c in f.terms.items():
            ext_part = tuple(0 if b else e for b, e in zip(mask, m))
            base_part = tuple(e if b else 0 for b, e in zip(mask, m))
            grouped.setdefault(ext_part, {})[base_part] = c
        return {k: Polynomial(self.ctx, v, _trusted=True) for k, v in grouped.items()}

    def is_base(self, f: Polynomial) -> bool:
        mask = self.base_mask
        return all(not e or b for m in f.terms for b, e in zip(mask, m))


@dataclass(frozen=True)
class ContentIdeal:
    split: SplitContext
    ideal: Ideal

    def __post_init__(self):
        for g in self.ideal.gens:
            if not self.split.is_base(g):
                raise FrobcalcError(f"content generator {g} involves extension variables")

    def __eq__(self, other):
        if not isinstance(other, ContentIdeal):
            return NotImplemented
        return self.ideal == other.ideal

    def __hash__(self):
        return hash(self.ideal)

    def to_dict(self) -> dict:
        d = self.ideal.basis_dict()
        d["base"] = list(self.split.base)
        return d


def poly_content(f: Polynomial, split: SplitContext) -> ContentIdeal:
    coeffs = split.coefficients(f)
    gens = sorted(coeffs.values(), key=lambda g: g.sort_key())
    return ContentIdeal(split, Ideal(split.ctx, gens))


def content_witness(f: Polynomial, split: SplitContext):
    """Pairs (ext monomial, coefficient) with f = sum coefficient * monomial."""
    ctx = split.ctx
    return [(ctx.monomial(m), c) for m, c in sorted(split.coefficients(f).items())]


def _sum_contents(polys, split):
    gens = []
    for f in polys:
        gens.extend(poly_content(f, split).ideal.gens)
    return Ideal(split.ctx, gens)


def content_additivity_check(gens, split: SplitContext, samples: int = 4, seed: int = 0) -> CheckResult:
    """c(gens * S) == sum of c(g_i).

    The left side is built from a different generating set of the same
    S-ideal: its reduced basis plus a few random S-combinations.
    """
    gens = [g for g in gens if not g.is_zero()]
    right = _sum_contents(gens, split)
    S_ideal = Ideal(split.ctx, gens)
    rng = random.Random(seed)
    others = list(S_ideal.basis)
    ctx = split.ctx
    for _ in range(samples if gens else 0):
        acc = ctx.zero()
        for g in gens:
            m = tuple(rng.randint(0, 1) for _ in ctx.vars)
            acc = acc + ctx.monomial(m, rng.randint(1, ctx.p - 1) if ctx.p > 2 else 1) * g
        others.append(acc)
    left = _sum_contents(others, split)
    ok = left == right
    return CheckResult(
        "content_additivity",
        ok,
        {"content_of_ideal": left.basis_dict(), "sum_of_contents": right.basis_dict()},
    )


def _same_radical(I: Ideal, J: Ideal) -> bool:
    return all(radical_membership(g, J) for g in I.gens) and all(
        radical_membership(g, I) for g in J.gens
    )


def weak_content_check(f: Polynomial, g: Polynomial, split: SplitContext) -> CheckResult:
    """c(fg) and c(f)c(g) have the same radical."""
    cfg = poly_content(f * g, split).ideal
    prod = ideal_product(poly_content(f, split).ideal, poly_content(g, split).ideal)
    ok = _same_radical(cfg, prod)
    return CheckResult(
        "weak_content",
        ok,
        {"content_of_product": cfg.basis_dict(), "product_of_contents": prod.basis_dict()},
    )


def gaussian_check(f: Polynomial, g: Polynomial, split: SplitContext) -> CheckResult:
    """Whether c(fg) == c(f)c(g) for this pair; a genuine predicate, false is not a bug."""
    cfg = poly_content(f * g, split).ideal
    prod = ideal_product(poly_content(f, split).ideal, poly_content(g, split).ideal)
    return CheckResult(
        "gaussian",
        cfg == prod,
        {"content_of_product": cfg.basis_dict(), "product_of_contents": prod.basis_dict()},
    )


def frobenius_content(f: Polynomial, e: int) -> Ideal:
    """Content of f over the subring of q-th powers, q = p^e.

    Each term c x^b is rewritten as c y^(b div q) z^(b mod q) in a ring with a
    y-block (standing for the q-th powers) and a z-block; the content over the
    y-block, renamed back to x, is the answer.
    """
    ctx = f.ctx
    if not isinstance(e, int) or e < 0:
        raise FrobcalcError(f"e must be a nonnegative integer, got {e!r}")
    q = validate_q(ctx, ctx.p**e)
    n = ctx.nvars
    ys = ctx.fresh_names(n, "y")
    zs = ctx.fresh_names(n, "z")
    big = RingContext(ctx.p, ys + zs, ctx.order)
    terms = {}
    for m, c in f.terms.items():
        terms[tuple(b // q for b in m) + tuple(b % q for b in m)] = c
    split = SplitContext(big, tuple(ys))
    content = poly_content(Polynomial(big, terms, _trusted=True), split)
    back = []
    for g in content.ideal.gens:
        back.append(Polynomial(ctx, {m[:n]: c for m, c in g.terms.items()}, _trusted=True))
    if any(g.is_constant() for g in back):
        return Ideal.unit(ctx)
    return Ideal(ctx, sorted(back, key=lambda g: g.sort_key()))
