"""Bracket powers, Frobenius roots of ideals and of free submodules, psi.

Over F_p[x1..xn] the ring is free over its subring of q-th powers with basis
{x^alpha : alpha < q}.  Writing each generator as sum x^alpha * u_alpha^q,
the smallest ideal K with I inside K^[q] is generated by all the u_alpha.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .errors import FrobcalcError, InvalidQError
from .groebner import Ideal, ideal_intersect
from .ring import Polynomial, RingContext, check_q, frobenius_expand

#: Default cap on q; ``FROBCALC_MAX_Q`` overrides it.
DEFAULT_MAX_Q = 2**20


def max_q() -> int:
    raw = os.environ.get("FROBCALC_MAX_Q")
    if raw is None:
        return DEFAULT_MAX_Q
    try:
        value = int(raw)
    except ValueError:
        raise FrobcalcError(f"FROBCALC_MAX_Q={raw!r} is not an integer") from None
    if value < 1:
        raise FrobcalcError("FROBCALC_MAX_Q must be positive")
    return value


def validate_q(ctx: RingContext, q: int, cap: int | None = None) -> int:
    check_q(ctx, q)
    cap = max_q() if cap is None else cap
    if q > cap:
        raise InvalidQError(f"q={q} exceeds the cap {cap}")
    return q


def parse_q(text: str, ctx: RingContext) -> int:
    """Accept ``p^e`` or a literal integer; either way it must be a power of p."""
    text = text.strip()
    try:
        if "^" in text:
            base, _, exp = text.partition("^")
            base, exp = int(base), int(exp)
            if exp < 0:
                raise ValueError
            if base != ctx.p:
                raise InvalidQError(f"q={text!r} is not a power of p={ctx.p}")
            q = base**exp
        else:
            q = int(text)
    except ValueError:
        raise InvalidQError(f"cannot read q from {text!r}") from None
    return validate_q(ctx, q)


def bracket_power(I: Ideal, q: int) -> Ideal:
    """I^[q], generated by the q-th powers of the generators of ``I``.

    The q-th powers of the reduced basis of ``I`` are installed as the basis
    of the result: Frobenius preserves leading terms, S-polynomials and
    reductions, so they form the reduced basis of I^[q].
    """
    validate_q(I.ctx, q)
    gens = [g.frobenius(q) for g in I.gens]
    return Ideal(I.ctx, gens, basis=[b.frobenius(q) for b in I.basis])


def _root_generators(polys, q):
    out = []
    for f in polys:
        out.extend(frobenius_expand(f, q).parts.values())
    return out


def _canonical(ctx, polys):
    polys = set(polys)
    if any(u.is_constant() for u in polys):
        return [ctx.one()]
    return sorted(polys, key=lambda u: u.sort_key())


def frobenius_root(I: Ideal, q: int) -> Ideal:
    """I^[1/q]: the smallest ideal K with I contained in K^[q]."""
    validate_q(I.ctx, q)
    if q == 1:
        return I
    gens = _canonical(I.ctx, _root_generators(I.gens, q))
    if gens and gens[0].is_constant():
        return Ideal.unit(I.ctx)
    return Ideal(I.ctx, gens)


def frobenius_root_poly(f: Polynomial, q: int) -> Ideal:
    return frobenius_root(Ideal(f.ctx, [f]), q)


def psi(s: int, t: int) -> int:
    """(t^s - 1)/(t - 1) = 1 + t + ... + t^(s-1)."""
    if not isinstance(s, int) or s < 0:
        raise FrobcalcError(f"psi needs s >= 0, got {s!r}")
    if not isinstance(t, int) or t < 2:
        raise FrobcalcError(f"psi needs an integer t >= 2, got {t!r}")
    return (t**s - 1) // (t - 1)


# free submodules ----------------------------------------------------------------------------


@dataclass(frozen=True)
class FreeSubmodule:
    """Submodule of R^rank spanned by ``gens`` (tuples of polynomials)."""

    ctx: RingContext
    rank: int
    gens: tuple = field(default=())

    def __post_init__(self):
        clean = []
        for v in self.gens:
            v = tuple(v)
            if len(v) != self.rank:
                raise FrobcalcError(f"vector of length {len(v)} in a rank-{self.rank} module")
            for comp in v:
                if comp.ctx != self.ctx:
                    raise FrobcalcError("vector component from a different ring")
            if all(c.is_zero() for c in v) or v in clean:
                continue
            clean.append(v)
        object.__setattr__(self, "gens", tuple(clean))

    @classmethod
    def parse(cls, ctx, rows):
        """``rows`` is a list of strings like ``"x^2, y"`` (one per generator)."""
        vecs = [tuple(ctx.poly(s) for s in row.split(",")) for row in rows]
        rank = len(vecs[0]) if vecs else 0
        return cls(ctx, rank, tuple(vecs))

    def bracket(self, q: int) -> "FreeSubmodule":
        return FreeSubmodule(
            self.ctx, self.rank, tuple(tuple(c.frobenius(q) for c in v) for v in self.gens)
        )

    def to_ideal_encoding(self):
        """Encode in R[z1..zk] as (sum g_i z_i) + (z)^2.

        The z-linear part of that ideal is exactly this submodule (z-grading),
        so ideal membership of sum f_i z_i decides module membership.
        """
        znames = self.ctx.fresh_names(self.rank, "z")
        big = self.ctx.extend(znames, eliminate=False)
        k = self.rank
        positions = list(range(k, big.nvars))
        z = [big.var(n) for n in znames]
        gens = []
        for v in self.gens:
            acc = big.zero()
            for zi, comp in zip(z, v):
                acc = acc + zi * comp.embed(big, positions)
            gens.append(acc)
        gens += [z[i] * z[j] for i in range(k) for j in range(i, k)]
        return big, z, positions, Ideal(big, gens)

    def contains(self, vec) -> bool:
        vec = tuple(vec)
        if len(vec) != self.rank:
            raise FrobcalcError("rank mismatch")
        big, z, positions, enc = self._encoding
        acc = big.zero()
        for zi, comp in zip(z, vec):
            acc = acc + zi * comp.embed(big, positions)
        return enc.contains(acc)

    @property
    def _encoding(self):
        cache = self.__dict__.get("_enc")
        if cache is None:
            cache = self.to_ideal_encoding()
            object.__setattr__(self, "_enc", cache)
        return cache

    def issubset(self, other: "FreeSubmodule") -> bool:
        if other.rank != self.rank:
            raise FrobcalcError("rank mismatch")
        return all(other.contains(v) for v in self.gens)

    def to_dict(self):
        return {
            "rank": self.rank,
            "gens": [[str(c) for c in v] for v in self.gens],
            "ring": self.ctx.to_string(),
        }


def frobenius_root_module(L: FreeSubmodule, q: int) -> FreeSubmodule:
    """Smallest submodule K of R^k with L inside K^[q].

    Each generator v contributes, for every alpha < q, the vector of
    alpha-components (u_{alpha,1}, .., u_{alpha,k}).
    """
    ctx = L.ctx
    validate_q(ctx, q)
    if q == 1:
        return L
    zero = ctx.zero()
    out = []
    for v in L.gens:
        per_alpha = {}
        for i, comp in enumerate(v):
            for alpha, u in frobenius_expand(comp, q).parts.items():
                per_alpha.setdefault(alpha, [zero] * L.rank)[i] = u
        for alpha in sorted(per_alpha):
            out.append(tuple(per_alpha[alpha]))
    return FreeSubmodule(ctx, L.rank, tuple(out))


# identity checkers ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    """Verdict of an identity check; truthy when the identity held.

    ``witness`` holds both sides of the identity (as ideal dicts) so a
    failure can be reproduced.
    """

    name: str
    ok: bool
    witness: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _intersect_all(ideals):
    out = ideals[0]
    for J in ideals[1:]:
        out = ideal_intersect(out, J)
    return out


def if_identity_check(family, q: int) -> CheckResult:
    """(intersection of I_a)^[q] == intersection of (I_a^[q]) for a finite family."""
    family = list(family)
    if not family:
        raise FrobcalcError("the family must be nonempty")
    validate_q(family[0].ctx, q)
    left = bracket_power(_intersect_all(family), q)
    right = _intersect_all([bracket_power(I, q) for I in family])
    ok = left == right
    return CheckResult(
        "intersection_flatness",
        ok,
        {"bracket_of_intersection": left.basis_dict(), "intersection_of_brackets": right.basis_dict()},
    )


def root_additivity_check(I: Ideal, J: Ideal, q: int) -> CheckResult:
    """root(I + J) == root(I) + root(J)."""
    left = frobenius_root(I + J, q)
    right = frobenius_root(I, q) + frobenius_root(J, q)
    ok = left == right
    return CheckResult(
        "root_additivity",
        ok,
        {"root_of_sum": left.basis_dict(), "sum_of_roots": right.basis_dict()},
    )
