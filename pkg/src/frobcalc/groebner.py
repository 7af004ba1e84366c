"""Ideals of F_p[x1..xn] and the Groebner-basis decision procedures.

Buchberger's algorithm with the normal selection strategy (smallest lcm in
the monomial order, ties broken by pair index), Buchberger's product
criterion and the chain criterion.  Output bases are reduced, monic, and
sorted by increasing leading monomial, so they are canonical.
"""

from __future__ import annotations

import heapq
from functools import cached_property

from .errors import ContextMismatchError, FrobcalcError
from .ring import Polynomial, RingContext


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Basis:
    """Monic polynomials indexed for reduction: ``(lead, tail)`` pairs."""

    __slots__ = ("ctx", "leads", "tails")

    def __init__(self, ctx):
        self.ctx = ctx
        self.leads = []
        self.tails = []

    def add(self, lead, tail):
        self.leads.append(lead)
        self.tails.append(tail)


def _normal_form(terms: dict, basis: _Basis, skip: int = -1) -> dict:
    """Fully reduce ``terms`` modulo the monic elements of ``basis``."""
    if not terms or not basis.leads:
        return dict(terms)
    ctx = basis.ctx
    p = ctx.p
    key = ctx.key
    work = dict(terms)
    # min-heap over negated keys pops the largest monomial first
    heap = [(tuple(-k for k in key(m)), m) for m in work]
    heapq.heapify(heap)
    rem = {}
    leads = basis.leads
    tails = basis.tails
    nb = len(leads)
    while heap:
        m = heapq.heappop(heap)[1]
        c = work.pop(m, None)
        if c is None:
            continue
        for i in range(nb):
            if i == skip:
                continue
            lead = leads[i]
            if _divides(lead, m):
                shift = tuple([a - b for a, b in zip(m, lead)])
                for tm, tc in tails[i].items():
                    nm = tuple([a + b for a, b in zip(tm, shift)])
                    old = work.get(nm)
                    if old is None:
                        work[nm] = (-c * tc) % p
                        heapq.heappush(heap, (tuple(-k for k in key(nm)), nm))
                    else:
                        v = (old - c * tc) % p
                        if v:
                            work[nm] = v
                        else:
                            del work[nm]
                break
        else:
            rem[m] = c
    return rem


def _split_monic(terms: dict, ctx: RingContext):
    lead = max(terms, key=ctx.key)
    inv = pow(terms[lead], -1, ctx.p)
    p = ctx.p
    tail = {m: c * inv % p for m, c in terms.items() if m != lead}
    return lead, tail


def _spoly(l1, t1, l2, t2, ctx):
    """S-polynomial of two monic polynomials given as (lead, tail)."""
    lcm = _lcm(l1, l2)
    s1 = tuple(a - b for a, b in zip(lcm, l1))
    s2 = tuple(a - b for a, b in zip(lcm, l2))
    p = ctx.p
    out = {}
    for m, c in t1.items():
        out[tuple(a + b for a, b in zip(m, s1))] = c
    for m, c in t2.items():
        nm = tuple(a + b for a, b in zip(m, s2))
        v = (out.get(nm, 0) - c) % p
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out


def _buchberger(polys, ctx: RingContext):
    """Reduced Groebner basis of the term dicts ``polys``, as sorted (lead, tail) pairs."""
    key = ctx.key
    unit = [((0,) * ctx.nvars, {})]
    polys = [t for t in polys if t]
    if not polys:
        return []
    # seed by autoreduction in increasing lead order; drops most redundancy cheaply
    polys.sort(key=lambda t: (key(max(t, key=key)), len(t)))
    G = _Basis(ctx)
    for t in polys:
        r = _normal_form(t, G)
        if r:
            lead, tail = _split_monic(r, ctx)
            if not any(lead):
                return unit
            G.add(lead, tail)

    pending = set()
    heap = []

    def push(i, j):
        pending.add((i, j))
        heapq.heappush(heap, (key(_lcm(G.leads[i], G.leads[j])), j, i))

    for j in range(len(G.leads)):
        for i in range(j):
            push(i, j)

    while heap:
        _, j, i = heapq.heappop(heap)
        pending.discard((i, j))
        li, lj = G.leads[i], G.leads[j]
        if _coprime(li, lj):
            continue
        lcm = _lcm(li, lj)
        chain = False
        for k, lk in enumerate(G.leads):
            if k == i or k == j or not _divides(lk, lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                chain = True
                break
        if chain:
            continue
        s = _spoly(li, G.tails[i], lj, G.tails[j], ctx)
        r = _normal_form(s, G)
        if not r:
            continue
        lead, tail = _split_monic(r, ctx)
        if not any(lead):
            return unit
        G.add(lead, tail)
        n = len(G.leads) - 1
        for i2 in range(n):
            push(i2, n)

    # minimal basis, then interreduction
    order = sorted(range(len(G.leads)), key=lambda i: key(G.leads[i]))
    keep = []
    for i in order:
        if not any(_divides(G.leads[k], G.leads[i]) for k in keep):
            keep.append(i)
    M = _Basis(ctx)
    for i in keep:
        M.add(G.leads[i], G.tails[i])
    out = []
    for idx in range(len(M.leads)):
        tail = _normal_form(M.tails[idx], M, skip=idx)
        out.append((M.leads[idx], tail))
    return out


def _to_poly(ctx, lead, tail):
    terms = dict(tail)
    terms[lead] = 1
    return Polynomial(ctx, terms, _trusted=True)


class Ideal:
    """Finitely generated ideal; immutable.

    The reduced Groebner basis is computed on first use and cached.  Equality
    (``==``) is ideal equality, decided through reduced bases.
    """

    def __init__(self, ctx: RingContext, gens=(), *, basis=None):
        clean = []
        seen = set()
        for g in gens:
            if isinstance(g, str):
                g = ctx.poly(g)
            if not isinstance(g, Polynomial):
                raise FrobcalcError(f"ideal generator {g!r} is not a polynomial")
            if g.ctx != ctx:
                raise ContextMismatchError(f"generator in {g.ctx!r}, ideal in {ctx!r}")
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            clean.append(g)
        self.ctx = ctx
        self.gens = tuple(clean)
        if basis is not None:
            self.__dict__["basis"] = tuple(basis)

    @classmethod
    def parse(cls, ctx: RingContext, text: str) -> "Ideal":
        """Comma-separated generators; an empty string is the zero ideal."""
        pieces = [s for s in text.split(",") if s.strip()]
        return cls(ctx, [ctx.poly(s) for s in pieces])

    @classmethod
    def unit(cls, ctx):
        return cls(ctx, [ctx.one()], basis=[ctx.one()])

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, [], basis=[])

    @classmethod
    def maximal(cls, ctx):
        """The homogeneous maximal ideal (x1, .., xn)."""
        return cls(ctx, ctx.gens())

    @cached_property
    def basis(self):
        """Reduced Groebner basis (tuple of monic polynomials, increasing leads)."""
        pairs = _buchberger([g.terms for g in self.gens], self.ctx)
        return tuple(_to_poly(self.ctx, lead, tail) for lead, tail in pairs)

    @cached_property
    def _reducer(self):
        b = _Basis(self.ctx)
        for g in self.basis:
            lead = g.lead_monomial()
            b.add(lead, {m: c for m, c in g.terms.items() if m != lead})
        return b

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ctx != self.ctx:
            raise ContextMismatchError(f"{f.ctx!r} vs {self.ctx!r}")
        return Polynomial(self.ctx, _normal_form(f.terms, self._reducer), _trusted=True)

    def contains(self, f) -> bool:
        if isinstance(f, Ideal):
            return f.issubset(self)
        if isinstance(f, int):
            f = self.ctx.const(f)
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def issubset(self, other: "Ideal") -> bool:
        _same(self, other)
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other):
        return self.issubset(other)

    def __ge__(self, other):
        return other.issubset(self)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equals(self, other)

    def __hash__(self):
        return hash((self.ctx, self.basis))

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def is_zero(self) -> bool:
        return not self.gens

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return ideal_product(self, other)

    def __pow__(self, n):
        return ideal_power(self, n)

    def __and__(self, other):
        return ideal_intersect(self, other)

    def minimalized(self) -> "Ideal":
        """Same ideal, generated by its reduced basis."""
        return Ideal(self.ctx, self.basis, basis=self.basis)

    def canonical_gens(self):
        return sorted(self.gens, key=lambda g: g.sort_key())

    def to_dict(self) -> dict:
        return {"gens": [str(g) for g in self.gens], "ring": self.ctx.to_string()}

    def basis_dict(self) -> dict:
        return {"gens": [str(g) for g in self.basis], "ring": self.ctx.to_string()}

    def __str__(self):
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __repr__(self):
        return f"Ideal({self.ctx.to_string()!r}, [{', '.join(repr(str(g)) for g in self.gens)}])"


def _same(I: Ideal, J: Ideal):
    if I.ctx != J.ctx:
        raise ContextMismatchError(f"{I.ctx!r} vs {J.ctx!r}")


def reduced_gb(I: Ideal):
    """Reduced Groebner basis of ``I`` as a list (empty for the zero ideal)."""
    return list(I.basis)


def membership(f: Polynomial, I: Ideal) -> bool:
    return I.contains(f)


def ideal_equals(I: Ideal, J: Ideal) -> bool:
    _same(I, J)
    if I is J:
        return True
    return I.basis == J.basis


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    return Ideal(I.ctx, I.gens + J.gens)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    return Ideal(I.ctx, [f * g for f in I.gens for g in J.gens])


def ideal_power(I: Ideal, n: int) -> Ideal:
    """``I**n`` by binary splitting; generators are kept in minimal form for
    monomial ideals, and principal ideals stay principal."""
    if not isinstance(n, int) or n < 0:
        raise FrobcalcError(f"ideal power needs a nonnegative integer, got {n!r}")
    ctx = I.ctx
    if n == 0:
        return Ideal.unit(ctx)
    if len(I.gens) <= 1:
        return Ideal(ctx, [g**n for g in I.gens])
    if n == 1:
        return I
    half = ideal_power(I, n // 2)
    out = _prune(ideal_product(half, half))
    if n % 2:
        out = _prune(ideal_product(out, I))
    return out


def _prune(I: Ideal) -> Ideal:
    """Drop monomial generators divisible by other monomial generators."""
    mons = [g for g in I.gens if g.is_monomial()]
    if len(mons) < 2:
        return I
    leads = sorted((next(iter(g.terms)) for g in mons), key=sum)
    keep = []
    for m in leads:
        if not any(_divides(k, m) for k in keep):
            keep.append(m)
    kept = set(keep)
    gens = [g for g in I.gens if not g.is_monomial() or next(iter(g.terms)) in kept]
    gens = [g.monic() if g.is_monomial() else g for g in gens]
    return Ideal(I.ctx, gens)


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J = (t*I + (1-t)*J) ∩ R, eliminating a fresh block variable t."""
    _same(I, J)
    ctx = I.ctx
    if I.is_zero() or J.is_zero():
        return Ideal.zero(ctx)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    (t_name,) = ctx.fresh_names(1)
    big = ctx.extend([t_name])
    positions = list(range(1, big.nvars))
    t = big.var(t_name)
    one_minus_t = big.one() - t
    gens = [t * g.embed(big, positions) for g in I.gens]
    gens += [one_minus_t * h.embed(big, positions) for h in J.gens]
    basis = Ideal(big, gens).basis
    kept = []
    for g in basis:
        if all(m[0] == 0 for m in g.terms):
            kept.append(Polynomial(ctx, {m[1:]: c for m, c in g.terms.items()}, _trusted=True))
    return Ideal(ctx, kept)


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """Rabinowitsch: f lies in rad(I) iff 1 lies in I + (1 - t*f) with t fresh."""
    if f.ctx != I.ctx:
        raise ContextMismatchError(f"{f.ctx!r} vs {I.ctx!r}")
    ctx = I.ctx
    if f.is_zero():
        return True
    (t_name,) = ctx.fresh_names(1)
    big = ctx.extend([t_name], eliminate=False)
    positions = list(range(1, big.nvars))
    gens = [g.embed(big, positions) for g in I.gens]
    gens.append(big.one() - big.var(t_name) * f.embed(big, positions))
    return Ideal(big, gens).is_unit()
