"""Exact arithmetic in F_p[x1..xn].

A monomial is a plain tuple of nonnegative exponents; a :class:`Polynomial`
is an immutable mapping from such tuples to residues ``1..p-1``.  Monomial
comparison goes through :attr:`RingContext.key`, a sort key that is
increasing in the context's monomial order.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

from . import _kernels as kernels
from .errors import (
    ContextMismatchError,
    ExponentOverflowError,
    FrobcalcError,
    InvalidQError,
    ParseError,
)

#: Largest exponent any variable may carry (signed 32-bit range).
EXPONENT_LIMIT = 2**31 - 1

#: Largest supported characteristic (must fit a machine word).
PRIME_LIMIT = 2**63

ORDERS = ("grevlex", "lex")

_VAR_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    if n < 2**32:
        return all(n % d for d in range(3, math.isqrt(n) + 1, 2))
    from sympy import isprime

    return bool(isprime(n))


def _grevlex_key(m):
    return (sum(m),) + tuple(-e for e in reversed(m))


def _lex_key(m):
    return m


def _make_key(order: str, elim: int):
    base = _grevlex_key if order == "grevlex" else _lex_key
    if not elim:
        fn = base
    else:

        def fn(m):
            return _grevlex_key(m[:elim]) + base(m[elim:])

    return lru_cache(maxsize=1 << 18)(fn)


class RingContext:
    """The ambient ring F_p[vars] together with a monomial order.

    ``elim`` > 0 selects a block order: the first ``elim`` variables form a
    block compared first (by degree, then reverse-lex), and ties are broken
    by ``order`` on the remaining variables.  Such contexts are created
    internally for elimination and never parsed from user input.
    """

    __slots__ = ("p", "vars", "order", "elim", "key", "_hash")

    def __init__(self, p: int, vars, order: str = "grevlex", elim: int = 0):
        vars = tuple(vars)
        if not isinstance(p, int) or p >= PRIME_LIMIT or not is_prime(p):
            raise FrobcalcError(f"characteristic p={p!r} is not a prime below 2^63")
        if not vars:
            raise FrobcalcError("a ring needs at least one variable")
        if len(set(vars)) != len(vars):
            raise FrobcalcError(f"duplicate variable names in {vars}")
        for v in vars:
            if not _VAR_RE.match(v):
                raise FrobcalcError(f"invalid variable name {v!r}")
        if order not in ORDERS:
            raise FrobcalcError(f"unknown monomial order {order!r}; expected one of {ORDERS}")
        if not 0 <= elim <= len(vars):
            raise FrobcalcError("elimination block larger than the variable list")
        self.p = p
        self.vars = vars
        self.order = order
        self.elim = elim
        self.key = _make_key(order, elim)
        self._hash = hash((p, vars, order, elim))

    @classmethod
    def parse(cls, text: str) -> "RingContext":
        """Parse ``p=<prime>;vars=<comma list>[;order=grevlex|lex]``."""
        fields = {}
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            name, sep, value = chunk.partition("=")
            if not sep:
                raise ParseError(f"ring field {chunk!r} lacks '='")
            name = name.strip()
            if name in fields:
                raise ParseError(f"ring field {name!r} given twice")
            fields[name] = value.strip()
        unknown = set(fields) - {"p", "vars", "order"}
        if unknown:
            raise ParseError(f"unknown ring fields {sorted(unknown)}")
        if "p" not in fields or "vars" not in fields:
            raise ParseError("ring string needs both p= and vars=")
        try:
            p = int(fields["p"])
        except ValueError:
            raise ParseError(f"p={fields['p']!r} is not an integer") from None
        names = [v.strip() for v in fields["vars"].split(",") if v.strip()]
        return cls(p, names, fields.get("order", "grevlex"))

    def to_string(self) -> str:
        s = f"p={self.p};vars={','.join(self.vars)}"
        if self.order != "grevlex":
            s += f";order={self.order}"
        return s

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        extra = f", elim={self.elim}" if self.elim else ""
        return f"RingContext({self.to_string()!r}{extra})"

    def __eq__(self, other):
        if not isinstance(other, RingContext):
            return NotImplemented
        return (self.p, self.vars, self.order, self.elim) == (
            other.p,
            other.vars,
            other.order,
            other.elim,
        )

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (RingContext, (self.p, self.vars, self.order, self.elim))

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def with_order(self, order: str) -> "RingContext":
        return RingContext(self.p, self.vars, order)

    def extend(self, names, eliminate: bool = True) -> "RingContext":
        """Prepend fresh variables; with ``eliminate`` they form a block that
        is greater than every monomial in the original variables."""
        names = tuple(names)
        clash = set(names) & set(self.vars)
        if clash:
            raise FrobcalcError(f"fresh variables {sorted(clash)} clash with ring variables")
        return RingContext(
            self.p, names + self.vars, self.order, len(names) if eliminate else 0
        )

    def fresh_names(self, k: int, stem: str = "t"):
        out, i = [], 0
        taken = set(self.vars)
        while len(out) < k:
            name = f"_{stem}{i}"
            if name not in taken:
                out.append(name)
            i += 1
        return out

    # constructors -----------------------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {(0,) * self.nvars: c} if c else {}, _trusted=True)

    def var(self, name: str) -> "Polynomial":
        try:
            i = self.vars.index(name)
        except ValueError:
            raise FrobcalcError(f"unknown variable {name!r}") from None
        return self.monomial(tuple(int(j == i) for j in range(self.nvars)))

    def gens(self):
        return [self.var(v) for v in self.vars]

    def monomial(self, exps, coeff: int = 1) -> "Polynomial":
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars or min(exps, default=0) < 0:
            raise FrobcalcError(f"bad exponent vector {exps} for {self.nvars} variables")
        coeff %= self.p
        return Polynomial(self, {exps: coeff} if coeff else {}, _trusted=True)

    def poly(self, text: str) -> "Polynomial":
        return poly_parse(text, self)

    def maximal_ideal_generators(self):
        return self.gens()


class Polynomial:
    """Immutable element of F_p[x1..xn] in canonical (sparse, reduced) form."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: RingContext, terms: dict, _trusted: bool = False):
        if not _trusted:
            p = ctx.p
            n = ctx.nvars
            clean = {}
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n:
                    raise FrobcalcError(f"exponent vector {m} has wrong length for {ctx}")
                if min(m, default=0) < 0:
                    raise FrobcalcError(f"negative exponent in {m}")
                c %= p
                if c:
                    clean[m] = c
            terms = clean
        self.ctx = ctx
        self.terms = terms
        self._hash = None

    # basic queries -----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coeff(self) -> int:
        return self.terms.get((0,) * self.ctx.nvars, 0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __len__(self):
        return len(self.terms)

    def lead_monomial(self):
        if not self.terms:
            raise FrobcalcError("the zero polynomial has no leading monomial")
        return max(self.terms, key=self.ctx.key)

    def lead_coeff(self) -> int:
        return self.terms[self.lead_monomial()]

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def max_exponent(self) -> int:
        return max((max(m) for m in self.terms), default=0)

    def sorted_terms(self, descending: bool = True):
        return sorted(self.terms.items(), key=lambda t: self.ctx.key(t[0]), reverse=descending)

    def support_vars(self):
        """Indices of variables that actually occur."""
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = pow(self.lead_coeff(), -1, self.ctx.p)
        return self.scale(inv)

    def scale(self, c: int) -> "Polynomial":
        p = self.ctx.p
        c %= p
        if not c:
            return self.ctx.zero()
        return Polynomial(self.ctx, {m: v * c % p for m, v in self.terms.items()}, _trusted=True)

    def shift(self, mono) -> "Polynomial":
        """Multiply by the monomial ``x^mono``."""
        return Polynomial(
            self.ctx,
            {tuple(a + b for a, b in zip(m, mono)): c for m, c in self.terms.items()},
            _trusted=True,
        )

    # arithmetic ------------------------------------------------------------------------
    def _check(self, other):
        if isinstance(other, int):
            return self.ctx.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ctx != self.ctx:
            raise ContextMismatchError(f"{self.ctx!r} vs {other.ctx!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return Polynomial(self.ctx, {m: p - c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return poly_add(self, -other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return poly_add(other, -self)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n):
        return poly_pow(self, n)

    def frobenius(self, q: int) -> "Polynomial":
        """``self ** q`` for ``q`` a power of p, computed coefficientwise."""
        check_q(self.ctx, q)
        if q == 1:
            return self
        if self.max_exponent() * q > EXPONENT_LIMIT:
            raise ExponentOverflowError(f"Frobenius power q={q} overflows exponents")
        return Polynomial(self.ctx, kernels.frob_power(self.terms, q), _trusted=True)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return poly_format(self)

    def __repr__(self):
        return f"Polynomial({poly_format(self)!r}, ring={self.ctx.to_string()!r})"

    def sort_key(self):
        """Canonical ordering key: leading monomials first, then the full term list."""
        ctx = self.ctx
        return tuple((ctx.key(m), c) for m, c in self.sorted_terms())

    # structural maps -------------------------------------------------------------------
    def substitute(self, images) -> "Polynomial":
        """Evaluate at ``images`` (one polynomial per variable, all in one ring)."""
        images = list(images)
        if len(images) != self.ctx.nvars:
            raise FrobcalcError("need one image per variable")
        target = images[0].ctx
        out = target.zero()
        cache = [dict() for _ in images]

        def power(i, e):
            got = cache[i].get(e)
            if got is None:
                got = poly_pow(images[i], e)
                cache[i][e] = got
            return got

        for m, c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def embed(self, ctx: RingContext, positions) -> "Polynomial":
        """Move into ``ctx``, sending variable ``i`` to variable ``positions[i]``."""
        n = ctx.nvars
        out = {}
        for m, c in self.terms.items():
            new = [0] * n
            for i, e in enumerate(m):
                new[positions[i]] = e
            out[tuple(new)] = c
        return Polynomial(ctx, out, _trusted=True)


def _same_ctx(f: Polynomial, g: Polynomial):
    if f.ctx != g.ctx:
        raise ContextMismatchError(f"{f.ctx!r} vs {g.ctx!r}")


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    _same_ctx(f, g)
    p = f.ctx.p
    if len(f.terms) < len(g.terms):
        f, g = g, f
    out = dict(f.terms)
    for m, c in g.terms.items():
        v = (out.get(m, 0) + c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return Polynomial(f.ctx, out, _trusted=True)


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    _same_ctx(f, g)
    if not f.terms or not g.terms:
        return f.ctx.zero()
    if f.max_exponent() + g.max_exponent() > EXPONENT_LIMIT:
        raise ExponentOverflowError("product exponent exceeds the machine-integer limit")
    return Polynomial(f.ctx, kernels.mul(f.terms, g.terms, f.ctx.p), _trusted=True)


def poly_pow(f: Polynomial, n: int) -> Polynomial:
    """``f ** n``.  Writes ``n = p*k + d`` and uses ``f^n = (f^k)^[p] * f^d``,
    so large p-adic parts cost only a coefficientwise Frobenius."""
    if not isinstance(n, int) or n < 0:
        raise FrobcalcError(f"exponent must be a nonnegative integer, got {n!r}")
    ctx = f.ctx
    if n == 0:
        return ctx.one()
    if not f.terms:
        return ctx.zero()
    if f.max_exponent() * n > EXPONENT_LIMIT:
        raise ExponentOverflowError(f"f^{n} exceeds the machine-integer exponent limit")
    if len(f.terms) == 1:
        (m, c), = f.terms.items()
        return ctx.monomial(tuple(e * n for e in m), pow(c, n, ctx.p))
    p = ctx.p
    k, d = divmod(n, p)
    low = _binary_pow(f, d)
    if k == 0:
        return low
    high = Polynomial(ctx, kernels.frob_power(poly_pow(f, k).terms, p), _trusted=True)
    return high if d == 0 else poly_mul(high, low)


def _binary_pow(f: Polynomial, n: int) -> Polynomial:
    result = f.ctx.one()
    base = f
    while n:
        if n & 1:
            result = poly_mul(result, base)
        n >>= 1
        if n:
            base = poly_mul(base, base)
    return result


# Frobenius decomposition ------------------------------------------------------------------


def is_power_of(q: int, p: int) -> bool:
    if not isinstance(q, int) or q < 1:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def check_q(ctx: RingContext, q: int) -> int:
    if not is_power_of(q, ctx.p):
        raise InvalidQError(f"q={q!r} is not a power of p={ctx.p}")
    return q


@dataclass(frozen=True)
class FrobeniusDecomposition:
    """``f = sum over alpha of x^alpha * parts[alpha]^q`` with alpha < q componentwise."""

    q: int
    parts: dict
    ctx: RingContext

    def reassemble(self) -> Polynomial:
        out = self.ctx.zero()
        for alpha, u in self.parts.items():
            out = out + u.frobenius(self.q).shift(alpha)
        return out


def frobenius_expand(f: Polynomial, q: int) -> FrobeniusDecomposition:
    """Unique decomposition of ``f`` over the basis {x^alpha : alpha < q} of R over R^q."""
    ctx = f.ctx
    check_q(ctx, q)
    if q == 1:
        parts = {(0,) * ctx.nvars: f} if f.terms else {}
        return FrobeniusDecomposition(1, parts, ctx)
    raw = kernels.frob_split(f.terms, q)
    parts = {alpha: Polynomial(ctx, t, _trusted=True) for alpha, t in raw.items()}
    return FrobeniusDecomposition(q, parts, ctx)


# text format ----------------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append((ch, ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: RingContext):
        self.text = text
        self.ctx = ctx
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, found {got}", tok[2], self.text)
        self.i += 1
        return tok

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.power()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.power()
        return acc

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                raise ParseError("exponent must be a nonnegative integer", tok[2], self.text)
            self.take()
            base = poly_pow(base, tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.peek()
        kind = tok[0]
        if kind == "int":
            self.take()
            return self.ctx.const(tok[1])
        if kind == "name":
            self.take()
            if tok[1] not in self.ctx.vars:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2], self.text)
            return self.ctx.var(tok[1])
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "-":
            self.take()
            return -self.power()
        found = "end of input" if kind == "end" else repr(tok[1])
        raise ParseError(f"unexpected {found}", tok[2], self.text)


def poly_parse(text: str, ctx: RingContext) -> Polynomial:
    """Parse ``text`` (``+``/``-`` separated terms of ``*``-joined powers) in ``ctx``."""
    parser = _Parser(text, ctx)
    if parser.peek()[0] == "end":
        raise ParseError("empty polynomial", 0, text)
    result = parser.expr()
    parser.take("end")
    return result


def _format_monomial(m, names):
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def poly_format(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    names = f.ctx.vars
    out = []
    for m, c in f.sorted_terms():
        mono = _format_monomial(m, names)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return "+".join(out)
