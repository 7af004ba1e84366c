"""Test ideals, nu-invariants, F-pure thresholds and F-jumping numbers.

Exponents ``t`` are :class:`fractions.Fraction`; ceilings of ``t * p^e`` are
taken in exact arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import _kernels as kernels
from .chains import ASCENDING, DESCENDING, ChainReport, run_chain
from .errors import DomainError, FrobcalcError, UnstabilizedError
from .frobenius import frobenius_root, validate_q
from .groebner import Ideal, ideal_power
from .ring import Polynomial

DEFAULT_TAU_EMAX = 8
DEFAULT_FPT_EMAX = 4


def as_fraction(t) -> Fraction:
    """Exact rational from an int, Fraction, or ``"a/b"`` string; floats are refused."""
    if isinstance(t, bool):
        raise FrobcalcError("a boolean is not an exponent")
    if isinstance(t, (int, Fraction)):
        return Fraction(t)
    if isinstance(t, str):
        s = t.strip()
        if not s or any(ch in s for ch in ".eE"):
            raise FrobcalcError(f"exponent {t!r} must be an exact fraction a/b")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise FrobcalcError(f"cannot read exact fraction from {t!r}") from None
    raise FrobcalcError(f"exponent {t!r} must be an exact rational, not {type(t).__name__}")


def ceil_frac(t: Fraction) -> int:
    return -((-t.numerator) // t.denominator)


def _check_in_maximal(g: Polynomial):
    if g.is_zero():
        raise DomainError("g must be nonzero")
    if g.constant_coeff():
        raise DomainError(f"g={g} is not in the homogeneous maximal ideal")


# nu ------------------------------------------------------------------------------------------


def _pow_mod_bracket(g: Polynomial, r: int, q: int) -> dict:
    """Terms of g^r modulo (x1^q, .., xn^q); q a power of p, g without constant term.

    Uses g^(p*k + d) = (g^k)^[p] * g^d together with (m^[q/p])^[p] = m^[q].
    """
    ctx = g.ctx
    p = ctx.p
    if r == 0:
        return {(0,) * ctx.nvars: 1}
    if q == 1:
        return {}
    k, d = divmod(r, p)
    high = kernels.frob_power(_pow_mod_bracket(g, k, q // p), p) if k else {(0,) * ctx.nvars: 1}
    if not high:
        return {}
    low = {(0,) * ctx.nvars: 1}
    base = {m: c for m, c in g.terms.items() if max(m) < q}
    while d:
        if d & 1:
            low = kernels.mul_trunc(low, base, p, q)
        d >>= 1
        if d:
            base = kernels.mul_trunc(base, base, p, q)
    return kernels.mul_trunc(high, low, p, q)


def in_bracket_of_maximal(g: Polynomial, r: int, q: int) -> bool:
    """Whether g^r lies in (x1^q, .., xn^q)."""
    return not _pow_mod_bracket(g, r, q)


def nu(g: Polynomial, e: int) -> int:
    """max{r : g^r not in (x1^(p^e), .., xn^(p^e))}, by binary search on r."""
    _check_in_maximal(g)
    if not isinstance(e, int) or e < 1:
        raise FrobcalcError(f"nu needs e >= 1, got {e!r}")
    q = validate_q(g.ctx, g.ctx.p**e)
    lo, hi = 0, g.ctx.nvars * (q - 1) + 1  # g^lo outside, g^hi inside
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if in_bracket_of_maximal(g, mid, q):
            hi = mid
        else:
            lo = mid
    return lo


# test ideals -------------------------------------------------------------------------------


def tau_step(a: Ideal, t, e: int) -> Ideal:
    """One chain term (a^ceil(t p^e))^[1/p^e], by direct exponentiation."""
    t = as_fraction(t)
    q = validate_q(a.ctx, a.ctx.p**e)
    return frobenius_root(ideal_power(a, ceil_frac(t * q)), q).minimalized()


def periodic_form(t: Fraction, p: int):
    """Write t = s / p^k with s = a / (p^d - 1); returns (k, d, s, a).

    k is the p-adic valuation of the denominator and d the multiplicative
    order of p modulo the p-free part of the denominator.
    """
    den = t.denominator
    k = 0
    while den % p == 0:
        den //= p
        k += 1
    d = 1
    while (p**d - 1) % den:
        d += 1
    s = t * p**k
    a = s * (p**d - 1)
    assert a.denominator == 1
    return k, d, s, int(a)


def _times_power(g: Polynomial, c: int, J: Ideal) -> Ideal:
    if c == 0:
        return J
    h = g**c
    return Ideal(J.ctx, [h * f for f in J.gens])


def twisted_root(g: Polynomial, a: int, J: Ideal, d: int) -> Ideal:
    """(g^a * J)^[1/p^d], taken one p-adic digit of a at a time.

    With a = hi * p^d + sum c_i p^i the result is
    g^hi * root_p(g^c_(d-1) * ... root_p(g^c_1 * root_p(g^c_0 * J))).
    """
    p = g.ctx.p
    hi, lo = divmod(a, p**d)
    for _ in range(d):
        lo, c = divmod(lo, p)
        J = frobenius_root(_times_power(g, c, J), p).minimalized()
        if J.is_unit() and not (hi or lo):
            return J
    return _times_power(g, hi, J).minimalized()


def _principal_chain(g: Polynomial, t: Fraction, max_steps: int, left: bool) -> ChainReport:
    """Exact chain for principal ideals.

    Along e = k + j*d the chain terms are root_{p^k}(K_j) with
    K_0 = (g^ceil(s)) (minus one for the left limit) and
    K_{j+1} = (g^a K_j)^[1/p^d].  The step is a fixed monotone operator, so
    once K_j == K_{j+1} the chain is constant from there on.
    """
    ctx = g.ctx
    p = ctx.p
    k, d, s, a = periodic_form(t, p)
    start = ceil_frac(s) - (1 if left else 0)
    direction = DESCENDING if left else ASCENDING
    state = {}

    def step(j):
        if j == 0:
            K = Ideal(ctx, [g**start]).minimalized()
        else:
            K = twisted_root(g, a, state[j - 1], d)
        state[j] = K
        return K

    inner = run_chain(step, lambda j: k + j * d, max_steps, direction, exact=True)
    if k == 0:
        return inner
    qk = validate_q(ctx, p**k)
    outer = ChainReport(direction, exact=True)
    for level, K in zip(inner.levels, inner.ideals):
        J = frobenius_root(K, qk).minimalized()
        if outer.ideals:
            prev = outer.ideals[-1]
            ok = prev.issubset(J) if not left else J.issubset(prev)
            if not ok:
                raise FrobcalcError(f"{direction} chain broken at e={level}")
            outer.containments.append(True)
        outer.ideals.append(J)
        outer.levels.append(level)
    last = outer.ideals[-1]
    i = len(outer.ideals) - 1
    while i > 0 and outer.ideals[i - 1] == last:
        i -= 1
    outer.stabilization_index = outer.levels[i]
    outer.overshoot = len(outer.ideals) - i - 2
    return outer


def tau_chain(a: Ideal, t, e_max: int = DEFAULT_TAU_EMAX) -> ChainReport:
    """Ascending chain whose stable value is tau(a^t).

    Principal ideals use the exact periodic recursion; other ideals run
    J_e = (a^ceil(t p^e))^[1/p^e] for e = 1, 2, ... and declare stability
    after two equal steps plus one confirmation.  ``e_max`` bounds the number
    of chain steps.
    """
    t = as_fraction(t)
    if t < 0:
        raise DomainError("t must be nonnegative")
    if e_max < 2:
        raise FrobcalcError("e_max must be at least 2")
    if a.is_zero():
        Z = Ideal.zero(a.ctx)
        return run_chain(lambda i: Z, lambda i: i + 1, e_max, ASCENDING, exact=True)
    if len(a.gens) == 1:
        return _principal_chain(a.gens[0], t, e_max, left=False)
    return run_chain(lambda i: tau_step(a, t, i + 1), lambda i: i + 1, e_max, ASCENDING)


def left_tau_chain(g: Polynomial, t, e_max: int = DEFAULT_TAU_EMAX) -> ChainReport:
    """Descending chain (g^(ceil(t p^e) - 1))^[1/p^e]; its stable value is tau(g^(t - eps))."""
    t = as_fraction(t)
    if t <= 0:
        raise DomainError("left limits need t > 0")
    if e_max < 2:
        raise FrobcalcError("e_max must be at least 2")
    if g.is_zero():
        raise DomainError("g must be nonzero")
    return _principal_chain(g, t, e_max, left=True)


def bms_test_ideal(a: Ideal, t, e_max: int = DEFAULT_TAU_EMAX):
    """tau(a^t) as the stable value of the ascending chain; returns (ideal, chain)."""
    chain = tau_chain(a, t, e_max)
    return chain.stable_ideal, chain


@dataclass
class JumpTest:
    t: Fraction
    jumping: bool
    left: Ideal
    at: Ideal
    left_chain: ChainReport
    at_chain: ChainReport

    def __bool__(self):
        return self.jumping


def is_jumping(g: Polynomial, t, e_max: int = DEFAULT_TAU_EMAX) -> JumpTest:
    """t is an F-jumping number of g iff tau(g^(t-eps)) != tau(g^t)."""
    t = as_fraction(t)
    if t <= 0:
        raise DomainError("jumping numbers are positive")
    if g.is_zero():
        raise DomainError("g must be nonzero")
    at_chain = tau_chain(Ideal(g.ctx, [g]), t, e_max)
    left_chain = left_tau_chain(g, t, e_max)
    left, at = left_chain.stable_ideal, at_chain.stable_ideal
    return JumpTest(t, left != at, left, at, left_chain, at_chain)


# thresholds -------------------------------------------------------------------------------------


def default_denominators(p: int, bound: int = 24):
    dens = set(range(1, bound + 1))
    for i in range(2):
        for j in range(1, 3):
            dens.add(p**i * (p**j - 1))
    return sorted(dens)


def candidates_in(lower: Fraction, upper: Fraction, denominators) -> list:
    """Rationals k/d in (lower, upper] with d from ``denominators``, ascending."""
    out = set()
    for d in denominators:
        k = math.floor(lower * d) + 1
        while Fraction(k, d) <= upper:
            out.add(Fraction(k, d))
            k += 1
    return sorted(out)


@dataclass
class ThresholdResult:
    """Exact bracket lower < fpt <= upper, optionally a certified exact value.

    A certificate pairs the left-limit test ideal (the unit ideal) with the
    test ideal at the value (a proper ideal).
    """

    lower: Fraction
    upper: Fraction
    certified: Fraction | None = None
    certificate: dict = field(default_factory=dict)
    e_used: int = 0
    nus: list = field(default_factory=list)
    candidates: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "lower": str(self.lower),
            "upper": str(self.upper),
            "certified": None if self.certified is None else str(self.certified),
            "certificate": self.certificate,
            "e_used": self.e_used,
            "nu": self.nus,
            "candidates": [str(c) for c in self.candidates],
        }


def fpt(g: Polynomial, e_max: int = DEFAULT_FPT_EMAX, denominators=None, tau_emax=None) -> ThresholdResult:
    """F-pure threshold of g: nu-bracket plus certification of a rational candidate.

    Candidates in the bracket are tried in increasing order; the first with
    tau(g^c) != (1) is certified exactly when tau(g^(c - eps)) == (1).
    """
    _check_in_maximal(g)
    if e_max < 1:
        raise FrobcalcError("e_max must be positive")
    p = g.ctx.p
    tau_emax = tau_emax or DEFAULT_TAU_EMAX
    lower, upper = Fraction(0), Fraction(1) * g.ctx.nvars
    nus = []
    for e in range(1, e_max + 1):
        v = nu(g, e)
        q = p**e
        nus.append(v)
        lower = max(lower, Fraction(v, q))
        upper = min(upper, Fraction(v + 1, q))
    result = ThresholdResult(lower, upper, e_used=e_max, nus=nus)
    dens = denominators if denominators is not None else default_denominators(p)
    result.candidates = candidates_in(lower, upper, dens)
    principal = Ideal(g.ctx, [g])
    for c in result.candidates:
        try:
            at_chain = tau_chain(principal, c, tau_emax)
        except UnstabilizedError as exc:
            result.e_used = max(result.e_used, exc.chain.last_level)
            continue
        result.e_used = max(result.e_used, at_chain.last_level)
        at = at_chain.stable_ideal
        if at.is_unit():
            continue
        try:
            left_chain = left_tau_chain(g, c, tau_emax)
        except UnstabilizedError as exc:
            result.e_used = max(result.e_used, exc.chain.last_level)
            break
        result.e_used = max(result.e_used, left_chain.last_level)
        if left_chain.stable_ideal.is_unit():
            result.certified = c
            result.certificate = {
                "left": left_chain.stable_ideal.basis_dict(),
                "at": at.basis_dict(),
                "left_chain": left_chain.to_dict(),
                "at_chain": at_chain.to_dict(),
            }
        break
    return result


@dataclass
class JumpingNumbers:
    numbers: list
    complete: bool
    checked: list = field(default_factory=list)
    unresolved: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "numbers": [str(t) for t in self.numbers],
            "complete": self.complete,
            "checked": [str(t) for t in self.checked],
            "unresolved": [str(t) for t in self.unresolved],
            "witnesses": self.witnesses,
        }


def jumping_numbers(
    g: Polynomial, lo, hi, e_max: int = DEFAULT_TAU_EMAX, denom_bound: int = 12
) -> JumpingNumbers:
    """Certified F-jumping numbers of g in (lo, hi] with denominators <= denom_bound.

    ``complete`` is true only if tau was confirmed constant at the midpoint
    of every gap between consecutive jumps (and at both ends of the range).
    """
    lo, hi = as_fraction(lo), as_fraction(hi)
    if not 0 <= lo < hi:
        raise DomainError("need 0 <= lo < hi")
    if g.is_zero():
        raise DomainError("g must be nonzero")
    principal = Ideal(g.ctx, [g])
    cache = {}

    def tau(t):
        if t not in cache:
            cache[t] = bms_test_ideal(principal, t, e_max)[0]
        return cache[t]

    cands = candidates_in(lo, hi, range(1, denom_bound + 1))
    jumps, unresolved, witnesses = [], [], {}
    for c in cands:
        try:
            test = is_jumping(g, c, e_max)
        except UnstabilizedError:
            unresolved.append(c)
            continue
        cache[c] = test.at
        if test.jumping:
            jumps.append(c)
            witnesses[str(c)] = {"left": test.left.basis_dict(), "at": test.at.basis_dict()}

    complete = not unresolved
    try:
        points = [lo] + jumps
        for a, b in zip(points, points[1:] + [hi]):
            if a == b:
                continue
            mid = (a + b) / 2
            if a == lo and jumps and b == jumps[0]:
                # below the first jump tau equals the left limit at that jump
                ref = is_jumping(g, b, e_max).left
            elif a == lo:
                ref = tau(b)
            else:
                ref = tau(a)
            if tau(mid) != ref:
                complete = False
        if jumps and jumps[-1] != hi and tau(hi) != tau(jumps[-1]):
            complete = False
    except UnstabilizedError:
        complete = False
    return JumpingNumbers(jumps, complete, cands, unresolved, witnesses)
