"""Hartshorne-Speiser-Lyubeznik numbers of hypersurfaces.

For a Frobenius action [x] -> u^a [x^(p^beta)] the ideals

    I_s = (u^(a * psi_s(p^beta)))^[1/p^(s*beta)],   s = 0, 1, ...

form a descending chain starting at I_0 = (1).  For R = S/(f) the standard
action corresponds to u = f^(p-1), a = 1, beta = 1, and the HSL number is the
index where the chain stops.  Index 0 means the action is injective.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chains import DESCENDING, ChainReport, run_chain
from .errors import DomainError, ExponentOverflowError, FrobcalcError, InvalidQError
from .frobenius import frobenius_root, max_q, psi
from .groebner import Ideal
from .ring import EXPONENT_LIMIT, Polynomial

DEFAULT_SMAX = 8


@dataclass(frozen=True)
class FrobeniusActionSpec:
    u: Polynomial
    a_exp: int = 1
    beta: int = 1

    def __post_init__(self):
        if self.u.is_zero():
            raise DomainError("the multiplier u must be nonzero")
        if not isinstance(self.a_exp, int) or self.a_exp < 0:
            raise DomainError(f"a must be a nonnegative integer, got {self.a_exp!r}")
        if not isinstance(self.beta, int) or self.beta < 1:
            raise DomainError(f"beta must be a positive integer, got {self.beta!r}")

    @classmethod
    def hypersurface(cls, f: Polynomial) -> "FrobeniusActionSpec":
        """The standard action on S/(f): u = f^(p-1), a = 1, beta = 1."""
        if f.is_zero() or f.is_constant():
            raise DomainError(f"f={f} must be a nonzero nonunit")
        return cls(f ** (f.ctx.p - 1), 1, 1)

    def exponent(self, s: int) -> int:
        """a * psi_s(p^beta), the power of u at step s."""
        return self.a_exp * psi(s, self.u.ctx.p**self.beta)

    def to_dict(self) -> dict:
        return {"u": str(self.u), "a": self.a_exp, "beta": self.beta}


def _check_caps(spec: FrobeniusActionSpec, s: int):
    q = spec.u.ctx.p ** (s * spec.beta)
    if q > max_q():
        raise InvalidQError(f"hsl chain needs q={q} at s={s}, above the cap {max_q()}")
    if spec.u.max_exponent() * spec.exponent(s) > EXPONENT_LIMIT:
        raise ExponentOverflowError(f"hsl chain exponent overflows at s={s}")
    return q


def hsl_chain(spec: FrobeniusActionSpec, s_max: int = DEFAULT_SMAX) -> ChainReport:
    """Descending chain I_s, s = 0, 1, ..., stopping one step after the first repeat.

    u^(a psi_(s+1)) is built from the previous power as (u^(a psi_s))^(p^beta) * u^a.
    """
    if not isinstance(s_max, int) or s_max < 1:
        raise FrobcalcError(f"s_max must be a positive integer, got {s_max!r}")
    ctx = spec.u.ctx
    ua = spec.u**spec.a_exp
    step_q = ctx.p**spec.beta
    power = {}

    def step(s):
        q = _check_caps(spec, s)
        if s == 0:
            power[0] = ctx.one()
        else:
            power[s] = power[s - 1].frobenius(step_q) * ua
            power.pop(s - 1)
        return frobenius_root(Ideal(ctx, [power[s]]), q).minimalized()

    # s_max counts chain steps after I_0
    return run_chain(step, lambda s: s, s_max + 1, DESCENDING, label="s", exact=True)


def hsl_chain_iterated(spec: FrobeniusActionSpec, s_max: int = DEFAULT_SMAX) -> ChainReport:
    """Same chain through I_(s+1) = (u^a * I_s)^[1/p^beta], never forming large powers."""
    if not isinstance(s_max, int) or s_max < 1:
        raise FrobcalcError(f"s_max must be a positive integer, got {s_max!r}")
    ctx = spec.u.ctx
    ua = spec.u**spec.a_exp
    step_q = ctx.p**spec.beta
    state = {}

    def step(s):
        if s == 0:
            J = Ideal.unit(ctx)
        else:
            prev = state[s - 1]
            J = frobenius_root(Ideal(ctx, [ua * g for g in prev.gens]), step_q).minimalized()
        state[s] = J
        return J

    return run_chain(step, lambda s: s, s_max + 1, DESCENDING, label="s", exact=True)


def hsl_number(f: Polynomial, s_max: int = DEFAULT_SMAX) -> tuple[int, ChainReport]:
    """HSL number of S/(f) and the chain that certifies it."""
    chain = hsl_chain(FrobeniusActionSpec.hypersurface(f), s_max)
    return chain.stabilization_index, chain
