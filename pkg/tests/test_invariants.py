from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from frobcalc.errors import DomainError, FrobcalcError, UnstabilizedError
from frobcalc.groebner import Ideal
from frobcalc.invariants import (
    as_fraction,
    bms_test_ideal,
    candidates_in,
    ceil_frac,
    default_denominators,
    fpt,
    is_jumping,
    jumping_numbers,
    left_tau_chain,
    nu,
    periodic_form,
    tau_chain,
    tau_step,
)
from frobcalc.ring import RingContext
from strategies import polys, rings


def R(p, names="x,y"):
    return RingContext.parse(f"p={p};vars={names}")


def principal(ctx, text):
    return Ideal(ctx, [ctx.poly(text)])


def tau_oracle(g, t, e):
    q = g.ctx.p**e
    return oracles.root([oracles.power(g, ceil_frac(t * q))], q, g.ctx)


# nu -------------------------------------------------------------------------------------------


def test_nu_examples():
    assert nu(R(3).var("x"), 2) == 8
    assert nu(R(7).poly("x^2+y^3"), 1) == 5
    assert nu(R(2).poly("x*y"), 3) == 7


@pytest.mark.parametrize(
    "p,text,emax",
    [(7, "x^2+y^3", 2), (5, "x^2+y^3", 3), (2, "x^2+y^3", 5), (3, "x^3+y^3+x*y", 3), (2, "x*y*(x+y)", 4)],
)
def test_nu_matches_brute_force(p, text, emax):
    g = R(p).poly(text)
    for e in range(1, emax + 1):
        assert nu(g, e) == oracles.nu(g, p**e)


def test_nu_of_cusp_follows_psi_pattern_at_seven():
    g = R(7).poly("x^2+y^3")
    assert [nu(g, e) for e in (1, 2, 3)] == [5, 40, 285]
    assert [5 * (7**e - 1) // 6 for e in (1, 2, 3)] == [5, 40, 285]


def test_nu_domain():
    ctx = R(3)
    with pytest.raises(DomainError):
        nu(ctx.poly("x+1"), 1)
    with pytest.raises(DomainError):
        nu(ctx.zero(), 1)
    with pytest.raises(FrobcalcError):
        nu(ctx.var("x"), 0)


@given(st.data())
def test_nu_scaling(data):
    ctx = data.draw(rings(primes=(2, 3, 5)))
    g = data.draw(polys(ctx, max_deg=3, nonzero=True, constant=False))
    p = ctx.p
    for e in (1, 2):
        a, b = nu(g, e), nu(g, e + 1)
        assert p * a <= b <= p * (a + 1) - 1


# exact fractions ------------------------------------------------------------------------------


def test_exponents_must_be_exact():
    assert as_fraction("5/6") == F(5, 6)
    assert as_fraction(2) == F(2)
    for bad in (0.5, "0.5", "1e-3", "abc", True, "1/0"):
        with pytest.raises(FrobcalcError):
            as_fraction(bad)


def test_ceiling_is_exact():
    assert ceil_frac(F(5, 6) * 7**12) == -(-5 * 7**12 // 6)
    assert ceil_frac(F(-1, 2)) == 0
    assert ceil_frac(F(4, 2)) == 2


@pytest.mark.parametrize("t,p", [(F(5, 6), 7), (F(4, 5), 5), (F(1, 2), 3), (F(7, 12), 2), (F(3), 5), (F(2, 9), 3)])
def test_periodic_form_reconstructs_t(t, p):
    k, d, s, a = periodic_form(t, p)
    assert s == t * p**k
    assert F(a, p**d - 1) == s
    assert (s.denominator % p) != 0 or s.denominator == 1


# test ideals ----------------------------------------------------------------------------------


def test_tau_examples():
    c3 = R(3)
    assert bms_test_ideal(principal(c3, "x^2"), F(1, 2))[0] == Ideal(c3, [c3.var("x")])
    c7 = R(7)
    assert bms_test_ideal(principal(c7, "x"), F(1, 3))[0].is_unit()
    c2 = R(2)
    m = Ideal.maximal(c2)
    assert bms_test_ideal(m, 2)[0] == m
    assert bms_test_ideal(m**2, 1)[0] == m


def test_tau_at_zero_is_unit():
    ctx = R(5)
    assert bms_test_ideal(principal(ctx, "x^2+y^3"), 0)[0].is_unit()
    assert bms_test_ideal(Ideal.maximal(ctx), 0)[0].is_unit()


def test_tau_of_zero_ideal():
    ctx = R(3)
    assert bms_test_ideal(Ideal.zero(ctx), F(1, 2))[0].is_zero()


@pytest.mark.parametrize(
    "p,text,ts",
    [
        (2, "x^2+y^3", [F(1, 2), F(2, 3), F(5, 6), F(1), F(7, 6)]),
        (3, "x^2+y^3", [F(1, 2), F(2, 3), F(3, 4), F(5, 6), F(4, 5)]),
        (2, "x*y", [F(1, 3), F(8, 9), F(1), F(3, 2)]),
        (5, "x^2*y+y^3", [F(1, 2), F(2, 3), F(3, 4)]),
    ],
)
def test_exact_chain_matches_brute_force_roots(p, text, ts):
    ctx = R(p)
    g = ctx.poly(text)
    for t in ts:
        ideal, chain = bms_test_ideal(Ideal(ctx, [g]), t)
        assert chain.exact and chain.verify()
        # the chain is ascending in every e, so each level from the stable one on equals tau
        start = max(chain.stabilization_index, 1)
        for e in (start, start + 1):
            assert tau_oracle(g, t, e) == ideal


def test_plain_chain_for_monomial_ideal_matches_floor_formula():
    ctx = R(2)
    a = Ideal(ctx, [ctx.poly("x^2"), ctx.poly("y^3")])
    for t in (F(1, 2), F(5, 6), F(1)):
        ideal, chain = bms_test_ideal(a, t)
        assert not chain.exact and chain.verify() and chain.overshoot >= 1
        e = chain.last_level + 1
        assert tau_step(a, t, e) == ideal


def test_unstabilized_chain_carries_partial_report():
    ctx = R(2)
    a = Ideal.parse(ctx, "x^2+y^3, x*y")
    with pytest.raises(UnstabilizedError) as info:
        tau_chain(a, F(5, 7), e_max=2)
    chain = info.value.chain
    assert chain.levels == [1, 2] and not chain.stable
    assert chain.verify()


def test_chain_domain_errors():
    ctx = R(3)
    with pytest.raises(DomainError):
        tau_chain(principal(ctx, "x"), F(-1, 2))
    with pytest.raises(FrobcalcError):
        tau_chain(principal(ctx, "x"), F(1, 2), e_max=1)
    with pytest.raises(DomainError):
        left_tau_chain(ctx.var("x"), 0)


@given(st.data())
def test_tau_is_antitone_in_t(data):
    ctx = data.draw(rings(primes=(2, 3, 5)))
    g = data.draw(polys(ctx, max_deg=3, max_terms=3, nonzero=True, constant=False))
    a = Ideal(ctx, [g])
    grid = sorted({F(k, 6) for k in range(0, 9)})
    taus = [bms_test_ideal(a, t)[0] for t in grid]
    for lo, hi in zip(taus, taus[1:]):
        assert hi.issubset(lo)


@st.composite
def binary_forms(draw, ctx):
    d = draw(st.integers(1, 4))
    coeffs = draw(st.lists(st.integers(0, ctx.p - 1), min_size=d + 1, max_size=d + 1).filter(any))
    return sum((ctx.poly(f"{c}*x^{i}*y^{d - i}") for i, c in enumerate(coeffs) if c), ctx.zero())


@given(st.data())
def test_tau_is_unit_below_nu_bracket(data):
    # nu only sees the origin, so the comparison is made for forms whose worst point is the origin
    ctx = data.draw(rings(primes=(2, 3, 5)))
    g = data.draw(binary_forms(ctx))
    res = fpt(g, e_max=2, denominators=[])
    t = res.lower * F(9, 10)
    if t > 0:
        assert bms_test_ideal(Ideal(ctx, [g]), t)[0].is_unit()


@given(st.data())
def test_chain_reports_reverify(data):
    ctx = data.draw(rings(primes=(2, 3)))
    g = data.draw(polys(ctx, max_deg=3, max_terms=3, nonzero=True, constant=False))
    t = F(data.draw(st.integers(1, 11)), data.draw(st.integers(1, 7)))
    up = tau_chain(Ideal(ctx, [g]), t)
    down = left_tau_chain(g, t)
    assert up.verify() and down.verify()
    assert up.overshoot >= 1 and down.overshoot >= 1
    assert up.stable_ideal.issubset(down.stable_ideal)


# jumping numbers and thresholds ---------------------------------------------------------------


def test_is_jumping_examples():
    c3 = R(3)
    x = c3.var("x")
    test = is_jumping(x, 1)
    assert test and test.left.is_unit() and test.at == Ideal(c3, [x])
    test = is_jumping(x, F(1, 2))
    assert not test and test.left.is_unit() and test.at.is_unit()
    test = is_jumping(c3.poly("x^2"), F(1, 2))
    assert test and test.left.is_unit() and test.at == Ideal(c3, [x])


@pytest.mark.parametrize(
    "p,text,value",
    [(7, "x^2+y^3", F(5, 6)), (5, "x^2+y^3", F(4, 5)), (2, "x^2+y^3", F(1, 2)), (3, "x^2+y^3", F(2, 3)),
     (11, "x^2+y^3", F(9, 11)), (3, "x^2", F(1, 2)), (2, "x*y", F(1)),
     (5, "x^3+y^3", F(3, 5)), (7, "x^3+y^3", F(2, 3))],
)
def test_fpt_certified_values(p, text, value):
    g = R(p).poly(text)
    res = fpt(g)
    assert res.certified == value
    assert res.lower < value <= res.upper
    assert res.certificate["left"]["gens"] == ["1"]
    assert res.certificate["at"]["gens"] != ["1"]
    assert is_jumping(g, value)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_fpt_of_variable_is_one(p):
    assert fpt(R(p).var("x")).certified == 1


def test_fpt_bracket_for_cusp_at_seven():
    res = fpt(R(7).poly("x^2+y^3"), e_max=3)
    assert res.nus == [5, 40, 285]
    assert (res.lower, res.upper) == (F(285, 343), F(286, 343))


def test_fpt_without_candidates_is_interval_only():
    res = fpt(R(7).poly("x^2+y^3"), e_max=2, denominators=[5])
    assert res.certified is None
    assert res.lower < res.upper
    assert res.to_dict()["certified"] is None


def test_default_denominators_include_psi_shapes():
    dens = default_denominators(7)
    assert set(range(1, 25)) <= set(dens)
    assert {6, 48, 42, 336} <= set(dens)


def test_candidates_are_sorted_and_inside():
    cands = candidates_in(F(1, 3), F(1, 2), range(1, 7))
    assert cands == [F(2, 5), F(1, 2)]


def test_jumping_numbers_examples():
    res = jumping_numbers(R(3).poly("x^2"), 0, 1, denom_bound=6)
    assert res.numbers == [F(1, 2), F(1)] and res.complete
    res = jumping_numbers(R(2).poly("x*y"), 0, 1)
    assert res.numbers == [F(1)] and res.complete
    res = jumping_numbers(R(5).var("x"), 0, F(1, 2))
    assert res.numbers == [] and res.complete


def test_jumping_numbers_domain():
    with pytest.raises(DomainError):
        jumping_numbers(R(3).var("x"), 1, 1)


@pytest.mark.parametrize("p", [5, 7])
def test_fpt_is_first_jump(p):
    g = R(p).poly("x^2+y^3")
    res = jumping_numbers(g, 0, 1, denom_bound=12)
    cert = fpt(g).certified
    if res.complete:
        assert cert in res.numbers
        assert res.numbers[0] == cert
    assert all(is_jumping(g, t) for t in res.numbers)
