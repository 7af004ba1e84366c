import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from frobcalc.errors import (
    ContextMismatchError,
    ExponentOverflowError,
    FrobcalcError,
    InvalidQError,
    ParseError,
)
from frobcalc.ring import Polynomial, RingContext, frobenius_expand, poly_parse
from strategies import polys, ring_and, rings


def R(text="p=7;vars=x,y"):
    return RingContext.parse(text)


def test_parse_reads_terms_directly():
    f = poly_parse("x^2+y^3", R())
    assert f.terms == {(2, 0): 1, (0, 3): 1}


def test_parse_reduces_coefficients_mod_p():
    assert poly_parse("7*x+1", R()) == R().one()


def test_freshmans_dream_in_characteristic_two():
    ctx = R("p=2;vars=x,y")
    assert ctx.poly("(x+y)^2") == ctx.poly("x^2+y^2")


def test_parse_accepts_whitespace_parentheses_and_signs():
    ctx = R("p=5;vars=x,y")
    assert ctx.poly(" - ( x - 2*y )^2 * x ") == -(ctx.poly("x-2*y") ** 2) * ctx.var("x")
    assert ctx.poly("3") == ctx.const(3)
    assert ctx.poly("x*x*y^0") == ctx.poly("x^2")


@pytest.mark.parametrize(
    "text,pos",
    [("x+", 2), ("x^^2", 2), ("(x+y", 4), ("x y", 2), ("x^y", 2), ("2*", 2)],
)
def test_syntax_errors_report_position(text, pos):
    with pytest.raises(ParseError) as info:
        poly_parse(text, R())
    assert info.value.position == pos


def test_unknown_variable_is_an_error():
    with pytest.raises(ParseError, match="z"):
        poly_parse("x+z", R())


def test_ring_string_round_trip():
    ctx = R("p=5;vars=u,v,x;order=lex")
    assert ctx.order == "lex"
    assert RingContext.parse(ctx.to_string()) == ctx


@pytest.mark.parametrize(
    "text",
    [
        "p=4;vars=x",
        "p=7;vars=",
        "p=7;vars=x,x",
        "p=7;vars=x;order=deglex",
        "vars=x",
        "p=7;vars=x;q=2",
        "p=seven;vars=x",
    ],
)
def test_bad_ring_strings_are_rejected(text):
    with pytest.raises(FrobcalcError):
        RingContext.parse(text)


def test_large_prime_characteristic():
    p = 2**61 - 1
    ctx = RingContext(p, ("x",))
    f = ctx.poly("x+1")
    assert (f * f).terms == {(2,): 1, (1,): 2, (0,): 1}
    assert ctx.poly(str(p)) == ctx.zero()


def test_product_of_conjugates_mod_three():
    ctx = R("p=3;vars=x,y")
    assert ctx.poly("(x+y)*(x-y)") == ctx.poly("x^2+2*y^2")


def test_zeroth_power_is_one():
    assert R().poly("x^2+y^3") ** 0 == R().one()


def test_fifth_power_has_binomial_term():
    f = R().poly("x^2+y^3") ** 5
    assert f.terms[(6, 6)] == 3


def test_pow_agrees_with_sympy_on_large_exponents():
    for p in (2, 3, 5):
        ctx = RingContext(p, ("x", "y"))
        f = ctx.poly("x^2+x*y+2*y^3+1")
        for n in (p**2 - 1, p**2 + 3, 2 * p**2 + p + 1):
            assert f**n == oracles.power(f, n)


def test_context_mismatch():
    with pytest.raises(ContextMismatchError):
        R("p=5;vars=x,y").var("x") + R("p=7;vars=x,y").var("x")


def test_exponent_overflow_fails_loudly():
    ctx = R("p=2;vars=x")
    f = ctx.poly("x^1000")
    with pytest.raises(ExponentOverflowError):
        f ** (2**22)
    with pytest.raises(ExponentOverflowError):
        f.frobenius(2**22)


def test_print_is_canonical_and_descending():
    ctx = R("p=5;vars=x,y")
    assert str(ctx.poly("1 + y + x + 3*x*y^2")) == "3*x*y^2+x+y+1"
    assert str(ctx.zero()) == "0"


def test_expand_monomial():
    ctx = R("p=2;vars=x,y")
    dec = frobenius_expand(ctx.poly("x^3*y^7"), 4)
    assert dec.parts == {(3, 3): ctx.var("y")}


def test_expand_by_hand():
    ctx = R("p=2;vars=x,y")
    dec = frobenius_expand(ctx.poly("x^3+x*y^2"), 2)
    assert dec.parts == {(1, 0): ctx.poly("x+y")}


def test_expand_q_one_is_identity():
    f = R().poly("3*x^2*y+y^5+1")
    assert frobenius_expand(f, 1).parts == {(0, 0): f}


def test_expand_rejects_foreign_q():
    with pytest.raises(InvalidQError):
        frobenius_expand(R().var("x"), 6)


@given(ring_and(polys, max_deg=8, max_terms=6), st.integers(1, 3))
def test_reassembly(case, e):
    ctx, f = case
    q = ctx.p**e
    dec = frobenius_expand(f, q)
    assert all(not u.is_zero() for u in dec.parts.values())
    assert all(max(a) < q for a in dec.parts)
    assert dec.reassemble() == f


@given(st.data())
def test_linear_over_qth_powers(data):
    ctx = data.draw(rings())
    f = data.draw(polys(ctx, max_deg=6))
    h = data.draw(polys(ctx, max_deg=2, max_terms=2, nonzero=True))
    q = ctx.p ** data.draw(st.integers(1, 2))
    base = frobenius_expand(f, q).parts
    twisted = frobenius_expand(h.frobenius(q) * f, q).parts
    assert twisted == {a: h * u for a, u in base.items()}


@given(ring_and(polys, nvars=(1, 2, 3), max_deg=6, max_terms=6))
def test_print_parse_round_trip(case):
    ctx, f = case
    assert poly_parse(str(f), ctx) == f


@given(ring_and(polys, max_deg=5))
def test_characteristic_kills(case):
    ctx, f = case
    assert f * ctx.p == ctx.zero()
    assert sum([f] * ctx.p, ctx.zero()).is_zero()


@given(st.data())
def test_ring_axioms(data):
    ctx = data.draw(rings())
    f, g, h = (data.draw(polys(ctx, max_deg=3)) for _ in range(3))
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == ctx.zero()


@given(st.data())
def test_mul_and_pow_agree_with_sympy(data):
    ctx = data.draw(rings())
    f = data.draw(polys(ctx, max_deg=4))
    g = data.draw(polys(ctx, max_deg=4))
    n = data.draw(st.integers(0, 12))
    assert f * g == oracles.from_sympy(oracles.to_sympy(f) * oracles.to_sympy(g), ctx)
    assert f**n == oracles.power(f, n)


def test_polynomials_hash_by_value():
    ctx = R()
    assert len({ctx.poly("x+y"), ctx.poly("y+x"), Polynomial(ctx, {(1, 0): 8, (0, 1): 1})}) == 1
