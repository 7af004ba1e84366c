import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from frobcalc.corpus import random_combination, random_ideal, random_poly
from frobcalc.errors import ContextMismatchError
from frobcalc.groebner import (
    Ideal,
    ideal_equals,
    ideal_intersect,
    ideal_power,
    ideal_product,
    ideal_sum,
    membership,
    radical_membership,
    reduced_gb,
)
from frobcalc.ring import RingContext
from strategies import ideals, polys, rings


def R(text="p=5;vars=x,y"):
    return RingContext.parse(text)


def I(ctx, text):
    return Ideal.parse(ctx, text)


def test_basis_of_linear_ideal():
    ctx = R()
    assert reduced_gb(I(ctx, "x, x+y")) == [ctx.var("y"), ctx.var("x")]


def test_lex_elimination_basis():
    ctx = R("p=5;vars=x,y;order=lex")
    assert set(reduced_gb(I(ctx, "x^2-y, x*y-1"))) == {ctx.poly("y^3-1"), ctx.poly("x-y^2")}


def test_zero_ideal_has_empty_basis():
    assert reduced_gb(Ideal(R(), [])) == []


def test_unit_ideal_basis_is_one():
    ctx = R()
    assert reduced_gb(I(ctx, "x, x+1")) == [ctx.one()]


def test_membership_examples():
    ctx = R()
    assert membership(ctx.poly("x^2*y"), I(ctx, "x^2, y^3"))
    assert not membership(ctx.poly("x*y"), I(ctx, "x^2, y^2"))
    J = I(ctx, "x*y-x, x^2-y")
    assert not membership(ctx.poly("x^3"), J)
    assert membership(ctx.poly("x^3-x"), J)


def test_equality_examples():
    ctx = R()
    assert ideal_equals(I(ctx, "x+y, y"), I(ctx, "x, y"))
    assert not ideal_equals(I(ctx, "x^2"), I(ctx, "x"))


def test_square_of_sum_with_xy_is_not_the_square_of_the_maximal_ideal():
    # in char 2, (x+y)^2 = x^2+y^2, so degree 2 is spanned by two forms, not three
    c2 = R("p=2;vars=x,y")
    A, B = I(c2, "(x+y)^2, x*y"), I(c2, "x^2, x*y, y^2")
    assert len(oracles.homogeneous_component(A.gens, 2, c2)) == 2
    assert len(oracles.homogeneous_component(B.gens, 2, c2)) == 3
    assert not ideal_equals(A, B)
    assert A.issubset(B)
    assert ideal_equals(A + I(c2, "x^2"), B)


def test_sum_product_power_examples():
    ctx = R()
    assert ideal_sum(I(ctx, "x"), I(ctx, "y")) == I(ctx, "x, y")
    assert ideal_power(I(ctx, "x, y"), 2) == I(ctx, "x^2, x*y, y^2")
    assert ideal_product(I(ctx, "x"), Ideal(ctx, [])).is_zero()
    assert ideal_power(I(ctx, "x, y"), 0).is_unit()


def test_intersection_examples():
    ctx = R("p=3;vars=x,y")
    assert ideal_intersect(I(ctx, "x"), I(ctx, "y")) == I(ctx, "x*y")
    meet = ideal_intersect(I(ctx, "x+y"), I(ctx, "x-y"))
    assert meet == I(ctx, "x^2-y^2")
    assert ideal_intersect(I(ctx, "x, y"), Ideal.unit(ctx)) == I(ctx, "x, y")
    assert ideal_intersect(I(ctx, "x"), Ideal(ctx, [])).is_zero()


def test_intersection_returns_original_ring():
    ctx = R()
    out = ideal_intersect(I(ctx, "x^2, y"), I(ctx, "x*y+y^2, x^3"))
    assert out.ctx == ctx
    assert all(g.ctx == ctx for g in out.gens)


def test_radical_membership_examples():
    ctx = R()
    assert radical_membership(ctx.var("x"), I(ctx, "x^2"))
    uv = R("p=5;vars=u,v")
    assert radical_membership(uv.var("u"), I(uv, "u*v, u^2+v^2"))
    assert not radical_membership(ctx.var("x"), I(ctx, "y"))


def test_context_mismatch_in_membership():
    with pytest.raises(ContextMismatchError):
        membership(R("p=3;vars=x,y").var("x"), I(R(), "x"))


@given(st.data())
def test_basis_matches_sympy(data):
    ctx = data.draw(rings(primes=(2, 3, 5, 7), nvars=(2, 3)))
    J = data.draw(ideals(ctx, max_gens=3, max_deg=3))
    assert set(J.basis) == oracles.groebner(J.gens, ctx)


@given(st.data())
def test_lex_basis_matches_sympy(data):
    ctx = data.draw(rings(primes=(3, 5), nvars=(2,))).with_order("lex")
    J = data.draw(ideals(ctx, max_gens=2, max_deg=3))
    assert set(J.basis) == oracles.groebner(J.gens, ctx)


@given(st.data())
def test_combinations_are_members(data):
    ctx = data.draw(rings())
    J = data.draw(ideals(ctx))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    assert membership(random_combination(J, rng), J)


@given(st.data())
def test_nonzero_normal_form_means_not_member(data):
    ctx = data.draw(rings())
    J = data.draw(ideals(ctx))
    f = data.draw(polys(ctx))
    nf = J.normal_form(f)
    assert membership(f, J) == nf.is_zero()
    assert membership(f - nf, J)
    # no term of the normal form is divisible by a leading monomial
    leads = [g.lead_monomial() for g in J.basis]
    assert not any(all(a <= b for a, b in zip(lm, m)) for m in nf.terms for lm in leads)


@given(st.data())
def test_basis_is_reduced_and_idempotent(data):
    ctx = data.draw(rings(nvars=(2, 3)))
    J = data.draw(ideals(ctx))
    B = J.basis
    assert all(g.lead_coeff() == 1 for g in B)
    keys = [ctx.key(g.lead_monomial()) for g in B]
    assert keys == sorted(keys)
    again = Ideal(ctx, B).basis
    assert again == B


@given(st.data())
def test_intersection_is_contained_and_monotone(data):
    ctx = data.draw(rings(primes=(2, 3, 5)))
    A = data.draw(ideals(ctx, max_gens=2, max_deg=3))
    B = data.draw(ideals(ctx, max_gens=2, max_deg=3))
    extra = data.draw(polys(ctx, max_deg=2, nonzero=True))
    meet = ideal_intersect(A, B)
    assert meet.issubset(A) and meet.issubset(B)
    assert ideal_product(A, B).issubset(meet)
    bigger = ideal_intersect(A + Ideal(ctx, [extra]), B)
    assert meet.issubset(bigger)


@given(st.data())
def test_intersection_is_largest_common_part(data):
    ctx = data.draw(rings(primes=(2, 3, 5)))
    A = data.draw(ideals(ctx, max_gens=2, max_deg=3))
    B = data.draw(ideals(ctx, max_gens=2, max_deg=3))
    f = data.draw(polys(ctx, max_deg=3))
    both = membership(f, A) and membership(f, B)
    assert membership(f, ideal_intersect(A, B)) == both


@st.composite
def homogeneous(draw, ctx, max_deg=4):
    d = draw(st.integers(1, max_deg))
    f = draw(polys(ctx, max_deg=d, max_terms=4, nonzero=True))
    terms = {m: c for m, c in f.terms.items() if sum(m) == d}
    if not terms:
        terms = {(d,) + (0,) * (ctx.nvars - 1): 1}
    return type(f)(ctx, terms)


@given(st.data())
def test_operations_match_linear_algebra(data):
    ctx = data.draw(rings(primes=(2, 3, 5)))
    A = Ideal(ctx, data.draw(st.lists(homogeneous(ctx, 3), min_size=1, max_size=2)))
    B = Ideal(ctx, data.draw(st.lists(homogeneous(ctx, 3), min_size=1, max_size=2)))
    n = data.draw(st.integers(1, 2))
    products = [f * g for f in A.gens for g in B.gens]
    powers = list(A.gens)
    for _ in range(n - 1):
        powers = [f * g for f in powers for g in A.gens]
    for d in range(7):
        comp = lambda gens: oracles.homogeneous_component(gens, d, ctx)  # noqa: E731
        assert comp(ideal_sum(A, B).basis) == comp(list(A.gens) + list(B.gens))
        assert comp(ideal_product(A, B).basis) == comp(products)
        assert comp(ideal_power(A, n).basis) == comp(powers)


def test_random_sums_products_powers_match_sympy():
    rng = random.Random(11)
    for _ in range(25):
        ctx = RingContext(rng.choice([2, 3, 5]), ("x", "y"))
        A = random_ideal(ctx, rng, 2, 3)
        B = random_ideal(ctx, rng, 2, 3)
        prod = [f * g for f in A.gens for g in B.gens]
        assert set(ideal_product(A, B).basis) == oracles.groebner(prod, ctx)
        assert set(ideal_sum(A, B).basis) == oracles.groebner(list(A.gens) + list(B.gens), ctx)
        sq = [f * g for f in A.gens for g in A.gens]
        assert set(ideal_power(A, 2).basis) == oracles.groebner(sq, ctx)


def test_equality_is_an_equivalence_on_corpus():
    rng = random.Random(3)
    ctx = RingContext(3, ("x", "y"))
    corpus = [random_ideal(ctx, rng, 2, 2, 2) for _ in range(12)]
    # regenerate each ideal from a shuffled combination of its basis
    twins = [Ideal(ctx, list(J.basis) + [random_combination(J, rng)]) for J in corpus]
    for A, A2 in zip(corpus, twins):
        assert A == A and A == A2 and A2 == A
    for A in corpus:
        for B in corpus:
            for C in corpus:
                if A == B and B == C:
                    assert A == C


def test_bases_are_deterministic():
    rng = random.Random(5)
    ctx = RingContext(5, ("x", "y", "z"))
    for _ in range(5):
        gens = [random_poly(ctx, rng, 3, 3, constant=False) for _ in range(3)]
        first = [str(g) for g in Ideal(ctx, gens).basis]
        second = [str(g) for g in Ideal(ctx, list(reversed(gens))).basis]
        assert first == second
