import random
from fractions import Fraction

import pytest

from errors import BadEmbeddingIndex, DegenerateDegree, DivisionByZero, NoSuchRoot, RefinementBudgetExceeded
from field_kernel import (
    MinimalPolynomial,
    Ordering,
    beta_index,
    conjugate_embed,
    embedding_roots,
    fe_arith,
    fe_compare,
    fe_floor,
    make_base,
)


def test_tribonacci_floor(tribonacci):
    assert tribonacci.beta_floor == 1
    assert tribonacci.alphabet_max == 1
    assert tribonacci.positive_alphabet_max == 1
    assert float(tribonacci.beta) == pytest.approx(1.839286755, rel=1e-9)


def test_cubic_floor(cubic):
    assert cubic.beta_floor == 2
    assert float(cubic.beta) == pytest.approx(2.2469796, rel=1e-7)


def test_integer_base(base_two):
    assert base_two.beta == base_two.element(2)
    assert base_two.beta_floor == 2
    assert base_two.positive_alphabet_max == 1
    assert base_two.l == base_two.element(Fraction(-2, 3))
    assert base_two.r == base_two.element(Fraction(1, 3))


def test_add_and_reduce(tribonacci):
    b = tribonacci.beta
    assert fe_arith("add", b, tribonacci.one).coords == (1, 1, 0)
    assert fe_arith("mul", b * b, b).coords == (1, 1, 1)


def test_l_times_minus_beta(tribonacci):
    b = tribonacci.beta
    assert fe_arith("mul", tribonacci.l, -b) == b * b / (b + 1)


def test_inverse_and_negative_power(tribonacci):
    b = tribonacci.beta
    assert (b - 1) * (1 / (b - 1)) == tribonacci.one
    assert b ** -2 * b ** 2 == tribonacci.one


def test_division_by_zero(tribonacci):
    with pytest.raises(DivisionByZero):
        tribonacci.one / tribonacci.zero


def test_compare(tribonacci):
    b = tribonacci.beta
    assert fe_compare(1 / (b + 1), tribonacci.one) is Ordering.LT
    assert fe_compare(b * b - b - 1, 1 / b) is Ordering.EQ
    assert fe_compare(b - 1, tribonacci.one) is Ordering.LT
    assert b > 1 and b < 2
    assert tribonacci.l + 1 == tribonacci.r


def test_floor(tribonacci):
    b = tribonacci.beta
    assert fe_floor(b) == 1
    assert fe_floor(-b / (b + 1)) == -1
    assert fe_floor(b * b) == 3
    assert fe_floor(tribonacci.element(Fraction(-7, 2))) == -4


def test_root_selection():
    # x^2 - 5x + 6 has roots 2 and 3
    assert make_base((1, -5, 6)).beta_floor == 3
    assert make_base((1, -5, 6), root_selector=0).beta_floor == 2
    with pytest.raises(NoSuchRoot):
        make_base((1, -5, 6), root_selector=2)


def test_no_real_root_above_one():
    with pytest.raises(NoSuchRoot):
        make_base((1, 0, 1))
    with pytest.raises(NoSuchRoot):
        make_base((2, -1))


def test_degenerate_degree():
    with pytest.raises(DegenerateDegree):
        MinimalPolynomial((0, 5))


def test_reducible_polynomial_compares_through_factor():
    # (x - 2)(x^2 + 1)
    ctx = make_base((1, -2, 1, -2))
    assert ctx.compare(ctx.beta, 2) is Ordering.EQ
    assert ctx.value_key(ctx.beta) == ctx.value_key(ctx.element(2))
    assert ctx.beta_floor == 2


def test_refinement_budget():
    ctx = make_base((1, -1, -1, -1), refinement_bits=8)
    # agrees with beta far beyond the 64 bits used while building the base
    close = ctx.beta - ctx.element(Fraction(18392867552141611325518525646, 10 ** 28))
    with pytest.raises(RefinementBudgetExceeded):
        ctx.sign(close)


def test_str_of_polynomial(tribonacci, cubic):
    assert str(tribonacci.poly) == "x^3-x^2-x-1"
    assert str(cubic.poly) == "x^3-2x^2-x+1"


def test_embed_one_and_complex_conjugate(tribonacci):
    roots = embedding_roots(tribonacci)
    assert len(roots) == 3
    for index in range(3):
        assert abs(conjugate_embed(tribonacci, tribonacci.one, index) - 1) < 1e-30
    # the real root comes first, then the complex pair
    assert abs(conjugate_embed(tribonacci, tribonacci.beta, 0) - 1.839286755) < 1e-8
    assert abs(conjugate_embed(tribonacci, tribonacci.beta, 1)) < 1


def test_embed_real_conjugates(cubic):
    values = sorted(float(conjugate_embed(cubic, cubic.beta, i).real) for i in range(3))
    assert values[0] == pytest.approx(-0.8019, abs=1e-4)
    assert values[1] == pytest.approx(0.5550, abs=1e-4)


def test_beta_index(tribonacci, cubic):
    assert beta_index(tribonacci) == 0
    assert beta_index(cubic) == 2
    assert beta_index(make_base((1, -5, 6))) == 1
    assert beta_index(make_base((1, -5, 6), root_selector=0)) == 0


def test_bad_embedding_index(tribonacci):
    with pytest.raises(BadEmbeddingIndex):
        conjugate_embed(tribonacci, tribonacci.one, 3)


def _random_element(ctx, rng):
    return ctx.element([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(ctx.poly.degree)])


@pytest.mark.parametrize("coefficients", [(1, -1, -1, -1), (1, -2, -1, 1), (1, -1, -1)])
def test_arithmetic_identities(coefficients):
    ctx = make_base(coefficients)
    rng = random.Random(1729)
    for _ in range(50):
        a, b = _random_element(ctx, rng), _random_element(ctx, rng)
        assert (a + b) - b == a
        assert a * b == b * a
        if b != ctx.zero:
            assert (a * b) / b == a
        assert fe_compare(a, b) is fe_compare(b, a).reverse()
        n = fe_floor(a)
        assert fe_compare(ctx.element(n), a) is not Ordering.GT
        assert fe_compare(a, ctx.element(n + 1)) is Ordering.LT
