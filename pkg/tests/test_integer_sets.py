import pytest

from errors import HypothesisViolated, TrivialSet
from expansion import evaluate_gamma, reference_l
from field_kernel import Ordering
from integer_sets import (
    delta_gap,
    enumerate_beta_integers,
    enumerate_negbeta_integers,
    enumerate_S,
    extremal_strings,
    gap_coincidences,
    is_trivial,
    positive_gaps,
    satisfies_finite_hypothesis,
    satisfies_infinite_hypothesis,
    search_bases,
    triviality_report,
    verify_window,
)
from utility_converter import format_word


def strings(ctx, k):
    return [format_word(s) for s in enumerate_S(ctx, k)]


def test_admissible_strings_tribonacci(tribonacci):
    assert strings(tribonacci, 1) == ["1", "0"]
    assert strings(tribonacci, 2) == ["10", "11", "00", "01"]
    extremes = extremal_strings(tribonacci, 2)
    assert extremes.method == "bruteforce"
    assert (extremes.min_k, extremes.max_k) == ((1, 0), (0, 1))


def test_admissible_strings_cubic(cubic):
    assert strings(cubic, 1) == ["1", "0"]
    assert strings(cubic, 2) == ["21", "10", "11", "00", "01"]
    assert len(enumerate_S(cubic, 3)) == 11


def test_hypotheses(tribonacci, cubic, odd_period, golden, root_three, silver, golden_square, even_period):
    assert not satisfies_infinite_hypothesis(tribonacci)
    assert not satisfies_finite_hypothesis(tribonacci)
    for ctx in (cubic, golden, root_three):
        assert satisfies_finite_hypothesis(ctx)
    for ctx in (odd_period, silver, golden_square, even_period):
        assert satisfies_infinite_hypothesis(ctx)
    assert extremal_strings(tribonacci, 3).method == "bruteforce"


FINITE_BASES = ["cubic", "golden", "root_three"]
INFINITE_BASES = ["silver", "golden_square", "odd_period", "even_period"]


def _closed_matches_bruteforce(ctx, k):
    closed = extremal_strings(ctx, k)
    brute = extremal_strings(ctx, k, "bruteforce")
    assert closed.method != "bruteforce"
    assert (closed.min_k, closed.max_k) == (brute.min_k, brute.max_k)


@pytest.mark.parametrize("base", FINITE_BASES + INFINITE_BASES)
@pytest.mark.parametrize("k", range(1, 8))
def test_closed_forms_match_bruteforce(base, k, request):
    _closed_matches_bruteforce(request.getfixturevalue(base), k)


@pytest.mark.slow
@pytest.mark.parametrize("base", ["golden", "root_three", "cubic", "silver", "golden_square"])
@pytest.mark.parametrize("k", range(8, 13))
def test_closed_forms_match_bruteforce_long_strings(base, k, request):
    _closed_matches_bruteforce(request.getfixturevalue(base), k)


def test_closed_form_outside_hypothesis(tribonacci):
    with pytest.raises(HypothesisViolated):
        extremal_strings(tribonacci, 3, "closed_infinite")
    with pytest.raises(HypothesisViolated):
        delta_gap(tribonacci, 2, "finite_table")


def test_unknown_method(cubic):
    with pytest.raises(ValueError):
        extremal_strings(cubic, 2, "guess")
    with pytest.raises(ValueError):
        delta_gap(cubic, 2, "guess")


def test_gap_values_cubic(cubic):
    b = cubic.beta
    assert delta_gap(cubic, 0) == cubic.one
    assert delta_gap(cubic, 1) == b - 1
    assert delta_gap(cubic, 2) == 1 - 1 / b
    for k in range(5):
        assert delta_gap(cubic, k, "definition") == delta_gap(cubic, k, "finite_table")


def test_gap_classes_cubic(cubic):
    table = gap_coincidences(cubic, 6)
    assert table.classes() == [{0, 5}, {1, 3, 4, 6}, {2}]
    assert table.coincidence_check.pattern == "finite"
    assert table.coincidence_check.holds
    assert table.bounded_by_two


def test_gap_classes_tribonacci(tribonacci):
    b = tribonacci.beta
    table = gap_coincidences(tribonacci, 6)
    assert table.classes() == [{0, 3, 4, 5, 6}, {1}, {2}]
    assert table.coincidence_check.pattern == "none"
    assert table.entries[1] == b - 1
    assert table.entries[2] == 1 / b


@pytest.mark.parametrize("base", INFINITE_BASES)
def test_gap_methods_agree_infinite(base, request):
    ctx = request.getfixturevalue(base)
    for k in range(8):
        expected = delta_gap(ctx, k, "definition")
        assert delta_gap(ctx, k, "series") == expected
        assert delta_gap(ctx, k, "orbit") == expected
        assert ctx.compare(expected, 2) is Ordering.LT


@pytest.mark.parametrize("base", FINITE_BASES)
def test_gap_methods_agree_finite(base, request):
    ctx = request.getfixturevalue(base)
    m = len(reference_l(ctx).preperiod)
    for k in range(8):
        expected = delta_gap(ctx, k, "definition")
        assert delta_gap(ctx, k, "finite_table") == expected
        if 1 <= k < m:
            assert delta_gap(ctx, k, "series") == expected
        assert ctx.compare(expected, 2) is Ordering.LT


@pytest.mark.parametrize(
    "base, pattern",
    [("silver", "period-1"), ("golden_square", "period-2"), ("even_period", "even-period"), ("golden", "finite")],
)
def test_coincidence_patterns(base, pattern, request):
    table = gap_coincidences(request.getfixturevalue(base), 10)
    assert table.coincidence_check.pattern == pattern
    assert table.coincidence_check.relations
    assert table.coincidence_check.holds
    assert table.bounded_by_two


def test_period_one_and_two_classes(silver, golden_square):
    # one distinct value past the preperiod for period 1, Delta_1 everywhere for period 2
    assert gap_coincidences(silver, 8).classes() == [{0, 2, 3, 4, 5, 6, 7, 8}, {1}]
    assert gap_coincidences(golden_square, 8).classes() == [{0}, {1, 2, 3, 4, 5, 6, 7, 8}]


@pytest.mark.slow
def test_odd_period_complement_relation(odd_period):
    table = gap_coincidences(odd_period, 10, "series")
    assert table.coincidence_check.pattern == "odd-period"
    assert table.coincidence_check.holds
    assert any(r.kind == "complement" for r in table.coincidence_check.relations)


def test_triviality(tribonacci, minimal_pisot, golden):
    report = triviality_report(minimal_pisot)
    assert report.trivial
    assert report.witness_prefix == (1, 0, 0, 1)
    assert report.golden_comparison is Ordering.LT
    assert report.consistent
    assert not is_trivial(tribonacci)

    at_golden = triviality_report(golden)
    assert not at_golden.trivial
    assert at_golden.at_golden_ratio
    assert at_golden.consistent


def test_trivial_set_has_no_window(minimal_pisot):
    with pytest.raises(TrivialSet):
        enumerate_negbeta_integers(minimal_pisot, count=5)


class TestNegbetaWindow:
    POSITIVE = ["1", "110", "111", "100", "11011", "11000", "11001", "11110"]
    NEGATIVE = ["11", "10", "1100", "1111", "1110", "1001", "1000", "1011"]

    def test_points_around_zero(self, tribonacci_window):
        assert len(tribonacci_window.points) == 17
        assert tribonacci_window.z(0)[1] == (0,)
        assert [format_word(tribonacci_window.z(n)[1]) for n in range(1, 9)] == self.POSITIVE
        assert [format_word(tribonacci_window.z(-n)[1]) for n in range(1, 9)] == self.NEGATIVE
        with pytest.raises(IndexError):
            tribonacci_window.z(9)

    def test_values(self, tribonacci_window, tribonacci):
        b = tribonacci.beta
        assert tribonacci_window.z(1)[0] == tribonacci.one
        assert tribonacci_window.z(2)[0] == b * b - b
        assert tribonacci_window.z(-1)[0] == 1 - b
        values = tribonacci_window.values
        assert all(tribonacci.compare(x, y) is Ordering.LT for x, y in zip(values, values[1:]))

    def test_gap_letters(self, tribonacci_window, tribonacci):
        points, letters = tribonacci_window.points, tribonacci_window.gap_letters
        start = tribonacci_window.zero_index
        assert letters[start:start + 4] == (0, 2, 0, 1)
        for (x, _), (y, _), letter in zip(points, points[1:], letters):
            assert y - x == delta_gap(tribonacci, letter)

    def test_verify(self, tribonacci_window, tribonacci):
        assert verify_window(tribonacci, tribonacci_window.points, tribonacci_window.gap_letters) == []

    def test_verify_reports_tampering(self, tribonacci_window, tribonacci):
        letters = list(tribonacci_window.gap_letters)
        letters[0] += 1
        problems = verify_window(tribonacci, tribonacci_window.points, letters)
        assert len(problems) == 1
        assert "gap 0" in problems[0]

        points = list(tribonacci_window.points)
        points[1], points[2] = points[2], points[1]
        assert verify_window(tribonacci, points, tribonacci_window.gap_letters)


def test_window_by_bound(tribonacci):
    window = enumerate_negbeta_integers(tribonacci, bound=2)
    for value in window.values:
        assert tribonacci.compare(tribonacci.abs(value), 2) is not Ordering.GT
    assert [format_word(d) for d in window.expansions] == ["10", "11", "0", "1", "110"]


def test_count_or_bound_required(tribonacci):
    with pytest.raises(ValueError):
        enumerate_negbeta_integers(tribonacci)
    with pytest.raises(ValueError):
        enumerate_beta_integers(tribonacci, count=3, bound=3)


def test_beta_integers_base_two(base_two):
    window = enumerate_beta_integers(base_two, count=10)
    assert window.values == [base_two.element(n) for n in range(11)]
    assert window.points[5][1] == (1, 0, 1)
    assert set(window.gap_letters) == {0}
    assert positive_gaps(base_two) == [(0, base_two.one)]


def test_beta_integers_tribonacci(tribonacci):
    b = tribonacci.beta
    window = enumerate_beta_integers(tribonacci, count=7)
    assert [format_word(d) for d in window.expansions] == ["0", "1", "10", "11", "100", "101", "110", "1000"]
    assert window.gap_letters == (0, 1, 0, 2, 0, 1, 0)
    assert window.letter_values[1] == b - 1
    assert window.letter_values[2] == 1 / b
    assert verify_window(tribonacci, window.points, window.gap_letters, negative=False) == []


def test_symmetric_beta_integers(tribonacci):
    window = enumerate_beta_integers(tribonacci, count=4, symmetric=True)
    assert window.zero_index == 4
    assert len(window.points) == 9
    assert window.z(-1)[0] == -tribonacci.one
    assert window.gap_letters == (2, 0, 1, 0, 0, 1, 0, 2)
    assert verify_window(tribonacci, window.points, window.gap_letters, negative=False) == []


@pytest.mark.slow
def test_search_finds_odd_period_base():
    def odd_period_reference(ctx):
        word = reference_l(ctx)
        return not word.preperiod[1:] and len(word.period) % 2 == 1 and len(word.period) >= 3

    candidates = [(1, -4, 2, -1, -1), (1, -1, -1, -1), (1, -2, -1, 1)]
    found = search_bases(candidates, odd_period_reference)
    assert [ctx.poly.coefficients for ctx in found] == [(1, -4, 2, -1, -1)]


def test_positive_gaps_cubic(cubic):
    b = cubic.beta
    gaps = positive_gaps(cubic)
    assert [value for _, value in gaps] == [cubic.one, b - 2, 1 - 1 / b]
    # the neg gap Delta_1 exceeds 1 while every positive gap stays below it
    assert delta_gap(cubic, 1) == gaps[1][1] + 1


def test_window_is_closed_under_times_minus_beta(tribonacci):
    window = enumerate_negbeta_integers(tribonacci, count=40)
    low, high = window.values[0], window.values[-1]
    present = {tribonacci.value_key(value) for value in window.values}
    scaled = 0
    for value in window.values:
        image = -tribonacci.beta * value
        if tribonacci.compare(low, image) is not Ordering.GT and tribonacci.compare(image, high) is not Ordering.GT:
            assert tribonacci.value_key(image) in present
            scaled += 1
    assert scaled > 10


@pytest.mark.parametrize("base", ["tribonacci", "cubic", "golden", "odd_period"])
def test_admissible_strings_have_distinct_values(base, request):
    ctx = request.getfixturevalue(base)
    strings = enumerate_S(ctx, 6)
    keys = {ctx.value_key(evaluate_gamma(ctx, s)) for s in strings}
    assert len(keys) == len(strings)


def test_value_with_two_expansions_keeps_preferred_form(golden):
    # 110 and 001 both evaluate to 1 in base -tau; only 110 is admissible
    ones = [s for s in enumerate_S(golden, 3) if evaluate_gamma(golden, s) == golden.one]
    assert ones == [(1, 1, 0)]
    window = enumerate_negbeta_integers(golden, count=6)
    assert [digits for value, digits in window.points if value == golden.one] == [(1, 1, 0)]
