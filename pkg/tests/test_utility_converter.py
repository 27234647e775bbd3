from fractions import Fraction

import pytest

from errors import ParseError
from expansion import DigitWord
from field_kernel import MinimalPolynomial
from integer_sets import enumerate_negbeta_integers
from substitution import Morphism
from utility_converter import (
    format_polynomial,
    format_word,
    morphism_from_json,
    morphism_to_json,
    parse_digit_word,
    parse_field_element,
    parse_polynomial,
    window_from_json,
    window_to_json,
)


@pytest.mark.parametrize(
    "text, coefficients",
    [
        ("1,-1,-1,-1", (1, -1, -1, -1)),
        ("x^3 - x^2 - x - 1", (1, -1, -1, -1)),
        ("x**3-2*x**2-x+1", (1, -2, -1, 1)),
        ("2x^2 - 1", (2, 0, -1)),
        ("x - 2", (1, -2)),
    ],
)
def test_parse_polynomial(text, coefficients):
    assert parse_polynomial(text).coefficients == coefficients


@pytest.mark.parametrize("text", ["x^2 + 1/2", "x + y", "x^3 -"])
def test_parse_polynomial_rejects(text):
    with pytest.raises(ParseError):
        parse_polynomial(text)


def test_format_polynomial():
    assert format_polynomial(MinimalPolynomial((2, 0, -1))) == "2x^2-1"
    assert format_polynomial(MinimalPolynomial((1, -2))) == "x-2"
    assert format_polynomial(MinimalPolynomial((1, 0, -1, -1))) == "x^3-x-1"


def test_parse_field_element(tribonacci):
    b = tribonacci.beta
    assert parse_field_element(tribonacci, "b - 1") == b - 1
    assert parse_field_element(tribonacci, "1/(b + 1)") == 1 / (b + 1)
    assert parse_field_element(tribonacci, "b^3") == b * b + b + 1
    assert parse_field_element(tribonacci, "2/3") == tribonacci.element(Fraction(2, 3))
    value = b * b - b
    assert parse_field_element(tribonacci, str(value)) == value


@pytest.mark.parametrize("text", ["c + 1", "b +"])
def test_parse_field_element_rejects(tribonacci, text):
    with pytest.raises(ParseError):
        parse_field_element(tribonacci, text)


def test_parse_digit_word():
    assert parse_digit_word("10(1)") == DigitWord.make((1, 0), (1,))
    assert parse_digit_word("(110)") == DigitWord.make((), (1, 1, 0))
    assert parse_digit_word("1(0)") == DigitWord.finite((1,))
    word = parse_digit_word("[12,0]([3,4])")
    assert word.preperiod == (12, 0)
    assert word.period == (3, 4)


@pytest.mark.parametrize("text", ["", "1(", "()", "1a", "([])", "[1,x]"])
def test_parse_digit_word_rejects(text):
    with pytest.raises(ParseError):
        parse_digit_word(text)


def test_format_word():
    assert format_word((1, 0, 2)) == "102"
    assert format_word((12, 0)) == "12,0"
    assert format_word(()) == ""


def test_morphism_json():
    phi = Morphism((0, 1, 2), {0: (0, 1), 1: (0, 2), 2: (0,)}, "antimorphism")
    data = morphism_to_json(phi)
    assert data == {"kind": "antimorphism", "alphabet": [0, 1, 2], "rules": {"0": "01", "1": "02", "2": "0"}}
    assert morphism_from_json(data) == phi


def test_morphism_json_rejects():
    with pytest.raises(ParseError) as info:
        morphism_from_json({"alphabet": [0]})
    assert info.value.key == "rules"
    with pytest.raises(ParseError):
        morphism_from_json({"alphabet": [0], "rules": {"0": "1"}})


def test_window_json(tribonacci, cubic):
    window = enumerate_negbeta_integers(tribonacci, count=3)
    data = window_to_json(tribonacci, window)
    assert data["base"] == "x^3-x^2-x-1"
    assert data["zero_index"] == 3
    assert data["points"][4]["digits"] == [1]
    assert data["points"][4]["value_exact"] == ["1", "0", "0"]
    points, letters, sign = window_from_json(tribonacci, data)
    assert tuple(points) == window.points
    assert letters == window.gap_letters
    assert sign == "neg"

    with pytest.raises(ParseError) as info:
        window_from_json(cubic, data)
    assert info.value.key == "base"
    del data["points"]
    with pytest.raises(ParseError) as info:
        window_from_json(tribonacci, data)
    assert info.value.key == "points"
