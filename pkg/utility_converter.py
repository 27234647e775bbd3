# utility_converter.py
# Parsing and serialisation helpers shared by the CLI and the library

"""
Text and JSON conversions for polynomials, field elements, digit words,
morphisms and integer windows. Every parse failure raises ParseError.
"""

import re
from fractions import Fraction

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from errors import ParseError

TRANSFORMATIONS = standard_transformations + (implicit_multiplication_application, convert_xor)
POLY_SYMBOL = sympy.Symbol("x")
ELEMENT_SYMBOL = sympy.Symbol("b")

_COEFFICIENT_LIST = re.compile(r"^\s*-?\d+(\s*,\s*-?\d+)+\s*$")
_DIGIT_PART = r"\[[^\]]*\]|\d+"
_DIGIT_WORD = re.compile(rf"^(?P<pre>{_DIGIT_PART})?(?:\((?P<per>{_DIGIT_PART})\))?$")


def _parse_expr(text, symbol, what):
    try:
        expr = parse_expr(text, local_dict={symbol.name: symbol}, transformations=TRANSFORMATIONS)
    except (SyntaxError, TypeError, ValueError, sympy.SympifyError) as exc:
        raise ParseError(f"cannot parse {what} {text!r}: {exc}") from exc
    extra = expr.free_symbols - {symbol}
    if extra:
        raise ParseError(f"{what} {text!r} uses unknown symbols {sorted(map(str, extra))}")
    return expr


def parse_polynomial(text):
    """
    Parse "x^3 - x^2 - x - 1", "x**3-x**2-x-1" or the coefficient list "1,-1,-1,-1".

    Returns:
        MinimalPolynomial
    """
    from field_kernel import MinimalPolynomial

    if _COEFFICIENT_LIST.match(text):
        return MinimalPolynomial(tuple(int(c) for c in text.split(",")))
    expr = _parse_expr(text, POLY_SYMBOL, "polynomial")
    try:
        poly = sympy.Poly(expr, POLY_SYMBOL)
    except sympy.PolynomialError as exc:
        raise ParseError(f"{text!r} is not a polynomial in x") from exc
    coeffs = poly.all_coeffs()
    if not all(c.is_integer for c in coeffs):
        raise ParseError(f"polynomial {text!r} needs integer coefficients")
    return MinimalPolynomial(tuple(int(c) for c in coeffs))


def format_polynomial(poly):
    """Polynomial as "x^3-x^2-x-1"."""
    terms = []
    degree = poly.degree
    for i, c in enumerate(poly.coefficients):
        if not c:
            continue
        k = degree - i
        sign = "-" if c < 0 else "+"
        size = abs(c)
        if k == 0:
            body = str(size)
        else:
            power = "x" if k == 1 else f"x^{k}"
            body = power if size == 1 else f"{size}{power}"
        terms.append((sign, body))
    text = "".join(sign + body for sign, body in terms)
    return text[1:] if text.startswith("+") else text


def _polynomial_element(ctx, expr, text):
    try:
        poly = sympy.Poly(sympy.expand(expr), ELEMENT_SYMBOL, domain=sympy.QQ)
    except (sympy.PolynomialError, sympy.CoercionFailed) as exc:
        raise ParseError(f"cannot parse field element {text!r}") from exc
    return ctx.element([Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())])


def parse_field_element(ctx, text):
    """
    Parse a rational expression in b, the base, such as "b - 1" or "1/(b + 1)".

    Returns:
        FieldElement of ctx
    """
    expr = _parse_expr(text, ELEMENT_SYMBOL, "field element")
    num, den = sympy.fraction(sympy.together(expr))
    value = _polynomial_element(ctx, num, text)
    if den != 1:
        value = value / _polynomial_element(ctx, den, text)
    return value


def _parse_digit_part(part, text):
    if part is None:
        return ()
    if part.startswith("["):
        inner = part[1:-1].strip()
        if not inner:
            return ()
        try:
            return tuple(int(d) for d in inner.split(","))
        except ValueError as exc:
            raise ParseError(f"bad digit list in {text!r}") from exc
    return tuple(int(d) for d in part)


def parse_digit_word(text):
    """
    Parse "10(1)", "111", "(110)" or "[12,0]([3,4])".

    Digits in parentheses repeat forever; brackets hold comma-separated digits.

    Returns:
        DigitWord
    """
    from expansion import DigitWord

    cleaned = text.strip().replace(" ", "")
    match = _DIGIT_WORD.match(cleaned)
    if not cleaned or not match:
        raise ParseError(f"cannot parse digit word {text!r}")
    pre = _parse_digit_part(match.group("pre"), text)
    per = _parse_digit_part(match.group("per"), text)
    if match.group("per") is not None and not per:
        raise ParseError(f"empty period in {text!r}")
    if any(d < 0 for d in pre + per):
        raise ParseError(f"negative digit in {text!r}")
    return DigitWord.make(pre, per)


def format_word(letters):
    """Letters without separators when all are single digits, else comma separated."""
    letters = tuple(letters)
    if all(0 <= a <= 9 for a in letters):
        return "".join(map(str, letters))
    return ",".join(map(str, letters))


def _parse_letters(value):
    if isinstance(value, list):
        return tuple(int(a) for a in value)
    if "," in value:
        return tuple(int(a) for a in value.split(",") if a)
    return tuple(int(a) for a in value)


def morphism_to_json(morphism):
    return {
        "kind": morphism.kind,
        "alphabet": list(morphism.alphabet),
        "rules": {str(a): format_word(morphism.rules[a]) for a in morphism.alphabet},
    }


def morphism_from_json(data):
    """Inverse of morphism_to_json; raises ParseError on malformed input."""
    from substitution import Morphism

    try:
        alphabet = tuple(int(a) for a in data["alphabet"])
        rules = {int(a): _parse_letters(word) for a, word in data["rules"].items()}
        return Morphism(alphabet, rules, data.get("kind", "morphism"))
    except KeyError as exc:
        raise ParseError(f"morphism is missing {exc}", key=str(exc.args[0])) from exc
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed morphism: {exc}") from exc


def window_to_json(ctx, window):
    """
    Serialise an IntegerWindow.

    Values are stored exactly as power-basis coordinates; value_approx is for
    reading only.
    """
    return {
        "base": str(ctx.poly),
        "root_index": ctx.root_index,
        "sign": window.sign,
        "zero_index": window.zero_index,
        "points": [
            {
                "digits": list(digits),
                "value_exact": [str(c) for c in value.coords],
                "value_approx": float(value),
            }
            for value, digits in window.points
        ],
        "gap_letters": list(window.gap_letters),
    }


def window_from_json(ctx, data):
    """
    Read the points and gap letters of a serialised window.

    Returns:
        (points, gap_letters, sign) with points as (FieldElement, digits) pairs
    """
    if not isinstance(data, dict) or "base" not in data:
        raise ParseError("window is missing 'base'", key="base")
    if data["base"] != str(ctx.poly):
        raise ParseError(f"window belongs to {data['base']}, not {ctx.poly}", key="base")
    try:
        points = [
            (ctx.element([Fraction(c) for c in point["value_exact"]]), tuple(int(d) for d in point["digits"]))
            for point in data["points"]
        ]
        letters = tuple(int(a) for a in data["gap_letters"])
        return points, letters, data.get("sign", "neg")
    except KeyError as exc:
        raise ParseError(f"window is missing {exc}", key=str(exc.args[0])) from exc
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed window: {exc}") from exc
