# integer_sets.py
# (-beta)-integers and beta-integers: extremal strings, gap values and windows

"""
Integers of both numeration systems.

A (-beta)-integer is a value gamma(a) = a_k(-beta)^k + ... + a_0 whose digit
string followed by 0^omega is admissible. The admissible strings of length k
(leading zeros allowed) form S(k); consecutive integers whose strings first
differ at exponent k are separated by the gap value Delta_k.

Windows are enumerated from S(L) for a length L large enough that the window
is complete. Values of strings in S(L) are ordered by the alternate order of
the strings when L is even and by its reverse when L is odd, so windows come
out sorted without any numeric approximation.
"""

import logging
from dataclasses import dataclass, field
from math import lcm
from typing import Optional

from admissibility import alt_key, compare_finite, is_admissible_beta, is_admissible_negbeta
from errors import HypothesisViolated, NumerationError, TrivialSet, UndecidedReference
from expansion import (
    DigitWord,
    decided_reference_l,
    evaluate_gamma,
    evaluate_gamma_positive,
    evaluate_word,
    reference_l,
    reference_r_star,
    renyi_one,
    renyi_one_star,
    series_value,
    trace_reference_l,
)
from field_kernel import Ordering, make_base

logger = logging.getLogger(__name__)

DELTA_METHODS = ("definition", "series", "orbit", "finite_table")
EXTREMAL_METHODS = ("bruteforce", "closed_infinite", "closed_finite")


@dataclass(frozen=True)
class ExtremalStrings:
    k: int
    min_k: tuple
    max_k: tuple
    method: str


@dataclass(frozen=True)
class TrivialityReport:
    """Outcome of the prefix test with its cross-check against the golden ratio."""

    trivial: bool
    witness_prefix: Optional[tuple]
    golden_comparison: Ordering
    consistent: bool

    @property
    def at_golden_ratio(self):
        return self.golden_comparison is Ordering.EQ


@dataclass(frozen=True)
class PredictedRelation:
    k: int
    other: int
    kind: str  # "equal": Delta_k = Delta_other, "complement": Delta_k = 2 - Delta_other
    holds: Optional[bool] = None


@dataclass(frozen=True)
class CoincidenceCheck:
    pattern: str
    relations: tuple

    @property
    def holds(self):
        return all(r.holds for r in self.relations)


@dataclass(frozen=True)
class GapTable:
    entries: dict
    distinct_values: tuple
    horizon: int
    coincidence_check: CoincidenceCheck
    bounded_by_two: bool

    def classes(self):
        """Partition of 0..horizon into sets of indices with equal gap value."""
        return [set(ks) for _, ks in self.distinct_values]


@dataclass(frozen=True)
class IntegerWindow:
    """
    Sorted window of integers with the gap letters between neighbours.

    points holds (value, digits) pairs. In a symmetric positive-base window the
    negative points carry the digits of their absolute value.
    """

    points: tuple
    gap_letters: tuple
    zero_index: int
    sign: str = "neg"
    letter_values: dict = field(default_factory=dict)

    def z(self, n):
        """The n-th integer counted from z_0 = 0."""
        index = self.zero_index + n
        if not 0 <= index < len(self.points):
            raise IndexError(f"z_{n} is outside the window")
        return self.points[index]

    @property
    def values(self):
        return [value for value, _ in self.points]

    @property
    def expansions(self):
        return [digits for _, digits in self.points]


# Hypotheses on d_-beta(l)


def satisfies_infinite_hypothesis(ctx):
    """True if d_-beta(l) is infinite with all digits positive and d1 > d_2i for every i."""
    d = decided_reference_l(ctx)
    if d.is_finite:
        return False
    n = len(d.preperiod) + 2 * len(d.period) + 2
    first = d.digit(0)
    for i in range(1, n + 1):
        if d.digit(i - 1) <= 0:
            return False
        if d.digit(2 * i - 1) >= first:
            return False
    return True


def satisfies_finite_hypothesis(ctx):
    """True if d_-beta(l) = d1...dm 0^omega with m >= 1, all di positive and d1 > d_2i."""
    d = decided_reference_l(ctx)
    if not d.is_finite or not d.preperiod:
        return False
    m = len(d.preperiod)
    first = d.digit(0)
    for i in range(1, m + 1):
        if d.digit(i - 1) <= 0:
            return False
        if d.digit(2 * i - 1) >= first:
            return False
    return True


# Triviality


def triviality_report(ctx):
    """
    Decide whether the (-beta)-integers reduce to {0}.

    The set is trivial exactly when d_-beta(l) starts with 1 0^(2j) 1 for some j.
    The result is cross-checked against beta < golden ratio, decided exactly
    through the sign of beta^2 - beta - 1.

    Returns:
        TrivialityReport
    """
    word = reference_l(ctx)
    scan = word.horizon + 1 if word.decided else len(word.preperiod)
    if not scan:
        raise UndecidedReference("d_-beta(l) is empty at the current budget")

    witness = None
    if word.digit(0) == 1:
        for j in range(1, scan):
            digit = word.digit(j)
            if digit:
                if digit == 1 and (j - 1) % 2 == 0:
                    witness = word.prefix(j + 1)
                break
        else:
            if not word.decided:
                raise UndecidedReference(f"d_-beta(l) = {word} too short to decide triviality")
    trivial = witness is not None

    golden = ctx.compare(ctx.beta * ctx.beta - ctx.beta - 1, 0)
    below_golden = golden is Ordering.LT
    report = TrivialityReport(trivial, witness, golden, trivial == below_golden)
    if not report.consistent:
        logger.warning("Triviality prefix test disagrees with comparison against the golden ratio")
    return report


def is_trivial(ctx):
    """True if the only (-beta)-integer is 0."""
    return triviality_report(ctx).trivial


# Admissible strings


def _strings(ctx, k, negative=True):
    """
    Admissible strings of length k with their values, sorted by the digit order.

    Strings are built from those of length k-1, since every suffix of an
    admissible word is admissible; only the full word needs checking.
    """

    def compute():
        if k == 0:
            return [((), ctx.zero)]
        previous = _strings(ctx, k - 1, negative)
        if negative:
            lower = decided_reference_l(ctx)
            upper = reference_r_star(ctx)
            lower_prefix = lower.prefix(k + lower.horizon)
            upper_prefix = upper.prefix(k + upper.horizon)
            base = -ctx.beta
            digit_max = ctx.alphabet_max
        else:
            star = renyi_one_star(ctx)
            star_prefix = star.prefix(k + star.horizon)
            base = ctx.beta
            digit_max = ctx.positive_alphabet_max

        place = base ** (k - 1)
        multiples = [place * d for d in range(digit_max + 1)]
        result = []
        for d in range(digit_max + 1):
            for digits, value in previous:
                word = (d,) + digits
                if negative:
                    if compare_finite(word, lower_prefix, True) is Ordering.LT:
                        continue
                    if compare_finite(word, upper_prefix, True) is not Ordering.LT:
                        continue
                elif compare_finite(word, star_prefix, False) is not Ordering.LT:
                    continue
                result.append((word, multiples[d] + value))
        result.sort(key=(lambda item: alt_key(item[0])) if negative else (lambda item: item[0]))
        logger.debug("%d admissible strings of length %d", len(result), k)
        return result

    return ctx.cached(("strings", negative, k), compute)


def enumerate_S(ctx, k):
    """
    All strings a_(k-1)...a_0 with a_(k-1)...a_0 0^omega admissible, in alternate order.

    Args:
        ctx: BaseContext
        k: String length, S(0) = [()]

    Returns:
        List of digit tuples
    """
    return [digits for digits, _ in _strings(ctx, k, True)]


def enumerate_S_positive(ctx, k):
    """Parry-admissible strings of length k in lexicographic order."""
    return [digits for digits, _ in _strings(ctx, k, False)]


# Extremal strings


def _closed_min_infinite(d, k):
    if k % 2 == 0:
        return d.prefix(k)
    head = d.prefix(k)
    return head[:-1] + (head[-1] - 1,)


def _closed_finite(pre, k):
    m = len(pre)

    def digit(i):
        return pre[i - 1] if i <= m else 0

    def lowest(j):
        if j < m:
            head = tuple(pre[:j])
            return head if j % 2 == 0 else head[:-1] + (head[-1] - 1,)
        return tuple(pre) + (0,) * (j - m)

    def highest(j):
        if j == 0:
            return ()
        if j <= m:
            return (0,) + lowest(j - 1)
        if j == m + 1:
            if j % 2 == 0:
                return (0,) + tuple(pre[: m - 1]) + (digit(m) - 1,)
            if digit(m) < digit(1) - 1:
                return (0,) + tuple(pre[: m - 1]) + (digit(m) + 1,)
            return (0,) + tuple(pre[: m - 2]) + (digit(m - 1) - 1, 0)
        if j == m + 2 and j % 2 == 0:
            return (0,) + tuple(pre[: m - 1]) + (digit(m) + 1,) + lowest(1)
        if j % 2 == 1:
            return (0,) + tuple(pre) + (0,) * (j - m - 2) + (1,)
        return (0,) + tuple(pre) + (0,) * (j - m - 3) + (1,) + lowest(1)

    return lowest(k), highest(k)


def extremal_strings(ctx, k, method=None):
    """
    Smallest and largest strings of S(k) in the alternate order.

    Args:
        ctx: BaseContext
        k: String length
        method: bruteforce, closed_infinite, closed_finite, or None for the
            closed form that applies (bruteforce when none does)

    Returns:
        ExtremalStrings
    """
    if method is None:
        if satisfies_infinite_hypothesis(ctx):
            method = "closed_infinite"
        elif satisfies_finite_hypothesis(ctx):
            method = "closed_finite"
        else:
            method = "bruteforce"
    if method not in EXTREMAL_METHODS:
        raise ValueError(f"unknown extremal string method {method!r}")
    if k == 0:
        return ExtremalStrings(0, (), (), method)

    if method == "bruteforce":
        strings = enumerate_S(ctx, k)
        return ExtremalStrings(k, strings[0], strings[-1], method)

    d = decided_reference_l(ctx)
    if method == "closed_infinite":
        if not satisfies_infinite_hypothesis(ctx):
            raise HypothesisViolated(f"d_-beta(l) = {d} needs positive digits and d1 > d_2i")
        low = _closed_min_infinite(d, k)
        high = (0,) + _closed_min_infinite(d, k - 1) if k > 1 else (0,)
        return ExtremalStrings(k, low, high, method)

    if not satisfies_finite_hypothesis(ctx):
        raise HypothesisViolated(f"d_-beta(l) = {d} is not a finite word with positive digits and d1 > d_2i")
    low, high = _closed_finite(d.preperiod, k)
    return ExtremalStrings(k, low, high, method)


# Gap values


def _series_applies(ctx, k):
    if satisfies_infinite_hypothesis(ctx):
        return True
    if satisfies_finite_hypothesis(ctx):
        return 1 <= k <= len(decided_reference_l(ctx).preperiod) - 1
    return False


def _delta_series(ctx, k):
    d = decided_reference_l(ctx)
    u, v = d.shift(k - 1), d.shift(k)
    head = max(len(u.preperiod), len(v.preperiod))
    periodic = bool(u.period or v.period)
    cycle = lcm(max(len(u.period), 1), max(len(v.period), 1)) if periodic else 0
    pre = [u.digit(i) - v.digit(i) for i in range(head)]
    per = [u.digit(head + j) - v.digit(head + j) for j in range(cycle)]
    tail = series_value(ctx, pre, per, ctx.one / (-ctx.beta))
    return ctx.abs((-1) ** k + tail)


def _delta_orbit(ctx, k):
    trace = trace_reference_l(ctx)
    if not trace.closed:
        raise UndecidedReference("orbit of l did not close")
    return ctx.abs((-1) ** k + trace.point(k - 1) - trace.point(k))


def _delta_definition(ctx, k):
    extremes = extremal_strings(ctx, k, "bruteforce")
    return ctx.abs((-ctx.beta) ** k + evaluate_gamma(ctx, extremes.min_k) - evaluate_gamma(ctx, extremes.max_k))


def _delta_finite_table(ctx, k):
    if not satisfies_finite_hypothesis(ctx):
        raise HypothesisViolated("finite gap table needs a finite d_-beta(l) with positive digits and d1 > d_2i")
    pre = decided_reference_l(ctx).preperiod
    m, d1, dm = len(pre), pre[0], pre[-1]
    if k == 0:
        return ctx.one
    if k < m:
        return _delta_series(ctx, k)
    if k == m:
        return ctx.one - ctx.element(dm) / ctx.beta if m % 2 == 0 else ctx.element(dm) / ctx.beta
    if k == m + 1:
        if m % 2 == 0 and dm == d1 - 1:
            return delta_gap(ctx, 1, "finite_table")
        return ctx.one
    return ctx.one if k % 2 == 1 else delta_gap(ctx, 1, "finite_table")


def delta_gap(ctx, k, method=None):
    """
    Gap value Delta_k between neighbouring (-beta)-integers.

    Args:
        ctx: BaseContext
        k: Differing exponent, k >= 0
        method: definition (extremal strings), series, orbit, finite_table, or
            None to use the cheapest method that applies

    Returns:
        FieldElement
    """
    if method is None:
        if satisfies_finite_hypothesis(ctx):
            method = "finite_table"
        elif satisfies_infinite_hypothesis(ctx):
            method = "series"
        else:
            method = "definition"
    if method not in DELTA_METHODS:
        raise ValueError(f"unknown gap method {method!r}")

    def compute():
        if k == 0:
            return ctx.one
        if method == "definition":
            return _delta_definition(ctx, k)
        if method == "finite_table":
            return _delta_finite_table(ctx, k)
        if not _series_applies(ctx, k):
            raise HypothesisViolated(f"the {method} form of Delta_{k} does not apply to this base")
        if method == "series":
            return _delta_series(ctx, k)
        return _delta_orbit(ctx, k)

    return ctx.cached(("delta", method, k), compute)


def predicted_coincidences(ctx, k_max):
    """
    Equalities between gap values implied by the shape of d_-beta(l).

    Returns:
        (pattern name, list of PredictedRelation with holds unset)
    """
    d = decided_reference_l(ctx)
    relations = []
    if satisfies_infinite_hypothesis(ctx):
        m, p = len(d.preperiod), len(d.period)
        if p == 1:
            pattern = "period-1"
            relations = [PredictedRelation(m + j, 0, "equal") for j in range(1, k_max - m + 1)]
        elif p == 2:
            pattern = "period-2"
            relations = [PredictedRelation(m + j, m + 1, "equal") for j in range(2, k_max - m + 1)]
        elif p % 2 == 0:
            pattern = "even-period"
            relations = [PredictedRelation(m + p + j, m + j, "equal") for j in range(1, k_max - m - p + 1)]
        else:
            pattern = "odd-period"
            relations = [PredictedRelation(m + 2 * p + j, m + j, "equal") for j in range(1, k_max - m - 2 * p + 1)]
            relations += [PredictedRelation(m + p + j, m + j, "complement") for j in range(1, k_max - m - p + 1)]
    elif satisfies_finite_hypothesis(ctx):
        pattern = "finite"
        pre = d.preperiod
        m, d1, dm = len(pre), pre[0], pre[-1]
        if m + 1 <= k_max:
            other = 1 if (m % 2 == 0 and dm == d1 - 1) else 0
            relations.append(PredictedRelation(m + 1, other, "equal"))
        for k in range(m + 2, k_max + 1):
            relations.append(PredictedRelation(k, 0 if k % 2 == 1 else 1, "equal"))
    else:
        pattern = "none"
    return pattern, relations


def gap_coincidences(ctx, k_max=12, method=None):
    """
    Gap values Delta_0..Delta_k_max grouped by exact equality.

    Args:
        ctx: BaseContext
        k_max: Largest index computed
        method: Gap method passed to delta_gap

    Returns:
        GapTable whose coincidence_check records whether the predicted
        equalities hold
    """
    entries = {k: delta_gap(ctx, k, method) for k in range(k_max + 1)}
    groups = {}
    for k, value in entries.items():
        groups.setdefault(ctx.value_key(value), (value, []))[1].append(k)
    distinct = tuple((value, tuple(ks)) for value, ks in sorted(groups.values(), key=lambda g: g[1][0]))

    pattern, predicted = predicted_coincidences(ctx, k_max)
    checked = []
    for relation in predicted:
        left, right = entries[relation.k], entries[relation.other]
        if relation.kind == "equal":
            holds = ctx.compare(left, right) is Ordering.EQ
        else:
            holds = ctx.compare(left, 2 - right) is Ordering.EQ
        checked.append(PredictedRelation(relation.k, relation.other, relation.kind, holds))
    check = CoincidenceCheck(pattern, tuple(checked))
    if not check.holds:
        logger.warning("Predicted gap coincidences (%s) fail for %s", pattern, ctx.poly)

    bounded = all(ctx.compare(value, 2) is Ordering.LT for value in entries.values())
    return GapTable(entries, distinct, k_max, check, bounded)


# Windows


def _strip(digits):
    i = 0
    while i < len(digits) - 1 and digits[i] == 0:
        i += 1
    return tuple(digits[i:]) if digits else (0,)


def _first_index(ctx, values, predicate):
    # Smallest index whose value satisfies a monotone predicate
    lo, hi = 0, len(values)
    while lo < hi:
        mid = (lo + hi) // 2
        if predicate(values[mid]):
            hi = mid
        else:
            lo = mid + 1
    return lo


def _gap_letter(a, b):
    length = len(a)
    for i in range(length):
        if a[i] != b[i]:
            return length - 1 - i
    raise NumerationError(f"strings {a} and {b} are equal")


def enumerate_negbeta_integers(ctx, count=None, bound=None):
    """
    Window of (-beta)-integers around 0.

    Args:
        ctx: BaseContext
        count: Number of integers on each side of 0
        bound: Alternatively, all integers z with |z| <= bound

    Returns:
        IntegerWindow
    """
    if (count is None) == (bound is None):
        raise ValueError("give exactly one of count and bound")
    if is_trivial(ctx):
        raise TrivialSet(f"the (-beta)-integers of {ctx.poly} reduce to {{0}}")
    if bound is not None:
        bound = ctx.element(bound)

    length = 1
    while True:
        radius = ctx.beta ** length * ctx.r
        if bound is not None and ctx.compare(bound, radius) is not Ordering.LT:
            length += 1
            continue
        strings = _strings(ctx, length, True)
        if length % 2 == 1:
            strings = strings[::-1]
        values = [value for _, value in strings]
        start = _first_index(ctx, values, lambda v: ctx.compare(v, -radius) is Ordering.GT)
        stop = _first_index(ctx, values, lambda v: ctx.compare(v, radius) is not Ordering.LT)
        zero = next(i for i, (digits, _) in enumerate(strings) if not any(digits))
        if count is None or (zero - start >= count and stop - zero > count):
            break
        length += 1

    if count is not None:
        start, stop = zero - count, zero + count + 1
    else:
        start = _first_index(ctx, values, lambda v: ctx.compare(v, -bound) is not Ordering.LT)
        stop = _first_index(ctx, values, lambda v: ctx.compare(v, bound) is Ordering.GT)

    window = strings[start:stop]
    letters = tuple(_gap_letter(a, b) for (a, _), (b, _) in zip(window, window[1:]))
    points = tuple((value, _strip(digits)) for digits, value in window)
    logger.info("Enumerated %d (-beta)-integers from strings of length %d", len(points), length)
    return IntegerWindow(points, letters, zero - start, "neg")


def positive_gaps(ctx):
    """
    Gap values of the beta-integers: Delta_i = sum over j >= 1 of t_(i+j) / beta^j.

    Returns:
        List of (letter, FieldElement) for letters 0..m-1 (finite d_beta(1) of
        length m) or 0..m+p-1 (preperiod m, period p)
    """
    word = renyi_one(ctx)
    if not word.decided:
        raise UndecidedReference(f"d_beta(1) did not close within {ctx.orbit_budget} steps")
    letters = len(word.preperiod) + len(word.period)
    return [(i, evaluate_word(ctx, word.shift(i), negative=False)) for i in range(letters)]


def enumerate_beta_integers(ctx, count=None, bound=None, symmetric=False):
    """
    Window of non-negative beta-integers, or of all of them when symmetric.

    Args:
        ctx: BaseContext
        count: Number of positive integers
        bound: Alternatively, all integers z with z <= bound
        symmetric: Add the mirror image -z of every point

    Returns:
        IntegerWindow with gap letters classified by positive_gaps
    """
    if (count is None) == (bound is None):
        raise ValueError("give exactly one of count and bound")
    renyi_one_star(ctx)
    if bound is not None:
        bound = ctx.element(bound)

    length = 1
    while True:
        if bound is not None:
            if ctx.compare(bound, ctx.beta ** length) is not Ordering.LT:
                length += 1
                continue
            break
        if len(_strings(ctx, length, False)) > count:
            break
        length += 1

    strings = _strings(ctx, length, False)
    values = [value for _, value in strings]
    if count is not None:
        stop = count + 1
    else:
        stop = _first_index(ctx, values, lambda v: ctx.compare(v, bound) is Ordering.GT)
    window = strings[:stop]

    gaps = positive_gaps(ctx)
    lookup = {}
    for letter, value in gaps:
        lookup.setdefault(ctx.value_key(value), letter)
    letters = []
    for (_, a), (_, b) in zip(window, window[1:]):
        key = ctx.value_key(b - a)
        if key not in lookup:
            raise NumerationError(f"gap {b - a} is not a gap value of {ctx.poly}")
        letters.append(lookup[key])

    points = [(value, _strip(digits)) for digits, value in window]
    zero_index = 0
    if symmetric:
        mirrored = [(-value, digits) for value, digits in reversed(points[1:])]
        points = mirrored + points
        letters = letters[::-1] + letters
        zero_index = len(mirrored)
    logger.info("Enumerated %d beta-integers from strings of length %d", len(points), length)
    return IntegerWindow(
        tuple(points), tuple(letters), zero_index, "pos", {letter: value for letter, value in gaps}
    )


def verify_window(ctx, points, gap_letters, negative=True):
    """
    Re-validate a stored window.

    Args:
        ctx: BaseContext
        points: Sequence of (value, digits) pairs in increasing order
        gap_letters: Letter for every neighbouring pair
        negative: Window of the base -beta (True) or beta

    Returns:
        List of problem descriptions, empty when the window is valid
    """
    problems = []
    evaluate = evaluate_gamma if negative else evaluate_gamma_positive
    admissible = is_admissible_negbeta if negative else is_admissible_beta
    if len(gap_letters) != max(len(points) - 1, 0):
        problems.append(f"{len(gap_letters)} gap letters for {len(points)} points")

    for n, (value, digits) in enumerate(points):
        if not admissible(ctx, DigitWord.finite(digits)):
            problems.append(f"point {n}: {digits} is not admissible")
        expected = evaluate(ctx, digits)
        stored = value if negative else ctx.abs(value)
        if ctx.compare(expected, stored) is not Ordering.EQ:
            problems.append(f"point {n}: digits {digits} do not evaluate to the stored value")

    width = max((len(digits) for _, digits in points), default=0)
    positive_letters = {}
    if not negative:
        for letter, value in positive_gaps(ctx):
            positive_letters.setdefault(ctx.value_key(value), letter)
    for n, ((a, da), (b, db)) in enumerate(zip(points, points[1:])):
        if ctx.compare(a, b) is not Ordering.LT:
            problems.append(f"points {n} and {n + 1} are not increasing")
            continue
        if n >= len(gap_letters):
            break
        if negative:
            padded_a = (0,) * (width - len(da)) + tuple(da)
            padded_b = (0,) * (width - len(db)) + tuple(db)
            letter = _gap_letter(padded_a, padded_b)
        else:
            letter = positive_letters.get(ctx.value_key(b - a))
        if letter != gap_letters[n]:
            problems.append(f"gap {n}: stored letter {gap_letters[n]}, recomputed {letter}")
    return problems


def search_bases(polynomials, predicate, orbit_budget=200, refinement_bits=None):
    """
    Build a base for every candidate polynomial and keep those satisfying predicate.

    Candidates without a real root above 1, or whose reference word does not
    close within orbit_budget, are skipped.

    Args:
        polynomials: Iterable of coefficient sequences, leading first
        predicate: Callable taking a BaseContext
        orbit_budget: Orbit budget for each candidate
        refinement_bits: Comparison budget for each candidate

    Returns:
        List of BaseContext
    """
    found = []
    for coefficients in polynomials:
        try:
            ctx = make_base(coefficients, refinement_bits=refinement_bits, orbit_budget=orbit_budget)
            if not reference_l(ctx).decided:
                continue
            if predicate(ctx):
                found.append(ctx)
        except NumerationError as exc:
            logger.debug("Skipping %s: %s", coefficients, exc)
    logger.info("Base search kept %d candidates", len(found))
    return found
