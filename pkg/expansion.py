# expansion.py
# Digit producing transformations and the reference words of both bases

"""
The greedy transformation T_beta on [0, 1), the Ito-Sadahiro transformation
T_-beta on [l, r), expansions of points and of arbitrary field elements, and
the reference words that govern admissibility:

    d_beta(1), d*_beta(1)       positive base, Renyi expansion of 1
    d_-beta(l), d*_-beta(r)     negative base, expansions of the end points

Orbits are traced exactly, so eventually periodic expansions are returned
with their preperiod and period. Orbits that do not close within the budget
come back as truncated words flagged as undecided.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from errors import OutOfDomain, UndecidedInput, UndecidedReference
from field_kernel import Ordering

logger = logging.getLogger(__name__)

NEGATIVE = "negative"
POSITIVE = "positive"


def _primitive_root(period):
    n = len(period)
    for size in range(1, n + 1):
        if n % size == 0 and period[:size] * (n // size) == period:
            return period[:size]
    return period


def format_digits(digits):
    """Digits as a plain string, or bracketed and comma separated if any digit exceeds 9."""
    digits = tuple(digits)
    if any(d > 9 or d < 0 for d in digits):
        return "[" + ",".join(str(d) for d in digits) + "]"
    return "".join(str(d) for d in digits)


@dataclass(frozen=True)
class DigitWord:
    """
    Finite or eventually periodic digit word.

    An empty period means the word ends in 0^omega. Words built with make()
    are normalised: the period is primitive, the preperiod is minimal and
    finite words carry no trailing zeros. A word with decided=False is a
    truncated prefix of an expansion that did not close within budget.
    """

    preperiod: tuple = ()
    period: tuple = ()
    decided: bool = True

    @classmethod
    def make(cls, preperiod=(), period=(), decided=True):
        pre = tuple(int(d) for d in preperiod)
        per = tuple(int(d) for d in period)
        if not decided:
            return cls(pre, (), False)
        if per:
            per = _primitive_root(per)
            if per == (0,):
                per = ()
        if per:
            # Rotate the period backwards while it absorbs the preperiod tail
            while pre and pre[-1] == per[-1]:
                pre = pre[:-1]
                per = (per[-1],) + per[:-1]
        else:
            while pre and pre[-1] == 0:
                pre = pre[:-1]
        return cls(pre, per, True)

    @classmethod
    def finite(cls, digits):
        return cls.make(tuple(digits), ())

    @classmethod
    def zero(cls):
        return cls((), (), True)

    @property
    def is_finite(self):
        return self.decided and not self.period

    @property
    def is_zero(self):
        return self.decided and not self.period and not any(self.preperiod)

    @property
    def is_purely_periodic(self):
        return self.decided and bool(self.period) and not self.preperiod

    @property
    def horizon(self):
        """Index after which the word only repeats its period."""
        return len(self.preperiod) + max(len(self.period), 1)

    def digit(self, i):
        """
        Digit at 0-based position i.

        Raises:
            UndecidedInput: i lies beyond the prefix of a truncated word
        """
        if i < len(self.preperiod):
            return self.preperiod[i]
        if not self.decided:
            raise UndecidedInput(f"digit {i} is beyond the truncated prefix of length {len(self.preperiod)}")
        if not self.period:
            return 0
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def prefix(self, n):
        return tuple(self.digit(i) for i in range(n))

    def shift(self, n):
        """The word with its first n digits removed."""
        if n <= len(self.preperiod):
            return DigitWord.make(self.preperiod[n:], self.period, self.decided)
        if not self.decided:
            raise UndecidedInput(f"cannot shift a truncated word of length {len(self.preperiod)} by {n}")
        if not self.period:
            return DigitWord.zero()
        k = (n - len(self.preperiod)) % len(self.period)
        return DigitWord.make((), self.period[k:] + self.period[:k])

    def prepend(self, digits):
        return DigitWord.make(tuple(digits) + self.preperiod, self.period, self.decided)

    def suffixes(self):
        """
        One representative of every distinct suffix.

        Finite words have len(preperiod) + 1 suffix classes (the last is the zero
        word); eventually periodic words have len(preperiod) + len(period).
        """
        if not self.decided:
            raise UndecidedInput("suffixes of a truncated word are not determined")
        count = len(self.preperiod) + (len(self.period) if self.period else 1)
        return [self.shift(i) for i in range(count)]

    def __str__(self):
        if not self.decided:
            return format_digits(self.preperiod) + "..."
        if self.is_zero:
            return "0"
        text = format_digits(self.preperiod) if self.preperiod else ""
        if self.period:
            text += "(" + format_digits(self.period) + ")"
        return text


@dataclass(frozen=True)
class PointedExpansion:
    """Digits a_k...a_0 before the point, then an infinite digit word after it."""

    integer_part: tuple
    fractional_part: DigitWord
    base_sign: str = NEGATIVE

    def __str__(self):
        text = format_digits(self.integer_part) + "•"
        if not self.fractional_part.is_zero:
            text += str(self.fractional_part)
        return text


@dataclass(frozen=True)
class OrbitTrace:
    """Exact orbit of a transformation; points[cycle_start] is where the orbit closes."""

    points: tuple
    digits: tuple
    cycle_start: Optional[int] = None

    @property
    def closed(self):
        return self.cycle_start is not None

    def point(self, k):
        """The k-th iterate, following the cycle past the end of the trace."""
        if k < len(self.points):
            return self.points[k]
        if not self.closed:
            raise UndecidedReference(f"orbit not closed; iterate {k} unknown")
        cycle = len(self.points) - self.cycle_start
        return self.points[self.cycle_start + (k - self.cycle_start) % cycle]

    def word(self):
        if not self.closed:
            return DigitWord.make(self.digits, (), decided=False)
        return DigitWord.make(self.digits[: self.cycle_start], self.digits[self.cycle_start:])


def in_negbeta_domain(ctx, x):
    return ctx.compare(x, ctx.l) is not Ordering.LT and ctx.compare(x, ctx.r) is Ordering.LT


def in_beta_domain(ctx, x):
    return ctx.sign(x) >= 0 and ctx.compare(x, ctx.one) is Ordering.LT


def step_beta(ctx, x):
    """
    One step of T_beta(x) = beta*x - floor(beta*x).

    Args:
        ctx: BaseContext
        x: FieldElement in [0, 1)

    Returns:
        (digit, next point)
    """
    x = ctx.element(x)
    if not in_beta_domain(ctx, x):
        raise OutOfDomain(f"{x} is outside [0, 1)")
    y = ctx.beta * x
    digit = ctx.floor(y)
    return digit, y - digit


def step_negbeta(ctx, x):
    """
    One step of T_-beta(x) = -beta*x - floor(-beta*x + beta/(beta+1)).

    Args:
        ctx: BaseContext
        x: FieldElement in [l, r)

    Returns:
        (digit, next point)
    """
    x = ctx.element(x)
    if not in_negbeta_domain(ctx, x):
        raise OutOfDomain(f"{x} is outside [l, r)")
    y = -ctx.beta * x
    digit = ctx.floor(y - ctx.l)
    return digit, y - digit


def trace_orbit(ctx, start, step, budget=None):
    """
    Iterate step from start until the orbit repeats or the budget runs out.

    Args:
        ctx: BaseContext
        start: Initial point
        step: step_beta or step_negbeta
        budget: Maximum number of points, defaults to the context orbit budget

    Returns:
        OrbitTrace
    """
    budget = budget or ctx.orbit_budget
    seen = {}
    points, digits = [], []
    x = ctx.element(start)
    while len(points) < budget:
        key = ctx.value_key(x)
        if key in seen:
            return OrbitTrace(tuple(points), tuple(digits), seen[key])
        seen[key] = len(points)
        points.append(x)
        digit, x = step(ctx, x)
        digits.append(digit)
    logger.warning("Orbit of %s did not close within %d steps", start, budget)
    return OrbitTrace(tuple(points), tuple(digits), None)


def expand_negbeta(ctx, x, n):
    """First n digits of the (-beta)-expansion of x in [l, r)."""
    digits = []
    x = ctx.element(x)
    for _ in range(n):
        digit, x = step_negbeta(ctx, x)
        digits.append(digit)
    return digits


def expand_beta(ctx, x, n):
    """First n digits of the beta-expansion of x in [0, 1)."""
    digits = []
    x = ctx.element(x)
    for _ in range(n):
        digit, x = step_beta(ctx, x)
        digits.append(digit)
    return digits


def trace_reference_l(ctx, max_steps=None):
    """OrbitTrace of l under T_-beta, cached on the context."""
    budget = max_steps or ctx.orbit_budget
    return ctx.cached(("reference_l", budget), lambda: trace_orbit(ctx, ctx.l, step_negbeta, budget))


def reference_l(ctx, max_steps=None):
    """
    The (-beta)-expansion d_-beta(l) of the left end point.

    Args:
        ctx: BaseContext
        max_steps: Orbit budget, defaults to the context budget

    Returns:
        DigitWord, with decided=False if the orbit did not close
    """
    trace = trace_reference_l(ctx, max_steps)
    word = trace.word()
    logger.debug("d_-beta(l) = %s", word)
    return word


def decided_reference_l(ctx):
    word = reference_l(ctx)
    if not word.decided:
        raise UndecidedReference(f"d_-beta(l) did not close within {ctx.orbit_budget} steps")
    return word


def reference_r_star(ctx):
    """
    The word d*_-beta(r) bounding admissible words from above.

    If d_-beta(l) is purely periodic with odd period d1...d(2j+1), the result is
    (0 d1 ... d(2j) (d(2j+1) - 1))^omega, otherwise 0 d_-beta(l).
    """

    def compute():
        word = decided_reference_l(ctx)
        if word.is_purely_periodic and len(word.period) % 2 == 1:
            period = word.period
            return DigitWord.make((), (0,) + period[:-1] + (period[-1] - 1,))
        return word.prepend((0,))

    return ctx.cached(("reference_r_star",), compute)


def renyi_one(ctx):
    """
    The Renyi expansion d_beta(1): t1 = floor(beta), then the digits of beta - floor(beta).

    Returns:
        DigitWord, with decided=False if the orbit did not close
    """

    def compute():
        t1 = ctx.beta_floor
        rest = ctx.beta - t1
        if rest.is_zero() or ctx.sign(rest) == 0:
            return DigitWord.finite((t1,))
        trace = trace_orbit(ctx, rest, step_beta)
        word = trace.word()
        return DigitWord.make((t1,) + word.preperiod, word.period, word.decided)

    return ctx.cached(("renyi_one",), compute)


def renyi_one_star(ctx):
    """
    The quasi-greedy expansion d*_beta(1).

    Equal to d_beta(1) when that word is infinite, else (t1 ... t(m-1) (tm - 1))^omega.
    """
    word = renyi_one(ctx)
    if not word.decided:
        raise UndecidedReference(f"d_beta(1) did not close within {ctx.orbit_budget} steps")
    if word.is_finite:
        digits = word.preperiod
        return DigitWord.make((), digits[:-1] + (digits[-1] - 1,))
    return word


def evaluate_gamma(ctx, digits):
    """
    Value a_k(-beta)^k + ... + a_1(-beta) + a_0 of a digit string a_k...a_0.

    The empty string evaluates to 0.
    """
    value = ctx.zero
    neg_beta = -ctx.beta
    for d in digits:
        value = value * neg_beta + d
    return value


def evaluate_gamma_positive(ctx, digits):
    """Value a_k beta^k + ... + a_0 of a digit string a_k...a_0."""
    value = ctx.zero
    for d in digits:
        value = value * ctx.beta + d
    return value


def series_value(ctx, preperiod, period, ratio):
    """
    Exact sum of c_1 ratio + c_2 ratio^2 + ... for an eventually periodic sequence.

    Args:
        ctx: BaseContext
        preperiod: Leading coefficients (any integers)
        period: Repeating coefficients, empty for a finite sum
        ratio: FieldElement with |ratio| < 1

    Returns:
        FieldElement
    """
    value = ctx.zero
    power = ctx.one
    for c in preperiod:
        power = power * ratio
        value = value + power * c
    if period:
        block = ctx.zero
        inner = ctx.one
        for c in period:
            inner = inner * ratio
            block = block + inner * c
        # Geometric tail over whole periods
        value = value + power * block / (ctx.one - inner)
    return value


def evaluate_word(ctx, word, negative=True):
    """
    Value sum w_i b^-i of an infinite digit word, with b = -beta or beta.

    Args:
        ctx: BaseContext
        word: Decided DigitWord
        negative: Use base -beta when True, beta otherwise

    Returns:
        FieldElement
    """
    if not word.decided:
        raise UndecidedInput(f"cannot evaluate truncated word {word}")
    base = -ctx.beta if negative else ctx.beta
    return series_value(ctx, word.preperiod, word.period, ctx.one / base)


def expand_real_negbeta(ctx, x):
    """
    Pointed (-beta)-expansion of any element of Q(beta).

    Uses the smallest exponent j with x/(-beta)^j in [l, r). Values
    (-beta)^k/(beta+1), which have two expansions, get the preferred form
    starting with 1 d1 d2 ...

    Args:
        ctx: BaseContext
        x: FieldElement

    Returns:
        PointedExpansion
    """
    x = ctx.element(x)
    inv = ctx.one / (-ctx.beta)
    exponent = 0
    y = x
    while not in_negbeta_domain(ctx, y):
        y = y * inv
        exponent += 1

    if exponent > 0 and y == ctx.l:
        # x = (-beta)^(exponent+1) r and r = 1 + l
        reference = decided_reference_l(ctx)
        integer = (1,) + reference.prefix(exponent + 1)
        fraction = reference.shift(exponent + 1)
    else:
        word = trace_orbit(ctx, y, step_negbeta).word()
        try:
            integer = word.prefix(exponent)
        except UndecidedInput as exc:
            raise UndecidedReference(f"expansion of {x} did not close") from exc
        fraction = word.shift(exponent)
    return PointedExpansion(_strip_leading_zeros(integer), fraction, NEGATIVE)


def expand_real_beta(ctx, x):
    """
    Pointed beta-expansion of a non-negative element of Q(beta).

    Args:
        ctx: BaseContext
        x: FieldElement with x >= 0

    Returns:
        PointedExpansion
    """
    x = ctx.element(x)
    if ctx.sign(x) < 0:
        raise OutOfDomain(f"{x} is negative; beta-expansions need x >= 0")
    inv = ctx.one / ctx.beta
    exponent = 0
    y = x
    while ctx.compare(y, ctx.one) is not Ordering.LT:
        y = y * inv
        exponent += 1
    word = trace_orbit(ctx, y, step_beta).word()
    try:
        integer = word.prefix(exponent)
    except UndecidedInput as exc:
        raise UndecidedReference(f"expansion of {x} did not close") from exc
    fraction = word.shift(exponent)
    return PointedExpansion(_strip_leading_zeros(integer), fraction, POSITIVE)


def _strip_leading_zeros(digits):
    digits = tuple(digits)
    i = 0
    while i < len(digits) and digits[i] == 0:
        i += 1
    return digits[i:] or (0,)
