# field_kernel.py
# Exact arithmetic, comparison and embeddings in Q(beta)

"""
Exact arithmetic in the number field generated by a real root beta > 1 of an
integer polynomial.

Elements are rational coordinate vectors in the power basis 1, beta, ...,
beta^(n-1), always reduced modulo the polynomial. Order questions are
settled by interval arithmetic on an isolating interval of beta, refined
geometrically until the sign of a difference is certain.
"""

import enum
import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import floor as _floor

import mpmath
import sympy
from sympy.polys.polyerrors import NotInvertible

from config import DEFAULT_ORBIT_BUDGET, default_refinement_bits
from errors import (
    BadEmbeddingIndex,
    DegenerateDegree,
    DivisionByZero,
    NoSuchRoot,
    NonInvertible,
    RefinementBudgetExceeded,
)

logger = logging.getLogger(__name__)

X = sympy.Symbol("x")

# First refinement step of a comparison, doubled until the budget
INITIAL_COMPARE_BITS = 64


class Ordering(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1

    def reverse(self):
        return Ordering(-self.value)


def _to_fraction(value):
    """Convert ints, Fractions and sympy rationals to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    raise TypeError(f"not a rational value: {value!r}")


def _to_rational(value):
    return sympy.Rational(value.numerator, value.denominator)


@dataclass(frozen=True)
class MinimalPolynomial:
    """
    Integer polynomial defining the base, coefficients leading first.

    Irreducibility is not required; the designated root makes beta well defined.
    """

    coefficients: tuple

    def __post_init__(self):
        coeffs = [int(c) for c in self.coefficients]
        # Leading zeros carry no information
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
        if len(coeffs) < 2:
            raise DegenerateDegree(f"polynomial {self.coefficients!r} has degree < 1")
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self):
        return len(self.coefficients) - 1

    @property
    def ascending(self):
        return tuple(reversed(self.coefficients))

    @cached_property
    def reducer(self):
        """Coordinates of beta^n, where n is the degree, in the power basis."""
        lead = self.coefficients[0]
        return tuple(Fraction(-c, lead) for c in self.ascending[:-1])

    def as_poly(self):
        return sympy.Poly(list(self.coefficients), X, domain=sympy.QQ)

    def evaluate(self, value):
        # Horner
        total = Fraction(0)
        for c in self.coefficients:
            total = total * value + c
        return total

    def reduce(self, coeffs):
        """
        Reduce an ascending coefficient list modulo the polynomial.

        Args:
            coeffs: Ascending rational coefficients of any length

        Returns:
            Tuple of exactly `degree` Fractions
        """
        n = self.degree
        work = [Fraction(c) for c in coeffs]
        if len(work) < n:
            work.extend([Fraction(0)] * (n - len(work)))
        red = self.reducer
        for top in range(len(work) - 1, n - 1, -1):
            c = work[top]
            if c:
                base = top - n
                for j, r in enumerate(red):
                    if r:
                        work[base + j] += c * r
                work[top] = Fraction(0)
        return tuple(work[:n])

    def __str__(self):
        from utility_converter import format_polynomial

        return format_polynomial(self)


class RealRoot:
    """
    Isolating interval of one real root, refined on demand.

    The finest interval computed so far is cached; refinement is guarded by a
    lock so one RealRoot can be shared between threads.
    """

    def __init__(self, sqf_poly, lo, hi, refinement_budget):
        self._poly = sqf_poly
        self._lo = _to_fraction(lo)
        self._hi = _to_fraction(hi)
        self.refinement_budget = refinement_budget
        self._lock = threading.Lock()

    @property
    def isolating_interval(self):
        with self._lock:
            return self._lo, self._hi

    @property
    def is_rational(self):
        return self._lo == self._hi

    def interval(self, bits):
        """
        Interval containing the root with width at most 2^-bits.

        Args:
            bits: Requested precision in bits

        Returns:
            Pair of Fractions (lo, hi)
        """
        eps = Fraction(1, 2 ** bits)
        with self._lock:
            if self._hi - self._lo > eps:
                lo, hi = self._poly.refine_root(
                    _to_rational(self._lo), _to_rational(self._hi), eps=_to_rational(eps)
                )
                self._lo, self._hi = _to_fraction(lo), _to_fraction(hi)
            return self._lo, self._hi

    def separate_from(self, value):
        """Refine until value lies outside the interval; returns True if the root is above it."""
        value = Fraction(value)
        bits = 8
        while True:
            lo, hi = self.interval(bits)
            if lo > value:
                return True
            if hi < value:
                return False
            if lo == hi == value:
                return False
            bits *= 2

    def __repr__(self):
        lo, hi = self.isolating_interval
        return f"RealRoot({lo}, {hi})"


@dataclass(frozen=True, eq=True)
class FieldElement:
    """
    Exact element of Q(beta): value = sum(coords[i] * beta**i).

    Equality is syntactic on the canonical coordinates, which coincides with
    value equality when the polynomial is irreducible. Order comparisons go
    through the owning context.
    """

    coords: tuple
    ctx: "BaseContext" = field(repr=False)

    # Arithmetic

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise ValueError("field elements belong to different bases")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(tuple(a + b for a, b in zip(self.coords, other.coords)), self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(tuple(-a for a in self.coords), self.ctx)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(tuple(a - b for a, b in zip(self.coords, other.coords)), self.ctx)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        product = [Fraction(0)] * (2 * len(self.coords) - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        product[i + j] += a * b
        return FieldElement(self.ctx.poly.reduce(product), self.ctx)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse modulo the polynomial."""
        if self.is_zero():
            raise DivisionByZero("division by zero in Q(beta)")
        if self.is_rational():
            return self.ctx.element(1 / self.coords[0])
        element = sympy.Poly([_to_rational(c) for c in reversed(self.coords)], X, domain=sympy.QQ)
        try:
            inv = element.invert(self.ctx.poly.as_poly())
        except NotInvertible as exc:
            raise NonInvertible(f"{self} is a zero divisor modulo {self.ctx.poly}") from exc
        coeffs = [_to_fraction(c) for c in reversed(inv.all_coeffs())]
        return FieldElement(self.ctx.poly.reduce(coeffs), self.ctx)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.ctx.one
        square = self
        while exponent:
            if exponent & 1:
                result = result * square
            square = square * square
            exponent >>= 1
        return result

    # Order

    def __lt__(self, other):
        return self.ctx.compare(self, self._coerce(other)) is Ordering.LT

    def __le__(self, other):
        return self.ctx.compare(self, self._coerce(other)) is not Ordering.GT

    def __gt__(self, other):
        return self.ctx.compare(self, self._coerce(other)) is Ordering.GT

    def __ge__(self, other):
        return self.ctx.compare(self, self._coerce(other)) is not Ordering.LT

    # Inspection

    def is_zero(self):
        return not any(self.coords)

    def is_rational(self):
        return not any(self.coords[1:])

    def __float__(self):
        return self.ctx.approx(self)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*b")
            else:
                terms.append(f"{c}*b^{i}")
        return " + ".join(terms) if terms else "0"


class BaseContext:
    """
    An algebraic base beta > 1 with its exact constants.

    Attributes:
        poly: MinimalPolynomial of beta
        root: RealRoot isolating beta
        root_index: position of beta among the real roots, ascending
        beta: beta as a FieldElement
        beta_floor: floor(beta)
        alphabet_max: largest digit of the negative base, floor(beta)
        positive_alphabet_max: largest digit of the positive base, ceil(beta) - 1
        l: left end point -beta/(beta+1) of the negative base domain
        r: right end point 1/(beta+1)
    """

    def __init__(self, poly, root, root_index, refinement_bits=None, orbit_budget=None):
        self.poly = poly
        self.root = root
        self.root_index = root_index
        self.refinement_bits = refinement_bits or default_refinement_bits()
        self.orbit_budget = orbit_budget or DEFAULT_ORBIT_BUDGET
        self._cache = {}
        self._cache_lock = threading.RLock()

        n = poly.degree
        self.zero = FieldElement((Fraction(0),) * n, self)
        self.one = self.element(1)
        if n == 1:
            # beta is the rational root itself
            self.beta = self.element(Fraction(-poly.coefficients[1], poly.coefficients[0]))
        else:
            self.beta = FieldElement((Fraction(0), Fraction(1)) + (Fraction(0),) * (n - 2), self)

        self.beta_floor = self.floor(self.beta)
        self.alphabet_max = self.beta_floor
        self.positive_alphabet_max = (
            self.beta_floor - 1 if self.compare(self.beta, self.element(self.beta_floor)) is Ordering.EQ
            else self.beta_floor
        )
        self.r = self.one / (self.beta + 1)
        self.l = -self.beta * self.r

    @cached_property
    def root_factor(self):
        """Irreducible factor of the polynomial vanishing at beta."""
        poly = self.poly.as_poly()
        _, factors = poly.factor_list()
        if len(factors) == 1 and factors[0][1] == 1:
            return poly
        lo, hi = self.root.isolating_interval
        for factor, _ in factors:
            if factor.count_roots(_to_rational(lo), _to_rational(hi)) > 0:
                return factor.monic()
        return poly

    def element(self, value):
        """
        Coerce an int, Fraction, coordinate sequence or FieldElement into this field.

        Args:
            value: Value to coerce

        Returns:
            FieldElement of this context
        """
        if isinstance(value, FieldElement):
            if value.ctx is not self:
                raise ValueError("field element belongs to a different base")
            return value
        if isinstance(value, (int, Fraction)):
            return FieldElement((Fraction(value),) + (Fraction(0),) * (self.poly.degree - 1), self)
        return FieldElement(self.poly.reduce([_to_fraction(c) for c in value]), self)

    def power(self, base, exponent):
        return self.element(base) ** exponent

    def cached(self, key, factory):
        """Memoize factory() under key; the cache is shared by all readers of the context."""
        with self._cache_lock:
            if key not in self._cache:
                self._cache[key] = factory()
            return self._cache[key]

    # Order

    def _enclosure(self, a, lo, hi):
        low = high = Fraction(0)
        for i, c in enumerate(a.coords):
            if not c:
                continue
            lo_pow, hi_pow = lo ** i, hi ** i
            if c > 0:
                low += c * lo_pow
                high += c * hi_pow
            else:
                low += c * hi_pow
                high += c * lo_pow
        return low, high

    def _vanishes(self, a):
        if a.is_zero():
            return True
        factor = self.root_factor
        if factor.degree() == self.poly.degree:
            return False
        element = sympy.Poly([_to_rational(c) for c in reversed(a.coords)], X, domain=sympy.QQ)
        return element.rem(factor).is_zero

    def value_key(self, a):
        """Hashable key equal for two elements exactly when their values are equal."""
        factor = self.root_factor
        if factor.degree() == self.poly.degree:
            return a.coords
        element = sympy.Poly([_to_rational(c) for c in reversed(a.coords)], X, domain=sympy.QQ)
        return tuple(_to_fraction(c) for c in element.rem(factor).all_coeffs())

    def sign(self, a):
        """Exact sign of a as -1, 0 or 1."""
        a = self.element(a)
        if self._vanishes(a):
            return 0
        if a.is_rational():
            return 1 if a.coords[0] > 0 else -1
        bits = min(INITIAL_COMPARE_BITS, self.refinement_bits)
        while True:
            lo, hi = self.root.interval(bits)
            low, high = self._enclosure(a, lo, hi)
            if low > 0:
                return 1
            if high < 0:
                return -1
            if bits >= self.refinement_bits:
                raise RefinementBudgetExceeded(
                    f"sign of {a} undecided after {self.refinement_bits} bits of refinement"
                )
            bits = min(bits * 2, self.refinement_bits)

    def compare(self, a, b):
        """
        Exact comparison of two elements.

        Args:
            a: First value
            b: Second value

        Returns:
            Ordering of a relative to b
        """
        a = self.element(a)
        b = self.element(b)
        if a == b:
            return Ordering.EQ
        return Ordering(self.sign(a - b))

    def floor(self, a):
        """Largest integer n with n <= a, decided exactly."""
        a = self.element(a)
        if a.is_rational():
            return _floor(a.coords[0])
        lo, hi = self.root.interval(INITIAL_COMPARE_BITS)
        low, _ = self._enclosure(a, lo, hi)
        guess = _floor(low)
        # Enclosure is conservative; settle the boundary exactly
        while self.compare(a, guess) is Ordering.LT:
            guess -= 1
        while self.compare(a, guess + 1) is not Ordering.LT:
            guess += 1
        return guess

    def abs(self, a):
        a = self.element(a)
        return -a if self.sign(a) < 0 else a

    def max(self, a, b):
        return a if self.compare(a, b) is not Ordering.LT else b

    def approx(self, a, bits=INITIAL_COMPARE_BITS):
        """Float approximation of a, for display only."""
        a = self.element(a)
        lo, hi = self.root.interval(bits)
        low, high = self._enclosure(a, lo, hi)
        return float((low + high) / 2)

    def approx_mpf(self, a, prec_bits=128):
        """High precision real approximation of a."""
        a = self.element(a)
        lo, hi = self.root.interval(prec_bits + 16)
        low, high = self._enclosure(a, lo, hi)
        mid = (low + high) / 2
        with mpmath.workprec(prec_bits):
            return mpmath.mpf(mid.numerator) / mid.denominator

    def __repr__(self):
        return f"BaseContext({self.poly}, root_index={self.root_index}, floor={self.beta_floor})"


def make_base(poly, root_selector="largest-real", refinement_bits=None, orbit_budget=None):
    """
    Build a base from a polynomial and a choice of real root.

    Args:
        poly: MinimalPolynomial or sequence of integer coefficients, leading first
        root_selector: "largest-real" or an index into the real roots in ascending order
        refinement_bits: Comparison budget in bits
        orbit_budget: Step budget for reference word orbits

    Returns:
        BaseContext
    """
    if not isinstance(poly, MinimalPolynomial):
        poly = MinimalPolynomial(tuple(poly))

    sqf = poly.as_poly().sqf_part()
    intervals = sqf.intervals()
    if not intervals:
        raise NoSuchRoot(f"{poly} has no real roots")

    if root_selector == "largest-real":
        index = len(intervals) - 1
    else:
        index = int(root_selector)
        if index < 0 or index >= len(intervals):
            raise NoSuchRoot(f"{poly} has {len(intervals)} real roots, index {index} requested")

    (lo, hi), _ = intervals[index]
    root = RealRoot(sqf, lo, hi, refinement_bits or default_refinement_bits())

    # The root must be certain to exceed 1
    if not root.separate_from(1):
        raise NoSuchRoot(f"real root {index} of {poly} does not exceed 1")

    ctx = BaseContext(poly, root, index, refinement_bits=refinement_bits, orbit_budget=orbit_budget)
    logger.info("Base %s, real root %d, floor %d", poly, index, ctx.beta_floor)
    return ctx


def fe_arith(op, a, b):
    """Apply add, sub, mul or div to two field elements."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def fe_compare(a, b):
    """Compare two elements of the same base."""
    return a.ctx.compare(a, b)


def fe_floor(a):
    """Floor of a field element."""
    return a.ctx.floor(a)


def embedding_roots(ctx, prec_bits=128):
    """
    All complex roots of the polynomial, ordered for embedding indices.

    Real roots come first in ascending order, then complex roots by real part
    and imaginary part.

    Args:
        ctx: BaseContext
        prec_bits: Working precision

    Returns:
        List of mpmath numbers (mpf for real roots, mpc otherwise)
    """

    def compute():
        with mpmath.workprec(prec_bits):
            raw = mpmath.polyroots(
                list(ctx.poly.coefficients), maxsteps=400, extraprec=2 * prec_bits
            )
            tol = mpmath.mpf(2) ** (-(prec_bits // 2))
            reals, complexes = [], []
            for z in raw:
                z = mpmath.mpc(z)
                if abs(z.imag) <= tol:
                    reals.append(mpmath.mpf(z.real))
                else:
                    complexes.append(z)
            reals.sort()
            complexes.sort(key=lambda z: (z.real, z.imag))
            return reals + complexes

    return ctx.cached(("embedding_roots", prec_bits), compute)


def conjugate_embed(ctx, a, index, prec_bits=128):
    """
    Evaluate a field element at one root of the polynomial.

    Args:
        ctx: BaseContext
        a: FieldElement
        index: Embedding index into embedding_roots
        prec_bits: Working precision

    Returns:
        mpmath.mpc value
    """
    roots = embedding_roots(ctx, prec_bits)
    if not 0 <= index < len(roots):
        raise BadEmbeddingIndex(f"embedding index {index} outside 0..{len(roots) - 1}")
    a = ctx.element(a)
    with mpmath.workprec(prec_bits):
        point = mpmath.mpc(roots[index])
        total = mpmath.mpc(0)
        for c in reversed(a.coords):
            total = total * point + mpmath.mpf(c.numerator) / c.denominator
        return total


def beta_index(ctx, prec_bits=128):
    """Position of beta itself among embedding_roots."""
    roots = embedding_roots(ctx, prec_bits)
    approx = ctx.approx(ctx.beta)
    reals = [i for i, z in enumerate(roots) if not isinstance(z, mpmath.mpc)]
    return min(reals, key=lambda i: abs(float(roots[i]) - approx))
