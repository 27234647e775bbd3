# admissibility.py
# Lexicographic and alternate orders on digit words, and admissibility tests

import logging
from dataclasses import dataclass
from math import lcm
from typing import Optional

from errors import UndecidedInput
from expansion import decided_reference_l, reference_r_star, renyi_one_star
from field_kernel import Ordering

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrderResult:
    """Relation between two words and the 1-based index of their first difference."""

    relation: Ordering
    witness_index: Optional[int] = None


def _comparison_horizon(u, v):
    # Two eventually periodic words that agree this far agree forever
    pre = max(len(u.preperiod), len(v.preperiod))
    return pre + lcm(max(len(u.period), 1), max(len(v.period), 1))


def _compare(u, v, alternate):
    for word in (u, v):
        if not word.decided:
            raise UndecidedInput(f"word {word} is truncated")
    for i in range(_comparison_horizon(u, v)):
        a, b = u.digit(i), v.digit(i)
        if a != b:
            index = i + 1
            if alternate and index % 2 == 1:
                relation = Ordering.LT if a > b else Ordering.GT
            else:
                relation = Ordering.LT if a < b else Ordering.GT
            return OrderResult(relation, index)
    return OrderResult(Ordering.EQ, None)


def lex_compare(u, v):
    """
    Lexicographic comparison of two decided digit words.

    Args:
        u: DigitWord
        v: DigitWord

    Returns:
        OrderResult of u relative to v
    """
    return _compare(u, v, alternate=False)


def alt_compare(u, v):
    """
    Alternate order: u < v iff (-1)^i (v_i - u_i) > 0 at the first differing index i.

    Args:
        u: DigitWord
        v: DigitWord

    Returns:
        OrderResult of u relative to v
    """
    return _compare(u, v, alternate=True)


def alt_key(digits):
    """Sort key putting equal-length digit strings in alternate order."""
    return tuple(-d if i % 2 == 0 else d for i, d in enumerate(digits))


def compare_finite(digits, reference_prefix, alternate):
    """
    Compare digits followed by 0^omega with a reference word given by a long prefix.

    The prefix must cover len(digits) plus the reference horizon, so that
    agreement on the whole prefix means equality.

    Returns:
        Ordering of the finite word relative to the reference
    """
    k = len(digits)
    for i, ref in enumerate(reference_prefix):
        d = digits[i] if i < k else 0
        if d != ref:
            if alternate and i % 2 == 0:
                return Ordering.LT if d > ref else Ordering.GT
            return Ordering.LT if d < ref else Ordering.GT
    return Ordering.EQ


def is_admissible_beta(ctx, w):
    """
    Parry condition: every suffix of w is lexicographically below d*_beta(1).

    Args:
        ctx: BaseContext
        w: Decided DigitWord

    Returns:
        True if w is the beta-expansion of some x in [0, 1)
    """
    star = renyi_one_star(ctx)
    if any(d < 0 for d in w.preperiod + w.period):
        return False
    for suffix in w.suffixes():
        if lex_compare(suffix, star).relation is not Ordering.LT:
            return False
    return True


def is_admissible_negbeta(ctx, w):
    """
    Ito-Sadahiro condition: d_-beta(l) <= s < d*_-beta(r) in alternate order for every suffix s.

    Args:
        ctx: BaseContext
        w: Decided DigitWord

    Returns:
        True if w is the (-beta)-expansion of some x in [l, r)
    """
    lower = decided_reference_l(ctx)
    upper = reference_r_star(ctx)
    if any(d < 0 for d in w.preperiod + w.period):
        return False
    for suffix in w.suffixes():
        if alt_compare(lower, suffix).relation is Ordering.GT:
            return False
        if alt_compare(suffix, upper).relation is not Ordering.LT:
            return False
    return True
