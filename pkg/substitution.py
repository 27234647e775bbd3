# substitution.py
# Morphisms fixing the gap words of (-beta)-integers and beta-integers

"""
The gap word v over the infinite alphabet N, the antimorphism Phi whose square
fixes it, projections of N onto a finite alphabet, and the finite morphisms
that result. The canonical substitution of a Parry number is built for
comparison with the positive base, together with a search for a word that
conjugates two morphisms.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg

from errors import CommutationFailed, HypothesisViolated, NotParry, NotSofic, TrivialSet
from expansion import decided_reference_l, reference_l, renyi_one
from integer_sets import (
    enumerate_beta_integers,
    enumerate_negbeta_integers,
    enumerate_S,
    extremal_strings,
    gap_coincidences,
    is_trivial,
    satisfies_finite_hypothesis,
    satisfies_infinite_hypothesis,
)

logger = logging.getLogger(__name__)

DEFAULT_HORIZON = 12
MORPHISM = "morphism"
ANTIMORPHISM = "antimorphism"


@dataclass(frozen=True)
class Morphism:
    """
    Morphism or antimorphism over a finite alphabet of non-negative integers.

    rules maps every letter to its image, a tuple of letters.
    """

    alphabet: tuple
    rules: dict
    kind: str = MORPHISM

    def __post_init__(self):
        letters = set(self.alphabet)
        for letter, image in self.rules.items():
            if letter not in letters or not set(image) <= letters:
                raise ValueError(f"rule {letter} -> {image} leaves the alphabet {self.alphabet}")

    def image(self, letter):
        return self.rules[letter]

    def apply(self, word):
        """Image of a finite word; an antimorphism reverses the order of the letter images."""
        letters = word if self.kind == MORPHISM else reversed(tuple(word))
        result = []
        for letter in letters:
            result.extend(self.rules[letter])
        return tuple(result)

    def square(self):
        """The composition of the map with itself, always a morphism."""
        return Morphism(self.alphabet, {a: self.apply(self.rules[a]) for a in self.alphabet}, MORPHISM)

    @property
    def is_non_erasing(self):
        return all(self.rules[a] for a in self.alphabet)

    def incidence_matrix(self):
        """Matrix M with M[i][j] = number of occurrences of letter i in the image of letter j."""
        index = {a: i for i, a in enumerate(self.alphabet)}
        matrix = np.zeros((len(self.alphabet), len(self.alphabet)), dtype=np.int64)
        for j, a in enumerate(self.alphabet):
            for letter in self.rules[a]:
                matrix[index[letter], j] += 1
        return matrix

    def is_primitive(self):
        """True if some power of the incidence matrix is strictly positive."""
        n = len(self.alphabet)
        pattern = (self.incidence_matrix() > 0).astype(np.int64)
        power = pattern.copy()
        # Wielandt bound on the exponent of a primitive matrix
        for _ in range((n - 1) ** 2 + 1):
            if np.all(power > 0):
                return True
            power = np.minimum(power @ pattern, 1)
        return bool(np.all(power > 0))

    def perron_frequencies(self):
        """
        Normalised Perron eigenvector of the incidence matrix.

        For a primitive morphism these are the letter frequencies of its fixed points.

        Returns:
            Dict letter -> frequency
        """
        values, vectors = linalg.eig(self.incidence_matrix().astype(float))
        lead = int(np.argmax(values.real))
        vector = np.abs(vectors[:, lead].real)
        vector = vector / vector.sum()
        return {a: float(vector[i]) for i, a in enumerate(self.alphabet)}


@dataclass(frozen=True)
class Projection:
    """Letter-to-letter map from N onto a finite alphabet of representatives."""

    mapping: dict
    horizon: int

    @property
    def alphabet(self):
        return tuple(sorted(set(self.mapping.values())))

    def __call__(self, letter):
        return self.mapping[letter]

    def apply(self, word):
        return tuple(self.mapping[letter] for letter in word)


@dataclass(frozen=True)
class CommutationResult:
    holds: bool
    failing_letter: Optional[int] = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class FiniteMorphisms:
    """phi = Pi o Phi over the finite alphabet, its square psi, and the projection used."""

    phi: Morphism
    psi: Morphism
    projection: Projection
    primitive: bool


@dataclass(frozen=True)
class PointedBiWord:
    """Materialised segment ...w_-2 w_-1 | w_0 w_1 ... of a bidirectional word."""

    left: tuple
    right: tuple
    invariant: bool = True

    def __str__(self):
        return "".join(map(str, self.left)) + "|" + "".join(map(str, self.right))


# S_k, R_k and Phi


def _letters_between(strings):
    # Largest exponent at which neighbouring strings differ
    letters = []
    for a, b in zip(strings, strings[1:]):
        length = len(a)
        i = next(i for i in range(length) if a[i] != b[i])
        letters.append(length - 1 - i)
    return tuple(letters)


def _words_S_R_constructed(ctx, k):
    strings = enumerate_S(ctx, k + 1)
    index = {s: i for i, s in enumerate(strings)}
    low_k = extremal_strings(ctx, k, "bruteforce")
    # S(k+1) is sorted in alternate order, so min(k+1) is first and max(k+1) last
    top = index[low_k.min_k + (0,)]
    s_word = _letters_between(strings[top::-1])
    bottom = index[low_k.max_k + (0,)]
    r_word = _letters_between(strings[bottom:])
    return s_word, r_word


def _require_nontrivial(ctx):
    if is_trivial(ctx):
        raise TrivialSet(f"the (-beta)-integers of {ctx.poly} reduce to {{0}}")


def words_S_R(ctx, k, method="construct"):
    """
    Words S_k and R_k coding the integers inserted next to a gap of letter k.

    S_k codes the strings of S(k+1) from min(k)0 down to min(k+1); R_k codes
    those from max(k)0 up to max(k+1).

    Args:
        ctx: BaseContext
        k: Letter
        method: construct (enumeration) or closed (needs positive digits and d1 > d_2i)

    Returns:
        (S_k, R_k) as tuples of letters
    """
    _require_nontrivial(ctx)
    if method == "closed":
        return SymbolicRuleFamily.for_base(ctx).words_S_R(k)
    if method != "construct":
        raise ValueError(f"unknown method {method!r}")
    return ctx.cached(("words_S_R", k), lambda: _words_S_R_constructed(ctx, k))


def antimorphism_phi(ctx, k, method="construct"):
    """
    Image of letter k under the antimorphism Phi.

    Phi(k) = S_k (k+1) mirror(R_k) for even k and R_k (k+1) mirror(S_k) for odd k.

    Args:
        ctx: BaseContext
        k: Letter
        method: construct or closed

    Returns:
        Tuple of letters
    """
    if method == "closed":
        return SymbolicRuleFamily.for_base(ctx).phi(k)
    s_word, r_word = words_S_R(ctx, k, method)
    if k % 2 == 0:
        return s_word + (k + 1,) + r_word[::-1]
    return r_word + (k + 1,) + s_word[::-1]


def apply_phi(ctx, word):
    """Phi on a finite word over N; reverses concatenation."""
    result = []
    for letter in reversed(tuple(word)):
        result.extend(antimorphism_phi(ctx, letter))
    return tuple(result)


def apply_psi(ctx, word):
    """Psi = Phi o Phi on a finite word over N."""
    return apply_phi(ctx, apply_phi(ctx, word))


@dataclass(frozen=True)
class SymbolicRuleFamily:
    """
    Closed-form rules of Phi over N when d_-beta(l) has positive digits and d1 > d_2i.

    Phi(0) = 0^(d1-1) 1
    Phi(2j) = 0^(d(2j+1)-1) (2j+1) 0^(d1-d(2j)-1) 1          for j >= 1
    Phi(2j+1) = 0^(d(2j+1)-1) (2j+2) 0^(d1-d(2j+2)-1) 1      for j >= 0
    """

    reference: object
    horizon: int = DEFAULT_HORIZON

    @classmethod
    def for_base(cls, ctx, horizon=DEFAULT_HORIZON):
        if not satisfies_infinite_hypothesis(ctx):
            raise HypothesisViolated(
                f"closed-form rules need positive digits and d1 > d_2i, d_-beta(l) = {reference_l(ctx)}"
            )
        return cls(decided_reference_l(ctx), horizon)

    @classmethod
    def closed_form(cls, reference, horizon=DEFAULT_HORIZON):
        """Rule family of a decided reference word d_-beta(l), without checking the hypothesis."""
        return cls(reference, horizon)

    def d(self, i):
        return self.reference.digit(i - 1)

    def words_S_R(self, k):
        if k % 2 == 0:
            s_word = (0,) * (self.d(k + 1) - 1)
        else:
            s_word = (1,) + (0,) * (self.d(1) - 1 - self.d(k + 1))
        if k == 0:
            return s_word, ()
        return s_word, self.words_S_R(k - 1)[0]

    def phi(self, k):
        d1 = self.d(1)
        if k == 0:
            return (0,) * (d1 - 1) + (1,)
        if k % 2 == 0:
            return (0,) * (self.d(k + 1) - 1) + (k + 1,) + (0,) * (d1 - self.d(k) - 1) + (1,)
        return (0,) * (self.d(k) - 1) + (k + 1,) + (0,) * (d1 - self.d(k + 1) - 1) + (1,)

    def materialize(self, horizon=None):
        """Rules for every letter up to the horizon."""
        return {k: self.phi(k) for k in range((horizon or self.horizon) + 1)}


# Projection onto a finite alphabet


def _signature(projection, ctx, letter):
    return projection.apply(antimorphism_phi(ctx, letter))


def projection_pi(ctx, k_max=DEFAULT_HORIZON):
    """
    Projection of N onto a finite alphabet compatible with Phi.

    Letters start grouped by exactly equal gap values; groups are split until
    Pi o Phi agrees on every letter of a group, which is the commutation
    condition Pi o Phi = Pi o Phi o Pi. Each group maps to its smallest letter.

    Args:
        ctx: BaseContext
        k_max: Largest letter whose rule is checked

    Returns:
        Projection defined on letters 0..k_max+1
    """
    word = reference_l(ctx)
    if not word.decided:
        raise NotSofic(f"d_-beta(l) = {word} is not known to be eventually periodic")
    _require_nontrivial(ctx)

    letters = range(k_max + 2)
    table = gap_coincidences(ctx, k_max + 1)
    group_of = {}
    for group, (_, ks) in enumerate(table.distinct_values):
        for k in ks:
            group_of[k] = group

    while True:
        mapping = {k: min(j for j in letters if group_of[j] == group_of[k]) for k in letters}
        projection = Projection(mapping, k_max + 1)
        # Split groups whose members disagree under Pi o Phi; the last letter follows its representative
        keys = {}
        for k in letters:
            source = k if k <= k_max else mapping[k]
            keys[k] = (group_of[k], _signature(projection, ctx, source) if source <= k_max else None)
        numbering = {}
        refined = {k: numbering.setdefault(keys[k], len(numbering)) for k in letters}
        if len(numbering) == len(set(group_of.values())):
            return projection
        logger.debug("Refining projection of %s to %d classes", ctx.poly, len(numbering))
        group_of = refined


def example_projection(ctx):
    """
    The explicit projection for two classes of reference words, or None.

    Class one: d_-beta(l) = d1...dm (d(m+1))^omega with positive digits and
    d1 > d_2i; Pi(k) = k for k <= m and 0 above. Class two: finite
    d_-beta(l) = d1...dm with m even and the finite-word hypothesis.

    Returns:
        Callable letter -> letter, or None
    """
    word = decided_reference_l(ctx)
    m = len(word.preperiod)
    if len(word.period) == 1 and satisfies_infinite_hypothesis(ctx):
        return lambda k: k if k <= m else 0
    if word.is_finite and m % 2 == 0 and satisfies_finite_hypothesis(ctx):
        d1, dm = word.digit(0), word.digit(m - 1)

        def project(k):
            if k <= m:
                return k
            if k == m + 1:
                return 0 if dm < d1 - 1 else 1
            return 0 if k % 2 == 1 else 1

        return project
    return None


def check_commutation(pi, phi, k_max):
    """
    Check Pi o Phi = Pi o Phi o Pi on every letter up to k_max.

    Args:
        pi: Callable letter -> letter
        phi: Callable letter -> tuple of letters
        k_max: Largest letter checked

    Returns:
        CommutationResult carrying the first failing letter
    """
    for k in range(k_max + 1):
        left = tuple(pi(a) for a in phi(k))
        right = tuple(pi(a) for a in phi(pi(k)))
        if left != right:
            return CommutationResult(False, k)
    return CommutationResult(True, None)


def finite_morphism(ctx, k_max=DEFAULT_HORIZON):
    """
    The antimorphism phi = Pi o Phi and the morphism psi = phi^2 over the finite alphabet.

    Args:
        ctx: BaseContext
        k_max: Largest letter checked for commutation

    Returns:
        FiniteMorphisms
    """
    projection = projection_pi(ctx, k_max)
    result = check_commutation(projection, lambda k: antimorphism_phi(ctx, k), k_max)
    if not result:
        raise CommutationFailed(f"projection does not commute with Phi at letter {result.failing_letter}", result.failing_letter)

    alphabet = projection.alphabet
    phi = Morphism(alphabet, {a: projection.apply(antimorphism_phi(ctx, a)) for a in alphabet}, ANTIMORPHISM)
    psi = phi.square()
    primitive = psi.is_primitive()
    if not primitive:
        logger.warning("Projected morphism of %s is not primitive", ctx.poly)
    logger.info("Finite morphism over %d letters for %s", len(alphabet), ctx.poly)
    return FiniteMorphisms(phi, psi, projection, primitive)


# Fixed words


def fixed_biword(ctx, length):
    """
    Segment of the gap word v around the origin, with a check that Psi fixes it.

    Args:
        ctx: BaseContext
        length: Number of letters on each side of the origin

    Returns:
        PointedBiWord
    """
    window = enumerate_negbeta_integers(ctx, count=length)
    letters = window.gap_letters
    left, right = letters[: window.zero_index], letters[window.zero_index:]

    image_right = apply_psi(ctx, right)
    image_left = apply_psi(ctx, left)
    invariant = image_right[: len(right)] == right and image_left[len(image_left) - len(left):] == left
    if not invariant:
        logger.warning("Psi does not reproduce the gap word of %s around the origin", ctx.poly)
    return PointedBiWord(tuple(left), tuple(right), invariant)


def fixed_word_segment(ctx, length, finite=None, seed_length=20):
    """
    Prefix of the right half of the projected gap word u, grown by iterating psi.

    Args:
        ctx: BaseContext
        length: Number of letters wanted
        finite: FiniteMorphisms, computed when omitted
        seed_length: Letters taken from enumeration before iterating

    Returns:
        Tuple of letters
    """
    finite = finite or finite_morphism(ctx)
    seed = finite.projection.apply(fixed_biword(ctx, seed_length).right)
    word = seed
    while len(word) < length:
        grown = finite.psi.apply(word)
        if grown[: len(word)] != word:
            raise CommutationFailed("psi does not extend the gap word seed")
        word = grown
    return word[:length]


def letter_frequencies(word):
    counts = Counter(word)
    total = len(word)
    return {letter: count / total for letter, count in sorted(counts.items())}


# Positive base


def canonical_substitution_beta(ctx):
    """
    Canonical substitution of a Parry number.

    For d_beta(1) = t1...tm: i -> 0^t(i+1) (i+1) for i < m-1 and m-1 -> 0^tm.
    For d_beta(1) = t1...tm (t(m+1)...t(m+p))^omega the last letter m+p-1 maps
    to 0^t(m+p) m.

    Returns:
        Morphism
    """
    word = renyi_one(ctx)
    if not word.decided:
        raise NotParry(f"d_beta(1) = {word} did not close within {ctx.orbit_budget} steps")
    t = word.prefix(len(word.preperiod) + len(word.period))
    size = len(t)
    rules = {i: (0,) * t[i] + (i + 1,) for i in range(size - 1)}
    if word.is_finite:
        rules[size - 1] = (0,) * t[size - 1]
    else:
        rules[size - 1] = (0,) * t[size - 1] + (len(word.preperiod),)
    return Morphism(tuple(range(size)), rules, MORPHISM)


def positive_fixed_word(ctx, length):
    """
    Gap word of the non-negative beta-integers and whether the canonical substitution fixes it.

    Returns:
        (letters, fixed)
    """
    window = enumerate_beta_integers(ctx, count=length)
    letters = window.gap_letters
    image = canonical_substitution_beta(ctx).apply(letters)
    fixed = image[: len(letters)] == letters
    return letters, fixed


def conjugacy_witness(m1, m2, max_len):
    """
    Shortest word u with u m1(a) = m2(a) u for every letter a.

    Any such u is a prefix of m2(a)^omega, so only those prefixes are tried.

    Args:
        m1: Morphism
        m2: Morphism over the same alphabet
        max_len: Longest candidate

    Returns:
        Tuple of letters, or None
    """
    if set(m1.alphabet) != set(m2.alphabet):
        raise ValueError("morphisms act on different alphabets")
    source = next((m2.rules[a] for a in m2.alphabet if m2.rules[a]), None)
    for n in range(max_len + 1):
        if n and source is None:
            return None
        candidate = tuple(source[i % len(source)] for i in range(n)) if n else ()
        if all(candidate + m1.rules[a] == m2.rules[a] + candidate for a in m1.alphabet):
            return candidate
    return None
