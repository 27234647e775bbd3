# errors.py
# Exception hierarchy shared by every numeration module

"""
Error types raised by the negabeta library.

Every failure is a NumerationError so callers (and the command line front
end) can catch the whole family at once. Value-shaped failures also derive
from ValueError, matching how plain Python code reports bad arguments.
"""


class NumerationError(Exception):
    """Base class for all library errors."""


class NoSuchRoot(NumerationError, ValueError):
    """The requested real root does not exist or does not exceed 1."""


class DegenerateDegree(NumerationError, ValueError):
    """A polynomial of degree 0 was given where a base polynomial is needed."""


class DivisionByZero(NumerationError, ZeroDivisionError):
    """Division by the zero element of the field."""


class NonInvertible(NumerationError, ArithmeticError):
    """Division by a zero divisor modulo a reducible polynomial."""


class RefinementBudgetExceeded(NumerationError, ArithmeticError):
    """Interval refinement hit the configured bit budget without separating two values."""


class BadEmbeddingIndex(NumerationError, IndexError):
    """Embedding index outside the range of polynomial roots."""


class OutOfDomain(NumerationError, ValueError):
    """A point lies outside the domain of the transformation being applied."""


class UndecidedReference(NumerationError):
    """A reference word could not be closed within the orbit budget."""


class UndecidedInput(NumerationError, ValueError):
    """A truncated digit word was passed where a decided word is required."""


class HypothesisViolated(NumerationError, ValueError):
    """A closed-form method was requested for a base outside its hypothesis class."""


class TrivialSet(NumerationError):
    """The set of (-beta)-integers is reduced to {0}."""


class NotSofic(NumerationError):
    """The reference word is not known to be eventually periodic."""


class CommutationFailed(NumerationError):
    """The projected antimorphism does not commute with its letter projection."""

    def __init__(self, message, letter=None):
        super().__init__(message)
        self.letter = letter


class NotParry(NumerationError):
    """The Renyi expansion of 1 is not known to be eventually periodic."""


class UnboundedEmbedding(NumerationError, ValueError):
    """A chosen conjugate has modulus at least 1, so the embedded set is unbounded."""


class IoFailure(NumerationError, OSError):
    """Writing or reading an output artifact failed."""


class ParseError(NumerationError, ValueError):
    """Malformed configuration, polynomial, or digit word text."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key
