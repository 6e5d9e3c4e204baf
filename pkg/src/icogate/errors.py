"""Exception types shared across the compiler.

Recoverable conditions (abandoned factorizations, unrepresentable sums of
squares, missing peeling candidates) get their own classes so that search
loops can catch them narrowly and move on to the next candidate.
"""

from __future__ import annotations


class IcogateError(Exception):
    """Base class for all library errors."""


class MalformedInput(IcogateError):
    """Input could not be parsed or violates a documented precondition."""


class NonResidue(IcogateError):
    """Requested a square root of a quadratic non-residue."""


class InertPrime(IcogateError):
    """The rational prime stays irreducible in the quadratic ring."""


class Abandoned(IcogateError):
    """A factoring subroutine gave up within its effort budget.

    This is a recoverable skip signal: the caller is expected to move on
    to the next candidate rather than abort.
    """


class PrimeTooLarge(Abandoned):
    """A required prime exceeded the configured abandonment threshold."""


class NotRepresentable(IcogateError):
    """No sum of two squares exists for the requested element."""


class UnsupportedResidue(NotRepresentable):
    """The element has an irreducible factor in a residue class with no
    known representation (odd multiplicity of a factor whose associated
    prime is 11 or 19 mod 20)."""


class NotInGroup(IcogateError):
    """Quaternion does not lie in the gate group lattice."""


class NoPeelingCandidate(NotInGroup):
    """No table element produced a divisible product during peeling."""


class UnboundedRegion(IcogateError):
    """Constraint set given to the lattice enumerator is not bounded."""


class HypothesisViolation(IcogateError):
    """Inputs to a tuning routine violate its stated hypotheses."""


class BudgetExhausted(IcogateError):
    """Synthesis ran out of its depth budget before reaching the target."""


class PrecisionInsufficient(IcogateError):
    """Working precision cannot resolve the verification multiply-back."""
