"""Exception hierarchy shared by all modules.

Exit codes used by the CLI: 1 for bad input, 2 for an internal invariant
violation (a bug, never a user error), 3 for an ambiguous assembly.
"""

from __future__ import annotations


class SwfcalcError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class InputError(SwfcalcError):
    """Invalid user-supplied data (files, arguments, malformed values)."""

    exit_code = 1


class InternalError(SwfcalcError):
    """An internal consistency check failed; indicates a bug."""

    exit_code = 2


class AmbiguityError(SwfcalcError):
    """An assembly is under-determined (unresolved connecting ranks)."""

    exit_code = 3


class InvalidComplexError(InputError):
    """A chain complex whose boundary maps do not square to zero."""


class InvalidIdealError(InputError):
    """A monomial set that is not a v-saturated graded ideal."""


class InvalidTripleError(InputError):
    """Exponent or degree triples violating their ordering constraints."""


class InvalidModuleError(InternalError):
    """A graded module violating the ring relations q^3 = 0 or qv = vq."""


class DualityRangeError(InputError):
    """Duality parameters outside the admissible range."""


class LevelMismatchError(InputError):
    """Two classes compared at different levels."""


class ContextError(InputError):
    """Normalization data incompatible with the class it is applied to."""


class UnavailableError(InputError):
    """Requested data was never populated for this object."""


class NotApplicableError(InputError):
    """A check whose hypotheses are not met (e.g. missing spin flag)."""
