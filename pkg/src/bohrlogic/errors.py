"""Exception hierarchy.

Every domain error carries the offending elements in ``witness`` so that
callers (and the CLI) can print them verbatim.
"""


class BohrLogicError(Exception):
    """Base class for all domain errors raised by this package."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DocumentError(BohrLogicError):
    """An input document is malformed (missing field, unknown label, NaN...)."""


class BudgetExceeded(BohrLogicError):
    pass


# lattice-core
class NotAPoset(BohrLogicError):
    pass


class NotALattice(BohrLogicError):
    pass


class BadPerp(BohrLogicError):
    pass


# blocks
class NotOrthomodular(BohrLogicError):
    pass


class NotABooleanBlock(BohrLogicError):
    pass


class AmalgamationConflict(BohrLogicError):
    pass


# bohr-heyting
class MixedBase(BohrLogicError):
    pass


class NotASection(BohrLogicError):
    pass


class MissingHost(BohrLogicError):
    pass


# matrix-quantum
class DimMismatch(BohrLogicError):
    pass


class NotAProjection(BohrLogicError):
    pass


class NotHermitian(BohrLogicError):
    pass


class ToleranceViolated(BohrLogicError):
    pass


class NotOrthogonal(BohrLogicError):
    pass


class NotCommuting(BohrLogicError):
    pass


class NotInContext(BohrLogicError):
    pass


class PreconditionViolated(BohrLogicError):
    pass


class InvalidState(BohrLogicError):
    pass
