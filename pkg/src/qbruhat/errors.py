"""Typed errors shared by all modules.

Genericity failures (singular pivots, undefined quasideterminants) are
expected events, not bugs: callers such as the verification harness catch
``NotGeneric`` and resample.  Every error carries enough context to
reproduce the failure.
"""


class QBruhatError(Exception):
    """Base class for all errors raised by this package."""


class ZeroInverse(QBruhatError):
    """Inversion of a zero scalar was requested."""


class IndexOutOfRange(QBruhatError):
    """A 1-based index or index set left the valid range."""


class ShapeMismatch(QBruhatError):
    """Matrix dimensions are incompatible with the requested operation."""


class NotGeneric(QBruhatError):
    """A genericity assumption failed (singular pivot or quasiminor).

    ``witness`` identifies what failed, e.g. ``("pivot", i, j)`` for an
    elimination pivot or ``("quasiminor", I, J, i, j)`` for an undefined
    or non-invertible quasiminor.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotInGaussCell(NotGeneric):
    """The matrix has no LDU decomposition (it lies outside B^- U)."""


class WrongCell(QBruhatError):
    """The matrix does not lie in the double Bruhat cell the caller claimed."""

    def __init__(self, message, expected=None, actual=None):
        super().__init__(message)
        self.expected = expected
        self.actual = actual


class NotReducedWord(QBruhatError):
    """A word failed validation (a component word is not reduced)."""


class RetriesExhausted(QBruhatError):
    """Resampling kept hitting NotGeneric until the retry budget ran out."""
