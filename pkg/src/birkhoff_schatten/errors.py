"""Exception hierarchy.

Every error raised by the library derives from :class:`BirkhoffError`, which is
itself a :class:`ValueError` so callers that only care about "bad input" can
catch the builtin.
"""


class BirkhoffError(ValueError):
    pass


class DimensionMismatch(BirkhoffError):
    pass


class NonFiniteInput(BirkhoffError):
    pass


class NotDoublyStochastic(BirkhoffError):
    """Raised when a matrix violates nonnegativity or unit row/column sums.

    ``kind`` is one of ``"entry"``, ``"row"`` or ``"column"``; ``index`` locates
    the worst offender and ``deviation`` is its distance past the tolerance.
    """

    def __init__(self, message, kind=None, index=None, deviation=None):
        super().__init__(message)
        self.kind = kind
        self.index = index
        self.deviation = deviation


class NotCentralForm(BirkhoffError):
    pass


class CommutationFailure(BirkhoffError):
    pass


class NonConvergence(BirkhoffError):
    pass


class DimensionTooLarge(BirkhoffError):
    pass


class MatchingNotFound(BirkhoffError):
    pass


class InvalidExponent(BirkhoffError):
    pass


class MatrixParseError(BirkhoffError):
    pass
