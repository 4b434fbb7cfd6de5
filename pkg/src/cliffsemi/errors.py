from typing import Tuple


class CliffsemiError(Exception):
    """Base class of every error raised by the package."""


class ParseError(CliffsemiError, ValueError):
    pass


class EmptyInputError(CliffsemiError, ValueError):
    pass


class NotCofiniteError(CliffsemiError, ValueError):
    pass


class NotASemigroupError(CliffsemiError, ValueError):
    """Raised when a gap set has a complement not closed under addition.

    Parameters
    ----------
    pair : Tuple[int, int]
        First pair (x, y) of members whose sum x + y is listed as a gap.
    """

    def __init__(self, pair: Tuple[int, int]):
        x, y = pair
        super().__init__(
            "Complement of the gaps is not closed under addition: "
            "{0} + {1} = {2} is listed as a gap.".format(x, y, x + y)
        )
        self.pair = pair


class BaseMismatchError(CliffsemiError, ValueError):
    pass


class NotAPencilSourceError(CliffsemiError, ValueError):
    pass


class InvalidPencilError(CliffsemiError, ValueError):
    pass


class SmoothCurveError(CliffsemiError, ValueError):
    pass


class CliffordUndefinedError(CliffsemiError, ValueError):
    pass


class GenusTooLargeError(CliffsemiError, ValueError):
    pass


class DegreeTooSmallError(CliffsemiError, ValueError):
    pass


class EmptyDualError(CliffsemiError, ValueError):
    pass


class ConsistencyError(CliffsemiError, AssertionError):
    """An identity that must hold by construction failed. Always a bug."""


class ChainConsistencyError(ConsistencyError):
    pass
