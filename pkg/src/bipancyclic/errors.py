"""Exception hierarchy.

Everything a caller can fix by supplying different input derives from
``InvalidInput``; ``TheoremViolation`` is kept apart because it means the
mathematics (or this implementation of it) failed.
"""


class BipancyclicError(Exception):
    pass


class InvalidInput(BipancyclicError, ValueError):
    pass


class ParseError(InvalidInput):
    pass


class IndexOutOfRange(InvalidInput):
    pass


class DuplicateEdge(InvalidInput):
    pass


class InvalidLabeling(InvalidInput):
    pass


class NotCanonical(InvalidInput):
    pass


class NotRegular(InvalidInput):
    pass


class NotBalancedRegular(NotRegular):
    pass


class NotHamiltonian(InvalidInput):
    pass


class TooSmall(InvalidInput):
    pass


class UnsupportedN(InvalidInput):
    pass


class PreconditionFailed(InvalidInput):
    pass


class TheoremViolation(BipancyclicError, RuntimeError):
    """A class member for which the constructive argument produced no cycle."""
