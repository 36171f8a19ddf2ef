"""Exceptions raised by the theta-lab library.

Every error carries the exit code the command line reports for it. The
VIKTOR controller turns them into ``UserError`` messages.
"""

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


class ThetaLabError(Exception):
    """Base class of all library errors."""

    exit_code = EXIT_DOMAIN


class MatrixFormatError(ThetaLabError):
    """A "mat v1" document could not be parsed."""

    exit_code = EXIT_USAGE


class NotBinary(ThetaLabError):
    """A matrix expected to be a (0,1)-matrix has some other entry."""


class NonConstantSums(ThetaLabError):
    """Theta is only defined on matrices with constant row and column sums."""


class OrderMismatch(ThetaLabError):
    """Two objects that must share an order do not."""


class BadP(ThetaLabError):
    """The block matrix P does not fit the standard form S(P)."""


class NoCentre(ThetaLabError):
    """No vertex is a centre with radius 2 outside every triangle."""


class NotHS(ThetaLabError):
    """A standard form cannot be relabelled into a Hoffman-Singleton form."""


class DigonError(ThetaLabError):
    """The neighbourhood geometry of a graph with a 4-cycle contains a digon."""

    def __init__(self, message: str, digon: tuple = None):
        super().__init__(message)
        self.digon = digon


class StepLimit(ThetaLabError):
    """An orbit was still undecided after the allowed number of steps."""


class UnknownName(ThetaLabError):
    """The corpus does not contain the requested matrix."""

    exit_code = EXIT_USAGE


class UnknownSuite(ThetaLabError):
    """The verification suite does not exist."""

    exit_code = EXIT_USAGE


class NotAdjacency(ThetaLabError):
    """A matrix is not the adjacency matrix of a simple graph of the required kind."""
