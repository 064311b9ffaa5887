"""Exception hierarchy shared by every module of the package."""


class FdpbError(Exception):
    """Base class for all errors raised by :mod:`fdpb`."""


class DimensionError(FdpbError, ValueError):
    pass


class NotHermitianError(FdpbError, ValueError):
    pass


class NotPositiveDefiniteError(FdpbError, ValueError):
    pass


class SingularMatrixError(FdpbError, ValueError):
    pass


class EigenSolverError(FdpbError, RuntimeError):
    pass


class ParameterError(FdpbError, ValueError):
    """A model or generator parameter lies outside its admissible range."""


class RepresentationError(FdpbError):
    """A triple (a, b, k) fails its defining relations.

    The failing :class:`~fdpb.algebra.ValidationReport` is kept on ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class DegenerateRepresentationError(RepresentationError):
    pass


class BrokenChainError(RepresentationError):
    pass


class ExceptionalPointError(FdpbError, ArithmeticError):
    pass
