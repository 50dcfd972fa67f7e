"""Exception hierarchy shared by every module."""


class HyperBesselError(Exception):
    """Base class for all errors raised by :mod:`hyperbessel`."""


class DomainError(HyperBesselError, ValueError):
    """Invalid parameters or arguments (CLI exit code 2)."""


class BadDimension(DomainError):
    pass


class DimensionMismatch(DomainError):
    pass


class OutOfDomain(DomainError):
    pass


class ComputationError(HyperBesselError, RuntimeError):
    """A numerical procedure broke down (CLI exit code 3)."""


class NoConvergence(ComputationError):
    pass


class BracketFailure(ComputationError):
    pass


class MissedZeroSuspected(ComputationError):
    pass


class DegenerateBound(ComputationError):
    pass
