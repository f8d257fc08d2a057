"""Exception types raised by :mod:`weighted_pick`."""


class WeightedPickError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(WeightedPickError, ValueError):
    """An argument violates a documented precondition."""


class DomainError(WeightedPickError, ValueError):
    """A point lies outside the open unit disk."""


class UnstablePairError(WeightedPickError, ValueError):
    """The state operator does not have spectral radius strictly below one."""


class SolverPreconditionError(WeightedPickError):
    """The Pick matrix is not positive definite, so the parametrization
    does not apply."""


class UnsupportedProblemError(WeightedPickError, NotImplementedError):
    """The requested problem class is outside what the solver handles."""


class EvaluationError(WeightedPickError, ArithmeticError):
    """A matrix function could not be evaluated at a point.

    The offending point is stored in :attr:`z`.
    """

    def __init__(self, message, z=None):
        super().__init__(message)
        self.z = z
