"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the operation's documented domain."""


class NumericalIntegrityError(RuntimeError):
    """A numerical result violated an integrity bound (e.g. complex eigenvalue
    of a matrix that is similar to a positive semidefinite one)."""


class EigensolverError(RuntimeError):
    """Iterative eigensolver failed to converge.

    Carries ``best_residual``, the smallest ground-state residual norm reached
    before giving up.
    """

    def __init__(self, message, best_residual=None):
        super().__init__(message)
        self.best_residual = best_residual
