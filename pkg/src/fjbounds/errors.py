"""Exception types raised by fjbounds."""


class DomainError(ValueError):
    """An argument lies outside the domain where a function or bound is defined."""


class ConfigurationError(ValueError):
    """A sweep grid or command is not admissible for the requested bound."""


class ConvergenceWarning(RuntimeWarning):
    """Adaptive quadrature stopped before reaching the requested tolerance."""
