"""Fejer-Jackson sums, integrated Dirichlet kernels and their tight envelopes."""

__version__ = "0.1.0"

from .bounds import BoundId, TaylorPoint, classical_bounds, taylor_bounds
from .errors import ConfigurationError, ConvergenceWarning, DomainError
from .specfun import EvalOptions

__all__ = [
    "BoundId",
    "ConfigurationError",
    "ConvergenceWarning",
    "DomainError",
    "EvalOptions",
    "TaylorPoint",
    "classical_bounds",
    "taylor_bounds",
    "__version__",
]
