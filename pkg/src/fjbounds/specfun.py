"""One-variable special functions: sine/cosine integrals, E(t), M(t), digamma.

The exponential integral of imaginary argument is used in the shifted form

    E(t) = int_0^inf exp(i u) / (u + t) du = int_0^inf exp(-t u) / (u - i) du,

whose real and imaginary parts are the auxiliary functions g and f.  The
comparison function M(t) = int_0^inf exp(-t u) / sqrt(u^2 + 1) du dominates
|E(t)| and drives every envelope in :mod:`fjbounds.bounds`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quadrature import laplace

EULER_GAMMA = 0.57721566490153286060651209008240243
PI = math.pi
LN2 = math.log(2.0)
SQRT2 = math.sqrt(2.0)
# M(t) = -ln t + C1 + t + ... near 0
C1 = LN2 - EULER_GAMMA
# M(t) < |ln t| + C2 on (0, 1)
C2 = math.log(1.0 + SQRT2)

# Below this argument Si and Cin are summed as power series.
SERIES_CUTOFF = 4.0


@dataclass(frozen=True)
class EvalOptions:
    """Accuracy controls shared by every quadrature-backed evaluation.

    ``max_subdivisions`` bounds the number of adaptive bisection rounds;
    ``truncation_floor`` is the value of the exponential weight at which
    semi-infinite integrals are cut off.
    """

    abs_tol: float = 1e-12
    max_subdivisions: int = 64
    truncation_floor: float = 1e-18

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if not self.truncation_floor > 0:
            raise ValueError("truncation_floor must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")


DEFAULT_OPTIONS = EvalOptions()


def _opts(opts: EvalOptions | None) -> EvalOptions:
    return DEFAULT_OPTIONS if opts is None else opts


def _finite(t: float, name: str = "t") -> float:
    t = float(t)
    if not math.isfinite(t):
        raise DomainError(f"{name} must be finite, got {t}")
    return t


def laplace_transform(g, rate: float, opts: EvalOptions, feature: float = 1.0):
    """Run :func:`fjbounds.quadrature.laplace` with the settings in ``opts``."""
    return laplace(
        g, rate, opts.abs_tol, opts.truncation_floor, opts.max_subdivisions, feature
    )


# -- E(t) and the auxiliary functions ---------------------------------------


def _check_positive(t: float, what: str) -> float:
    t = _finite(t)
    if t <= 0:
        raise DomainError(f"{what} requires t > 0, got {t}")
    return t


def exp_integral_E(t: float, opts: EvalOptions | None = None) -> complex:
    """E(t) = int_0^inf exp(-t u)/(u - i) du for t > 0."""
    t = _check_positive(t, "E(t)")
    opts = _opts(opts)
    res = laplace_transform(
        lambda u: np.exp(-t * u) / (u - 1j), t, opts, feature=min(1.0, 1.0 / t)
    )
    return complex(res.value)


@dataclass(frozen=True)
class AuxExpIntegral:
    """Real part ``g`` and imaginary part ``f`` of E(t)."""

    g: float
    f: float
    t: float

    @property
    def value(self) -> complex:
        return complex(self.g, self.f)


def aux_exp_integral(t: float, opts: EvalOptions | None = None) -> AuxExpIntegral:
    e = exp_integral_E(t, opts)
    return AuxExpIntegral(e.real, e.imag, float(t))


def comparison_M(t: float, opts: EvalOptions | None = None) -> float:
    """M(t) = int_0^inf exp(-t u)/sqrt(u^2 + 1) du for t > 0."""
    t = _check_positive(t, "M(t)")
    opts = _opts(opts)
    res = laplace_transform(
        lambda u: np.exp(-t * u) / np.sqrt(u * u + 1.0), t, opts, feature=min(1.0, 1.0 / t)
    )
    return float(res.value)


# -- sine and cosine integrals ----------------------------------------------


def _si_series(t: float) -> float:
    # Si(t) = sum (-1)^k t^(2k+1) / ((2k+1) (2k+1)!)
    term = t
    total = t
    k = 0
    t2 = t * t
    while True:
        k += 1
        term *= -t2 / ((2 * k) * (2 * k + 1))
        contrib = term / (2 * k + 1)
        total += contrib
        if abs(contrib) < 1e-17 * max(abs(total), 1e-300):
            return total


def _cin_series(t: float) -> float:
    # Cin(t) = sum_{k>=1} (-1)^(k+1) t^(2k) / (2k (2k)!)
    t2 = t * t
    term = 1.0
    total = 0.0
    k = 0
    while True:
        k += 1
        term *= -t2 / ((2 * k - 1) * (2 * k))
        contrib = -term / (2 * k)
        total += contrib
        if abs(contrib) <= 1e-17 * abs(total):
            return total


def _ci_si_large(t: float, opts: EvalOptions) -> tuple[float, float]:
    """(Ci(t), si(t)) from the auxiliary functions: invert g, f."""
    e = exp_integral_E(t, opts)
    g, f = e.real, e.imag
    c, s = math.cos(t), math.sin(t)
    return -c * g + s * f, -s * g - c * f


def sine_integral(t: float, opts: EvalOptions | None = None) -> float:
    """Si(t) = int_0^t sin(u)/u du for t >= 0."""
    t = _finite(t)
    if t < 0:
        raise DomainError(f"Si(t) is only provided for t >= 0, got {t}")
    if t == 0:
        return 0.0
    if t <= SERIES_CUTOFF:
        return _si_series(t)
    return _ci_si_large(t, _opts(opts))[1] + PI / 2


def complementary_sine_integral(t: float, opts: EvalOptions | None = None) -> float:
    """si(t) = Si(t) - pi/2."""
    t = _finite(t)
    if t > SERIES_CUTOFF:
        return _ci_si_large(t, _opts(opts))[1]
    return sine_integral(t, opts) - PI / 2


def cosine_integral(t: float, opts: EvalOptions | None = None) -> float:
    """Ci(t) = -int_t^inf cos(u)/u du for t > 0."""
    t = _check_positive(t, "Ci(t)")
    if t <= SERIES_CUTOFF:
        return math.log(t) + EULER_GAMMA - _cin_series(t)
    return _ci_si_large(t, _opts(opts))[0]


def regularized_cosine_integral(t: float, opts: EvalOptions | None = None) -> float:
    """Cin(t) = int_0^t (1 - cos u)/u du, entire; equals log t - Ci(t) + gamma."""
    t = _finite(t)
    if t < 0:
        raise DomainError(f"Cin(t) is only provided for t >= 0, got {t}")
    if t == 0:
        return 0.0
    if t <= SERIES_CUTOFF:
        return _cin_series(t)
    return math.log(t) - cosine_integral(t, opts) + EULER_GAMMA


# -- digamma and arccot ------------------------------------------------------

# B_{2k} / (2k) for k = 1..8
_DIGAMMA_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
)


def digamma(x: float) -> float:
    """psi(x) = Gamma'(x)/Gamma(x), away from the poles 0, -1, -2, ..."""
    x = _finite(x, "x")
    if x <= 0 and x == math.floor(x):
        raise DomainError(f"digamma has a pole at {x}")
    if x < 0.5:
        # reflection: psi(1 - x) - psi(x) = pi cot(pi x)
        return digamma(1.0 - x) - PI / math.tan(PI * x)
    shift = 0.0
    while x < 8.0:
        shift -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for c in _DIGAMMA_ASYMPTOTIC:
        series += c * power
        power *= inv2
    return shift + math.log(x) - 0.5 / x - series


def arccot(t: float) -> float:
    """Principal arccotangent on [0, inf), with values in (0, pi/2]."""
    t = _finite(t)
    if t < 0:
        raise DomainError(f"arccot is only used for t >= 0, got {t}")
    return math.atan2(1.0, t)


def log_gamma(x: float) -> float:
    return math.lgamma(x)
