"""Dirichlet kernel and its integrals with a continuous frequency.

    Ssi(x, lam) = int_0^x sin(lam t)/sin t dt          (0 < x < pi)
    Eci(x, lam) = int_0^x exp(i lam t)/cos t dt        (0 < x < pi/2)
    Cci = Re Eci,  Sci = Im Eci

Eci is available by direct quadrature, by its Laplace representation, and by
the identity Eci(x, lam) = exp(i x lam) Lodd(x - pi/2, lam) + i S_pi(lam).
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import DomainError
from .fjsums import L_odd, S_pi
from .quadrature import integrate
from .specfun import EvalOptions, _finite, _opts, laplace_transform

HALF_PI = 0.5 * math.pi
_MAX_PANELS = 20_000


def dirichlet_kernel(x: float, n: int) -> float:
    """D_n(x) = sin((n + 1/2) x) / sin(x/2), equal to 2n + 1 on 2*pi*Z."""
    x = _finite(x, "x")
    if n < 0:
        raise DomainError("n must be non-negative")
    s = math.sin(0.5 * x)
    if abs(s) < 1e-6:
        k = np.arange(1, n + 1, dtype=float)
        return 1.0 + 2.0 * math.fsum(np.cos(k * x))
    return math.sin((n + 0.5) * x) / s


def _panels(a: float, b: float, lam: float) -> np.ndarray:
    """Breakpoints every half period pi/|lam| of the oscillating numerator."""
    span = b - a
    width = math.pi / abs(lam) if lam != 0 else math.inf
    count = min(_MAX_PANELS, max(1, int(math.ceil(span / width))))
    return np.linspace(a, b, count + 1)


def _check_open(x: float, hi: float, name: str) -> float:
    x = _finite(x, "x")
    if not 0.0 < x < hi:
        raise DomainError(f"{name} requires 0 < x < {hi:.6g}, got {x}")
    return x


def ssi(x: float, lam: float, opts: EvalOptions | None = None) -> float:
    """Ssi(x, lam) = int_0^x sin(lam t)/sin t dt for 0 < x < pi."""
    x = _check_open(x, math.pi, "Ssi")
    lam = _finite(lam, "lambda")
    opts = _opts(opts)

    def f(t):
        with np.errstate(invalid="ignore", divide="ignore"):
            v = np.sin(lam * t) / np.sin(t)
        return np.where(t == 0.0, lam, v)

    res = integrate(f, _panels(0.0, x, lam), opts.abs_tol, opts.max_subdivisions)
    return float(res.value)


def eci_direct(x: float, lam: float, opts: EvalOptions | None = None) -> complex:
    """Eci(x, lam) by quadrature of the defining integral."""
    x = _check_open(x, HALF_PI, "Eci")
    lam = _finite(lam, "lambda")
    opts = _opts(opts)

    def f(t):
        return np.exp(1j * lam * t) / np.cos(t)

    res = integrate(f, _panels(0.0, x, lam), opts.abs_tol, opts.max_subdivisions)
    return complex(res.value)


def eci_laplace(x: float, lam: float, opts: EvalOptions | None = None) -> complex:
    """Eci(x, lam) = i int_0^inf exp(-lam u) (1/cosh u - exp(i lam x)/cosh(u - ix)) du."""
    x = _check_open(x, HALF_PI, "Eci")
    lam = _finite(lam, "lambda")
    if lam <= -1.0:
        raise DomainError(f"the Laplace representation of Eci needs lambda > -1, got {lam}")
    opts = _opts(opts)
    rate = lam + 1.0
    phase = cmath.exp(1j * lam * x)
    e1 = cmath.exp(1j * x)
    e2 = e1 * e1

    # 1/cosh(w) = 2 exp(-w) / (1 + exp(-2w))
    def g(u):
        decay = np.exp(-rate * u)
        q = np.exp(-2.0 * u)
        return 2j * decay * (1.0 / (1.0 + q) - phase * e1 / (1.0 + q * e2))

    feature = min(1.0, math.cos(x))
    return complex(laplace_transform(g, rate, opts, feature).value)


def eci_identity(x: float, lam: float, opts: EvalOptions | None = None) -> complex:
    """Eci(x, lam) = exp(i x lam) Lodd(x - pi/2, lam) + i S_pi(lam)."""
    x = _check_open(x, HALF_PI, "Eci")
    lam = _finite(lam, "lambda")
    return cmath.exp(1j * x * lam) * L_odd(x - HALF_PI, lam, opts) + 1j * S_pi(lam, opts)


def eci(x: float, lam: float, opts: EvalOptions | None = None, method: str = "direct") -> complex:
    """Eci(x, lam) for 0 < x < pi/2 by ``"direct"``, ``"laplace"`` or ``"identity"``."""
    if method == "direct":
        return eci_direct(x, lam, opts)
    if method == "laplace":
        return eci_laplace(x, lam, opts)
    if method == "identity":
        return eci_identity(x, lam, opts)
    raise ValueError(f"unknown method {method!r}")


def sci(x: float, lam: float, opts: EvalOptions | None = None) -> float:
    return eci_direct(x, lam, opts).imag


def cci(x: float, lam: float, opts: EvalOptions | None = None) -> float:
    return eci_direct(x, lam, opts).real


# -- FJ-sum remainders through the half-angle kernel -------------------------


def _check_remainder_args(x: float, mu: float) -> tuple[float, float]:
    x = _check_open(x, math.pi, "the kernel representation")
    mu = _finite(mu, "mu")
    if mu <= -1.0:
        raise DomainError(f"mu must exceed -1, got {mu}")
    return x, mu


def half_angle_sine_integral(x: float, mu: float, opts: EvalOptions | None = None) -> float:
    """int_0^x sin((mu + 1/2) y) / (2 sin(y/2)) dy."""
    x, mu = _check_remainder_args(x, mu)
    opts = _opts(opts)
    freq = mu + 0.5

    def f(y):
        with np.errstate(invalid="ignore", divide="ignore"):
            v = np.sin(freq * y) / (2.0 * np.sin(0.5 * y))
        return np.where(y == 0.0, freq, v)

    return float(integrate(f, _panels(0.0, x, freq), opts.abs_tol, opts.max_subdivisions).value)


def half_angle_cosine_integral(x: float, mu: float, opts: EvalOptions | None = None) -> float:
    """int_x^pi cos((mu + 1/2) y) / (2 sin(y/2)) dy."""
    x, mu = _check_remainder_args(x, mu)
    opts = _opts(opts)
    freq = mu + 0.5

    def f(y):
        return np.cos(freq * y) / (2.0 * np.sin(0.5 * y))

    return float(integrate(f, _panels(x, math.pi, freq), opts.abs_tol, opts.max_subdivisions).value)


def series_remainder_via_kernel(x: float, mu: float, opts: EvalOptions | None = None) -> float:
    """Im(exp(ix mu) L(x, mu)) = pi/2 - int_0^x sin((mu + 1/2) y)/(2 sin(y/2)) dy.

    At integer mu = n this is the sawtooth remainder (pi - x)/2 - S_n(x, 0).
    """
    return 0.5 * math.pi - half_angle_sine_integral(x, mu, opts)


def cosine_remainder_via_kernel(x: float, mu: float, opts: EvalOptions | None = None) -> float:
    """Re(exp(ix mu) L(x, mu)) = int_x^pi cos((mu+1/2) y)/(2 sin(y/2)) dy - S_pi(2mu+1) cos(pi mu)."""
    x, mu = _check_remainder_args(x, mu)
    return half_angle_cosine_integral(x, mu, opts) - S_pi(2.0 * mu + 1.0, opts) * math.cos(math.pi * mu)
