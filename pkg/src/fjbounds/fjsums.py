"""Exponential, sine and cosine Fejer-Jackson sums.

    L(x, mu)      = sum_{k>=1} exp(ikx) / (k + mu)
    L_n(x, mu)    = the same sum truncated at k = n
    Lodd(x, lam)  = 2 sum_{k>=1} exp(i(2k-1)x) / (2k - 1 + lam)
    S_pi(lam)     = Im Lodd(pi/2, lam)

Each infinite sum has two independent evaluation routes: a Laplace-type
integral handled by adaptive quadrature, and a direct partial sum whose tail
is resummed by repeated summation by parts (see :func:`lerch_tail`), which
comes with a rigorous remainder bound.  The sine and cosine sums S and T are
the imaginary and real parts of L.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .specfun import EvalOptions, _finite, _opts, laplace_transform

TWO_PI = 2.0 * math.pi

# Below these values of |sin(x/2)| (resp. |sin x|) the Laplace integrand is
# sharply peaked at the origin and "auto" evaluation switches to the series.
NEAR_SINGULAR = 0.01

_TAIL_TERMS = 24
_MAX_DIRECT_TERMS = 4_000_000


@dataclass(frozen=True)
class SeriesValue:
    """A series value with a bound on its truncation error."""

    value: complex
    bound: float


def lerch_tail(z: complex, c: float, start: int = 1, terms: int = _TAIL_TERMS) -> SeriesValue:
    """Sum_{k >= start} z^k / (k + c) for |z| <= 1, z != 1, start + c > 0.

    Terms ``start .. K-1`` are added directly.  The rest is expanded by
    iterated summation by parts,

        sum_{k>=K} z^k a_k = z^K/(1-z) * sum_{j<J} (z/(1-z))^j D^j a_K + rest,

    where D is the forward difference.  For a_k = 1/(k+c) the differences
    D^J a_k keep one sign and shrink in k, so Abel's inequality bounds the
    rest by 2 |z/(1-z)|^J |D^J a_K| / |1-z|.  K is chosen so that
    (K + c)|1 - z| >= 2J, which makes that bound negligible.
    """
    z = complex(z)
    if abs(z) > 1.0 + 1e-15:
        raise DomainError("lerch_tail needs |z| <= 1")
    w = 1.0 - z
    aw = abs(w)
    if aw == 0.0:
        raise DomainError("the series diverges at z = 1")
    if start + c <= 0:
        raise DomainError("start + c must be positive")
    if z == 0:
        return SeriesValue(0j, 0.0)
    rho = 2.0 * terms
    K = max(start, int(math.ceil(rho / aw - c)))
    K = min(K, start + _MAX_DIRECT_TERMS)

    if K > start:
        k = np.arange(start, K, dtype=float)
        if abs(abs(z) - 1.0) < 1e-15:
            powers = np.exp(1j * cmath.phase(z) * k)
        else:
            powers = np.exp(k * cmath.log(z))
        head = powers / (k + c)
        direct = complex(math.fsum(head.real), math.fsum(head.imag))
    else:
        direct = 0j

    zK = z**K if abs(abs(z) - 1.0) >= 1e-15 else cmath.exp(1j * cmath.phase(z) * K)
    ratio = -z / w
    # term_j = zK / w * ratio^j * j! / prod_{i=0}^{j} (K + c + i)
    term = zK / w / (K + c)
    tail_re, tail_im = [term.real], [term.imag]
    for j in range(1, terms):
        term *= ratio * j / (K + c + j)
        tail_re.append(term.real)
        tail_im.append(term.imag)
    tail = complex(math.fsum(tail_re), math.fsum(tail_im))

    # |D^J a_K| = J! / prod_{i=0}^{J} (K + c + i)
    log_diff = math.lgamma(terms + 1) - sum(math.log(K + c + i) for i in range(terms + 1))
    log_bound = math.log(2.0) + terms * math.log(abs(z) / aw) + log_diff - math.log(aw)
    bound = math.exp(log_bound) if log_bound > -745 else 0.0
    # rounding in the summed terms themselves
    bound += 4.0 * np.finfo(float).eps * (abs(direct) + abs(tail))
    return SeriesValue(direct + tail, bound)


# -- argument checks -------------------------------------------------------


def _reduce_angle(x: float) -> float:
    x = _finite(x, "x")
    xr = math.remainder(x, TWO_PI)
    if xr == 0.0:
        raise DomainError(f"x = {x} lies on 2*pi*Z where L(x, mu) diverges")
    return xr


def _check_mu(mu: float) -> float:
    mu = _finite(mu, "mu")
    if mu <= -1.0:
        raise DomainError(f"mu must exceed -1, got {mu}")
    return mu


def _check_lambda(lam: float) -> float:
    lam = _finite(lam, "lambda")
    if lam <= -1.0:
        raise DomainError(f"lambda must exceed -1, got {lam}")
    return lam


# -- L(x, mu) ----------------------------------------------------------------


def L_series(x: float, mu: float) -> SeriesValue:
    """L(x, mu) by direct summation with a resummed, bounded tail."""
    xr = _reduce_angle(x)
    mu = _check_mu(mu)
    return lerch_tail(cmath.exp(1j * xr), mu, 1)


def L_laplace(x: float, mu: float, opts: EvalOptions | None = None) -> complex:
    """L(x, mu) = int_0^inf exp(-mu u) / (exp(u - ix) - 1) du."""
    xr = _reduce_angle(x)
    mu = _check_mu(mu)
    opts = _opts(opts)
    emix = cmath.exp(-1j * xr)
    rate = mu + 1.0

    def g(u):
        return np.exp(-rate * u) / (emix - np.exp(-u))

    feature = min(1.0, 2.0 * abs(math.sin(xr / 2)))
    return complex(laplace_transform(g, rate, opts, feature).value)


def L_infinite(x: float, mu: float, opts: EvalOptions | None = None, method: str = "auto") -> complex:
    """The exponential FJ sum L(x, mu) for mu > -1 and x not in 2*pi*Z.

    ``method`` is ``"laplace"``, ``"series"`` or ``"auto"``; the latter uses
    the series when ``|sin(x/2)| < 0.01``.
    """
    if method == "auto":
        xr = _reduce_angle(x)
        method = "series" if abs(math.sin(xr / 2)) < NEAR_SINGULAR else "laplace"
    if method == "laplace":
        return L_laplace(x, mu, opts)
    if method == "series":
        return L_series(x, mu).value
    raise ValueError(f"unknown method {method!r}")


def L_partial(x: float, mu: float, n: int) -> complex:
    """The finite sum sum_{k=1}^{n} exp(ikx)/(k + mu)."""
    x = _finite(x, "x")
    mu = _check_mu(mu)
    if n < 0:
        raise DomainError("n must be non-negative")
    k = np.arange(1, n + 1, dtype=float)
    terms = np.exp(1j * k * x) / (k + mu)
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def L_truncated(x: float, mu: float, n: int, opts: EvalOptions | None = None, method: str = "auto") -> complex:
    """L_n(x, mu) = L(x, mu) - exp(ixn) L(x, mu + n)."""
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    head = L_infinite(x, mu, opts, method)
    rest = L_infinite(x, mu + n, opts, method)
    return head - cmath.exp(1j * x * n) * rest


def sine_sum(x: float, mu: float, opts: EvalOptions | None = None) -> float:
    """S(x, mu) = Im L(x, mu)."""
    return L_infinite(x, mu, opts).imag


def cosine_sum(x: float, mu: float, opts: EvalOptions | None = None) -> float:
    """T(x, mu) = Re L(x, mu)."""
    return L_infinite(x, mu, opts).real


def sine_partial_sum(x: float, n: int, mu: float = 0.0) -> float:
    """S_n(x, mu) = sum_{k=1}^{n} sin(kx)/(k + mu), summed exactly rounded."""
    k = np.arange(1, n + 1, dtype=float)
    return math.fsum(np.sin(k * x) / (k + mu))


# -- odd-frequency sums ------------------------------------------------------


def _check_odd_angle(x: float) -> float:
    x = _finite(x, "x")
    if math.remainder(x, math.pi) == 0.0:
        raise DomainError(f"sin x vanishes at x = {x}")
    return x


def L_odd_laplace(x: float, lam: float, opts: EvalOptions | None = None) -> complex:
    """Lodd(x, lam) = int_0^inf exp(-lam u) / sinh(u - ix) du."""
    x = _check_odd_angle(x)
    lam = _check_lambda(lam)
    opts = _opts(opts)
    rate = lam + 1.0
    e1 = cmath.exp(1j * x)
    e2 = e1 * e1

    # 1/sinh(u - ix) = 2 exp(-(u - ix)) / (1 - exp(-2u + 2ix))
    def g(u):
        return 2.0 * e1 * np.exp(-rate * u) / (1.0 - np.exp(-2.0 * u) * e2)

    feature = min(1.0, abs(math.sin(x)))
    return complex(laplace_transform(g, rate, opts, feature).value)


def L_odd(x: float, lam: float, opts: EvalOptions | None = None, method: str = "auto") -> complex:
    """Lodd(x, lam) = exp(-ix) L(2x, (lam - 1)/2) for lam > -1, sin x != 0."""
    x = _check_odd_angle(x)
    lam = _check_lambda(lam)
    if method == "auto":
        method = "series" if abs(math.sin(x)) < NEAR_SINGULAR else "laplace"
    if method == "laplace":
        return L_odd_laplace(x, lam, opts)
    if method == "series":
        return cmath.exp(-1j * x) * L_series(2.0 * x, 0.5 * (lam - 1.0)).value
    raise ValueError(f"unknown method {method!r}")


def S_pi(lam: float, opts: EvalOptions | None = None) -> float:
    """S_pi(lam) = 2 sum (-1)^(k-1)/(2k - 1 + lam) = int_0^inf exp(-lam u)/cosh u du."""
    lam = _check_lambda(lam)
    opts = _opts(opts)
    rate = lam + 1.0

    def g(u):
        return 2.0 * np.exp(-rate * u) / (1.0 + np.exp(-2.0 * u))

    return float(laplace_transform(g, rate, opts).value)


def rotated_L(x: float, mu: float, opts: EvalOptions | None = None) -> complex:
    """exp(ix mu) L(x, mu) as the contour integral from -ix to -ix + inf.

    The path is z = u - ix, u in (0, inf), and the integrand
    exp(-mu z)/(exp(z) - 1) is evaluated along it directly.
    """
    x = _finite(x, "x")
    _reduce_angle(x)
    mu = _check_mu(mu)
    opts = _opts(opts)
    rate = mu + 1.0

    def g(u):
        z = u - 1j * x
        return np.exp(-rate * z) / (1.0 - np.exp(-z))

    feature = min(1.0, 2.0 * abs(math.sin(x / 2)))
    return complex(laplace_transform(g, rate, opts, feature).value)
