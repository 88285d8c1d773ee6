"""Envelope and comparison bounds for FJ sums, Dirichlet integrals and log(1 - z).

Every bound is a plain function of its parameters.  Functions return the
value of the bound only; which quantity it dominates (or minorizes) and on
which domain is recorded in :mod:`fjbounds.verify`.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .specfun import C2, EvalOptions, _finite, arccot, comparison_M

# Optimal constant for the even-n upper bound, to the five digits in print.
ALPHA_EVEN = 0.66395
C3 = math.sqrt((math.pi / 2) ** 2 + 1.0)
INV_E = math.exp(-1.0)


class BoundId(str, enum.Enum):
    ArccotEnvelope = "ArccotEnvelope"
    MEnvelope = "MEnvelope"
    LogEnvelope = "LogEnvelope"
    FracEnvelope = "FracEnvelope"
    SecEnvelope = "SecEnvelope"
    EbycosRhs = "EbycosRhs"
    FJTuran = "FJTuran"
    Fejer1928 = "Fejer1928"
    Turan1952 = "Turan1952"
    AK2003 = "AK2003"
    BK1998 = "BK1998"
    Koumandos2012 = "Koumandos2012"
    AlKou12 = "AlKou12"
    AKEvenUpper = "AKEvenUpper"
    TaylorSimple = "TaylorSimple"
    TaylorMp = "TaylorMp"
    TaylorLog1z = "TaylorLog1z"
    TaylorMhat = "TaylorMhat"


# -- envelopes for FJ sums ---------------------------------------------------


def _scaled_sine(mu: float, x: float) -> float:
    return (2.0 * mu + 1.0) * math.sin(0.5 * x)


def arccot_envelope(mu: float, x: float) -> float:
    """arccot((2 mu + 1) sin(x/2)); dominates |Im exp(ix mu) L(x, mu)|."""
    mu, x = _finite(mu, "mu"), _finite(x, "x")
    if mu < -0.5:
        raise DomainError(f"the arccot envelope needs mu >= -1/2, got {mu}")
    if not 0.0 <= x <= math.pi:
        raise DomainError(f"the arccot envelope needs 0 <= x <= pi, got {x}")
    return arccot(_scaled_sine(mu, x))


def _check_m_domain(mu: float, x: float) -> tuple[float, float]:
    mu, x = _finite(mu, "mu"), _finite(x, "x")
    if mu <= -0.5:
        raise DomainError(f"need mu > -1/2, got {mu}")
    if not 0.0 < x < math.pi:
        raise DomainError(f"need 0 < x < pi, got {x}")
    return mu, x


def m_envelope(mu: float, x: float, opts: EvalOptions | None = None) -> float:
    """M((2 mu + 1) sin(x/2)); dominates |L(x, mu)|."""
    mu, x = _check_m_domain(mu, x)
    return comparison_M(_scaled_sine(mu, x), opts)


def m_envelope_odd(lam: float, x: float, opts: EvalOptions | None = None) -> float:
    """M(lam sin x); dominates |Lodd(x, lam)|."""
    lam, x = _finite(lam, "lambda"), _finite(x, "x")
    if lam <= 0:
        raise DomainError(f"need lambda > 0, got {lam}")
    if not 0.0 < x < math.pi:
        raise DomainError(f"need 0 < x < pi, got {x}")
    return comparison_M(lam * math.sin(x), opts)


def frac_envelope(mu: float, x: float) -> float:
    """1/((2 mu + 1) sin(x/2)), the coarse form of the M envelope."""
    mu, x = _check_m_domain(mu, x)
    return 1.0 / _scaled_sine(mu, x)


def log_envelope(mu: float, x: float) -> float:
    """-ln((2 mu + 1) sin(x/2)) + C2, valid where the argument is below 1."""
    mu, x = _check_m_domain(mu, x)
    t = _scaled_sine(mu, x)
    if t >= 1.0:
        raise DomainError(f"log envelope needs (2mu+1) sin(x/2) < 1, got {t}")
    return -math.log(t) + C2


def sec_envelope(lam: float, x: float) -> float:
    """1/(lam cos x); dominates |Eci(x, lam) - i/lam|."""
    lam, x = _finite(lam, "lambda"), _finite(x, "x")
    if not 0.0 < x < 0.5 * math.pi:
        raise DomainError(f"need 0 < x < pi/2, got {x}")
    if lam == 0:
        raise DomainError("lambda must be non-zero")
    return 1.0 / (abs(lam) * math.cos(x))


def ebycos_rhs(lam: float, x: float, opts: EvalOptions | None = None) -> float:
    """1/lam - M(lam) + M(lam cos x), the sharper form of :func:`sec_envelope`."""
    lam, x = _finite(lam, "lambda"), _finite(x, "x")
    if lam <= 0:
        raise DomainError(f"need lambda > 0, got {lam}")
    if not 0.0 < x < 0.5 * math.pi:
        raise DomainError(f"need 0 < x < pi/2, got {x}")
    return 1.0 / lam - comparison_M(lam, opts) + comparison_M(lam * math.cos(x), opts)


# -- classical bounds for the sawtooth partial sums --------------------------


def legendre(n: int, t: float) -> float:
    """P_n(t) by the three-term recurrence."""
    if n < 0:
        raise DomainError("n must be non-negative")
    p_prev, p = 1.0, t
    if n == 0:
        return p_prev
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * t * p - k * p_prev) / (k + 1)
    return p


def alkou_delta(n: int) -> float:
    """delta_n = (m+1)/(m+3/2) (m!/Gamma(m+3/2))^2 with m = floor((n-1)/2)."""
    m = (n - 1) // 2
    log_ratio = math.lgamma(m + 1.0) - math.lgamma(m + 1.5)
    return (m + 1.0) / (m + 1.5) * math.exp(2.0 * log_ratio)


def bk1998_window(n: int) -> tuple[float, float]:
    """Closed window on which the Brown-Koumandos bound is checked."""
    gap = 3.0 * math.pi / (2 * n + 1)
    return gap, math.pi - gap


@dataclass(frozen=True)
class ClassicalBounds:
    n: int
    x: float
    fjturan: float
    fejer1928: float
    turan1952: float
    ak2003: float
    bk1998: float
    koumandos2012: float
    alkou12: float
    ak_even_upper: float

    def as_dict(self) -> dict[str, float]:
        return {
            BoundId.FJTuran.value: self.fjturan,
            BoundId.Fejer1928.value: self.fejer1928,
            BoundId.Turan1952.value: self.turan1952,
            BoundId.AK2003.value: self.ak2003,
            BoundId.BK1998.value: self.bk1998,
            BoundId.Koumandos2012.value: self.koumandos2012,
            BoundId.AlKou12.value: self.alkou12,
            BoundId.AKEvenUpper.value: self.ak_even_upper,
        }


def classical_bounds(n: int, x: float) -> ClassicalBounds:
    """Known bounds on S_n(x, 0) = sum_{k<=n} sin(kx)/k for 0 < x < pi.

    ``fjturan`` bounds |S_n - (pi - x)/2| from above and ``ak_even_upper``
    bounds S_n from above; the rest are lower bounds for S_n.  Validity
    ranges in n differ, see :mod:`fjbounds.verify`.
    """
    x = _finite(x, "x")
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    if not 0.0 < x < math.pi:
        raise DomainError(f"need 0 < x < pi, got {x}")
    half = 0.5 * x
    saw = 0.5 * (math.pi - x)
    cot_gap = 1.0 / math.tan(half) - saw
    return ClassicalBounds(
        n=n,
        x=x,
        fjturan=saw,
        fejer1928=math.sin(x) / 3.0 + math.sin(n * x) / (2.0 * n),
        turan1952=4.0 * math.sin(half) ** 2 * cot_gap,
        ak2003=x * x * cot_gap,
        bk1998=(1.0 - math.sin(half)) / math.cos(half),
        koumandos2012=x * (1.0 - x / math.pi) ** 3,
        alkou12=0.25 * math.pi * alkou_delta(n) / math.tan(half) * (1.0 - legendre(n, math.cos(x))),
        ak_even_upper=ALPHA_EVEN * (math.pi - x),
    )


# -- Taylor remainder of log(1 - z) ------------------------------------------


@dataclass(frozen=True)
class TaylorPoint:
    z_re: float
    z_im: float
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n}")
        if abs(self.z) > 1.0 + 1e-15:
            raise DomainError(f"|z| must not exceed 1, got {abs(self.z)}")
        if self.z == 1:
            raise DomainError("z = 1 is excluded")

    @property
    def z(self) -> complex:
        return complex(self.z_re, self.z_im)

    @property
    def p(self) -> float:
        return (self.n + 1) * (1.0 - abs(self.z))

    @property
    def q(self) -> float:
        return (self.n + 0.5) * abs(1.0 - self.z)


@dataclass(frozen=True)
class TaylorBounds:
    """Bounds on |R_n(z)|; ``None`` marks a bound used outside its hypotheses."""

    simple: float
    mp: float | None
    log1z: float | None
    mhat: float


def m_of_p(p: float) -> float:
    if p <= 0:
        raise DomainError("m(p) needs p > 0")
    return 1.0 / (math.e * p) if p >= INV_E else abs(math.log(p))


def taylor_bounds(pt: TaylorPoint) -> TaylorBounds:
    r = abs(pt.z)
    lead = r ** (pt.n + 1)
    q = pt.q
    simple = lead / q
    mp = m_of_p(pt.p) if r < 1.0 else None
    log_ok = r < 1.0 and q < 1.0
    log1z = lead * (-math.log(q) + C3) if log_ok else None
    # The log branch of m-hat is only a bound where q < 1; for q > exp(C3)
    # it would even turn negative.
    mhat = min(simple, log1z) if log_ok else simple
    return TaylorBounds(simple, mp, log1z, mhat)


# Relative to the leading term |z|^(n+1)/(n+1) of the remainder.
_TAIL_TARGET = 1e-16


def _compensated_sum(values: np.ndarray) -> float:
    """Sum with error ~eps * sum|values|; exact rounding for short arrays."""
    if len(values) <= 4096:
        return math.fsum(values)
    blocks = np.add.reduceat(values, np.arange(0, len(values), 256))
    return math.fsum(blocks)


def log_taylor_remainder(z: complex, n: int) -> complex:
    """R_n(z) = sum_{k > n} z^k / k for |z| <= 1, z != 1.

    For |z| <= 0.9999 the series is summed until the geometric tail bound
    |z|^(N+1) / ((N+1)(1-|z|)) falls below 1e-16 of the leading term.
    Closer to the circle the closed form -log(1 - z) - sum_{k<=n} z^k/k is
    used instead.
    """
    z = complex(z)
    r = abs(z)
    if r > 1.0 + 1e-15 or z == 1:
        raise DomainError("need |z| <= 1 and z != 1")
    if n < 0:
        raise DomainError("n must be non-negative")
    if r == 0.0:
        return 0j
    if r <= 0.9999:
        logr = math.log(r)
        target = math.log(_TAIL_TARGET) + (n + 1) * logr - math.log(n + 1)
        N = n + 1
        while (N + 1) * logr - math.log((N + 1) * (1.0 - r)) >= target:
            N = max(N + 1, int(N * 1.25))
        k = np.arange(n + 1, N + 1, dtype=float)
        terms = np.exp(k * cmath.log(z)) / k
        return complex(_compensated_sum(terms.real), _compensated_sum(terms.imag))
    k = np.arange(1, n + 1, dtype=float)
    terms = np.exp(k * cmath.log(z)) / k
    head = -cmath.log(1.0 - z)
    return complex(
        _compensated_sum(np.concatenate([[head.real], -terms.real])),
        _compensated_sum(np.concatenate([[head.imag], -terms.imag])),
    )
