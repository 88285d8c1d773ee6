"""Certification harness: inequality sweeps, threshold roots, identity checks.

A sweep evaluates ``margin = bound - |quantity|`` (or ``quantity - bound``
for lower bounds) at every point of a grid and reduces the results to an
:class:`InequalityReport`.  A point is a violation only when its margin is
below ``-budget``, the combined evaluation error allowed for that bound;
margins within the budget of zero are counted separately as near-equality
points.  The checks run in double precision with explicit error budgets,
not interval arithmetic.
"""

from __future__ import annotations

import cmath
import functools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import bounds as B
from .bounds import BoundId
from .dirichlet import (
    eci,
    half_angle_cosine_integral,
    half_angle_sine_integral,
    ssi,
)
from .errors import ConfigurationError, DomainError
from .fjsums import (
    L_infinite,
    L_odd,
    L_partial,
    L_truncated,
    S_pi,
    rotated_L,
    sine_partial_sum,
)
from .specfun import (
    EvalOptions,
    _opts,
    arccot,
    comparison_M,
    digamma,
    exp_integral_E,
    sine_integral,
)

# -- grids -------------------------------------------------------------------


@dataclass(frozen=True)
class GridAxis:
    lo: float
    hi: float
    count: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.spacing not in ("linear", "log"):
            raise ConfigurationError(f"unknown spacing {self.spacing!r}")
        if self.count < 1:
            raise ConfigurationError("an axis needs at least one point")
        if self.count == 1:
            if self.lo != self.hi:
                raise ConfigurationError("a single-point axis needs lo == hi")
        elif not self.lo < self.hi:
            raise ConfigurationError(f"need lo < hi, got {self.lo}, {self.hi}")
        if self.spacing == "log" and self.lo <= 0:
            raise ConfigurationError("log spacing needs lo > 0")

    @classmethod
    def point(cls, value: float) -> "GridAxis":
        return cls(value, value, 1)

    def values(self, open_lo: bool = False, open_hi: bool = False) -> np.ndarray:
        """Sample points; an open end is moved inward by half a step."""
        if self.count == 1:
            return np.array([self.lo], dtype=float)
        off_lo = 0.5 if open_lo else 0.0
        off_hi = 0.5 if open_hi else 0.0
        i = np.arange(self.count, dtype=float) + off_lo
        denom = self.count - 1 + off_lo + off_hi
        if self.spacing == "log":
            a, b = math.log(self.lo), math.log(self.hi)
            out = np.exp(a + i * (b - a) / denom)
        else:
            out = self.lo + i * (self.hi - self.lo) / denom
        if not open_lo:
            out[0] = self.lo
        if not open_hi:
            out[-1] = self.hi
        return out

    def describe(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class GridSpec:
    axes: tuple[GridAxis, ...]

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(self.axes))
        if not self.axes:
            raise ConfigurationError("a grid needs at least one axis")

    @property
    def size(self) -> int:
        return int(np.prod([a.count for a in self.axes]))

    def describe(self) -> list[dict]:
        return [a.describe() for a in self.axes]


# -- reports -----------------------------------------------------------------


@dataclass
class InequalityReport:
    bound_id: BoundId
    samples: int
    violations: int
    min_margin: float
    argmin: tuple[float, ...]
    elapsed: float
    near_equality: int = 0
    skipped: int = 0
    budget: float = 0.0
    axes: tuple[str, ...] = ()
    grid: list | None = None
    notes: str = ""

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.samples > 0

    def to_dict(self, opts: EvalOptions | None = None) -> dict:
        from . import __version__

        opts = _opts(opts)
        return {
            "bound": self.bound_id.value,
            "grid": self.grid if self.grid is not None else "explicit points",
            "axes": list(self.axes),
            "samples": self.samples,
            "violations": self.violations,
            "near_equality": self.near_equality,
            "skipped": self.skipped,
            "min_margin": self.min_margin,
            "argmin": list(self.argmin),
            "tolerances": {
                "abs_tol": opts.abs_tol,
                "truncation_floor": opts.truncation_floor,
                "max_subdivisions": opts.max_subdivisions,
                "violation_budget": self.budget,
                "arithmetic": "IEEE double with error budgets; no interval arithmetic",
            },
            "notes": self.notes,
            "elapsed": self.elapsed,
            "version": __version__,
        }


@dataclass(frozen=True)
class ThresholdResult:
    root: float
    bracket_lo: float
    bracket_hi: float
    residual: float


# -- inequality problems -----------------------------------------------------


@dataclass(frozen=True)
class AxisDomain:
    name: str
    lo: float
    hi: float
    lo_open: bool = False
    hi_open: bool = False
    integer: bool = False
    default: tuple[float, float, int] | None = None
    # the abscissa axis takes the requested default count; parameter axes
    # keep their own, so default sweeps stay at desk scale
    abscissa: bool = False

    def contains(self, v: float) -> bool:
        if self.integer and v != math.floor(v):
            return False
        above = v > self.lo if self.lo_open else v >= self.lo
        below = v < self.hi if self.hi_open else v <= self.hi
        return above and below


@dataclass(frozen=True)
class Problem:
    bound_id: BoundId
    axes: tuple[AxisDomain, ...]
    # returns None where the bound is not asserted (point skipped)
    margin: Callable[[tuple, EvalOptions], float | None]
    budget: Callable[[EvalOptions], float]
    notes: str = ""


_PI = math.pi
_EXACT_BUDGET = 1e-12


def _quad_budget(opts: EvalOptions) -> float:
    return 10.0 * opts.abs_tol


def _exact_budget(opts: EvalOptions) -> float:
    return _EXACT_BUDGET


def _remainder_imag(mu: float, x: float, opts: EvalOptions) -> float:
    """Im(exp(ix mu) L(x, mu)), with the x = 0 limit pi/2."""
    if x == 0.0:
        return 0.5 * _PI
    if mu == math.floor(mu) and mu >= 0:
        return 0.5 * (_PI - x) - sine_partial_sum(x, int(mu))
    return rotated_L(x, mu, opts).imag


def _arccot_margin(p, opts):
    mu, x = p
    return B.arccot_envelope(mu, x) - abs(_remainder_imag(mu, x, opts))


def _m_margin(p, opts):
    mu, x = p
    return B.m_envelope(mu, x, opts) - abs(L_infinite(x, mu, opts))


def _log_margin(p, opts):
    mu, x = p
    if (2 * mu + 1) * math.sin(0.5 * x) >= 1.0:
        return None
    return B.log_envelope(mu, x) - abs(L_infinite(x, mu, opts))


def _frac_margin(p, opts):
    mu, x = p
    return B.frac_envelope(mu, x) - abs(L_infinite(x, mu, opts))


def _sec_margin(p, opts):
    lam, x = p
    lhs = abs(lam * eci(x, lam, opts) - 1j)
    return 1.0 / math.cos(x) - lhs


@functools.lru_cache(maxsize=256)
def _m_at(t: float, opts: EvalOptions) -> float:
    return comparison_M(t, opts)


def _ebycos_margin(p, opts):
    # same formula as bounds.ebycos_rhs, with M(lam) shared along a lambda row
    lam, x = p
    if lam <= 0 or not 0.0 < x < 0.5 * _PI:
        raise DomainError(f"EbycosRhs needs lambda > 0 and 0 < x < pi/2, got {p}")
    rhs = 1.0 / lam - _m_at(lam, opts) + comparison_M(lam * math.cos(x), opts)
    lhs = abs(lam * eci(x, lam, opts) - 1j)
    return lam * rhs - lhs


def _fjturan_margin(p, opts):
    n, x = p
    n = int(n)
    saw = 0.5 * (_PI - x)
    return saw - abs(saw - sine_partial_sum(x, n))


def _lower(field_name: str, min_n: int = 1, window: bool = False):
    def margin(p, opts):
        n, x = int(p[0]), p[1]
        if n < min_n:
            return None
        if window:
            lo, hi = B.bk1998_window(n)
            if not lo <= x <= hi:
                return None
        return sine_partial_sum(x, n) - getattr(B.classical_bounds(n, x), field_name)

    return margin


def _even_upper_margin(p, opts):
    n, x = int(p[0]), p[1]
    if n % 2:
        return None
    return B.classical_bounds(n, x).ak_even_upper - sine_partial_sum(x, n)


# Below this |z|^(n+1) both sides of a Taylor bound are underflow noise.
_UNDERFLOW = 1e-250


def _taylor(field_name: str):
    def margin(p, opts):
        n, r, theta = int(p[0]), p[1], p[2]
        z = cmath.rect(r, theta)
        if z == 1 or abs(z) > 1.0:
            return None
        pt = B.TaylorPoint(z.real, z.imag, n)
        value = getattr(B.taylor_bounds(pt), field_name)
        if value is None:
            return None
        lead = abs(z) ** (n + 1)
        if lead == 0.0 and r == 0.0:
            return value - abs(B.log_taylor_remainder(z, n))
        if lead < _UNDERFLOW:
            return None
        return (value - abs(B.log_taylor_remainder(z, n))) / lead

    return margin


_MU = AxisDomain("mu", -0.5, math.inf, lo_open=True, default=(0.0, 20.0, 41))
_X_OPEN = AxisDomain("x", 0.0, _PI, lo_open=True, hi_open=True, default=(0.0, _PI, 400), abscissa=True)
_X_CLOSED = AxisDomain("x", 0.0, _PI, default=(0.0, _PI, 400), abscissa=True)
_X_HALF = AxisDomain("x", 0.0, 0.5 * _PI, lo_open=True, hi_open=True,
                     default=(0.0, 0.5 * _PI, 400), abscissa=True)
_N = AxisDomain("n", 1, math.inf, integer=True, default=(1, 50, 50))
_N2 = AxisDomain("n", 2, math.inf, integer=True, default=(2, 50, 49))
_R = AxisDomain("r", 0.0, 1.0, default=(0.025, 1.0, 40))
_THETA = AxisDomain("theta", -_PI, _PI, default=(-_PI, _PI, 80))
_TAYLOR_AXES = (AxisDomain("n", 1, math.inf, integer=True, default=(1, 20, 20)), _R, _THETA)

PROBLEMS: dict[BoundId, Problem] = {
    p.bound_id: p
    for p in [
        Problem(
            BoundId.ArccotEnvelope,
            (AxisDomain("mu", -0.5, math.inf, default=(1, 50, 50)), _X_CLOSED),
            _arccot_margin,
            lambda o: max(_EXACT_BUDGET, _quad_budget(o)),
            "arccot((2mu+1) sin(x/2)) - |Im exp(ix mu) L(x, mu)|; integer mu uses exact partial sums",
        ),
        Problem(BoundId.MEnvelope, (_MU, _X_OPEN), _m_margin, _quad_budget,
                "M((2mu+1) sin(x/2)) - |L(x, mu)|"),
        Problem(BoundId.LogEnvelope, (_MU, _X_OPEN), _log_margin, _quad_budget,
                "-ln((2mu+1) sin(x/2)) + C2 - |L(x, mu)| where (2mu+1) sin(x/2) < 1"),
        Problem(BoundId.FracEnvelope, (_MU, _X_OPEN), _frac_margin, _quad_budget,
                "1/((2mu+1) sin(x/2)) - |L(x, mu)|"),
        Problem(
            BoundId.SecEnvelope,
            (AxisDomain("lambda", -math.inf, math.inf, default=(0.5, 50.0, 40)), _X_HALF),
            _sec_margin,
            lambda o: 100.0 * o.abs_tol,
            "sec x - |lambda Eci(x, lambda) - i| (margin scaled by |lambda|)",
        ),
        Problem(
            BoundId.EbycosRhs,
            (AxisDomain("lambda", 0.0, math.inf, lo_open=True, default=(0.5, 50.0, 40)), _X_HALF),
            _ebycos_margin,
            lambda o: 100.0 * o.abs_tol,
            "lambda (1/lambda - M(lambda) + M(lambda cos x)) - |lambda Eci - i|",
        ),
        Problem(BoundId.FJTuran, (_N, _X_CLOSED), _fjturan_margin, _exact_budget,
                "(pi-x)/2 - |(pi-x)/2 - S_n(x)|"),
        Problem(BoundId.Fejer1928, (_N, _X_OPEN), _lower("fejer1928"), _exact_budget,
                "S_n(x) - (sin x/3 + sin nx/(2n))"),
        Problem(BoundId.Turan1952, (_N2, _X_OPEN), _lower("turan1952", 2), _exact_budget,
                "S_n(x) - 4 sin^2(x/2)(cot(x/2) - (pi-x)/2), n >= 2"),
        Problem(BoundId.AK2003, (_N2, _X_OPEN), _lower("ak2003", 2), _exact_budget,
                "S_n(x) - x^2 (cot(x/2) - (pi-x)/2), n >= 2"),
        Problem(BoundId.BK1998, (_N, _X_OPEN), _lower("bk1998", 1, window=True), _exact_budget,
                "S_n(x) - (1 - sin(x/2))/cos(x/2) on [3pi/(2n+1), pi - 3pi/(2n+1)]"),
        Problem(BoundId.Koumandos2012, (_N, _X_OPEN), _lower("koumandos2012"), _exact_budget,
                "S_n(x) - x (1 - x/pi)^3"),
        Problem(BoundId.AlKou12, (_N, _X_OPEN), _lower("alkou12"), _exact_budget,
                "S_n(x) - (pi/4) delta_n cot(x/2) (1 - P_n(cos x)); equality for n = 2"),
        Problem(BoundId.AKEvenUpper, (_N2, _X_OPEN), _even_upper_margin, _exact_budget,
                "0.66395 (pi - x) - S_n(x) for even n; odd n skipped"),
        Problem(BoundId.TaylorSimple, _TAYLOR_AXES, _taylor("simple"), _exact_budget,
                "(bound - |R_n(z)|) / |z|^(n+1), z = r exp(i theta); underflowing |z|^(n+1) skipped"),
        Problem(BoundId.TaylorMp, _TAYLOR_AXES, _taylor("mp"), _exact_budget,
                "(m(p) - |R_n(z)|) / |z|^(n+1), |z| < 1"),
        Problem(BoundId.TaylorLog1z, _TAYLOR_AXES, _taylor("log1z"), _exact_budget,
                "(log bound - |R_n(z)|) / |z|^(n+1), |z| < 1 and q < 1"),
        Problem(BoundId.TaylorMhat, _TAYLOR_AXES, _taylor("mhat"), _exact_budget,
                "(|z|^(n+1) mhat(q) - |R_n(z)|) / |z|^(n+1)"),
    ]
}


def problem(bound_id: BoundId | str) -> Problem:
    try:
        return PROBLEMS[BoundId(bound_id)]
    except ValueError:
        raise ConfigurationError(f"unknown bound {bound_id!r}") from None


def default_grid(bound_id: BoundId | str, count: int = 400) -> GridSpec:
    """The default grid for a bound: ``count`` points on the abscissa axis."""
    axes = []
    for ax in problem(bound_id).axes:
        lo, hi, n = ax.default
        axes.append(GridAxis(lo, hi, count if ax.abscissa else n))
    return GridSpec(tuple(axes))


def grid_points(bound_id: BoundId | str, grid: GridSpec) -> list[tuple[float, ...]]:
    prob = problem(bound_id)
    if len(grid.axes) != len(prob.axes):
        raise ConfigurationError(
            f"{prob.bound_id.value} needs axes {[a.name for a in prob.axes]}, got {len(grid.axes)}"
        )
    columns = []
    for ax, dom in zip(grid.axes, prob.axes):
        vals = ax.values(
            open_lo=dom.lo_open and ax.lo == dom.lo and ax.count > 1,
            open_hi=dom.hi_open and ax.hi == dom.hi and ax.count > 1,
        )
        if dom.integer:
            rounded = np.round(vals)
            if np.any(np.abs(vals - rounded) > 1e-9):
                raise ConfigurationError(f"axis {dom.name} must take integer values")
            vals = rounded
        bad = [v for v in vals if not dom.contains(float(v))]
        if bad:
            raise ConfigurationError(
                f"axis {dom.name} leaves the domain of {prob.bound_id.value}: {bad[0]!r}"
            )
        columns.append(vals)
    mesh = np.meshgrid(*columns, indexing="ij")
    return [tuple(float(v) for v in row) for row in np.stack([m.ravel() for m in mesh], axis=1)]


# -- sweeps -------------------------------------------------------------------


@dataclass
class _Partial:
    samples: int = 0
    violations: int = 0
    near: int = 0
    skipped: int = 0
    min_margin: float = math.inf
    argmin: tuple = ()

    def merge(self, other: "_Partial") -> "_Partial":
        self.samples += other.samples
        self.violations += other.violations
        self.near += other.near
        self.skipped += other.skipped
        if (other.min_margin, other.argmin) < (self.min_margin, self.argmin):
            self.min_margin, self.argmin = other.min_margin, other.argmin
        return self


def _evaluate_chunk(bound_value: str, points: Sequence[tuple], opts: EvalOptions) -> _Partial:
    prob = PROBLEMS[BoundId(bound_value)]
    budget = prob.budget(opts)
    acc = _Partial()
    for p in points:
        m = prob.margin(p, opts)
        if m is None:
            acc.skipped += 1
            continue
        acc.samples += 1
        if m < -budget:
            acc.violations += 1
        elif abs(m) <= budget:
            acc.near += 1
        if (m, p) < (acc.min_margin, acc.argmin):
            acc.min_margin, acc.argmin = m, p
    return acc


def margin_at(bound_id: BoundId | str, point: Sequence[float], opts: EvalOptions | None = None) -> float | None:
    """Margin of a single point, as used by :func:`sweep`."""
    return problem(bound_id).margin(tuple(float(v) for v in point), _opts(opts))


def sweep_points(
    bound_id: BoundId | str,
    points: Iterable[Sequence[float]],
    opts: EvalOptions | None = None,
    workers: int = 1,
    grid: list | None = None,
) -> InequalityReport:
    """Evaluate the margin of ``bound_id`` at explicit points."""
    prob = problem(bound_id)
    opts = _opts(opts)
    pts = [tuple(float(v) for v in p) for p in points]
    for p in pts:
        if len(p) != len(prob.axes):
            raise ConfigurationError(f"{prob.bound_id.value} points need {len(prob.axes)} coordinates")
    start = time.perf_counter()
    if workers > 1 and len(pts) > 1:
        chunks = [pts[i::workers] for i in range(workers)]
        acc = _Partial()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_evaluate_chunk, [prob.bound_id.value] * workers, chunks, [opts] * workers):
                acc.merge(part)
    else:
        acc = _evaluate_chunk(prob.bound_id.value, pts, opts)
    return InequalityReport(
        bound_id=prob.bound_id,
        samples=acc.samples,
        violations=acc.violations,
        min_margin=acc.min_margin,
        argmin=acc.argmin,
        elapsed=time.perf_counter() - start,
        near_equality=acc.near,
        skipped=acc.skipped,
        budget=prob.budget(opts),
        axes=tuple(a.name for a in prob.axes),
        grid=grid,
        notes=prob.notes,
    )


def sweep(
    bound_id: BoundId | str,
    grid: GridSpec,
    opts: EvalOptions | None = None,
    workers: int = 1,
) -> InequalityReport:
    """Sweep a bound over a grid; see the module docstring for the margin rules."""
    pts = grid_points(bound_id, grid)
    return sweep_points(bound_id, pts, opts, workers, grid=grid.describe())


# -- threshold roots -----------------------------------------------------------

THRESHOLD_BRACKET = (0.1, 1.0)
# Ten-digit values in print, and the agreement required of computed roots.
PRINTED_THRESHOLDS = {"T0": 0.7095667635, "T1": 0.4685633187}
THRESHOLD_AGREEMENT = 1e-8


def _threshold_function(which: str, opts: EvalOptions) -> Callable[[float], float]:
    if which == "T0":
        return lambda t: comparison_M(t, opts) - arccot(t)
    if which == "T1":
        return lambda t: abs(exp_integral_E(t, opts)) - arccot(t)
    raise ConfigurationError(f"unknown threshold {which!r}; expected T0 or T1")


def find_threshold(which: str, opts: EvalOptions | None = None) -> ThresholdResult:
    """Root of M(t) = arccot t (``"T0"``) or |E(t)| = arccot t (``"T1"``).

    Bisection on (0.1, 1) down to width 1e-13, then one secant step inside
    the final bracket.
    """
    opts = _opts(opts)
    f = _threshold_function(which, opts)
    lo, hi = THRESHOLD_BRACKET
    flo, fhi = f(lo), f(hi)
    if not flo * fhi < 0:
        raise RuntimeError(f"no sign change for {which} on {THRESHOLD_BRACKET}")
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            lo = hi = mid
            flo = fhi = 0.0
            break
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    root = 0.5 * (lo + hi)
    if fhi != flo:
        secant = lo - flo * (hi - lo) / (fhi - flo)
        if lo < secant < hi:
            root = secant
    if not lo < root < hi:
        root = 0.5 * (lo + hi)
    return ThresholdResult(root, lo, hi, f(root))


# -- identities and limit relations --------------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    point: tuple
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return math.isfinite(self.residual) and self.residual <= self.tolerance


def _central(f, t, h):
    return (f(t + h) - f(t - h)) / (2.0 * h)


# The published sample sets.
LS_POINTS = ((1.0, 0.0, 10), (2.5, 0.5, 25), (0.1, 3.0, 100))
IMEL_MUS = (0.5, 3.0)
IMEL_GRID = tuple(np.linspace(0.05, _PI - 0.05, 50))
REEL_POINTS = ((1.3, (0.5, 1.5, 2.5)), (0.0, (0.7, 2.0)), (2.7, (0.4, 1.9)))
ECI_POINTS = ((0.5, 3.0), (1.2, 8.0), (0.3, 0.5), (1.45, 20.0))
SPI_DIGAMMA_LAMBDAS = (0.0, 0.5, 1.0, 2.0, 5.0, 10.0)
E_ODE_POINTS = (0.5, 1.0, 3.0)
LODD_ODE_POINTS = ((0.8, 3.0), (1.3, 0.5))
M_ODE_POINTS = (0.5, 2.0, 10.0)
ODE_TOL = 1e-5
IDENTITY_TOL = 1e-8


def check_identities(opts: EvalOptions | None = None) -> list[IdentityCheck]:
    """Residuals of the representation identities at the published sample sets."""
    opts = _opts(opts)
    # Finite differences amplify quadrature noise by 1/h (1/h^2 for M''),
    # so derivatives are taken from tighter evaluations.
    fine = EvalOptions(abs_tol=min(opts.abs_tol, 1e-15), max_subdivisions=opts.max_subdivisions,
                       truncation_floor=min(opts.truncation_floor, 1e-20))
    out: list[IdentityCheck] = []

    for x, mu, n in LS_POINTS:
        r = abs(L_truncated(x, mu, n, opts) - L_partial(x, mu, n))
        out.append(IdentityCheck("L-S: L - exp(ixn) L(x, mu+n) = L_n", (x, mu, n), r, 1e-10))

    for mu in IMEL_MUS:
        vals = [rotated_L(x, mu, opts).imag + half_angle_sine_integral(x, mu, opts) for x in IMEL_GRID]
        spread = max(vals) - min(vals)
        out.append(IdentityCheck("Im-eL constancy in x", (mu,), spread, 1e-9))
        out.append(IdentityCheck("Im-eL value pi/2", (mu,), max(abs(v - 0.5 * _PI) for v in vals), 1e-9))

    for mu, xs in REEL_POINTS:
        target = -S_pi(2 * mu + 1, opts) * math.cos(_PI * mu)
        for x in xs:
            lhs = rotated_L(x, mu, opts).real - half_angle_cosine_integral(x, mu, opts)
            out.append(IdentityCheck("Re-eL = -S_pi(2mu+1) cos(pi mu)", (x, mu), abs(lhs - target), 1e-9))

    for x, lam in ECI_POINTS:
        direct = eci(x, lam, opts, "direct")
        out.append(IdentityCheck("Eci = exp(ix lam) Lodd(x - pi/2, lam) + i S_pi(lam)", (x, lam),
                                 abs(direct - eci(x, lam, opts, "identity")), 1e-9))
        out.append(IdentityCheck("Eci Laplace representation", (x, lam),
                                 abs(direct - eci(x, lam, opts, "laplace")), 1e-9))

    for lam in SPI_DIGAMMA_LAMBDAS:
        dg = 0.5 * (digamma((lam + 3) / 4) - digamma((lam + 1) / 4))
        out.append(IdentityCheck("S_pi digamma form", (lam,), abs(S_pi(lam, opts) - dg), 1e-10))

    for t in E_ODE_POINTS:
        h = 1e-4
        dE = _central(lambda s: exp_integral_E(s, fine), t, h)
        r = abs(dE + 1j * exp_integral_E(t, fine) + 1.0 / t)
        out.append(IdentityCheck("E' + iE + 1/t = 0", (t,), r, ODE_TOL))

    for x, lam in LODD_ODE_POINTS:
        h = 1e-4
        dL = _central(lambda s: L_odd(s, lam, fine), x, h)
        r = abs(dL + 1j * lam * L_odd(x, lam, fine) + 1.0 / math.sin(x))
        out.append(IdentityCheck("Lodd' + i lam Lodd + 1/sin x = 0", (x, lam), r, ODE_TOL))

    for t in M_ODE_POINTS:
        r = abs(m_ode_residual(t, fine))
        out.append(IdentityCheck("t M'' + M' + t M = 1", (t,), r, ODE_TOL))
    return out


def m_ode_residual(t: float, opts: EvalOptions | None = None) -> float:
    """t M''(t) + M'(t) + t M(t) - 1 by central differences, h = max(1e-4, 1e-3 t)."""
    h = max(1e-4, 1e-3 * t)
    mm, m0, mp = (comparison_M(s, opts) for s in (t - h, t, t + h))
    d1 = (mp - mm) / (2 * h)
    d2 = (mp - 2 * m0 + mm) / (h * h)
    return t * d2 + d1 + t * m0 - 1.0


@dataclass(frozen=True)
class LimitTable:
    name: str
    nu: float
    scales: tuple[float, ...]
    deviations: tuple[float, ...]

    @property
    def strictly_decreasing(self) -> bool:
        d = self.deviations
        return all(a > b for a, b in zip(d, d[1:]))


LIMIT_SCALES = (10.0, 100.0, 1000.0)


def check_limits(opts: EvalOptions | None = None, scales: Sequence[float] = LIMIT_SCALES) -> list[LimitTable]:
    """Deviation tables for the three limit relations as the scale grows."""
    opts = _opts(opts)
    scales = tuple(scales)
    tables = []
    nu = 1.0
    e = exp_integral_E(nu, opts)
    tables.append(LimitTable("L(nu/mu, mu) -> E(nu)", nu, scales,
                             tuple(abs(L_infinite(nu / s, s, opts) - e) for s in scales)))
    nu = 2.0
    si = sine_integral(nu, opts)
    tables.append(LimitTable("Ssi(nu/lam, lam) -> Si(nu)", nu, scales,
                             tuple(abs(ssi(nu / s, s, opts) - si) for s in scales)))
    nu = 1.0
    target = 1j * (1.0 - cmath.exp(1j * nu))
    tables.append(LimitTable("lam Eci(nu/lam, lam) -> i(1 - exp(i nu))", nu, scales,
                             tuple(abs(s * eci(nu / s, s, opts) - target) for s in scales)))
    return tables
