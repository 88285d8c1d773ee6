import math

import mpmath
import numpy as np
import pytest
import scipy.integrate
import scipy.special
from hypothesis import given
from hypothesis import strategies as st

from fjbounds.errors import DomainError
from fjbounds.fjsums import S_pi
from fjbounds.specfun import (
    C1,
    C2,
    EULER_GAMMA,
    EvalOptions,
    arccot,
    aux_exp_integral,
    comparison_M,
    complementary_sine_integral,
    cosine_integral,
    digamma,
    exp_integral_E,
    log_gamma,
    regularized_cosine_integral,
    sine_integral,
)

positive_t = st.floats(min_value=1e-3, max_value=200.0)


def test_options_validated():
    for bad in (dict(abs_tol=0), dict(truncation_floor=-1), dict(max_subdivisions=0)):
        with pytest.raises(ValueError):
            EvalOptions(**bad)


# -- Si, si, Ci, Cin -----------------------------------------------------------


def test_si_at_zero():
    assert sine_integral(0.0) == 0.0
    assert complementary_sine_integral(0.0) == -math.pi / 2


def test_si_10_against_quadrature():
    ref, _ = scipy.integrate.quad(lambda u: math.sin(u) / u if u else 1.0, 0, 10, epsabs=1e-14, limit=200)
    assert abs(sine_integral(10.0) - ref) < 1e-10


@given(st.floats(0.0, 300.0))
def test_si_ci_against_scipy(t):
    si, ci = scipy.special.sici(t)
    assert abs(sine_integral(t) - si) < 1e-12
    if t > 0:
        assert abs(cosine_integral(t) - ci) < 1e-12


@pytest.mark.parametrize("t", [0.5, 1.0, 5.0])
def test_cin_relation(t):
    cin = regularized_cosine_integral(t)
    assert abs(cin - (math.log(t) - cosine_integral(t) + EULER_GAMMA)) < 1e-12


def test_ci_one_power_series():
    t = 1.0
    series = math.fsum((-1) ** k * t ** (2 * k) / (2 * k * math.factorial(2 * k)) for k in range(1, 30))
    assert abs(cosine_integral(t) - (series + EULER_GAMMA + math.log(t))) < 1e-12


def test_ci_decays():
    assert abs(cosine_integral(100.0)) < 0.01


def test_domain_errors():
    for f, arg in [(cosine_integral, 0.0), (sine_integral, -1.0), (sine_integral, math.nan),
                   (exp_integral_E, 0.0), (comparison_M, -2.0), (arccot, -0.5)]:
        with pytest.raises(DomainError):
            f(arg)


# -- E(t) and M(t) ---------------------------------------------------------------


@pytest.mark.parametrize("t", [0.3, 1.0, 7.0])
def test_E_gives_si_through_real_part(t):
    e = exp_integral_E(t)
    rotated = 1j * complex(math.cos(t), math.sin(t)) * e
    assert abs(rotated.real - complementary_sine_integral(t)) < 1e-11
    # the imaginary part of the same product is -Ci(t)
    assert abs(rotated.imag + cosine_integral(t)) < 1e-11


@given(st.floats(0.01, 60.0))
def test_E_against_mpmath(t):
    # E(t) = exp(-it) E1(-it)
    ref = complex(mpmath.exp(-1j * t) * mpmath.e1(-1j * t))
    assert abs(exp_integral_E(t) - ref) < 1e-12


def test_E5_against_oscillatory_quadrature():
    # E(t) = int_0^inf exp(iu)/(u + t) du, here by scipy's Fourier-integral routine
    re, _ = scipy.integrate.quad(lambda u: 1.0 / (u + 5.0), 0, np.inf, weight="cos", wvar=1.0)
    im, _ = scipy.integrate.quad(lambda u: 1.0 / (u + 5.0), 0, np.inf, weight="sin", wvar=1.0)
    assert abs(exp_integral_E(5.0) - complex(re, im)) < 1e-9


@pytest.mark.parametrize("t", [0.2, 1.0, 3.0, 9.5, 40.0])
def test_aux_parts(t):
    aux = aux_exp_integral(t)
    c, s = math.cos(t), math.sin(t)
    ci, si = cosine_integral(t), complementary_sine_integral(t)
    assert abs(aux.g - (-c * ci - s * si)) < 1e-12
    assert abs(aux.f - (s * ci - c * si)) < 1e-12
    assert aux.g**2 + aux.f**2 < comparison_M(t) ** 2
    assert aux.value == exp_integral_E(t)


def test_E_dominated_by_M_on_log_grid():
    for t in np.geomspace(0.01, 100, 60):
        assert abs(exp_integral_E(t)) < comparison_M(t)


@given(st.floats(0.01, 80.0))
def test_M_against_struve_bessel(t):
    ref = 0.5 * math.pi * (scipy.special.struve(0, t) - scipy.special.y0(t))
    assert abs(comparison_M(t) - ref) < 1e-11 * max(1.0, abs(ref))


def test_M_large_t_expansion():
    t = 100.0
    m = comparison_M(t)
    # four terms of 1/t - 1/t^3 + 9/t^5 - 225/t^7 ...; the remainder is below 1e-15 here
    assert abs(m - (1 / t - 1 / t**3 + 9 / t**5 - 225 / t**7)) < 1e-13
    # the three-term form sits above M by about 225/t^7
    assert m < 1 / t - 1 / t**3 + 9 / t**5


def test_M_small_t_expansion():
    t = 1e-3
    assert abs(comparison_M(t) - (-math.log(t) + C1)) < 0.002
    assert C1 == pytest.approx(0.116, abs=5e-4)
    # M grows like -ln t; the expression with +ln t is off by 2|ln t|
    assert comparison_M(t) - (math.log(t) + C1) == pytest.approx(-2 * math.log(t), abs=0.002)


@pytest.mark.parametrize("t", [0.5, 2.0, 10.0])
def test_M_ode(t):
    from fjbounds.verify import m_ode_residual

    assert abs(m_ode_residual(t, EvalOptions(abs_tol=1e-15))) < 1e-5


def test_M_monotone_and_gap():
    ts = np.geomspace(0.01, 50, 80)
    m = np.array([comparison_M(t) for t in ts])
    assert np.all(np.diff(m) < 0)
    gap = 1 / ts - m
    assert np.all(gap > 0) and np.all(np.diff(gap) < 0)


def test_M_elementary_bounds():
    for t in np.geomspace(0.001, 50, 60):
        m = comparison_M(t)
        assert m < math.asinh(1 / t)
        if t < 1:
            assert m < abs(math.log(t)) + C2
    assert C2 < 0.8814


def test_si_below_arccot():
    assert abs(complementary_sine_integral(0.0)) == arccot(0.0)
    for t in np.linspace(0.01, 30, 200):
        assert abs(complementary_sine_integral(t)) < arccot(t)


def test_thresholds_gate_arccot():
    from fjbounds.verify import find_threshold

    t0 = find_threshold("T0").root
    t1 = find_threshold("T1").root
    for t in np.linspace(t0 + 1e-6, 20, 60):
        assert comparison_M(t) < arccot(t)
    for t in np.linspace(t1 + 1e-6, 20, 60):
        assert abs(exp_integral_E(t)) < arccot(t)


# -- digamma, arccot, log-gamma ---------------------------------------------------


def test_digamma_values():
    assert abs(digamma(1.0) + EULER_GAMMA) < 1e-14
    for x in (0.3, 1.7, 9.0):
        assert abs(digamma(x + 1) - digamma(x) - 1 / x) < 1e-13
    with pytest.raises(DomainError):
        digamma(-2.0)
    with pytest.raises(DomainError):
        digamma(0.0)


@given(st.floats(-30.0, 200.0).filter(lambda x: abs(x - round(x)) > 1e-3 or x > 0.5))
def test_digamma_against_scipy(x):
    ref = scipy.special.digamma(x)
    assert abs(digamma(x) - ref) < 1e-12 * max(1.0, abs(ref)) * (1e3 if x < 0 else 1)


@pytest.mark.parametrize("lam", [0.0, 1.0, 5.0])
def test_digamma_form_of_S_pi(lam):
    assert abs(0.5 * (digamma((lam + 3) / 4) - digamma((lam + 1) / 4)) - S_pi(lam)) < 1e-10


def test_arccot():
    assert arccot(0.0) == math.pi / 2
    assert abs(arccot(1.0) - math.pi / 4) < 1e-16
    for t in (1.0, 2.0, 8.0):
        assert arccot(t) > 1 / t - 1 / (3 * t**3)
    ts = np.linspace(0, 50, 300)
    vals = [arccot(t) for t in ts]
    assert all(0 < v <= math.pi / 2 for v in vals)
    assert np.all(np.diff(vals) < 0)


def test_log_gamma():
    assert abs(log_gamma(1.5) - math.log(math.sqrt(math.pi) / 2)) < 1e-15
