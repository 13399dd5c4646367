import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gamowkit.errors import NoConvergence
from gamowkit.quad import (
    gaussian_halfline_quad, gaussian_tail_integral, integrate_adaptive, truncation_point,
)
from gamowkit.specfun import j_regularized, j_regularized_log


def test_constant():
    r = integrate_adaptive(lambda x: np.ones_like(x), 0, 1)
    assert abs(r.value - 1) < 1e-14 and r.converged


def test_full_periods():
    r = integrate_adaptive(lambda x: np.exp(3j * x), 0, 2 * math.pi, tol=1e-12)
    assert abs(r.value) < 1e-12


def test_gaussian_chirp_vs_erf_closed_form():
    lam, k = 0.1, 2 - 1j
    r = integrate_adaptive(lambda x: np.exp(-lam * x * x + 1j * k * x), 0, 5, tol=1e-13)
    s = mp.sqrt(lam)
    kk = mp.mpc(k.real, k.imag)
    z0 = -1j * kk / (2 * s)
    ref = mp.sqrt(mp.pi) / (2 * s) * mp.exp(-kk * kk / (4 * lam)) * (mp.erf(5 * s + z0) - mp.erf(z0))
    ref = complex(ref)
    assert abs(r.value - ref) < 1e-10 * abs(ref)


def test_deterministic():
    f = lambda x: np.exp(-x) * np.cos(20 * x) + 1j * np.sin(x * x)
    a = integrate_adaptive(f, 0, 7, tol=1e-12)
    b = integrate_adaptive(f, 0, 7, tol=1e-12)
    assert a == b


def test_no_convergence_flag_and_strict():
    f = lambda x: np.sign(np.sin(1e4 * x))
    r = integrate_adaptive(f, 0, 1, tol=1e-14, max_panels=50)
    assert not r.converged
    with pytest.raises(NoConvergence):
        integrate_adaptive(f, 0, 1, tol=1e-14, max_panels=50, strict=True)


def test_bad_interval():
    with pytest.raises(ValueError):
        integrate_adaptive(np.sin, 1, 0)


@settings(max_examples=100, deadline=None)
@given(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False))
def test_linearity(alpha, beta):
    f = lambda x: np.exp(2j * x) * x
    g = lambda x: np.cos(3 * x) / (1 + x * x)
    h = lambda x: alpha * f(x) + beta * g(x)
    tol = 1e-12
    lhs = integrate_adaptive(h, 0, 3, tol=tol).value
    F = integrate_adaptive(f, 0, 3, tol=tol).value
    G = integrate_adaptive(g, 0, 3, tol=tol).value
    assert abs(lhs - (alpha * F + beta * G)) < 1e-10 * (1 + abs(alpha) + abs(beta))


@given(st.floats(0.1, 2.9))
def test_additivity(c):
    f = lambda x: np.exp((0.3 + 4j) * x)
    whole = integrate_adaptive(f, 0, 3, tol=1e-13).value
    parts = integrate_adaptive(f, 0, c, tol=1e-13).value + integrate_adaptive(f, c, 3, tol=1e-13).value
    assert abs(whole - parts) < 1e-11 * abs(whole)


def test_tail_integral_examples():
    assert abs(gaussian_tail_integral(1, 1j, 0, 1e-8).to_complex() - 1) < 1e-3
    for k, lam in [(2 - 1j, 0.2), (-1 + 3j, 1.0)]:
        assert gaussian_tail_integral(1, k, 0, lam).to_complex() == pytest.approx(j_regularized(k, lam), rel=1e-14)
    k, lam, x0 = 3 - 0.4j, 0.05, 1.0
    X = truncation_point(x0, k, lam)
    ref = integrate_adaptive(lambda x: np.exp(-lam * x * x + 1j * k * x), x0, X, tol=1e-13).value
    got = gaussian_tail_integral(1, k, x0, lam).to_complex()
    assert abs(got - ref) < 1e-9 * abs(ref)


def test_tail_shift_consistency():
    rng = np.random.default_rng(7)
    for _ in range(50):
        k = complex(rng.uniform(-3, 3), rng.uniform(-1, 2))
        lam = 10 ** rng.uniform(-1, 0.3)
        x0 = rng.uniform(0.1, 2)
        c = complex(*rng.normal(size=2))
        full = gaussian_tail_integral(c, k, 0, lam).to_complex()
        head = c * integrate_adaptive(lambda x: np.exp(-lam * x * x + 1j * k * x), 0, x0, tol=1e-13).value
        got = gaussian_tail_integral(c, k, x0, lam).to_complex()
        assert abs(got - (full - head)) < 1e-9 * max(abs(full), abs(head), 1e-300)


def test_zero_coefficient():
    assert gaussian_tail_integral(0, 1 - 1j, 1, 0.1).is_zero


@pytest.mark.parametrize("k,lam", [(3 - 0.2j, 0.1), (10 - 10j, 1e-3), (-2 + 5j, 0.01), (0.5 - 2j, 0.001)])
def test_contour_oracle_matches_closed_form(k, lam):
    a = gaussian_halfline_quad(k, lam)
    b = j_regularized_log(k, lam)
    d = a.ln - b.ln
    assert abs(complex(d.real, math.remainder(d.imag, 2 * math.pi))) < 1e-10


def test_contour_oracle_matches_real_axis_quadrature():
    # moderate case where the real-axis integral has no cancellation trouble
    k, lam = 1.5 - 0.3j, 0.5
    X = truncation_point(0, k, lam)
    ref = integrate_adaptive(lambda x: np.exp(-lam * x * x + 1j * k * x), 0, X, tol=1e-13).value
    assert abs(gaussian_halfline_quad(k, lam).to_complex() - ref) < 1e-11 * abs(ref)
