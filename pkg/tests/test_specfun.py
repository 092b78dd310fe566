from __future__ import annotations

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eisenlab import specfun
from eisenlab.errors import DomainError, PoleError

mp.mp.dps = 30

finite = dict(allow_nan=False, allow_infinity=False)


def rel(a, b):
    return abs(complex(a) - complex(b)) / max(abs(complex(b)), 1e-300)


@pytest.mark.parametrize("s", [0.5, 1.0, 2.5, 7.25, -0.5 + 0.3j, 0.2 + 4j, 3 - 2j, 15.5])
def test_gamma_vs_mpmath(s):
    assert rel(specfun.gamma(s), complex(mp.gamma(s))) < 1e-12


def test_gamma_integer_exact():
    assert specfun.gamma(6) == 120


def test_gamma_pole():
    with pytest.raises(PoleError):
        specfun.gamma(-3)
    assert specfun.rgamma(-3) == 0


@given(st.floats(-3.7, 3.7, **finite), st.floats(-3, 3, **finite))
@settings(max_examples=60, deadline=None)
def test_reflection(x, y):
    s = complex(x, y)
    if abs(math.sin(math.pi * x)) < 1e-3 and abs(y) < 1e-3:
        return
    lhs = specfun.gamma(s) * specfun.gamma(1 - s)
    rhs = math.pi / complex(mp.sin(mp.pi * mp.mpc(s)))
    assert rel(lhs, rhs) < 1e-10


@given(st.floats(0.1, 6, **finite), st.floats(-4, 4, **finite))
@settings(max_examples=60, deadline=None)
def test_duplication(x, y):
    s = complex(x, y)
    lhs = specfun.gamma(s) * specfun.gamma(s + 0.5)
    rhs = 2 ** (1 - 2 * s) * math.sqrt(math.pi) * specfun.gamma(2 * s)
    assert rel(lhs, rhs) < 1e-10


@given(st.floats(-3, 3, **finite), st.integers(0, 8), st.integers(0, 8))
@settings(max_examples=60, deadline=None)
def test_pochhammer_addition(a, m, n):
    lhs = specfun.pochhammer(a, m + n)
    rhs = specfun.pochhammer(a, m) * specfun.pochhammer(a + m, n)
    assert abs(lhs - rhs) <= 1e-10 * max(abs(lhs), 1.0)


def test_pochhammer_vs_mpmath():
    assert rel(specfun.pochhammer(0.3 + 1j, 7), complex(mp.rf(mp.mpc(0.3, 1), 7))) < 1e-13


@pytest.mark.parametrize("s", [2, 3.5, 0.5 + 14.134725j, -1.5, 0.25, 0.7 - 3j, -4.5 + 2j, 1 + 1e-3j])
def test_zeta_vs_mpmath(s):
    assert rel(specfun.zeta(s), complex(mp.zeta(s))) < 1e-10 or abs(complex(mp.zeta(s))) < 1e-6


def test_zeta_pole():
    with pytest.raises(PoleError):
        specfun.zeta(1)


@given(st.floats(-2, 3, **finite), st.floats(-10, 10, **finite))
@settings(max_examples=50, deadline=None)
def test_completed_zeta_symmetry(x, y):
    s = complex(x, y)
    if abs(s) < 1e-2 or abs(s - 1) < 1e-2:
        return
    a, b = specfun.lambda_completed(s), specfun.lambda_completed(1 - s)
    assert abs(a - b) <= 1e-10 * max(abs(a), 1e-3)


def test_dirichlet_beta_catalan():
    assert abs(specfun.dirichlet_beta(2) - float(mp.catalan)) < 1e-13


@pytest.mark.parametrize("nu, x", [(0, 0.3), (0.5, 2.0), (2.3, 5.0), (1 + 2j, 1.5), (7.5, 10.0), (3j, 4.0)])
def test_bessel_k_vs_mpmath(nu, x):
    assert rel(specfun.bessel_k(nu, x), complex(mp.besselk(nu, x))) < 1e-10


@pytest.mark.parametrize("x", [0.1, 1.0, 3.0, 20.0])
def test_bessel_half_closed_form(x):
    assert rel(specfun.bessel_k(0.5, x), math.sqrt(math.pi / (2 * x)) * math.exp(-x)) < 1e-10


def test_bessel_scaled_vectorised():
    x = np.array([1.0, 50.0, 800.0])
    out = specfun.bessel_k(1.5, x, scaled=True)
    assert out.shape == (3,)
    assert rel(out[1], complex(mp.besselk(1.5, 50) * mp.e**50)) < 1e-10


def test_bessel_domain():
    with pytest.raises(DomainError):
        specfun.bessel_k(1, -1.0)


@pytest.mark.parametrize("a, b, c, w", [(1, 2, 3, 0.5), (0.5, 1.5, 2.0, -0.9), (2.5, 2.5, 5.0, -30.0), (3, 3, 6, -0.2)])
def test_hyp2f1_vs_mpmath(a, b, c, w):
    assert rel(specfun.hyp2f1(a, b, c, w), complex(mp.hyp2f1(a, b, c, w))) < 1e-11


def test_cauchy_coefficients_zeta_pole():
    co = specfun.cauchy_coefficients(specfun.zeta, 1.0, 0.1, 32)
    assert abs(co[-1] - 1) < 1e-12
    assert abs(co[0] - float(mp.euler)) < 1e-12


def test_named_constants_validate():
    k = specfun.named_constants()
    assert abs(k.zeta_prime_minus_one - float(mp.zeta(-1, derivative=1))) < 1e-15
    assert abs(k.gamma_third - float(mp.gamma(mp.mpf(1) / 3))) < 1e-15


def test_budget_env(monkeypatch):
    monkeypatch.setenv("EISENLAB_MAX_TERMS", "1234")
    assert specfun.PrecisionBudget.from_env().max_terms == 1234
