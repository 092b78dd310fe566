"""Laurent jets, Kronecker limit constants, residues and residue prefactors."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev
from scipy import integrate

from .autoseries import (
    SeriesEvaluation,
    _ball_for,
    _check_coincidence,
    _point,
    a0_coefficient,
    cosh_power_tail,
    eell,
    epar,
    h_factor as _h_factor,
    scattering_phi,
)
from .errors import ConsistencyError, DomainError, NonConvergenceError, PoleError
from .modforms import eval_delta_and_j
from .modgroup import EllipticAnchor, enumerate_ball
from .specfun import PrecisionBudget, gamma, named_constants, pochhammer, rgamma

__all__ = [
    "LaurentJet",
    "KlfConstants",
    "ResidueFit",
    "VOLUME",
    "laurent_jet",
    "c_par",
    "klf_parabolic",
    "h_factor",
    "subtracted_a0",
    "subtracted_a0_slope",
    "kronecker_constants",
    "b_general",
    "fit_residue",
    "residue_at_1",
    "g_kernel_series",
    "g_kernel_partial",
    "residue_formula_eval",
    "residue_reduction",
]

VOLUME = math.pi / 3.0


@dataclass(frozen=True)
class LaurentJet:
    c_minus1: complex
    c0: complex
    c1: complex
    residual: float


def laurent_jet(f, s0, radius: float = 0.02, nodes: int = 32, threshold: float | None = 1e-6) -> LaurentJet:
    """Coefficients of orders -1, 0, 1 of f at s0 by the trapezoid rule on a circle.

    f is sampled at 2N equispaced nodes; the N-node subset gives a second
    estimate and their largest disagreement is the residual.
    """
    if not 1e-3 <= radius <= 0.1:
        raise DomainError("radius must lie in [1e-3, 0.1]")
    s0 = complex(s0)
    theta = 2.0 * math.pi * np.arange(2 * nodes) / (2 * nodes)
    vals = np.array([complex(f(s0 + radius * cmath.exp(1j * t))) for t in theta])

    def coeffs(v, th):
        return [complex(np.mean(v * np.exp(-1j * k * th))) / radius**k for k in (-1, 0, 1)]

    fine = coeffs(vals, theta)
    coarse = coeffs(vals[::2], theta[::2])
    residual = max(abs(a - b) for a, b in zip(fine, coarse))
    jet = LaurentJet(fine[0], fine[1], fine[2], residual)
    if threshold is not None and residual > threshold * max(abs(fine[0]), abs(fine[1]), abs(fine[2]), 1.0):
        raise NonConvergenceError(f"Laurent jet residual {residual:.3g} exceeds threshold")
    return jet


# ---------------------------------------------------------------------------
# Classical and elliptic Kronecker limit constants
# ---------------------------------------------------------------------------


def c_par() -> float:
    """Constant term of E^par(z, s) at s = 1 after removing -(1/2pi) log(|Delta| y^6)."""
    zp = named_constants().zeta_prime_minus_one
    return (6.0 - 72.0 * zp - 6.0 * math.log(4.0 * math.pi)) / math.pi


def klf_parabolic(z, at: str = "s1", radius: float = 0.02, nodes: int = 32):
    """Jet of E^par(z, .) at s = 1 or s = 0 next to its closed form.

    at="s1": returns (c0, -(1/2pi) log(|Delta(z)| y^6) + C_par).
    at="s0": returns ((c0, c1), (1, log(|Delta(z)|^{1/6} y))).
    """
    zp = _point(z)
    delta, _ = eval_delta_and_j(zp)
    if at == "s1":
        jet = laurent_jet(lambda s: epar(zp, s, method="fourier").value, 1.0, radius, nodes)
        rhs = -math.log(abs(delta) * zp.y**6) / (2.0 * math.pi) + c_par()
        return jet.c0, rhs
    if at == "s0":
        jet = laurent_jet(lambda s: epar(zp, s, method="fourier").value, 0.0, radius, nodes)
        return (jet.c0, jet.c1), (1.0, math.log(abs(delta) ** (1.0 / 6.0) * zp.y))
    raise DomainError("at must be 's0' or 's1'")


def h_factor(anchor: EllipticAnchor, s) -> complex:
    """2^s sqrt(pi) Gamma(s - 1/2) / (n_e Gamma(s))."""
    s = complex(s)
    if (s - 0.5).real <= 0 and (s - 0.5).imag == 0 and (s - 0.5).real == math.floor((s - 0.5).real):
        raise PoleError("h has poles at s = 1/2 - k")
    return _h_factor(anchor.order, s)


def subtracted_a0(anchor: EllipticAnchor, y: float, s, K: int = 30) -> complex:
    """h(s) sum_{k=1}^K coef_k y^{1-s-2k} E^par(e, s+2k) - h(s) phi(1-s) y^s E^par(e, s)."""
    s = complex(s)
    e = anchor.location
    hs = h_factor(anchor, s)
    block = 0j
    for k in range(1, K + 1):
        ep = epar(e, s + 2 * k, method="fourier" if (s + 2 * k).real <= 4 else "direct").corrected
        block += a0_coefficient(s, k) * cmath.exp((1 - s - 2 * k) * math.log(y)) * ep
    lead = scattering_phi(1 - s) * cmath.exp(s * math.log(y)) * epar(e, s, method="fourier").value
    return hs * block - hs * lead


def subtracted_a0_slope(anchor: EllipticAnchor, y: float, radius: float = 0.02, nodes: int = 32):
    """Jet at s = 0 of the subtracted constant term, with the predicted c0 and c1."""
    if not y > 1:
        raise DomainError("y must exceed 1")
    jet = laurent_jet(lambda s: subtracted_a0(anchor, y, s), 0.0, radius, nodes)
    C = 2.0 * math.pi / (anchor.order * VOLUME)
    delta, _ = eval_delta_and_j(anchor.location)
    zp = named_constants().zeta_prime_minus_one
    rhs_c1 = -C * (
        24.0 * zp + math.log(8.0 * math.pi**2) + math.log(y)
        + math.log(abs(delta) ** (1.0 / 6.0) * anchor.location.y)
    )
    return jet, -C, rhs_c1


@dataclass(frozen=True)
class KlfConstants:
    C_par: float
    B_i: float
    B_rho: float
    C_i: float = 3.0
    C_rho: float = 2.0


def b_general(n: int, delta_abs: float, im_e: float) -> float:
    """B_e = -C_e (24 zeta'(-1) + log(8 pi^2) + log|Delta(e)|^{1/6}) - C_e log(Im e)."""
    C = 2.0 * math.pi / (n * VOLUME)
    zp = named_constants().zeta_prime_minus_one
    return -C * (24.0 * zp + math.log(8.0 * math.pi**2) + math.log(delta_abs) / 6.0) - C * math.log(im_e)


def kronecker_constants(tol: float = 1e-10) -> KlfConstants:
    """Explicit B_i, B_rho, cross-checked against the general formula."""
    k = named_constants()
    zp = k.zeta_prime_minus_one
    b_i = -72.0 * zp + 3.0 * math.log(2.0 * math.pi) - 12.0 * math.log(k.gamma_quarter)
    b_rho = -48.0 * zp + 4.0 * math.log(2.0 * math.pi / math.sqrt(3.0)) - 12.0 * math.log(k.gamma_third)
    # special values of |Delta|^{1/6} at i and rho in closed form
    d_i = (k.gamma_quarter**4 / (2.0 * (2.0 * math.pi) ** 3)) ** 6
    d_rho = (math.sqrt(3.0) * k.gamma_third**6 / (2.0 * math.pi) ** 4) ** 6
    g_i = b_general(2, d_i, 1.0)
    g_rho = b_general(3, d_rho, math.sqrt(3.0) / 2.0)
    if abs(g_i - b_i) > tol or abs(g_rho - b_rho) > tol:
        raise ConsistencyError(f"explicit vs general B: {b_i} vs {g_i}, {b_rho} vs {g_rho}")
    return KlfConstants(C_par=c_par(), B_i=b_i, B_rho=b_rho)


# ---------------------------------------------------------------------------
# Residue at s = 1 by polynomial extrapolation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResidueFit:
    value: float
    residual: float
    sigmas: tuple
    samples: tuple


def fit_residue(sigmas, values, degree: int = 4, at: float = 1.0) -> ResidueFit:
    """Least-squares Chebyshev fit of f(sigma), evaluated at ``at``."""
    sig = np.asarray(sigmas, dtype=float)
    val = np.asarray(values, dtype=float)
    fit = chebyshev.Chebyshev.fit(sig, val, deg=min(degree, sig.size - 1), domain=[at, sig.max()])
    resid = float(np.max(np.abs(fit(sig) - val))) if sig.size else 0.0
    value = float(fit(at))
    if abs(value) > 0 and resid > 0.1 * abs(value):
        raise NonConvergenceError("residue fit is ill-conditioned")
    return ResidueFit(value, resid, tuple(sig), tuple(val))


def _shell_integral(sigma: float, r0: float, R: float) -> float:
    # int_{r0}^{R} sinh(r)^{1 - sigma} dr
    val, _ = integrate.quad(lambda r: math.exp((1.0 - sigma) * math.log(math.sinh(r))), r0, R,
                            epsabs=0.0, epsrel=1e-12, limit=200)
    return val


def residue_at_1(anchor: EllipticAnchor, z, sigmas=None, degree: int = 4, radius: float = 13.0,
                 method: str = "shell_ratio", inner_radius: float = 4.0,
                 budget: PrecisionBudget | None = None) -> ResidueFit:
    """Residue of E^ell(z, s) at s = 1 by extrapolation from sigma in [1.4, 3.5].

    method="plain" fits (sigma - 1) E^ell(z, sigma), with the lattice-count
    main term of the omitted shells added, and evaluates the fit at 1.

    method="shell_ratio" (default) fits instead the ratio of the partial sum
    over inner_radius < d <= radius to int sinh(r)^{1 - sigma} dr over the
    same shells, divided by n.  The omitted inner terms are finitely many
    and entire in s, so they carry no residue; the ratio is the measured
    orbit density weighted by sinh^{-sigma}, nearly flat in sigma, and its
    value at sigma = 1 is the residue.  No counting constant is assumed.
    """
    if sigmas is None:
        sigmas = np.linspace(1.4, 3.5, 12)
    sig = np.asarray(sigmas, dtype=float)
    if sig.min() < 1.4 - 1e-12 or sig.max() > 3.5 + 1e-12:
        raise DomainError("sigma grid must lie in [1.4, 3.5]")
    budget = budget or PrecisionBudget()
    z = _point(z)
    ball = _ball_for(anchor, z, radius, budget)
    if method == "plain":
        vals = [(x - 1.0) * eell(anchor, z, x, ball=ball).corrected.real for x in sig]
        return fit_residue(sig, vals, degree)
    if method != "shell_ratio":
        raise DomainError(f"unknown method {method!r}")
    _check_coincidence(ball.u)
    d = 2.0 * np.arcsinh(np.sqrt(ball.u))
    far = d > inner_radius
    log_sinh = np.log(2.0 * np.sqrt(ball.u[far] * (1.0 + ball.u[far])))
    vals = [float(np.exp(-x * log_sinh).sum()) / _shell_integral(x, inner_radius, ball.radius) / anchor.order
            for x in sig]
    return fit_residue(sig, vals, degree)


# ---------------------------------------------------------------------------
# The kernel G_e(z) = sum_k P^ell(z, 2k) / (2k)
# ---------------------------------------------------------------------------


def _g_kernel_tail(R: float, kmax: int = 200) -> float:
    return sum(cosh_power_tail(2 * k, R).real / (2 * k) for k in range(1, kmax + 1))


def g_kernel_series(anchor: EllipticAnchor, z, budget: PrecisionBudget | None = None,
                    radius: float = 12.0) -> SeriesEvaluation:
    """(1/n) sum over gamma of -log tanh d(e, gamma z), the closed-form k-sum of P(2k)/(2k)."""
    budget = budget or PrecisionBudget()
    z = _point(z)
    ball = _ball_for(anchor, z, radius, budget)
    _check_coincidence(ball.u)
    # tanh(d) = sinh d / cosh d with sinh d = 2 sqrt(u(1+u)), cosh d = 1 + 2u
    vals = -(0.5 * np.log(4.0 * ball.u * (1.0 + ball.u)) - np.log1p(2.0 * ball.u))
    est = _g_kernel_tail(ball.radius)
    n = anchor.order
    return SeriesEvaluation(
        value=complex(vals.sum() / n), method="direct", truncation=ball.radius,
        tail_bound=2.0 * abs(est) / n, tail_kind="heuristic", terms_used=int(vals.size),
        tail_estimate=complex(est / n),
    )


def g_kernel_partial(anchor: EllipticAnchor, z, k_cutoff: int, radius: float = 12.0,
                     budget: PrecisionBudget | None = None) -> float:
    """sum_{k=1}^{k_cutoff} P^ell(z, 2k) / (2k) over the same ball."""
    budget = budget or PrecisionBudget()
    z = _point(z)
    ball = _ball_for(anchor, z, radius, budget)
    q = 1.0 / (1.0 + 2.0 * ball.u) ** 2
    acc = 0.0
    power = np.ones_like(q)
    for k in range(1, k_cutoff + 1):
        power = power * q
        acc += float(power.sum()) / (2 * k)
    return acc / anchor.order


# ---------------------------------------------------------------------------
# Residue prefactors at the spectral and Eisenstein poles
# ---------------------------------------------------------------------------


def _one_sign(case: str, n: int, n_e: int, it: complex, rho: complex | None) -> complex:
    sgn = (-1) ** n
    if case == "prop_a":
        return sgn * 2.0 ** (0.5 + it - 2 * n) * math.sqrt(math.pi) * gamma(it - n) * rgamma(it - 2 * n) / (
            math.factorial(n) * n_e)
    if case == "thm_a":
        num = sgn * 2.0 ** (0.5 + it) * math.sqrt(math.pi) * gamma(it) * pochhammer(0.75 - it / 2, n) ** 2
        return num * rgamma(0.5 + it) * rgamma(it - 2 * n) / (math.factorial(n) * n_e * pochhammer(1 - it, n))
    if case == "prop_b":
        return sgn * 2.0 ** (1 - rho - 2 * n) * math.sqrt(math.pi) * gamma(0.5 - rho - n) * rgamma(0.5 - rho - 2 * n) / (
            math.factorial(n) * n_e)
    if case == "thm_b":
        num = sgn * 2.0 ** (1 - rho) * math.sqrt(math.pi) * gamma(0.5 - rho) * pochhammer(0.5 + rho / 2, n) ** 2
        return num * rgamma(1 - rho) * rgamma(0.5 - rho - 2 * n) / (
            math.factorial(n) * n_e * pochhammer(0.5 + rho, n))
    raise DomainError(f"unknown case {case!r}")


def residue_formula_eval(case: str, n: int, t_r=None, rho=None, n_e: int = 1, sign: int = 1) -> complex:
    """Prefactor multiplying the eigenfunction (or Eisenstein) data in a residue.

    ``case`` is one of prop_a, thm_a (spectral poles 1/2 +- i t_r - 2n) or
    prop_b, thm_b (poles 1 - rho - 2n).  For the spectral cases ``sign``
    picks the + or - pole; ``sign=0`` adds both, which is the quantity with
    a finite limit as t_r -> 0.
    """
    if n < 0:
        raise DomainError("n must be a non-negative integer")
    if case in ("prop_a", "thm_a"):
        if t_r is None:
            raise DomainError("spectral cases need t_r")
        t = complex(t_r)
        if sign == 0:
            return _one_sign(case, n, n_e, 1j * t, None) + _one_sign(case, n, n_e, -1j * t, None)
        if sign not in (1, -1):
            raise DomainError("sign must be +1, -1 or 0")
        if t == 0:
            raise PoleError("the single-sign prefactor has a pole at t_r = 0")
        return _one_sign(case, n, n_e, sign * 1j * t, None)
    if case in ("prop_b", "thm_b"):
        if rho is None:
            raise DomainError("Eisenstein cases need rho")
        return _one_sign(case, n, n_e, 0j, complex(rho))
    raise DomainError(f"unknown case {case!r}")


def residue_reduction(case: str, n: int, n_e: int = 1) -> float:
    """Closed-form t_r = 0 value of the combined prefactor."""
    if case == "prop_a":
        return 2.0 ** (1.5 - 2 * n) * math.sqrt(math.pi) * math.factorial(2 * n) / (math.factorial(n) ** 2 * n_e)
    if case == "thm_a":
        return ((-1) ** n * 2.0**1.5 * math.factorial(2 * n) * pochhammer(0.75, n).real ** 2
                / (math.factorial(n) ** 2 * n_e))
    raise DomainError("reductions exist for prop_a and thm_a only")
