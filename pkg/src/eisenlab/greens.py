"""Free-space and automorphic Green's functions and their link to E^ell.

Normalization: g_s(z, w) = (1/4pi) Gamma(s)^2/Gamma(2s) u^{-s} F(s, s; 2s; -1/u)
with u the point-pair invariant.
"""

from __future__ import annotations

import cmath
import math
import numpy as np

from .autoseries import (
    GapReport,
    SeriesEvaluation,
    _ball_for,
    _check_coincidence,
    _point,
    choose_radius,
    cosh_power_tail,
    eell,
    k_remainder_bound,
    pell,
)
from .errors import CoincidenceError, DomainError
from .hypgeo import point_pair_u
from .modgroup import EllipticAnchor, enumerate_ball
from .specfun import PrecisionBudget, gamma, hyp2f1, rgamma

__all__ = [
    "GreenEvaluation",
    "g_prefactor",
    "g_free",
    "g_free_cosh_series",
    "green_automorphic",
    "gell",
    "c_factor",
    "a_k",
    "green_relation_gap",
]

GreenEvaluation = SeriesEvaluation


def g_prefactor(s) -> complex:
    """(1/4pi) Gamma(s)^2 / Gamma(2s)."""
    s = complex(s)
    return gamma(s) ** 2 * rgamma(2 * s) / (4.0 * math.pi)


def _cosh_coefficients(s: complex, kmax: int) -> np.ndarray:
    """(s/2)_k (s/2 + 1/2)_k / (k! (s + 1/2)_k) for k = 0..kmax."""
    out = np.empty(kmax + 1, dtype=complex)
    c = 1.0 + 0j
    for k in range(kmax + 1):
        out[k] = c
        c *= (s / 2 + k) * (s / 2 + 0.5 + k) / ((k + 1) * (s + 0.5 + k))
    return out


def _cosh_series(s: complex, C: np.ndarray, tol: float = 1e-17) -> np.ndarray:
    """sum_k coef_k C^{-s-2k}, each entry truncated once its own terms are negligible."""
    C = np.asarray(C, dtype=float)
    q = C ** (-2.0)
    base = np.exp(-s * np.log(C))
    acc = np.array(base, dtype=complex)
    term = np.array(base, dtype=complex)
    active = np.arange(C.size)
    k = 0
    while active.size:
        k += 1
        ratio = (s / 2 + k - 1) * (s / 2 + 0.5 + k - 1) / (k * (s + 0.5 + k - 1))
        term[active] = term[active] * ratio * q[active]
        acc[active] += term[active]
        keep = np.abs(term[active]) > tol * np.abs(acc[active])
        active = active[keep]
        if k > 200_000:
            break
    return acc


def g_free_cosh_series(z, w, s) -> complex:
    """2^s (1/4pi) Gamma(s)^2/Gamma(2s) sum_k coef_k cosh(d)^{-s-2k}."""
    s = complex(s)
    u = point_pair_u(z, w)
    if u == 0:
        raise CoincidenceError("g_s is singular at z = w")
    C = np.array([1.0 + 2.0 * u])
    return complex(2.0**s * g_prefactor(s) * _cosh_series(s, C)[0])


def g_free(z, w, s, form: str = "hypergeometric") -> complex:
    """Free-space resolvent kernel g_s(z, w)."""
    s = complex(s)
    if form == "cosh":
        return g_free_cosh_series(z, w, s)
    if form != "hypergeometric":
        raise DomainError(f"unknown form {form!r}")
    if not s.real > 0.5:
        raise DomainError("the hypergeometric form is used for Re(s) > 1/2")
    u = point_pair_u(z, w)
    if u == 0:
        raise CoincidenceError("g_s is singular at z = w")
    return g_prefactor(s) * cmath.exp(-s * math.log(u)) * hyp2f1(s, s, 2 * s, -1.0 / u)


def _green_tail(s: complex, R: float) -> complex:
    coef = _cosh_coefficients(s, 60)
    return 2.0**s * g_prefactor(s) * sum(coef[k] * cosh_power_tail(s + 2 * k, R) for k in range(coef.size))


def _green_ball_sum(s, ball, n, u=None) -> SeriesEvaluation:
    u = ball.u if u is None else u
    _check_coincidence(u)
    vals = 2.0**s * g_prefactor(s) * _cosh_series(s, 1.0 + 2.0 * u)
    est = _green_tail(s, ball.radius)
    return SeriesEvaluation(
        value=complex(vals.sum() / n),
        method="direct",
        truncation=ball.radius,
        tail_bound=2.0 * abs(est) / n,
        tail_kind="heuristic",
        terms_used=int(vals.size),
        tail_estimate=complex(est / n),
    )


def green_automorphic(z, w, s, budget: PrecisionBudget | None = None, radius: float | None = None) -> SeriesEvaluation:
    """G_s(z, w) = sum over gamma of g_s(z, gamma w), truncated to d(z, gamma w) <= radius."""
    s = complex(s)
    if s.real <= 1:
        raise DomainError("G_s needs Re(s) > 1")
    budget = budget or PrecisionBudget()
    zp, wp = _point(z), _point(w)
    if radius is None:
        radius = choose_radius(lambda R: _green_tail(s, R), budget.target_abs_err)
    ball = enumerate_ball(wp, radius, center=zp, budget=budget)
    return _green_ball_sum(s, ball, 1)


def gell(anchor: EllipticAnchor, z, s, budget: PrecisionBudget | None = None, radius: float | None = None,
         ball=None, at=None) -> SeriesEvaluation:
    """G^ell(z, s) = G_s(e, z) / n_e."""
    s = complex(s)
    if s.real <= 1:
        raise DomainError("G^ell needs Re(s) > 1")
    budget = budget or PrecisionBudget()
    z = _point(z)
    if ball is None:
        if radius is None:
            radius = choose_radius(lambda R: _green_tail(s, R) / anchor.order, budget.target_abs_err)
        ball = _ball_for(anchor, z, radius, budget)
    u = None
    if at is not None:
        img = ball.act(_point(at))
        w = anchor.location.z
        u = np.abs(img - w) ** 2 / (4.0 * img.imag * w.imag)
    return _green_ball_sum(s, ball, anchor.order, u)


def c_factor(s) -> complex:
    """c(s) = 2^{s+1} sqrt(pi) Gamma(s + 1/2) / Gamma(s); entire near s = 0 with c(0) = 0."""
    s = complex(s)
    return 2.0 ** (s + 1) * math.sqrt(math.pi) * gamma(s + 0.5) * rgamma(s)


def a_k(s, k: int) -> complex:
    """1 - (s/2 + 1/2)_k / (s + 1/2)_k."""
    s = complex(s)
    ratio = 1.0 + 0j
    for j in range(k):
        ratio *= (s / 2 + 0.5 + j) / (s + 0.5 + j)
    return 1.0 - ratio


def green_relation_gap(anchor: EllipticAnchor, z, s, K: int | None = None, budget: PrecisionBudget | None = None,
                       radius: float = 12.0, k_max: int = 2000) -> GapReport:
    """|E^ell - c(s) G^ell - sum_{k=1}^K (s/2)_k a_k(s)/k! P^ell(s + 2k)| on one ball.

    All three series share the element set, so the ball truncation cancels
    term by term.  The omitted k > K terms are bounded rigorously (for real
    s > 0, 0 <= a_k < 1); with ``K=None`` the cutoff grows until that bound
    drops below the ball tails.  ``allowed`` is twice the sum of the tail
    bounds and the k-remainder bound, plus a roundoff allowance.
    """
    s = complex(s)
    budget = budget or PrecisionBudget()
    z = _point(z)
    ball = _ball_for(anchor, z, radius, budget)
    e_val = eell(anchor, z, s, ball=ball, budget=budget)
    g_val = gell(anchor, z, s, ball=ball, budget=budget)
    tails = e_val.tail_bound + abs(c_factor(s)) * g_val.tail_bound
    cmin = 1.0 + 2.0 * float(ball.u.min())
    p0 = pell(anchor, z, s.real, ball=ball).value.real
    acc = 0j
    k = 0
    coef = 1.0 + 0j
    while True:
        if K is not None and k >= K:
            break
        kb = k_remainder_bound(s, k, cmin, p0)
        if K is None and (kb <= tails or k >= k_max):
            break
        coef *= (s / 2 + k) / (k + 1)
        k += 1
        acc += coef * a_k(s, k) * pell(anchor, z, s + 2 * k, ball=ball).value
    kb = k_remainder_bound(s, k, cmin, p0)
    gap = abs(e_val.value - c_factor(s) * g_val.value - acc)
    roundoff = 1e-13 * (abs(e_val.value) + abs(c_factor(s) * g_val.value))
    return GapReport(gap=gap, allowed=2.0 * (tails + kb) + roundoff, components={
        "eell": e_val.value, "c_gell": c_factor(s) * g_val.value, "pell_sum": acc, "K": k,
        "k_remainder_bound": kb, "ball_tails": float(tails), "radius": ball.radius,
    })
