"""Automorphic series on PSL(2, Z).

Parabolic Eisenstein series (coprime-pair sum and Fourier expansion),
the twisted sums V_m, elliptic Poincare and elliptic Eisenstein series as
sums over hyperbolic balls, and the Fourier constant term of the elliptic
Eisenstein series.

Every evaluator returns a :class:`SeriesEvaluation`.  ``value`` is the
truncated sum itself; ``tail_estimate`` is the leading-order contribution
of the omitted terms (so ``corrected`` is the best available estimate of
the full series) and ``tail_bound`` bounds what was left out.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .errors import CoincidenceError, DomainError, NonConvergenceError, PoleError
from .hypgeo import UhpPoint
from .modgroup import BallEnumeration, EllipticAnchor, enumerate_ball, reduce_to_fundamental
from .specfun import PrecisionBudget, bessel_k, gamma, lambda_completed, pochhammer, rgamma

__all__ = [
    "SeriesEvaluation",
    "SpectralPoint",
    "GapReport",
    "scattering_phi",
    "phi_m",
    "epar",
    "vpar_m",
    "pell",
    "eell",
    "choose_radius",
    "cosh_power_tail",
    "sinh_power_tail",
    "k_remainder_bound",
    "pochhammer_link_gap",
    "laplacian_fd",
    "im_integral",
    "h_factor",
    "eell_fourier_a0",
    "DEFAULT_MAX_RADIUS",
    "MIN_ANCHOR_DISTANCE",
]

DEFAULT_MAX_RADIUS = 13.0
MIN_ANCHOR_DISTANCE = 1e-6
# Fourier terms cancel catastrophically once y^s dwarfs the answer
FOURIER_MAX_RE_S = 4.0


@dataclass(frozen=True)
class SeriesEvaluation:
    value: complex
    method: str
    truncation: float
    tail_bound: float
    tail_kind: str
    terms_used: int
    tail_estimate: complex = 0j

    @property
    def corrected(self) -> complex:
        return self.value + self.tail_estimate

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "corrected": self.corrected,
            "method": self.method,
            "truncation": self.truncation,
            "tail_bound": self.tail_bound,
            "tail_kind": self.tail_kind,
            "terms_used": self.terms_used,
        }


@dataclass(frozen=True)
class SpectralPoint:
    """s_r = 1/2 + i t_r with eigenvalue lambda = Re(s_r (1 - s_r))."""

    t_r: complex

    @property
    def s_r(self) -> complex:
        return 0.5 + 1j * complex(self.t_r)

    @property
    def lam(self) -> float:
        s = self.s_r
        return (s * (1 - s)).real


@dataclass(frozen=True)
class GapReport:
    """A measured identity gap together with the gap the truncations allow."""

    gap: float
    allowed: float
    components: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.gap <= self.allowed


def _point(z) -> UhpPoint:
    return z if isinstance(z, UhpPoint) else UhpPoint.from_complex(z)


# ---------------------------------------------------------------------------
# Parabolic Eisenstein series
# ---------------------------------------------------------------------------


def _inv_lambda(w: complex) -> complex:
    # 1/Lambda is entire; it vanishes at the poles 0 and 1
    if w == 0 or w == 1:
        return 0j
    return 1.0 / lambda_completed(w)


def scattering_phi(s) -> complex:
    """phi(s) = Lambda(2s - 1)/Lambda(2s)."""
    s = complex(s)
    if s == 1:
        raise PoleError("phi has a pole at s=1")
    if s == 0.5:
        return -1.0 + 0j
    if s == 0:
        return 0j
    return lambda_completed(2 * s - 1) * _inv_lambda(2 * s)


def phi_m(s, m: int) -> complex:
    """Fourier coefficient (2/Lambda(2s)) sum_{ab=m} (a/b)^{s-1/2}."""
    s = complex(s)
    acc = 0j
    r = 1
    while r * r <= m:
        if m % r == 0:
            acc += cmath.exp((s - 0.5) * math.log(r / (m // r)))
            if r * r != m:
                acc += cmath.exp((s - 0.5) * math.log((m // r) / r))
        r += 1
    return 2.0 * _inv_lambda(2 * s) * acc


def _epar_fourier(z: UhpPoint, s: complex, budget: PrecisionBudget, modes: int | None) -> SeriesEvaluation:
    if s == 1:
        raise PoleError("E^par has a pole at s=1")
    zr, _ = reduce_to_fundamental(z)
    x, y = zr.x, zr.y
    nu = s - 0.5
    head = cmath.exp(s * math.log(y)) + scattering_phi(s) * cmath.exp((1 - s) * math.log(y))
    if modes is None:
        modes = max(4, int(math.ceil((1.5 * abs(nu) + 45.0) / (2 * math.pi * y))))
    m = np.arange(1, modes + 1)
    kvals = bessel_k(nu, 2 * math.pi * m * y)
    coeffs = np.array([phi_m(s, int(k)) for k in m])
    terms = 2.0 * math.sqrt(y) * coeffs * kvals * np.cos(2 * math.pi * m * x)
    env = np.abs(2.0 * math.sqrt(y) * coeffs * kvals)
    r = math.exp(-2 * math.pi * y) * 2.0
    tail = float(env[-1]) * r / (1 - r)
    return SeriesEvaluation(
        value=complex(head + terms.sum()),
        method="fourier",
        truncation=float(modes),
        tail_bound=tail + 1e-15 * float(abs(head) + env.sum()),
        tail_kind="rigorous",
        terms_used=int(modes) + 2,
    )


def _coprime_rows(z: complex, X: float):
    """Bottom rows (c, d) with c > 0 coprime and |cz + d|^2 <= X, per c."""
    x, y = z.real, z.imag
    cmax = int(math.sqrt(X) / y)
    for c in range(1, cmax + 1):
        span = math.sqrt(max(X - (c * y) ** 2, 0.0))
        d = np.arange(math.ceil(-c * x - span), math.floor(-c * x + span) + 1, dtype=np.int64)
        d = d[np.gcd(d, c) == 1]
        n2 = (c * x + d) ** 2 + (c * y) ** 2
        keep = n2 <= X
        yield c, d[keep], n2[keep]


def _lattice_tail_bound(z: complex, X: float, sigma: float) -> float:
    # each lattice point owns the cell w + [0,1)z + [0,1), of area y and
    # diameter at most delta; comparing with the integral of (|xi| - delta)^{-2 sigma}
    # over |xi| >= sqrt(X) - delta bounds the sum over all lattice points
    # outside the disc, and the canonical coprime rows are at most half of it
    y = z.imag
    delta = abs(z) + 1.0
    r0 = math.sqrt(X) - 2 * delta
    if r0 <= 0 or sigma <= 1:
        return math.inf
    integral = r0 ** (2 - 2 * sigma) / (2 * sigma - 2) + delta * r0 ** (1 - 2 * sigma) / (2 * sigma - 1)
    return 0.5 * (2 * math.pi / y) * integral * y**sigma


def _epar_direct(z: UhpPoint, s: complex, budget: PrecisionBudget, X: float | None) -> SeriesEvaluation:
    if s.real <= 1:
        raise DomainError("direct parabolic sum needs Re(s) > 1")
    zr, _ = reduce_to_fundamental(z)
    zc = zr.z
    y = zc.imag
    sigma = s.real
    if X is None:
        # leading tail 3 y^{s-1} X^{1-s}/(pi (s-1)) pushed below the target,
        # within the term budget 3X/(pi y)
        X = (3 * y ** (sigma - 1) / (math.pi * (sigma - 1) * budget.target_abs_err * 1e-3)) ** (1 / (sigma - 1))
        X = min(max(X, 100.0), budget.max_terms * math.pi * y / 3.0, 1e6)
    total = cmath.exp(s * math.log(y))
    count = 1
    for _, _, n2 in _coprime_rows(zc, X):
        total += np.sum(np.exp(-s * np.log(n2))) * cmath.exp(s * math.log(y))
        count += n2.size
    est = 3 * cmath.exp((s - 1) * math.log(y)) * cmath.exp((1 - s) * math.log(X)) / (math.pi * (s - 1))
    bound = _lattice_tail_bound(zc, X, sigma) + abs(est)
    return SeriesEvaluation(
        value=complex(total),
        method="direct",
        truncation=math.sqrt(X),
        tail_bound=bound,
        tail_kind="rigorous",
        terms_used=count,
        tail_estimate=complex(est),
    )


def epar(z, s, method: str = "auto", budget: PrecisionBudget | None = None, modes: int | None = None,
         norm_bound: float | None = None) -> SeriesEvaluation:
    """Parabolic Eisenstein series E(z, s) for PSL(2, Z).

    ``method="direct"`` sums y^s / |cz + d|^{2s} over coprime rows with
    |cz + d| <= norm_bound; ``"fourier"`` uses the Fourier expansion and is
    the meromorphic continuation; ``"auto"`` picks Fourier for
    Re(s) <= 4 and the direct sum beyond.
    """
    s = complex(s)
    budget = budget or PrecisionBudget()
    z = _point(z)
    if method == "auto":
        method = "fourier" if s.real <= FOURIER_MAX_RE_S else "direct"
    if method == "fourier":
        return _epar_fourier(z, s, budget, modes)
    if method == "direct":
        X = None if norm_bound is None else norm_bound**2
        return _epar_direct(z, s, budget, X)
    raise DomainError(f"unknown method {method!r}")


def vpar_m(z, s, m: int, budget: PrecisionBudget | None = None, norm_bound: float = 300.0) -> SeriesEvaluation:
    """sum over Gamma_inf \\ Gamma of Im(gamma z)^s e(-m Re(gamma z)).

    The point is not reduced: the summand is invariant under z -> z + 1 but
    the enumeration works for any z.
    """
    s = complex(s)
    if s.real <= 1:
        raise DomainError("V_m needs Re(s) > 1")
    zc = _point(z).z
    X = norm_bound**2
    total = cmath.exp(s * math.log(zc.imag)) * cmath.exp(-2j * math.pi * m * zc.real)
    count = 1
    for c, d, n2 in _coprime_rows(zc, X):
        if d.size == 0:
            continue
        a = np.array([pow(int(v), -1, c) if c > 1 else 0 for v in d], dtype=np.int64)
        im = zc.imag / n2
        re = a / c - (1.0 / (c * (c * zc + d))).real
        total += np.sum(np.exp(s * np.log(im) - 2j * math.pi * m * re))
        count += d.size
    est = 0j
    if m == 0:
        y = zc.imag
        est = 3 * cmath.exp((s - 1) * math.log(y)) * cmath.exp((1 - s) * math.log(X)) / (math.pi * (s - 1))
    return SeriesEvaluation(
        value=complex(total),
        method="direct",
        truncation=norm_bound,
        tail_bound=_lattice_tail_bound(zc, X, s.real) + abs(est),
        tail_kind="rigorous",
        terms_used=count,
        tail_estimate=complex(est),
    )


# ---------------------------------------------------------------------------
# Ball sums: elliptic Poincare and elliptic Eisenstein series
# ---------------------------------------------------------------------------


def cosh_power_tail(a, R: float) -> complex:
    """int_R^inf 6 sinh(r) cosh(r)^{-a} dr: the lattice-count main term of the omitted shells."""
    a = complex(a)
    C = math.cosh(R)
    return 6.0 * cmath.exp((1 - a) * math.log(C)) / (a - 1)


def sinh_power_tail(s, R: float, tol: float = 1e-18) -> complex:
    """int_R^inf 6 sinh(r) sinh(r)^{-s} dr via the binomial series in cosh(r)^{-2}."""
    s = complex(s)
    acc = 0j
    k = 0
    coef = 1.0 + 0j
    while True:
        term = coef * cosh_power_tail(s + 2 * k, R)
        acc += term
        if abs(term) < tol * max(abs(acc), 1e-300) or k > 500:
            return acc
        coef *= (s / 2 + k) / (k + 1)
        k += 1


def choose_radius(tail_fn, target: float, r_max: float = DEFAULT_MAX_RADIUS, r_min: float = 4.0) -> float:
    """Smallest radius on a 0.5 grid whose heuristic tail 2|tail_fn(R)| meets ``target``."""
    R = r_min
    while R < r_max and 2.0 * abs(tail_fn(R)) > target:
        R += 0.5
    return min(R, r_max)


def _ball_for(anchor: EllipticAnchor, z: UhpPoint, R: float, budget: PrecisionBudget) -> BallEnumeration:
    return enumerate_ball(z, R, center=anchor.location, budget=budget)


def _u_on_ball(anchor: EllipticAnchor, ball: BallEnumeration, z: UhpPoint | None):
    if z is None or (z.x == ball.point.x and z.y == ball.point.y):
        return ball.u
    img = ball.act(z)
    w = anchor.location.z
    return np.abs(img - w) ** 2 / (4.0 * img.imag * w.imag)


def _check_coincidence(u: np.ndarray) -> None:
    if u.size and float(u.min()) < math.sinh(MIN_ANCHOR_DISTANCE / 2.0) ** 2:
        raise CoincidenceError("z is Gamma-equivalent to the anchor (distance < 1e-6)")


def _finish_ball(values: np.ndarray, anchor, ball, est: complex, method: str) -> SeriesEvaluation:
    n = anchor.order
    return SeriesEvaluation(
        value=complex(values.sum() / n),
        method=method,
        truncation=ball.radius,
        tail_bound=2.0 * abs(est) / n,
        tail_kind="heuristic",
        terms_used=int(values.size),
        tail_estimate=complex(est / n),
    )


def _resolve_ball(anchor, z, s, kernel_tail, budget, radius, ball):
    if ball is not None:
        return ball
    if radius is None:
        radius = choose_radius(lambda R: kernel_tail(s, R) / anchor.order, budget.target_abs_err)
    return _ball_for(anchor, z, radius, budget)


def pell(anchor: EllipticAnchor, z, s, budget: PrecisionBudget | None = None, radius: float | None = None,
         ball: BallEnumeration | None = None, at=None) -> SeriesEvaluation:
    """Elliptic Poincare series (1/n) sum cosh(d(e, gamma z))^{-s} over a hyperbolic ball.

    A precomputed ``ball`` may be passed; ``at`` then evaluates the same
    element set at a nearby point (used by finite differences).
    """
    s = complex(s)
    if s.real <= 1:
        raise DomainError("P^ell needs Re(s) > 1")
    budget = budget or PrecisionBudget()
    z = _point(z)
    ball = _resolve_ball(anchor, z, s, cosh_power_tail, budget, radius, ball)
    u = _u_on_ball(anchor, ball, None if at is None else _point(at))
    vals = np.exp(-s * np.log1p(2.0 * u))
    return _finish_ball(vals, anchor, ball, cosh_power_tail(s, ball.radius), "direct")


def eell(anchor: EllipticAnchor, z, s, method: str = "direct", budget: PrecisionBudget | None = None,
         radius: float | None = None, ball: BallEnumeration | None = None, at=None) -> SeriesEvaluation:
    """Elliptic Eisenstein series (1/n) sum sinh(d(e, gamma z))^{-s}.

    ``method="conjugacy"`` evaluates each term instead as
    sin(pi/n)^s u(z, g' z)^{-s/2} with the integer matrix
    g' = gamma^{-1} gamma_e gamma, over the same enumerated elements.
    """
    s = complex(s)
    if s.real <= 1:
        raise DomainError("E^ell needs Re(s) > 1")
    budget = budget or PrecisionBudget()
    z = _point(z)
    ball = _resolve_ball(anchor, z, s, sinh_power_tail, budget, radius, ball)
    zeval = z if at is None else _point(at)
    u = _u_on_ball(anchor, ball, None if at is None else zeval)
    _check_coincidence(u)
    if method == "direct":
        sinh_d = 2.0 * np.sqrt(u * (1.0 + u))
        vals = np.exp(-s * np.log(sinh_d))
    elif method == "conjugacy":
        vals = _conjugacy_terms(anchor, ball, zeval, s)
    else:
        raise DomainError(f"unknown method {method!r}")
    return _finish_ball(vals, anchor, ball, sinh_power_tail(s, ball.radius), method)


def _conjugacy_terms(anchor: EllipticAnchor, ball: BallEnumeration, z: UhpPoint, s: complex) -> np.ndarray:
    g = anchor.stab_generator
    if g is None:
        raise DomainError("the conjugacy form needs an elliptic anchor")
    a, b, c, d = ball.a, ball.b, ball.c, ball.d
    # gamma^{-1} = (d, -b; -c, a); form gamma^{-1} g gamma in exact integers
    ga, gb, gc, gd = g.a * a + g.b * c, g.a * b + g.b * d, g.c * a + g.d * c, g.c * b + g.d * d
    pa = d * ga - b * gc
    pb = d * gb - b * gd
    pc = -c * ga + a * gc
    pd = -c * gb + a * gd
    zc = z.z
    den = pc * zc + pd
    im = zc.imag / np.abs(den) ** 2
    re = (pa * zc + pb) / den
    img = re.real + 1j * im
    u = np.abs(img - zc) ** 2 / (4.0 * im * zc.imag)
    return math.sin(math.pi / anchor.order) ** s * np.exp(-(s / 2.0) * np.log(u))


def k_remainder_bound(s, K: int, cmin: float, pmax: float) -> float:
    """Bound for sum_{k>K} |(s/2)_k/k!| P(sigma + 2k) given P(sigma + 2k) <= pmax cmin^{-2k}."""
    s = complex(s)
    q = cmin ** (-2.0)
    if q >= 1:
        return math.inf
    coef = 1.0
    for k in range(K + 1):
        coef *= abs(s / 2 + k) / (k + 1)
    # coef = |(s/2)_{K+1}| / (K+1)!
    acc = 0.0
    k = K + 1
    term = coef * q**k
    while True:
        acc += term
        nxt = term * abs(s / 2 + k) / (k + 1) * q
        k += 1
        if nxt < 1e-18 * acc or k > K + 10_000:
            break
        term = nxt
    return acc * pmax


def pochhammer_link_gap(anchor: EllipticAnchor, z, s, K: int, budget: PrecisionBudget | None = None,
                        radius: float = 12.0) -> GapReport:
    """|E^ell(s) - sum_{k<=K} (s/2)_k/k! P^ell(s + 2k)| on one shared ball.

    Because both sides are summed over the same elements, ball truncation
    cancels term by term and ``allowed`` is the rigorous bound on the
    omitted k > K terms.
    """
    s = complex(s)
    budget = budget or PrecisionBudget()
    z = _point(z)
    ball = _ball_for(anchor, z, radius, budget)
    e_val = eell(anchor, z, s, ball=ball, budget=budget)
    acc = 0j
    coef = 1.0 + 0j
    for k in range(K + 1):
        acc += coef * pell(anchor, z, s + 2 * k, ball=ball, budget=budget).value
        coef *= (s / 2 + k) / (k + 1)
    gap = abs(e_val.value - acc)
    cmin = 1.0 + 2.0 * float(ball.u.min())
    p0 = pell(anchor, z, s.real, ball=ball, budget=budget).value.real
    kb = k_remainder_bound(s, K, cmin, p0)
    roundoff = 1e-13 * abs(e_val.value)
    return GapReport(gap=gap, allowed=kb + roundoff, components={
        "eell": e_val.value, "pell_sum": acc, "k_remainder_bound": kb, "radius": ball.radius,
        "ball_tail": e_val.tail_bound,
    })


# ---------------------------------------------------------------------------
# Finite-difference Laplacian
# ---------------------------------------------------------------------------


def laplacian_fd(f, z, h: float | None = None, order: int = 2):
    """Hyperbolic Laplacian -y^2 (f_xx + f_yy) by central differences.

    ``f`` takes a complex point.  ``h`` defaults to 1e-3 y.  ``order=4``
    switches to the five-point-per-axis stencil with O(h^4) error.
    """
    zc = _point(z).z
    y = zc.imag
    if h is None:
        h = 1e-3 * y
    if not 1e-4 * y * (1 - 1e-12) <= h <= 1e-2 * y * (1 + 1e-12):
        raise DomainError("step must lie in [1e-4, 1e-2] * y")
    f0 = f(zc)
    if order == 2:
        lap = f(zc + h) + f(zc - h) + f(zc + 1j * h) + f(zc - 1j * h) - 4.0 * f0
    elif order == 4:
        near = f(zc + h) + f(zc - h) + f(zc + 1j * h) + f(zc - 1j * h)
        far = f(zc + 2 * h) + f(zc - 2 * h) + f(zc + 2j * h) + f(zc - 2j * h)
        lap = (16.0 * near - far - 60.0 * f0) / 12.0
    else:
        raise DomainError("order must be 2 or 4")
    return -(y**2) * lap / h**2


# ---------------------------------------------------------------------------
# I_m integrals and the constant term of E^ell
# ---------------------------------------------------------------------------


def im_integral(y: float, s, k1: int, k2: int, m: int) -> complex:
    """int_R (y + it)^{-s-2k1} (y - it)^{-s-2k2} e(-m t) dt (principal branches)."""
    s = complex(s)
    a = s + 2 * k1
    b = s + 2 * k2
    if not (a + b).real > 1:
        raise NonConvergenceError("I_m diverges unless 2 Re(s) + 2k1 + 2k2 > 1")
    if m == 0:
        # t = y tan(theta): integrand y^{1-a-b} cos^{a+b-2} e^{-i theta (a-b)}
        p = a + b - 2

        def g(th):
            return cmath.exp(p * math.log(math.cos(th)) - 1j * th * (a - b)) if math.cos(th) > 0 else 0j

        re, _ = integrate.quad(lambda th: g(th).real, -math.pi / 2, math.pi / 2, limit=400, epsabs=1e-14, epsrel=1e-13)
        im, _ = integrate.quad(lambda th: g(th).imag, -math.pi / 2, math.pi / 2, limit=400, epsabs=1e-14, epsrel=1e-13)
        return cmath.exp((1 - a - b) * math.log(y)) * complex(re, im)
    omega = 2 * math.pi * m

    def g(t):
        return cmath.exp(-a * cmath.log(y + 1j * t) - b * cmath.log(y - 1j * t))

    # e(-mt) = cos(wt) - i sin(wt); fold t -> -t onto [0, inf)
    def even(t):
        return g(t) + g(-t)

    def odd(t):
        return g(t) - g(-t)

    opts = dict(weight="cos", wvar=omega, limlst=200)
    c_re, _ = integrate.quad(lambda t: even(t).real, 0, np.inf, **opts)
    c_im, _ = integrate.quad(lambda t: even(t).imag, 0, np.inf, **opts)
    opts["weight"] = "sin"
    s_re, _ = integrate.quad(lambda t: odd(t).real, 0, np.inf, **opts)
    s_im, _ = integrate.quad(lambda t: odd(t).imag, 0, np.inf, **opts)
    return complex(c_re, c_im) - 1j * complex(s_re, s_im)


def h_factor(n: int, s) -> complex:
    """2^s sqrt(pi) Gamma(s - 1/2) / (n Gamma(s)); entire except at s = 1/2 - k."""
    s = complex(s)
    return 2.0**s * math.sqrt(math.pi) * gamma(s - 0.5) * rgamma(s) / n


def a0_coefficient(s, k: int) -> complex:
    """(s - 1/2)_k (s/2)_k / (k! (s/2 + 1/2)_k)."""
    s = complex(s)
    return pochhammer(s - 0.5, k) * pochhammer(s / 2, k) / (math.factorial(k) * pochhammer(s / 2 + 0.5, k))


def eell_fourier_a0(anchor: EllipticAnchor, y: float, s, K: int = 30, budget: PrecisionBudget | None = None,
                    skip_leading: bool = False) -> SeriesEvaluation:
    """Constant Fourier coefficient of E^ell(anchor, x + iy, s) in x, for y > 1.

    h(s) sum_{k<=K} a0_coefficient(s, k) y^{1-s-2k} E^par(e, s + 2k).  The
    k = 0 term uses the Fourier (continued) E^par.  ``skip_leading`` drops it.
    """
    s = complex(s)
    if not y > 1:
        raise DomainError("the constant-term formula needs y > 1")
    budget = budget or PrecisionBudget()
    e = anchor.location
    hs = h_factor(anchor.order, s)
    terms = []
    for k in range(0 if not skip_leading else 1, K + 1):
        ep = epar(e, s + 2 * k, method="fourier" if k == 0 else "auto", budget=budget).corrected
        terms.append(a0_coefficient(s, k) * cmath.exp((1 - s - 2 * k) * math.log(y)) * ep)
    total = hs * sum(terms)
    if len(terms) >= 2 and abs(terms[-2]) > 0:
        r = min(abs(terms[-1] / terms[-2]) * 1.1, 0.99)
        tail = abs(hs * terms[-1]) * r / (1 - r)
    else:
        tail = math.inf
    return SeriesEvaluation(
        value=complex(total), method="fourier", truncation=float(K),
        tail_bound=float(tail), tail_kind="heuristic", terms_used=len(terms),
    )
