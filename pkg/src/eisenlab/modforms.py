"""q-expansions of E4, E6, Delta and j.

Values are computed at the fundamental-domain representative, where
|q| <= exp(-pi sqrt 3) ~ 0.0043, and carried back to the original point
with the weight-k automorphy factor.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConsistencyError, DomainError
from .hypgeo import UhpPoint
from .modgroup import reduce_to_fundamental

__all__ = [
    "QExpansion",
    "divisor_sigma",
    "eisenstein_expansion",
    "delta_expansion",
    "eval_eisenstein_weight",
    "eval_delta_and_j",
    "modular_identity_gap",
    "modular_identity_sides",
    "Q_MAX",
]

Q_MAX = math.exp(-math.pi * math.sqrt(3.0))
DEFAULT_ORDER = 40


def divisor_sigma(k: int, m: int) -> int:
    """sum of d^k over the positive divisors d of m."""
    if m < 1:
        raise DomainError("divisor_sigma needs m >= 1")
    total = 0
    r = 1
    while r * r <= m:
        if m % r == 0:
            total += r**k
            if r * r != m:
                total += (m // r) ** k
        r += 1
    return total


@dataclass(frozen=True)
class QExpansion:
    """A truncated q-series sum_{m <= N} a_m q^m with a coefficient envelope.

    The envelope |a_m| <= scale * m^power gives the geometric tail bound
    returned by :meth:`tail_bound`.
    """

    weight: int
    coeffs: tuple[int, ...]
    scale: float
    power: float

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def tail_bound(self, q_abs: float) -> float:
        n = self.order + 1
        ratio = q_abs * ((n + 1) / n) ** self.power
        if ratio >= 1:
            return math.inf
        return self.scale * n**self.power * q_abs**n / (1.0 - ratio)

    def __call__(self, q: complex) -> complex:
        # Horner in q
        acc = 0j
        for a in reversed(self.coeffs):
            acc = acc * q + a
        return acc


@lru_cache(maxsize=None)
def eisenstein_expansion(k: int, order: int = DEFAULT_ORDER) -> QExpansion:
    """E4 = 1 + 240 sum sigma_3(m) q^m and E6 = 1 - 504 sum sigma_5(m) q^m."""
    if k == 4:
        c, p = 240, 3
    elif k == 6:
        c, p = -504, 5
    else:
        raise DomainError("only weights 4 and 6 are supported")
    coeffs = (1,) + tuple(c * divisor_sigma(p, m) for m in range(1, order + 1))
    # sigma_p(m) <= zeta(p) m^p
    return QExpansion(k, coeffs, abs(c) * 1.21, float(p))


@lru_cache(maxsize=None)
def delta_expansion(order: int = DEFAULT_ORDER) -> QExpansion:
    """q prod (1 - q^n)^24 expanded with exact integer arithmetic."""
    poly = [0] * (order + 1)
    poly[0] = 1
    for n in range(1, order + 1):
        for _ in range(24):
            for m in range(order, n - 1, -1):
                poly[m] -= poly[m - n]
    coeffs = (0,) + tuple(poly[:order])
    # |tau(m)| <= d(m) m^{11/2} <= 2 m^6
    return QExpansion(12, coeffs, 2.0, 6.0)


def _reduced(z):
    zp = z if isinstance(z, UhpPoint) else UhpPoint.from_complex(z)
    zr, g = reduce_to_fundamental(zp)
    # g z = zr, so f(z) = f(zr) * (c z + d)^{-k}
    j = g.c * zp.z + g.d
    q = cmath.exp(2j * math.pi * zr.z)
    return q, j


def eval_eisenstein_weight(k: int, z) -> complex:
    """E_k(z) for k in {4, 6} at the original (unreduced) point z."""
    q, j = _reduced(z)
    return eisenstein_expansion(k)(q) / j**k


def _delta_product(q: complex) -> complex:
    return delta_expansion()(q)


def eval_delta_and_j(z, rtol: float = 1e-9) -> tuple[complex, complex]:
    """(Delta(z), j(z)); Delta is evaluated two independent ways and compared.

    The Eisenstein route (E4^3 - E6^2)/1728 loses about |E4|^3 eps / |q| to
    cancellation, so the comparison tolerance is widened by that amount.
    """
    q, jf = _reduced(z)
    e4 = eisenstein_expansion(4)(q)
    e6 = eisenstein_expansion(6)(q)
    d_prod = _delta_product(q)
    d_eis = (e4**3 - e6**2) / 1728.0
    allowed = rtol * abs(d_prod) + 64 * np.finfo(float).eps * (abs(e4) ** 3 + abs(e6) ** 2) / 1728.0
    if abs(d_prod - d_eis) > allowed:
        raise ConsistencyError(f"Delta product {d_prod} vs Eisenstein {d_eis} disagree")
    j = e4**3 / d_prod
    return d_prod / jf**12, j


def modular_identity_gap(anchor: str, z, printed: bool = False) -> float:
    """| lhs - rhs | for :func:`modular_identity_sides`."""
    lhs, rhs = modular_identity_sides(anchor, z, printed)
    return abs(lhs - rhs)


def modular_identity_sides(anchor: str, z, printed: bool = False) -> tuple[float, float]:
    """Both sides of the identity linking |j(e) - j(z)| to E6 (e = i) or E4 (e = rho).

    The true identities are |j(i) - j(z)|^{1/2} = |E6||Delta|^{-1/2} and
    |j(rho) - j(z)|^{1/3} = |E4||Delta|^{-1/3}, from j - 1728 = E6^2/Delta and
    j = E4^3/Delta.  ``printed=True`` evaluates the variant with exponents 2
    and 3 on the left-hand side instead.
    """
    delta, j = eval_delta_and_j(z)
    if anchor == "i":
        lhs_base = abs(1728.0 - j)
        rhs = abs(eval_eisenstein_weight(6, z)) * abs(delta) ** (-0.5)
        p = 2.0 if printed else 0.5
    elif anchor == "rho":
        lhs_base = abs(j)
        rhs = abs(eval_eisenstein_weight(4, z)) * abs(delta) ** (-1.0 / 3.0)
        p = 3.0 if printed else 1.0 / 3.0
    else:
        raise DomainError("anchor must be 'i' or 'rho'")
    return lhs_base**p, rhs

