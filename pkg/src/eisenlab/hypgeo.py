"""Upper half-plane geometry: point-pair invariant, distance, Moebius action."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import CoincidenceError, DomainError

__all__ = [
    "UhpPoint",
    "MoebiusMatrix",
    "PolarCoords",
    "point_pair_u",
    "hyp_distance",
    "distance_from_u",
    "mobius_apply",
    "polar_coords",
    "polar_to_point",
    "right_angle_identity_check",
]


@dataclass(frozen=True)
class UhpPoint:
    """A point x + iy with y > 0."""

    x: float
    y: float

    def __post_init__(self):
        if not (self.y > 0 and math.isfinite(self.y) and math.isfinite(self.x)):
            raise DomainError(f"not a point of the upper half-plane: {self.x}+{self.y}i")

    @classmethod
    def from_complex(cls, z: complex) -> "UhpPoint":
        z = complex(z)
        return cls(z.real, z.imag)

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    def __complex__(self) -> complex:
        return self.z


def _as_complex(p) -> complex:
    return p.z if isinstance(p, UhpPoint) else complex(p)


@dataclass(frozen=True)
class MoebiusMatrix:
    """A real 2x2 matrix of determinant one acting by fractional linear maps."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if abs(self.a * self.d - self.b * self.c - 1.0) > 1e-12:
            raise DomainError("Moebius matrix must have determinant 1")

    def __matmul__(self, other: "MoebiusMatrix") -> "MoebiusMatrix":
        return MoebiusMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MoebiusMatrix":
        return MoebiusMatrix(self.d, -self.b, -self.c, self.a)

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)


@dataclass(frozen=True)
class PolarCoords:
    """Geodesic polar coordinates around i (diagnostics only)."""

    rho: float
    theta: float

    def __post_init__(self):
        if self.rho < 0:
            raise DomainError("polar radius must be non-negative")


def point_pair_u(z, w):
    """u(z, w) = |z - w|^2 / (4 Im z Im w).

    Accepts :class:`UhpPoint`, complex scalars, or complex numpy arrays.
    """
    if isinstance(z, UhpPoint):
        z = z.z
    if isinstance(w, UhpPoint):
        w = w.z
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    out = np.abs(z - w) ** 2 / (4.0 * z.imag * w.imag)
    return float(out) if out.ndim == 0 else out


def distance_from_u(u):
    """Hyperbolic distance from the point-pair invariant.

    cosh d = 1 + 2u is equivalent to sinh(d/2) = sqrt(u), which avoids the
    cancellation of arccosh near coincident points.
    """
    return 2.0 * np.arcsinh(np.sqrt(u))


def hyp_distance(z, w):
    out = distance_from_u(point_pair_u(z, w))
    return float(out) if np.ndim(out) == 0 else out


def mobius_apply(g, z):
    """(az + b)/(cz + d) for a :class:`MoebiusMatrix` or any object with a, b, c, d."""
    zc = _as_complex(z)
    den = g.c * zc + g.d
    w = (g.a * zc + g.b) / den
    # the imaginary part is recomputed from the exact cocycle formula
    w = complex(w.real, zc.imag / abs(den) ** 2)
    return UhpPoint.from_complex(w) if isinstance(z, UhpPoint) else w


def polar_coords(z) -> PolarCoords:
    """Hyperbolic polar coordinates of z around i (via the disc model)."""
    zc = _as_complex(z)
    zeta = (zc - 1j) / (zc + 1j)
    r = abs(zeta)
    return PolarCoords(rho=2.0 * math.atanh(r) if r > 0 else 0.0, theta=cmath.phase(zeta))


def polar_to_point(p: PolarCoords) -> UhpPoint:
    """Inverse of :func:`polar_coords`."""
    zeta = math.tanh(p.rho / 2.0) * cmath.exp(1j * p.theta)
    return UhpPoint.from_complex(1j * (1.0 + zeta) / (1.0 - zeta))


def right_angle_identity_check(anchor, z) -> tuple[float, float]:
    """Both sides of sinh d(e, z) = sin(pi/n)^{-1} sinh(d(z, g z)/2).

    ``anchor`` needs ``location``, ``order`` and ``stab_generator`` (see
    :class:`eisenlab.modgroup.EllipticAnchor`); g is the stabilizer
    generator of the anchor.
    """
    if anchor.stab_generator is None:
        raise DomainError("identity needs an anchor with nontrivial stabilizer")
    e = anchor.location.z
    zc = _as_complex(z)
    u_ez = point_pair_u(e, zc)
    if u_ez < 1e-24:
        raise CoincidenceError("z coincides with the anchor")
    lhs = 2.0 * math.sqrt(u_ez * (1.0 + u_ez))
    gz = mobius_apply(anchor.stab_generator, zc)
    rhs = math.sqrt(point_pair_u(zc, gz)) / math.sin(math.pi / anchor.order)
    return lhs, rhs
