"""PSL(2, Z): elements, reduction, coset and hyperbolic-ball enumeration."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError, ResourceLimitError
from .hypgeo import MoebiusMatrix, UhpPoint
from .specfun import PrecisionBudget

__all__ = [
    "ModularElement",
    "EllipticAnchor",
    "BallEnumeration",
    "IDENTITY",
    "S",
    "T",
    "reduce_to_fundamental",
    "enumerate_cosets_infinity",
    "enumerate_ball",
    "elliptic_anchor",
    "projected_ball_count",
    "MAX_RADIUS",
]

MAX_RADIUS = 25.0


@dataclass(frozen=True)
class ModularElement:
    """An element of PSL(2, Z) stored with canonical sign (c > 0, or c = 0 and d > 0)."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError(f"determinant of {self.a, self.b, self.c, self.d} is not 1")
        if self.c < 0 or (self.c == 0 and self.d < 0):
            raise DomainError("use ModularElement.make for sign normalization")

    @classmethod
    def make(cls, a: int, b: int, c: int, d: int) -> "ModularElement":
        a, b, c, d = int(a), int(b), int(c), int(d)
        if c < 0 or (c == 0 and d < 0):
            a, b, c, d = -a, -b, -c, -d
        return cls(a, b, c, d)

    def __matmul__(self, other: "ModularElement") -> "ModularElement":
        return ModularElement.make(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "ModularElement":
        return ModularElement.make(self.d, -self.b, -self.c, self.a)

    def __pow__(self, k: int) -> "ModularElement":
        base = self if k >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(k)):
            out = out @ base
        return out

    def act(self, z):
        """Fractional linear action on a complex number or :class:`UhpPoint`."""
        zc = z.z if isinstance(z, UhpPoint) else complex(z)
        den = self.c * zc + self.d
        w = complex(((self.a * zc + self.b) / den).real, zc.imag / abs(den) ** 2)
        return UhpPoint.from_complex(w) if isinstance(z, UhpPoint) else w

    def as_moebius(self) -> MoebiusMatrix:
        return MoebiusMatrix(float(self.a), float(self.b), float(self.c), float(self.d))


IDENTITY = ModularElement(1, 0, 0, 1)
S = ModularElement.make(0, -1, 1, 0)
T = ModularElement(1, 1, 0, 1)


@dataclass(frozen=True)
class EllipticAnchor:
    """A base point w with its stabilizer order n and scaling matrix sigma (sigma i = w)."""

    label: str
    location: UhpPoint
    order: int
    sigma: MoebiusMatrix
    stab_generator: ModularElement | None = None


_SQRT3 = math.sqrt(3.0)
RHO = complex(-0.5, _SQRT3 / 2.0)


def elliptic_anchor(where) -> EllipticAnchor:
    """Build an anchor from ``"i"``, ``"rho"``, a complex number or a :class:`UhpPoint`.

    Generic points get n = 1 and the vertical-affine scaling matrix
    (sqrt y, x/sqrt y; 0, 1/sqrt y).
    """
    if isinstance(where, str) and where == "i":
        return EllipticAnchor("i", UhpPoint(0.0, 1.0), 2, MoebiusMatrix(1.0, 0.0, 0.0, 1.0), S)
    if isinstance(where, str) and where == "rho":
        q = 3.0**0.25
        r = 1.0 / math.sqrt(2.0)
        sigma = MoebiusMatrix(r * q, -r / q, 0.0, r * 2.0 / q)
        return EllipticAnchor("rho", UhpPoint.from_complex(RHO), 3, sigma, ModularElement.make(0, -1, 1, 1))
    if isinstance(where, str):
        raise DomainError(f"unknown anchor label {where!r}")
    p = where if isinstance(where, UhpPoint) else UhpPoint.from_complex(where)
    sy = math.sqrt(p.y)
    return EllipticAnchor("generic", p, 1, MoebiusMatrix(sy, p.x / sy, 0.0, 1.0 / sy), None)


def reduce_to_fundamental(z, max_steps: int = 10_000) -> tuple[UhpPoint, ModularElement]:
    """Return (z', g) with g z = z', |Re z'| <= 1/2 and |z'| >= 1."""
    zc = z.z if isinstance(z, UhpPoint) else complex(z)
    g = IDENTITY
    for _ in range(max_steps):
        n = math.floor(zc.real + 0.5)
        if n != 0:
            zc = complex(zc.real - n, zc.imag)
            g = ModularElement(1, -n, 0, 1) @ g
        if abs(zc) ** 2 < 1.0 - 1e-15:
            zc = -1.0 / zc
            zc = complex(zc.real, abs(zc.imag))
            g = S @ g
        else:
            break
    return UhpPoint.from_complex(zc), g


def enumerate_cosets_infinity(max_norm: float) -> list[tuple[int, int]]:
    """Coprime bottom rows (c, d) with c > 0 (or (0, 1)) and c^2 + d^2 <= max_norm^2."""
    if max_norm < 1:
        raise DomainError("max_norm must be at least 1")
    out = [(0, 1)]
    m2 = max_norm * max_norm
    cmax = int(math.floor(max_norm))
    for c in range(1, cmax + 1):
        dmax = int(math.floor(math.sqrt(max(m2 - c * c, 0.0))))
        d = np.arange(-dmax, dmax + 1, dtype=np.int64)
        d = d[np.gcd(d, c) == 1]
        out.extend((c, int(x)) for x in d)
    return out


def _modinv(d: np.ndarray, c: int) -> np.ndarray:
    """Vectorized inverse of d modulo c (entries assumed coprime to c)."""
    r0 = np.mod(d, c)
    r1 = np.full_like(r0, c)
    s0 = np.ones_like(r0)
    s1 = np.zeros_like(r0)
    while np.any(r1 != 0):
        live = r1 != 0
        q = np.where(live, r0 // np.where(live, r1, 1), 0)
        r0, r1 = np.where(live, r1, r0), np.where(live, r0 - q * r1, r1)
        s0, s1 = np.where(live, s1, s0), np.where(live, s0 - q * s1, s1)
    return np.mod(s0, c)


def projected_ball_count(R: float) -> float:
    """Leading-order size of a ball of radius R in the orbit of a generic point."""
    return 12.0 * math.sinh(R / 2.0) ** 2 + 1.0


@dataclass
class BallEnumeration:
    """All gamma with d(center, gamma z) <= radius, as parallel integer arrays.

    ``u`` holds u(center, gamma z) for each element.  Elements are in
    canonical order sorted by (c, d, t) where t indexes the coset of the
    bottom row.
    """

    center: UhpPoint
    point: UhpPoint
    radius: float
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    images: np.ndarray
    u: np.ndarray
    count_by_shell: np.ndarray = field(default=None)

    def __len__(self) -> int:
        return int(self.a.size)

    @property
    def elements(self) -> list[ModularElement]:
        return [ModularElement(int(a), int(b), int(c), int(d)) for a, b, c, d in zip(self.a, self.b, self.c, self.d)]

    def act(self, z) -> np.ndarray:
        """gamma z for every element, at a possibly different point z."""
        zc = z.z if isinstance(z, UhpPoint) else complex(z)
        return _act_arrays(self.a, self.b, self.c, self.d, zc)

    def counting_constant(self) -> float:
        """Observed count divided by the leading term 12 sinh^2(R/2)."""
        return len(self) / (12.0 * math.sinh(self.radius / 2.0) ** 2)


def _act_arrays(a, b, c, d, zc: complex) -> np.ndarray:
    # gamma z = a/c - 1/(c (cz + d)) for c != 0, which never subtracts two
    # large numbers; (a z + b)/d for c = 0
    den = c * zc + d
    cc = np.where(c == 0, 1, c)
    re = np.where(c == 0, (a * zc.real + b) / np.where(c == 0, d, 1), a / cc - (1.0 / (cc * den)).real)
    im = zc.imag / np.abs(den) ** 2
    return re + 1j * im


def enumerate_ball(
    z, R: float, center=None, budget: PrecisionBudget | None = None, shells: int = 0
) -> BallEnumeration:
    """Enumerate {gamma in PSL(2,Z) : d(center, gamma z) <= R}.

    ``center`` defaults to ``z``.  Proof sketch of the row filter: with
    w = center and y' = Im(gamma z) = y / |cz + d|^2 we have
    4 Im(w) y' u(w, gamma z) >= (y' - Im w)^2, so u <= U = (cosh R - 1)/2
    forces e^{-R} <= y'/Im(w) <= e^R.  For a fixed bottom row the top rows
    are (a0 + tc, b0 + td), gamma z = gamma_0 z + t, and u is a quadratic
    in t whose sublevel set is an explicit integer window.
    """
    zp = z if isinstance(z, UhpPoint) else UhpPoint.from_complex(z)
    wp = zp if center is None else (center if isinstance(center, UhpPoint) else UhpPoint.from_complex(center))
    if not 0 <= R <= MAX_RADIUS:
        raise DomainError(f"ball radius must lie in [0, {MAX_RADIUS}]")
    budget = budget or PrecisionBudget.from_env()
    if projected_ball_count(R) > budget.max_terms:
        raise ResourceLimitError(
            f"ball of radius {R} needs about {projected_ball_count(R):.3g} terms (limit {budget.max_terms})"
        )
    return _enumerate_cached(zp.x, zp.y, wp.x, wp.y, float(R), int(shells))


@lru_cache(maxsize=4)
def _enumerate_cached(x, y, xw, yw, R, shells) -> BallEnumeration:
    zc = complex(x, y)
    U = math.sinh(R / 2.0) ** 2
    slack = 1.0 + 1e-12
    # |cz + d|^2 must lie in [y e^{-R} / yw, y e^R / yw]
    hi = y * math.exp(R) / yw * slack
    lo = y * math.exp(-R) / yw / slack
    cmax = int(math.floor(math.sqrt(hi) / y))
    blocks = []
    for c in range(0, cmax + 1):
        if c == 0:
            d = np.array([1], dtype=np.int64)
            a0 = np.array([1], dtype=np.int64)
            b0 = np.array([0], dtype=np.int64)
        else:
            span = math.sqrt(max(hi - (c * y) ** 2, 0.0))
            d = np.arange(math.ceil(-c * x - span), math.floor(-c * x + span) + 1, dtype=np.int64)
            d = d[np.gcd(d, c) == 1]
            if d.size == 0:
                continue
            den2 = (c * x + d) ** 2 + (c * y) ** 2
            d = d[(den2 >= lo) & (den2 <= hi)]
            if d.size == 0:
                continue
            a0 = _modinv(d, c)
            b0 = (a0 * d - 1) // c
        img0 = _act_arrays(a0, b0, np.full_like(d, c), d, zc)
        yp = img0.imag
        disc = 4.0 * yw * yp * U * slack - (yp - yw) ** 2
        ok = disc >= 0
        if not np.any(ok):
            continue
        d, a0, b0, img0, disc = d[ok], a0[ok], b0[ok], img0[ok], disc[ok]
        half = np.sqrt(disc)
        shift = xw - img0.real
        t_lo = np.ceil(shift - half).astype(np.int64)
        t_hi = np.floor(shift + half).astype(np.int64)
        n_t = np.maximum(t_hi - t_lo + 1, 0)
        total = int(n_t.sum())
        if total == 0:
            continue
        row = np.repeat(np.arange(d.size), n_t)
        starts = np.cumsum(n_t) - n_t
        t = t_lo[row] + (np.arange(total) - starts[row])
        cc = np.full(total, c, dtype=np.int64)
        dd = d[row]
        aa = a0[row] + t * c
        bb = b0[row] + t * dd
        img = img0[row] + t
        blocks.append((aa, bb, cc, dd, img))
    a = np.concatenate([blk[0] for blk in blocks])
    b = np.concatenate([blk[1] for blk in blocks])
    c = np.concatenate([blk[2] for blk in blocks])
    d = np.concatenate([blk[3] for blk in blocks])
    img = np.concatenate([blk[4] for blk in blocks])
    w = complex(xw, yw)
    u = np.abs(img - w) ** 2 / (4.0 * img.imag * yw)
    keep = u <= U * slack
    a, b, c, d, img, u = a[keep], b[keep], c[keep], d[keep], img[keep], u[keep]
    hist = None
    if shells > 0:
        dist = 2.0 * np.arcsinh(np.sqrt(u))
        hist, _ = np.histogram(dist, bins=shells, range=(0.0, R))
    for arr in (a, b, c, d, img, u):
        arr.setflags(write=False)
    return BallEnumeration(
        center=UhpPoint(xw, yw), point=UhpPoint(x, y), radius=R,
        a=a, b=b, c=c, d=d, images=img, u=u, count_by_shell=hist,
    )
