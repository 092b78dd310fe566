"""Named identity-check suites run by ``eisenlab verify``.

Each check records a measured gap and the gap its truncations allow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import autoseries as aus
from . import greens, hypgeo, kronecker, modforms, modgroup, specfun
from .modgroup import RHO, elliptic_anchor

__all__ = ["Check", "SUITES", "run_suite"]


@dataclass(frozen=True)
class Check:
    name: str
    gap: float
    allowed: float

    @property
    def passed(self) -> bool:
        return bool(self.gap <= self.allowed)

    def to_dict(self) -> dict:
        return {"name": self.name, "gap": float(self.gap), "allowed": float(self.allowed), "passed": self.passed}


def _geometry():
    out = []
    for lab in ("i", "rho"):
        e = elliptic_anchor(lab)
        for z in (2j, 0.3 + 1.7j, 1 + 2j):
            lhs, rhs = hypgeo.right_angle_identity_check(e, z)
            out.append(Check(f"right-angle {lab} z={z}", abs(lhs - rhs), 1e-10 * lhs))
    g = modgroup.ModularElement.make(2, 1, 5, 3)
    z, w = 0.2 + 0.9j, -0.4 + 1.3j
    out.append(Check("u invariance", abs(hypgeo.point_pair_u(g.act(z), g.act(w)) - hypgeo.point_pair_u(z, w)), 1e-12))
    for rho in (0.5, 2.0, 4.5):
        p = hypgeo.polar_to_point(hypgeo.PolarCoords(rho, 0.7))
        out.append(Check(f"polar radius {rho}", abs(hypgeo.hyp_distance(1j, p) - rho), 1e-10))
    for lab in ("i", "rho"):
        e = elliptic_anchor(lab)
        sig = e.sigma
        rot = sig.inverse() @ e.stab_generator.as_moebius() @ sig
        ang = math.pi / e.order
        want = np.array([[math.cos(ang), math.sin(ang)], [-math.sin(ang), math.cos(ang)]])
        gap = min(np.abs(rot.as_array() - sgn * want).max() for sgn in (1, -1))
        gap_inv = min(np.abs(rot.inverse().as_array() - sgn * want).max() for sgn in (1, -1))
        out.append(Check(f"scaling rotation {lab}", min(gap, gap_inv), 1e-12))
    return out


def _series_basics():
    out = []
    d = aus.epar(1j, 2, "direct").corrected
    f = aus.epar(1j, 2, "fourier").value
    out.append(Check("E^par(i,2) direct vs fourier", abs(d - f), 1e-8))
    closed = 2 * specfun.zeta(2) * specfun.dirichlet_beta(2) / specfun.zeta(4)
    out.append(Check("E^par(i,2) closed form", abs(f - closed), 1e-9))
    for s in (0.3 + 0.2j, 0.7 - 1.1j, 2.5 + 3j):
        out.append(Check(f"phi(s)phi(1-s) s={s}", abs(aus.scattering_phi(s) * aus.scattering_phi(1 - s) - 1), 1e-10))
    z = 0.2 + 1.1j
    for t in (0.5, 2.0, 7.0):
        s = 0.3 + 1j * t
        lhs = aus.epar(z, s).value
        rhs = aus.scattering_phi(s) * aus.epar(z, 1 - s).value
        out.append(Check(f"functional equation t={t}", abs(lhs - rhs), 1e-7 * max(abs(lhs), 1.0)))
    jet = kronecker.laurent_jet(lambda s: aus.epar(1j, s, method="fourier").value, 1.0, 0.05, 32)
    out.append(Check("Res_{s=1} E^par = 3/pi", abs(jet.c_minus1 - 3 / math.pi), 1e-6))
    return out


def _lemma_conjugacy():
    out = []
    for lab in ("i", "rho"):
        e = elliptic_anchor(lab)
        for z in (2j, 0.3 + 1.4j):
            for s in (2.5, 3.0):
                a = aus.eell(e, z, s, radius=10.0)
                b = aus.eell(e, z, s, method="conjugacy", radius=10.0)
                out.append(Check(f"direct vs conjugacy {lab} z={z} s={s}", abs(a.value - b.value),
                                 a.tail_bound + b.tail_bound + 1e-12 * abs(a.value)))
    a = aus.eell(elliptic_anchor("i"), RHO, 3.0, radius=11.0)
    b = aus.eell(elliptic_anchor("rho"), 1j, 3.0, radius=11.0)
    out.append(Check("2 E_i(rho) = 3 E_rho(i)", abs(2 * a.value - 3 * b.value), 2 * a.tail_bound + 3 * b.tail_bound))
    return out


def _lemma_diffeq():
    out = []
    for lab, z in (("i", 0.2 + 1.5j), ("rho", 0.1 + 1.3j)):
        e = elliptic_anchor(lab)
        s = 3.0
        ball = modgroup.enumerate_ball(z, 10.0, center=e.location)

        def E(w, sv):
            return aus.eell(e, z, sv, ball=ball, at=w).value

        def P(w, sv):
            return aus.pell(e, z, sv, ball=ball, at=w).value

        lap_e = aus.laplacian_fd(lambda w: E(w, s), z, order=4)
        out.append(Check(f"E^ell equation {lab}", abs(lap_e - s * (1 - s) * E(z, s) + s * s * E(z, s + 2)), 1e-4))
        lap_p = aus.laplacian_fd(lambda w: P(w, s), z, order=4)
        out.append(Check(f"P^ell equation {lab}", abs(lap_p - s * (1 - s) * P(z, s) - s * (s + 1) * P(z, s + 2)), 1e-4))
    z = 0.2 + 1.5j
    lap = aus.laplacian_fd(lambda w: aus.epar(w, 2.0).value, z, order=4)
    out.append(Check("E^par eigenfunction", abs(lap - 2.0 * (1 - 2.0) * aus.epar(z, 2.0).value), 1e-5))
    return out


def _lemma_pochhammer():
    out = []
    for lab, z, s, K in (("i", 2j, 3.0, 25), ("i", 2j, 3.0, 60), ("rho", 1j, 5.0, 20), ("rho", 0.2 + 2j, 4.0, 30)):
        rep = aus.pochhammer_link_gap(elliptic_anchor(lab), z, s, K, radius=11.0)
        out.append(Check(f"pochhammer link {lab} z={z} s={s} K={K}", rep.gap, rep.allowed))
    return out


def _green_relation():
    out = []
    for lab, z in (("i", 2j), ("rho", 2j)):
        for s in (2.5, 3.0):
            rep = greens.green_relation_gap(elliptic_anchor(lab), z, s, radius=11.0)
            out.append(Check(f"green relation {lab} z={z} s={s}", rep.gap, rep.allowed))
    h = greens.g_free(1j, 2j, 2.5)
    c = greens.g_free(1j, 2j, 2.5, form="cosh")
    out.append(Check("hypergeometric vs cosh series", abs(h - c), 1e-9 * abs(h)))
    out.append(Check("c(1) = 2 pi", abs(greens.c_factor(1) - 2 * math.pi), 1e-12))
    jet = kronecker.laurent_jet(greens.c_factor, 0.0, 0.02, 32)
    out.append(Check("c(0) = 0", abs(jet.c0), 1e-8))
    out.append(Check("c'(0) = 2 pi", abs(jet.c1 - 2 * math.pi), 1e-8))
    return out


def _residues():
    out = []
    for lab, want in (("i", 3.0), ("rho", 2.0)):
        fit = kronecker.residue_at_1(elliptic_anchor(lab), 2j)
        out.append(Check(f"residue at 1 {lab}", abs(fit.value - want), 0.02 * want))
    return out


def _klf_parabolic():
    out = []
    for z in (2j, 0.3 + 1.1j):
        lhs, rhs = kronecker.klf_parabolic(z, "s1")
        out.append(Check(f"s=1 constant z={z}", abs(lhs - rhs), 1e-6))
        (c0, c1), (r0, r1) = kronecker.klf_parabolic(z, "s0")
        out.append(Check(f"s=0 c0 z={z}", abs(c0 - r0), 1e-8))
        out.append(Check(f"s=0 c1 z={z}", abs(c1 - r1), 1e-6))
    return out


def _klf_elliptic_a0():
    out = []
    for lab in ("i", "rho"):
        e = elliptic_anchor(lab)
        for y in (2.0, 3.0):
            jet, c0, c1 = kronecker.subtracted_a0_slope(e, y)
            out.append(Check(f"a0 slope c0 {lab} y={y}", abs(jet.c0 - c0), 1e-7))
            out.append(Check(f"a0 slope c1 {lab} y={y}", abs(jet.c1 - c1), 1e-5))
        a0 = aus.eell_fourier_a0(e, 2.0, 2.5)
        xs = np.arange(32) / 32
        avg = np.mean([aus.eell(e, x + 2j, 2.5, radius=10.0).corrected for x in xs])
        out.append(Check(f"a0 vs x-average {lab}", abs(a0.value - avg), 1e-5))
    return out


def _modular_identities():
    out = []
    rng = np.random.default_rng(7)
    for _ in range(5):
        z = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.9, 2.5))
        for lab in ("i", "rho"):
            lhs, rhs = modforms.modular_identity_sides(lab, z)
            out.append(Check(f"corrected identity {lab} z={z:.3f}", abs(lhs - rhs), 1e-6 * abs(rhs)))
    k = specfun.named_constants()
    out.append(Check("E4(i)", abs(modforms.eval_eisenstein_weight(4, 1j) - 3 * k.gamma_quarter**8 / (2 * math.pi) ** 6), 1e-9))
    out.append(Check("E6(i) = 0", abs(modforms.eval_eisenstein_weight(6, 1j)), 1e-12))
    out.append(Check("E4(rho) = 0", abs(modforms.eval_eisenstein_weight(4, RHO)), 1e-12))
    d_i, j_i = modforms.eval_delta_and_j(1j)
    out.append(Check("j(i) = 1728", abs(j_i - 1728), 1e-6))
    want = k.gamma_quarter**4 / (2 * (2 * math.pi) ** 3)
    out.append(Check("|Delta(i)|^{1/6}", abs(abs(d_i) ** (1 / 6) - want), 1e-8 * want))
    d_r, _ = modforms.eval_delta_and_j(RHO)
    want = math.sqrt(3) * k.gamma_third**6 / (2 * math.pi) ** 4
    out.append(Check("|Delta(rho)|^{1/6}", abs(abs(d_r) ** (1 / 6) - want), 1e-8 * want))
    return out


def _constants():
    out = []
    k = kronecker.kronecker_constants()
    out.append(Check("B_i", abs(k.B_i - 1.967683), 1e-5))
    out.append(Check("B_rho", abs(k.B_rho - 1.269449), 1e-5))
    out.append(Check("C_par closed form vs s=1 jet", abs(
        kronecker.klf_parabolic(2j, "s1")[0] + math.log(abs(modforms.eval_delta_and_j(2j)[0]) * 64) / (2 * math.pi)
        - k.C_par), 1e-6))
    out.append(Check("C_i = 2 pi/(n vol)", abs(2 * math.pi / (2 * kronecker.VOLUME) - k.C_i), 1e-12))
    out.append(Check("C_rho = 2 pi/(n vol)", abs(2 * math.pi / (3 * kronecker.VOLUME) - k.C_rho), 1e-12))
    nc = specfun.named_constants()
    out.append(Check("Gamma(1/4)", abs(specfun.gamma(0.25) - nc.gamma_quarter), 1e-12))
    return out


SUITES = {
    "geometry": _geometry,
    "series-basics": _series_basics,
    "lemma-conjugacy": _lemma_conjugacy,
    "lemma-diffeq": _lemma_diffeq,
    "lemma-pochhammer-link": _lemma_pochhammer,
    "green-relation": _green_relation,
    "residues": _residues,
    "klf-parabolic": _klf_parabolic,
    "klf-elliptic-a0": _klf_elliptic_a0,
    "modular-identities": _modular_identities,
    "constants": _constants,
}


def run_suite(name: str) -> list[Check]:
    return SUITES[name]()

