from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eisenlab.errors import DomainError, ResourceLimitError
from eisenlab.hypgeo import hyp_distance, point_pair_u
from eisenlab.modgroup import (
    IDENTITY,
    RHO,
    S,
    T,
    ModularElement,
    elliptic_anchor,
    enumerate_ball,
    enumerate_cosets_infinity,
    projected_ball_count,
    reduce_to_fundamental,
)
from eisenlab.specfun import PrecisionBudget

finite = dict(allow_nan=False, allow_infinity=False)


def test_generators_relations():
    assert S @ S == IDENTITY
    assert (S @ T) ** 3 == IDENTITY
    g = ModularElement.make(2, 1, 5, 3)
    assert g @ g.inverse() == IDENTITY


def test_canonical_sign():
    assert ModularElement.make(-1, 0, 0, -1) == IDENTITY
    with pytest.raises(DomainError):
        ModularElement(1, 1, 1, 1)


@pytest.mark.parametrize("label, order", [("i", 2), ("rho", 3)])
def test_anchor_stabilizer(label, order):
    e = elliptic_anchor(label)
    g = e.stab_generator
    assert abs(g.act(e.location.z) - e.location.z) < 1e-14
    assert g**order == IDENTITY
    assert e.order == order
    assert abs(e.sigma.a * 1j + e.sigma.b - e.location.z * (e.sigma.c * 1j + e.sigma.d)) < 1e-14


def test_generic_anchor_sigma():
    e = elliptic_anchor(0.3 + 1.7j)
    assert e.order == 1 and e.stab_generator is None
    z = (e.sigma.a * 1j + e.sigma.b) / (e.sigma.c * 1j + e.sigma.d)
    assert abs(z - (0.3 + 1.7j)) < 1e-14


@given(st.floats(-40, 40, **finite), st.floats(1e-3, 10, **finite))
@settings(max_examples=80, deadline=None)
def test_reduction_lands_in_fundamental_domain(x, y):
    zr, g = reduce_to_fundamental(complex(x, y))
    assert abs(zr.x) <= 0.5 + 1e-12
    assert abs(zr.z) >= 1 - 1e-12
    assert abs(g.act(complex(x, y)) - zr.z) < 1e-8 * max(1.0, abs(zr.z))


def test_cosets_coprime():
    rows = enumerate_cosets_infinity(10)
    assert all(math.gcd(c, d) == 1 for c, d in rows)
    assert len(set(rows)) == len(rows)


CASES = [(z, R) for z in (0.3 + 1.2j, 2j, -0.45 + 0.9j) for R in (1.0, 2.5, 4.0)]


@pytest.mark.parametrize("z, R", CASES)
def test_ball_matches_brute_force(z, R, brute_ball):
    ball = enumerate_ball(z, R)
    got = {(int(a), int(b), int(c), int(d)) for a, b, c, d in zip(ball.a, ball.b, ball.c, ball.d)}
    assert got == brute_ball(z, R)


def test_ball_two_points_matches_brute_force(brute_ball):
    z, w = 0.2 + 0.7j, 1j
    ball = enumerate_ball(z, 3.5, center=w)
    got = {(int(a), int(b), int(c), int(d)) for a, b, c, d in zip(ball.a, ball.b, ball.c, ball.d)}
    assert got == brute_ball(z, 3.5, center=w)


def test_ball_images_and_u_consistent():
    ball = enumerate_ball(0.1 + 1.3j, 6.0, center=RHO)
    g = ball.elements[17]
    assert abs(g.act(0.1 + 1.3j) - ball.images[17]) < 1e-12
    assert abs(point_pair_u(RHO, ball.images[17]) - ball.u[17]) < 1e-10
    assert np.all(2 * np.arcsinh(np.sqrt(ball.u)) <= 6.0 + 1e-9)


def test_counting_constant_generic_point():
    ball = enumerate_ball(0.13 + 1.37j, 12.0)
    assert abs(ball.counting_constant() - 1.0) < 0.01


def test_shell_growth_exponent():
    ball = enumerate_ball(0.13 + 1.37j, 12.0, shells=24)
    r = np.linspace(0.5, 12, 24)
    cum = np.cumsum(ball.count_by_shell)
    slope = np.polyfit(r[8:], np.log(cum[8:]), 1)[0]
    assert 0.9 <= slope <= 1.1


def test_resource_limit():
    with pytest.raises(ResourceLimitError):
        enumerate_ball(2j, 14.0, budget=PrecisionBudget(max_terms=1000))
    assert projected_ball_count(0) == 1


def test_radius_domain():
    with pytest.raises(DomainError):
        enumerate_ball(2j, 30.0)


def test_distances_to_anchor_invariant():
    ball = enumerate_ball(0.4 + 1.1j, 5.0, center=1j)
    for g in ball.elements[:20]:
        assert abs(hyp_distance(1j, g.act(0.4 + 1.1j)) - hyp_distance(g.inverse().act(1j), 0.4 + 1.1j)) < 1e-10
