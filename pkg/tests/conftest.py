from __future__ import annotations

import math

import numpy as np
import pytest

from eisenlab.hypgeo import hyp_distance


def brute_force_ball(z: complex, R: float, center: complex | None = None) -> set[tuple[int, int, int, int]]:
    """All canonical (a, b, c, d) with d(center, gamma z) <= R, by exhausting an entry box.

    a^2 + b^2 + c^2 + d^2 = 2 cosh d(i, gamma i) and the triangle inequality
    bound that distance by R + d(i, z) + d(i, center).
    """
    w = z if center is None else center
    M = int(math.sqrt(2 * math.cosh(R + hyp_distance(1j, z) + hyp_distance(1j, w)))) + 1
    r = np.arange(-M, M + 1)
    a, b, c, d = (x.ravel() for x in np.meshgrid(r, r, r, r, indexing="ij"))
    keep = (a * d - b * c == 1) & ((c > 0) | ((c == 0) & (d > 0)))
    a, b, c, d = a[keep], b[keep], c[keep], d[keep]
    img = (a * z + b) / (c * z + d)
    u = np.abs(img - w) ** 2 / (4 * img.imag * w.imag)
    inside = 2 * np.arcsinh(np.sqrt(u)) <= R
    return {tuple(int(v) for v in t) for t in zip(a[inside], b[inside], c[inside], d[inside])}


@pytest.fixture
def brute_ball():
    return brute_force_ball


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
