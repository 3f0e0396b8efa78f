"""Shared test helpers: seeded random bodies and reference constructions."""

import math
from fractions import Fraction

import numpy as np
import pytest

# one line per top-level acceptance criterion, echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

# reference bodies -----------------------------------------------------------

UNIT_CUBE = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]

# regular tetrahedron with edge length 1
_s = 1.0 / (2.0 * math.sqrt(2.0))
REGULAR_TETRA = [
    (_s, _s, _s),
    (_s, -_s, -_s),
    (-_s, _s, -_s),
    (-_s, -_s, _s),
]

# simplex attaining vol = width^3 / 12 with lattice width 1
EXTREMAL_SIMPLEX = [
    (Fraction(0), Fraction(0), Fraction(0)),
    (Fraction(1), Fraction(1, 2), Fraction(1, 2)),
    (Fraction(1, 2), Fraction(1), Fraction(1, 2)),
    (Fraction(1, 2), Fraction(1, 2), Fraction(1)),
]

FLAT_SLAB = [
    (1.0, 1.0, 0.0),
    (1.0, -1.0, 0.0),
    (-1.0, 1.0, 0.0),
    (-1.0, -1.0, 0.0),
    (0.0, 0.0, 0.01),
    (0.0, 0.0, -0.01),
]


def random_lattice_polytope(rng, lo=0, hi=3, n_max=10):
    """Full-dimensional rational-mode polytope with integer vertices."""
    from isokit.geom import Polytope

    while True:
        n = int(rng.integers(4, n_max + 1))
        pts = rng.integers(lo, hi + 1, size=(n, 3))
        if np.linalg.matrix_rank(pts[1:] - pts[0]) == 3:
            return Polytope([tuple(int(c) for c in p) for p in pts], mode="rational")


def random_polytope_vertices(rng, n_min=4, n_max=20):
    """Vertices of a random full-dimensional polytope in [-1, 1]^3."""
    while True:
        n = int(rng.integers(n_min, n_max + 1))
        pts = rng.uniform(-1.0, 1.0, size=(n, 3))
        # full-dimensional iff some tetrahedron has non-tiny volume
        d = pts[1:] - pts[0]
        if n >= 4 and abs(np.linalg.det(d[:3])) > 1e-3:
            return pts


def random_rotation(rng):
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
