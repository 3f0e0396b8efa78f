"""Exact lattice widths and the width-volume inequality."""

from fractions import Fraction

import numpy as np
import pytest
from conftest import EXTREMAL_SIMPLEX, random_lattice_polytope

from isokit.errors import PreconditionError, SingularLattice
from isokit.geom import Polytope, difference_body
from isokit.lattice import (
    LatticeBasis,
    LatticeDirection,
    density,
    is_nonseparable_unit_lattice,
    lattice_width,
    verify_width_volume_corollary,
    width_in_direction,
)

CUBE = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]


def test_direction_canonicalization():
    assert LatticeDirection((-2, 4, 0)).u == (1, -2, 0)
    assert LatticeDirection((0, -3, 6)).u == (0, 1, -2)
    assert LatticeDirection((4, 6, 10)).u == (2, 3, 5)
    with pytest.raises(PreconditionError):
        LatticeDirection((0, 0, 0))
    with pytest.raises(PreconditionError):
        LatticeDirection((1.5, 0, 0))


def test_width_in_direction_verbatim():
    P = Polytope(EXTREMAL_SIMPLEX, mode="rational")
    assert width_in_direction(P, (1, 0, 0)) == Fraction(1)
    assert width_in_direction(P, (2, 0, 0)) == Fraction(2)  # no gcd reduction
    assert width_in_direction(P, LatticeDirection((2, 0, 0))) == Fraction(1)
    assert width_in_direction(P, (1, 1, 1)) == Fraction(2)
    with pytest.raises(PreconditionError):
        width_in_direction(P, (0, 0, 0))


def test_extremal_simplex_attains_equality():
    P = Polytope(EXTREMAL_SIMPLEX, mode="rational")
    res = lattice_width(P)
    assert res.value == Fraction(1)
    assert res.direction == (1, 1, -1)  # lexicographically greatest tie
    rep = verify_width_volume_corollary(P)
    assert rep["exact"] is True
    assert rep["volume"] == Fraction(1, 12)
    assert rep["bound"] == Fraction(1, 12)
    assert rep["slack"] == 0
    assert rep["holds"] is True


def test_cube_width_and_density():
    Q = Polytope(CUBE, mode="rational")
    res = lattice_width(Q)
    assert res.value == Fraction(1)
    assert res.direction == (1, 0, 0)
    assert density(Q) == Fraction(1)
    assert is_nonseparable_unit_lattice(Q) is True


def test_sub_threshold_width():
    half = Polytope([tuple(Fraction(c) / 2 for c in v) for v in EXTREMAL_SIMPLEX], mode="rational")
    res = lattice_width(half)
    assert res.value == Fraction(1, 2)
    assert is_nonseparable_unit_lattice(half) is False
    rep = verify_width_volume_corollary(half)
    assert rep["slack"] == 0  # scaling preserves equality
    assert rep["volume"] == Fraction(1, 96)


def test_float_knife_edge_refused():
    Qf = Polytope([(float(x), float(y), float(z)) for x, y, z in CUBE])
    assert Qf.mode == "float"
    with pytest.raises(PreconditionError):
        is_nonseparable_unit_lattice(Qf)
    big = Polytope([(1.5 * x, 1.5 * y, 1.5 * z) for x, y, z in CUBE])
    assert is_nonseparable_unit_lattice(big) is True


def test_translation_invariance(rng):
    P = random_lattice_polytope(rng)
    shifted = Polytope([(x + 7, y - 4, z + 2) for x, y, z in P.vertices], mode="rational")
    a, b = lattice_width(P), lattice_width(shifted)
    assert a.value == b.value
    assert a.direction == b.direction


def test_unimodular_invariance(rng):
    U = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]  # det 1
    for _ in range(5):
        P = random_lattice_polytope(rng)
        img = Polytope(
            [
                (x * U[0][0] + y * U[0][1] + z * U[0][2],
                 x * U[1][0] + y * U[1][1] + z * U[1][2],
                 x * U[2][0] + y * U[2][1] + z * U[2][2])
                for x, y, z in P.vertices
            ],
            mode="rational",
        )
        assert lattice_width(img).value == lattice_width(P).value


def test_width_equals_difference_body_support(rng):
    P = random_lattice_polytope(rng)
    D = difference_body(P)
    for u in [(1, 0, 0), (1, 1, -1), (2, -1, 3), (0, 1, 1)]:
        w = width_in_direction(P, u)
        h = max(vx * u[0] + vy * u[1] + vz * u[2] for vx, vy, vz in D.vertices)
        assert w == h  # exact Fractions


def test_corollary_random_lattice_polytopes(rng):
    for _ in range(25):
        P = random_lattice_polytope(rng)
        rep = verify_width_volume_corollary(P)
        assert rep["exact"] and rep["holds"]
        assert rep["slack"] >= 0
        assert density(P) >= Fraction(1, 12)


def test_lattice_basis():
    Q = Polytope(CUBE, mode="rational")
    assert LatticeBasis(np.eye(3, dtype=int)).width(Q).value == Fraction(1)
    assert LatticeBasis([[2, 0, 0], [0, 1, 0], [0, 0, 1]]).width(Q).value == Fraction(1, 2)
    assert LatticeBasis([[1, 1, 0], [0, 1, 0], [0, 0, 1]]).width(Q).value == Fraction(1)
    with pytest.raises(SingularLattice):
        LatticeBasis([[1, 2, 3], [2, 4, 6], [0, 0, 1]])
    with pytest.raises(PreconditionError):
        LatticeBasis([[1, 0], [0, 1]])