"""Minimum-volume enclosing ellipsoid: frozen cases and solver invariants."""

import numpy as np
import pytest

from isokit.errors import InvariantError, NoConvergence, NotFullDimensional, TooFewContacts
from isokit.mvee import Ellipsoid, contact_points, mvee_centered

CUBE_CORNERS = np.array([(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)], float)


def test_cube_exact():
    # uniform weights are already optimal for the symmetric cube
    E = mvee_centered(CUBE_CORNERS)
    assert np.allclose(E.M, np.eye(3) / 3.0, atol=1e-12)
    assert E.gap <= 1e-9
    assert E.iterations == 0


def test_cube_contacts_canonical():
    E = mvee_centered(CUBE_CORNERS)
    C = contact_points(E, CUBE_CORNERS)
    # all eight corners touch; four survive sign canonicalization
    assert C.shape == (4, 3)
    assert np.all(C[:, 0] == 1.0)
    assert all(tuple(a) < tuple(b) for a, b in zip(C, C[1:]))  # sorted, deduped


def test_octahedron_exact():
    pts = np.vstack([2.0 * np.eye(3), -2.0 * np.eye(3)])
    E = mvee_centered(pts)
    assert np.allclose(E.M, np.eye(3) / 4.0, atol=1e-12)
    C = contact_points(E, pts)
    assert C.shape == (3, 3)


def test_containment_and_shrunk_ball(rng):
    # the ellipsoid contains the points and, shrunk by sqrt(3), fits in
    # their symmetric hull (support-function check along random axes)
    for _ in range(20):
        m = int(rng.integers(6, 40))
        pts = rng.normal(size=(m, 3)) @ (np.eye(3) + 0.5 * rng.normal(size=(3, 3)))
        E = mvee_centered(pts, tol=1e-9)
        q = np.einsum("ij,jk,ik->i", pts, E.M, pts)
        assert q.max() <= 1.0 + 1e-9
        Minv_half = np.linalg.cholesky(np.linalg.inv(E.M))
        for u in rng.normal(size=(8, 3)):
            h_body = np.abs(pts @ u).max()
            h_ball = np.linalg.norm(Minv_half.T @ u)
            assert h_body >= h_ball / np.sqrt(3.0) * (1.0 - 1e-7)


def test_equivariance(rng):
    pts = rng.normal(size=(15, 3))
    M = mvee_centered(pts, tol=1e-10).M
    for _ in range(5):
        A = np.eye(3) + 0.3 * rng.normal(size=(3, 3))
        MA = mvee_centered(pts @ A.T, tol=1e-10).M
        Ainv = np.linalg.inv(A)
        assert np.allclose(MA, Ainv.T @ M @ Ainv, atol=1e-6 * np.abs(M).max())


def test_scaling(rng):
    pts = rng.normal(size=(12, 3))
    M1 = mvee_centered(pts, tol=1e-10).M
    M5 = mvee_centered(5.0 * pts, tol=1e-10).M
    assert np.allclose(M5, M1 / 25.0, atol=1e-8)


def test_det_trace_monotone(rng):
    # exact line search makes det V nondecreasing step by step, and the
    # feasible det improves overall
    pts = rng.normal(size=(30, 3))
    trace = []
    mvee_centered(pts, tol=1e-9, trace=trace)
    det_v = np.array([t[0] for t in trace])
    assert np.all(np.diff(det_v) >= -1e-12 * det_v[:-1])
    assert trace[-1][1] >= trace[0][1] * (1.0 - 1e-12)


def test_no_convergence(rng):
    pts = rng.normal(size=(50, 3))
    with pytest.raises(NoConvergence):
        mvee_centered(pts, tol=1e-12, max_iter=2)


def test_degenerate_inputs():
    planar = [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (1.0, 1.0, 0.0), (-1.0, 2.0, 0.0)]
    with pytest.raises(NotFullDimensional):
        mvee_centered(planar)
    with pytest.raises(NotFullDimensional):
        mvee_centered([(1.0, 2.0, 3.0), (4.0, 5.0, 6.0)])


def test_ellipsoid_validation():
    with pytest.raises(InvariantError):
        Ellipsoid(M=np.eye(2))
    with pytest.raises(InvariantError):
        Ellipsoid(M=np.array([[1.0, 0.5, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]))
    with pytest.raises(InvariantError):
        Ellipsoid(M=np.diag([1.0, 1.0, -1.0]))


def test_too_few_contacts():
    # a strictly larger ball touches nothing
    E = Ellipsoid(M=np.eye(3) / 100.0)
    with pytest.raises(TooFewContacts):
        contact_points(E, CUBE_CORNERS)


def test_duplicates_and_negatives_harmless():
    doubled = np.vstack([CUBE_CORNERS, -CUBE_CORNERS, CUBE_CORNERS[:3]])
    E = mvee_centered(doubled)
    assert np.allclose(E.M, np.eye(3) / 3.0, atol=1e-9)
