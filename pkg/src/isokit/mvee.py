"""Minimum-volume enclosing ellipsoid of an origin-symmetric point set.

The solver works on the centered formulation only: for points +-s_i the
ellipsoid is {x : x^T M x <= 1} with no translation term, and finding it
is the classical D-optimal design problem

    maximize  log det V(u),   V(u) = sum_i u_i s_i s_i^T,   u in simplex.

At the optimum M = V^{-1} / 3, and the optimal design weights u_i are
(up to the factor 3) contact-point weights.  The iteration below is the
multiplicative-weight / Frank-Wolfe ascent with Wolfe-Atwood away steps,
which in practice converges linearly and so reaches tight tolerances
(1e-9) at moderate iteration counts.  Each step does an exact line
search, so the design objective det V is nondecreasing throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvariantError, NoConvergence, NotFullDimensional, TooFewContacts

__all__ = ["Ellipsoid", "mvee_centered", "contact_points"]

_SUPPORT_EPS = 1e-15


@dataclass(frozen=True)
class Ellipsoid:
    """Origin-centered ellipsoid {x : x^T M x <= 1} with solver metadata."""

    M: np.ndarray
    iterations: int = 0
    gap: float = 0.0
    weights: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        M = np.asarray(self.M, dtype=float)
        if M.shape != (3, 3):
            raise InvariantError("shape matrix must be 3x3")
        if not np.allclose(M, M.T, atol=1e-9 * max(1.0, float(np.abs(M).max()))):
            raise InvariantError("shape matrix must be symmetric")
        if np.linalg.eigvalsh(0.5 * (M + M.T))[0] <= 0:
            raise InvariantError("shape matrix must be positive definite")
        object.__setattr__(self, "M", 0.5 * (M + M.T))


def mvee_centered(points, tol: float = 1e-9, max_iter: int | None = None, trace=None) -> Ellipsoid:
    """MVEE of the symmetric set {+-s : s in points}.

    Parameters
    ----------
    points : (m, 3) array-like
        One representative per antipodal pair is enough; duplicates and
        explicit negatives are harmless.
    tol : float
        Relative duality gap at exit: all points satisfy s^T M s <= 1 + tol
        and the support satisfies s^T M s >= 1 - tol.
    max_iter : int, optional
        Iteration cap; default 100 * m * log(1/tol).
    trace : list, optional
        If given, (det V, det M_feasible) is appended per iteration, where
        M_feasible is the current iterate rescaled to contain all points.

    Raises
    ------
    NotFullDimensional
        If the points span fewer than 3 dimensions.
    NoConvergence
        If the iteration cap is reached before the gap closes.
    """
    X = np.asarray(points, dtype=float)
    if X.ndim != 2 or X.shape[1] != 3:
        raise NotFullDimensional("expected an (m, 3) point array")
    m = X.shape[0]
    if m < 3 or np.linalg.matrix_rank(X, tol=1e-12 * max(1.0, float(np.abs(X).max()))) < 3:
        raise NotFullDimensional("points span fewer than 3 dimensions")
    if max_iter is None:
        max_iter = int(100 * m * math.log(1.0 / min(tol, 0.5)))

    u = np.full(m, 1.0 / m)
    V = (X.T * u) @ X
    for it in range(max_iter + 1):
        try:
            Vinv = np.linalg.inv(V)
        except np.linalg.LinAlgError:
            V = (X.T * u) @ X
            Vinv = np.linalg.inv(V)
        w = np.einsum("ij,jk,ik->i", X, Vinv, X)
        jp = int(np.argmax(w))
        kp = float(w[jp])
        sup = u > _SUPPORT_EPS
        jm = int(np.flatnonzero(sup)[np.argmin(w[sup])])
        km = float(w[jm])
        if trace is not None:
            trace.append((float(np.linalg.det(V)), float(np.linalg.det(Vinv / kp))))
        gap = max(kp / 3.0 - 1.0, 1.0 - km / 3.0)
        if gap <= tol:
            M = Vinv / kp if kp > 3.0 else Vinv / 3.0
            return Ellipsoid(M=M, iterations=it, gap=gap, weights=u.copy())
        if kp - 3.0 >= 3.0 - km:
            j, k = jp, kp
            beta = (k - 3.0) / (3.0 * (k - 1.0))
        else:
            # away step; for k <= 1 the objective is monotone along the
            # ray, so the best feasible move drops the point entirely
            j, k = jm, km
            floor = -u[j] / (1.0 - u[j])
            beta = max((k - 3.0) / (3.0 * (k - 1.0)), floor) if k > 1.0 else floor
        x = X[j]
        u *= 1.0 - beta
        u[j] += beta
        np.clip(u, 0.0, None, out=u)
        V = (1.0 - beta) * V + beta * np.outer(x, x)
        if it % 256 == 255:
            V = (X.T * u) @ X  # refresh accumulated rank-one drift
    raise NoConvergence(f"ellipsoid solver did not reach tol={tol} in {max_iter} iterations")


def contact_points(ellipsoid: Ellipsoid, points, tol: float = 1e-9) -> np.ndarray:
    """Points of the set lying on the ellipsoid boundary, s^T M s >= 1 - tol.

    One representative per antipodal pair is returned, with the
    lexicographically larger sign chosen, sorted for determinism.

    Raises TooFewContacts if fewer than 3 linearly independent contact
    directions are found.
    """
    X = np.asarray(points, dtype=float)
    vals = np.einsum("ij,jk,ik->i", X, ellipsoid.M, X)
    sel = X[vals >= 1.0 - tol]
    canon = {}
    for s in sel:
        t = tuple(s) if tuple(s) >= tuple(-s) else tuple(-s)
        key = tuple(round(c, 12) for c in t)
        canon.setdefault(key, t)
    out = np.array(sorted(canon.values()), dtype=float)
    if len(out) == 0 or np.linalg.matrix_rank(out, tol=1e-8 * float(np.abs(out).max())) < 3:
        raise TooFewContacts("fewer than 3 independent contact directions")
    return out
