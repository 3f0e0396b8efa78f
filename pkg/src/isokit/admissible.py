"""Determinant coordinates of contact configurations and their algebra.

For six unit directions u_1..u_6 (weights sorted so u_6 carries the
largest one) set a_ij = det(u_i, u_j, u_6) for 1 <= i < j <= 5.  These
ten numbers satisfy five quadratic relations

    a13 a24 - a14 a23 = a12 a34        a13 a25 - a15 a23 = a12 a35
    a14 a25 - a15 a24 = a12 a45        a14 a35 - a15 a34 = a13 a45
    a24 a35 - a25 a34 = a23 a45

and |a_ij| <= 1.  A ten-tuple with these properties is an *admissible
set*; the weighted square sum sum lam_i lam_j a_ij^2 equals 1 for any
decomposition reproducing the identity, and its maximum over admissible
sets (the subject of the certifier module) is 2.

The module also carries the peculiar boundary family and the planar
region Omega with its self-map g, used to bound the maximizers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import (
    InfeasibleMagnitudes,
    InvariantError,
    NoSignAssignment,
    PreconditionError,
    SingularPoint,
)
from .geom import det3

__all__ = [
    "PAIRS",
    "AdmissibleSet",
    "LambdaVector",
    "lambda_pair_products",
    "from_contact_vectors",
    "check_relations",
    "relation_residuals",
    "parseval_sum",
    "objective",
    "peculiar_from",
    "omega_contains",
    "g_map",
    "five_square_max",
    "f_eval",
]

#: index pairs (i, j), 1-based, in storage order
PAIRS = ((1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5))

_PAIR_POS = {p: k for k, p in enumerate(PAIRS)}

# each relation: (i, j, k, l, m, n) meaning a_i a_j - a_k a_l = a_m a_n
# with letters indexing into the storage order above
_RELATIONS = (
    (1, 5, 2, 4, 0, 7),
    (1, 6, 3, 4, 0, 8),
    (2, 6, 3, 5, 0, 9),
    (2, 8, 3, 7, 1, 9),
    (5, 8, 6, 7, 4, 9),
)


def relation_residuals(values) -> np.ndarray:
    """The five relation defects a_i a_j - a_k a_l - a_m a_n."""
    a = _as_ten(values)
    return np.array([a[i] * a[j] - a[k] * a[l] - a[m] * a[n] for i, j, k, l, m, n in _RELATIONS])


def check_relations(values, tol: float = 1e-9) -> bool:
    """Do all five determinant relations hold within tol?"""
    return bool(np.max(np.abs(relation_residuals(values))) <= tol)


def _as_ten(values) -> np.ndarray:
    if isinstance(values, AdmissibleSet):
        return values.a
    a = np.asarray(values, dtype=float)
    if a.shape != (10,):
        raise PreconditionError("expected 10 entries in PAIRS order")
    return a


class AdmissibleSet:
    """Validated ten-tuple a_ij, 1 <= i < j <= 5, in ``PAIRS`` order."""

    __slots__ = ("a",)

    def __init__(self, values, rel_tol: float = 1e-9):
        a = np.asarray(values, dtype=float)
        if a.shape != (10,):
            raise InvariantError("an admissible set has 10 entries")
        if np.max(np.abs(a)) > 1.0 + 1e-9:
            raise InvariantError("entries must lie in [-1, 1]")
        res = relation_residuals(a)
        if np.max(np.abs(res)) > rel_tol:
            raise InvariantError(f"relations violated by {np.max(np.abs(res)):.3e}")
        self.a = a

    def get(self, i: int, j: int) -> float:
        """Entry a_ij for distinct 1-based indices, antisymmetric in (i, j)."""
        if i == j or not (1 <= i <= 5 and 1 <= j <= 5):
            raise IndexError("indices must be distinct and in 1..5")
        return float(self.a[_PAIR_POS[(i, j)]]) if i < j else -float(self.a[_PAIR_POS[(j, i)]])

    def as_array(self) -> np.ndarray:
        return self.a.copy()

    def __repr__(self):
        return f"AdmissibleSet({np.array2string(self.a, precision=6, suppress_small=True)})"


@dataclass(frozen=True)
class LambdaVector:
    """Six nonnegative weights summing to 3, the largest stored last."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (6,):
            raise InvariantError("need six weights")
        if np.any(v < -1e-12):
            raise InvariantError("weights must be nonnegative")
        if abs(float(v.sum()) - 3.0) > 1e-9:
            raise InvariantError("weights must sum to 3")
        if v[5] < v.max() - 1e-12:
            raise InvariantError("the sixth weight must be the maximum")
        object.__setattr__(self, "values", np.clip(v, 0.0, None))

    def __getitem__(self, k):
        return float(self.values[k])


def _as_lambda(L) -> np.ndarray:
    if isinstance(L, LambdaVector):
        return L.values
    return LambdaVector(np.asarray(L, dtype=float)).values


def lambda_pair_products(L) -> np.ndarray:
    """The ten products lam_i lam_j in ``PAIRS`` order (indices 1..5 only)."""
    lam = _as_lambda(L)
    return np.array([lam[i - 1] * lam[j - 1] for i, j in PAIRS])


def from_contact_vectors(u) -> AdmissibleSet:
    """Admissible set of six unit directions: a_ij = det(u_i, u_j, u_6).

    The relations hold automatically (exactly, up to rounding) and
    Hadamard's inequality keeps every entry in [-1, 1].
    """
    arr = np.asarray(u, dtype=float)
    if arr.shape != (6, 3):
        raise PreconditionError("expected six 3-vectors")
    norms = np.linalg.norm(arr, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-6):
        raise PreconditionError("directions must be unit vectors")
    arr = arr / norms[:, None]
    u6 = arr[5]
    vals = [det3(arr[i - 1], arr[j - 1], u6) for i, j in PAIRS]
    return AdmissibleSet(np.clip(vals, -1.0, 1.0), rel_tol=1e-7)


def objective(values, L) -> float:
    """Weighted square sum  sum_{i<j<=5} lam_i lam_j a_ij^2.

    Accepts raw ten-entry arrays as well, so hypothetical (inadmissible)
    configurations can be scored.
    """
    a = _as_ten(values)
    return float(np.dot(lambda_pair_products(L), a * a))


def parseval_sum(values, L) -> float:
    """Same weighted square sum, in its role as the contact identity.

    For any decomposition sum lam_i u_i u_i^T = Id the value is 1.
    """
    return objective(values, L)


# ---------------------------------------------------------------------------
# peculiar boundary family
# ---------------------------------------------------------------------------

_FREE_SLOTS = [_PAIR_POS[p] for p in ((1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5))]

_SIGNS = np.ones((256, 10))
for _k, _combo in enumerate(product((1.0, -1.0), repeat=8)):
    for _slot, _s in zip(_FREE_SLOTS, _combo):
        _SIGNS[_k, _slot] = _s


def peculiar_from(a14_abs: float, a15_abs: float, sign_seed=None) -> AdmissibleSet:
    """Member of the boundary family with prescribed |a14|, |a15|.

    Five entries have magnitude one (a12, a13, a24, a35, a45) and the
    remaining magnitudes are forced:

        |a23| = (|a14| + |a15| - 1) / |a14 a15|
        |a25| = (1 - |a15|) / |a14|
        |a34| = (1 - |a14|) / |a15|

    which requires |a14| + |a15| >= 1 (InfeasibleMagnitudes otherwise).
    Signs are found by exhaustive search with a12 = a13 = +1 fixed (a
    global sign symmetry); pass ``sign_seed`` to rotate the search order
    among valid assignments.
    """
    x, y = float(a14_abs), float(a15_abs)
    if not (0.0 < x <= 1.0 and 0.0 < y <= 1.0):
        raise InfeasibleMagnitudes("|a14|, |a15| must lie in (0, 1]")
    if x + y < 1.0:
        raise InfeasibleMagnitudes("|a14| + |a15| must be at least 1")
    mag = np.empty(10)
    mag[_PAIR_POS[(1, 2)]] = 1.0
    mag[_PAIR_POS[(1, 3)]] = 1.0
    mag[_PAIR_POS[(2, 4)]] = 1.0
    mag[_PAIR_POS[(3, 5)]] = 1.0
    mag[_PAIR_POS[(4, 5)]] = 1.0
    mag[_PAIR_POS[(1, 4)]] = x
    mag[_PAIR_POS[(1, 5)]] = y
    mag[_PAIR_POS[(2, 3)]] = (x + y - 1.0) / (x * y)
    mag[_PAIR_POS[(2, 5)]] = (1.0 - y) / x
    mag[_PAIR_POS[(3, 4)]] = (1.0 - x) / y

    cand = _SIGNS * mag
    res = np.stack(
        [cand[:, i] * cand[:, j] - cand[:, k] * cand[:, l] - cand[:, m] * cand[:, n] for i, j, k, l, m, n in _RELATIONS],
        axis=1,
    )
    ok = np.flatnonzero(np.max(np.abs(res), axis=1) <= 1e-9)
    if len(ok) == 0:
        raise NoSignAssignment(f"no sign pattern satisfies the relations for ({x}, {y})")
    pick = ok[0]
    if sign_seed is not None:
        pick = ok[int(np.random.default_rng(sign_seed).integers(0, len(ok)))]
    return AdmissibleSet(cand[pick])


# ---------------------------------------------------------------------------
# planar region calculus
# ---------------------------------------------------------------------------


def omega_contains(x: float, y: float) -> bool:
    """Closed region: x, y >= 1/2, xy <= 1/2, 2y - xy <= 1, 2x - xy <= 1."""
    return bool(
        x >= 0.5 and y >= 0.5 and x * y <= 0.5 and 2.0 * y - x * y <= 1.0 and 2.0 * x - x * y <= 1.0
    )


def g_map(x: float, y: float):
    """The substitution map g(x, y) = ((1 - x)/(1 - xy), 1 - xy).

    Maps the region Omega into itself.  Undefined where xy = 1.
    """
    d = 1.0 - x * y
    if d == 0.0:
        raise SingularPoint("g is undefined where xy = 1")
    return ((1.0 - x) / d, d)


def five_square_max(x: float, y: float) -> float:
    """max of the five squares x^2, y^2, (1-xy)^2 and the two g-ratios.

    On Omega the value never exceeds 9/16.
    """
    d = 1.0 - x * y
    if d == 0.0:
        raise SingularPoint("undefined where xy = 1")
    return float(
        max(x * x, y * y, d * d, ((1.0 - x) / d) ** 2, ((1.0 - y) / d) ** 2)
    )


def f_eval(L, x: float, y: float) -> float:
    """The two-variable envelope of the objective over the peculiar family.

        f = l1 l5 ((y-1)/(xy-1))^2 + l1 l4 ((x-1)/(xy-1))^2
          + l2 l3 (1-xy)^2 + l2 l5 y^2 + l3 l4 x^2

    Defined for (x, y) in [0,1]^2 away from (1, 1).  Adding the five
    untouched products l1l2 + l1l3 + l2l4 + l3l5 + l4l5 keeps the total
    at most 2 for any valid weight vector.
    """
    lam = _as_lambda(L)
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise PreconditionError("(x, y) must lie in the unit square")
    d = x * y - 1.0
    if d == 0.0:
        raise SingularPoint("f is undefined at (1, 1)")
    return float(
        lam[0] * lam[4] * ((y - 1.0) / d) ** 2
        + lam[0] * lam[3] * ((x - 1.0) / d) ** 2
        + lam[1] * lam[2] * d * d
        + lam[1] * lam[4] * y * y
        + lam[2] * lam[3] * x * x
    )
