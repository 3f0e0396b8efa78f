"""Lattice widths of polytopes and the width-volume inequality.

The lattice width of a body K is min over nonzero integer directions u
of max⟨v,u⟩ − min⟨v,u⟩, v in K.  Finding the minimum needs only finitely
many candidates: the central ellipsoid of the difference body contains
K − K after sqrt(3) shrinking, so any direction beating a known width W
satisfies ||M^(-1/2) u|| <= sqrt(3) W, an ellipsoid containing finitely
many lattice points.

For polytopes built in rational mode every width here is an exact
Fraction, which makes the inequality vol(K) >= width^3 / 12 checkable
with zero rounding; the simplex conv{0, (1,1/2,1/2), (1/2,1,1/2),
(1/2,1/2,1)} attains it with equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import PreconditionError, SingularLattice
from .geom import Polytope, difference_body, volume
from .mvee import mvee_centered

__all__ = [
    "LatticeDirection",
    "LatticeBasis",
    "WidthResult",
    "width_in_direction",
    "lattice_width",
    "is_nonseparable_unit_lattice",
    "density",
    "verify_width_volume_corollary",
]


def _canonical_primitive(u) -> tuple:
    try:
        a, b, c = (int(x) for x in u)
    except (TypeError, ValueError):
        raise PreconditionError("direction must be three integers")
    if (a, b, c) != tuple(int(x) for x in u) or any(x != int(x) for x in u):
        raise PreconditionError("direction must be three integers")
    if a == b == c == 0:
        raise PreconditionError("direction must be nonzero")
    g = math.gcd(math.gcd(abs(a), abs(b)), abs(c))
    a, b, c = a // g, b // g, c // g
    for x in (a, b, c):
        if x != 0:
            if x < 0:
                a, b, c = -a, -b, -c
            break
    return (a, b, c)


@dataclass(frozen=True)
class LatticeDirection:
    """Primitive integer direction, gcd-reduced, first nonzero positive."""

    u: tuple

    def __post_init__(self):
        object.__setattr__(self, "u", _canonical_primitive(self.u))

    def as_tuple(self) -> tuple:
        return self.u


@dataclass(frozen=True)
class WidthResult:
    """Minimal width with an attaining direction and search effort."""

    value: object  # Fraction in rational mode, float otherwise
    direction: tuple
    checked: int


def width_in_direction(P: Polytope, u) -> object:
    """max dot - min dot over the vertices; exact in rational mode.

    The direction is used verbatim (no gcd reduction), so a doubled
    direction reports a doubled width; pass a LatticeDirection for the
    canonical primitive representative.
    """
    if isinstance(u, LatticeDirection):
        d = u.u
    else:
        d = tuple(u)
        if len(d) != 3 or any(x != int(x) for x in d):
            raise PreconditionError("direction must be three integers")
        d = tuple(int(x) for x in d)
        if d == (0, 0, 0):
            raise PreconditionError("direction must be nonzero")
    dots = [vx * d[0] + vy * d[1] + vz * d[2] for (vx, vy, vz) in P.vertices]
    return max(dots) - min(dots)


def lattice_width(P: Polytope, safety: float = 1e-6) -> WidthResult:
    """Exact minimal lattice width by ellipsoid-pruned enumeration.

    The candidate box comes from the axis widths; candidates are scanned
    in order of ellipsoid norm so the cutoff tightens as soon as a better
    direction appears.  Ties prefer the lexicographically greatest
    canonical direction.
    """
    axis_widths = [width_in_direction(P, e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    w0 = min(axis_widths)
    if w0 <= 0:
        raise PreconditionError("polytope must be full-dimensional")

    D = difference_body(P)
    M = mvee_centered(np.asarray(D.as_array(), float)).M
    radius = math.sqrt(3.0) * float(w0) * (1.0 + safety)
    box = [int(math.floor(radius * math.sqrt(M[i, i]) + 1e-9)) for i in range(3)]

    cand = []
    for a in range(0, box[0] + 1):
        for b in range(-box[1], box[1] + 1):
            for c in range(-box[2], box[2] + 1):
                if (a, b, c) == (0, 0, 0):
                    continue
                if (a, b, c) != _canonical_primitive_or_none(a, b, c):
                    continue
                cand.append((a, b, c))
    arr = np.array(cand, dtype=float)
    Mhalf_inv = np.linalg.cholesky(np.linalg.inv(M))
    norms = np.linalg.norm(arr @ Mhalf_inv, axis=1)
    order = np.argsort(norms, kind="stable")

    best = None
    best_u = None
    checked = 0
    cutoff = math.sqrt(3.0) * float(w0) * (1.0 + safety)
    for idx in order:
        if norms[idx] > cutoff:
            break
        u = cand[int(idx)]
        w = width_in_direction(P, u)
        checked += 1
        if best is None or w < best or (w == best and u > best_u):
            if best is None or w < best:
                cutoff = math.sqrt(3.0) * float(w) * (1.0 + safety)
            best, best_u = w, u
    return WidthResult(value=best, direction=best_u, checked=checked)


def _canonical_primitive_or_none(a, b, c):
    g = math.gcd(math.gcd(abs(a), abs(b)), abs(c))
    if g == 0:
        return None
    t = (a // g, b // g, c // g)
    for x in t:
        if x != 0:
            if x < 0:
                t = (-t[0], -t[1], -t[2])
            break
    return t


def is_nonseparable_unit_lattice(P: Polytope) -> bool:
    """Whether the lattice width is at least 1.

    Exact for rational-mode polytopes.  In float mode a width within
    1e-9 of the threshold is refused rather than guessed.
    """
    w = lattice_width(P).value
    if P.mode == "rational":
        return w >= 1
    if abs(float(w) - 1.0) < 1e-9:
        raise PreconditionError("width too close to 1 to decide in float mode")
    return float(w) > 1.0


def density(P: Polytope):
    """vol(K) / width(K)^3; at least 1/12 for every convex polytope."""
    w = lattice_width(P).value
    v = volume(P)
    if P.mode == "rational":
        return Fraction(v) / Fraction(w) ** 3
    return float(v) / float(w) ** 3


def verify_width_volume_corollary(P: Polytope) -> dict:
    """Check vol(K) >= width(K)^3 / 12, exactly when possible.

    Returns volume, width, the attaining direction, the bound, the slack
    vol - width^3/12, and whether the inequality holds.  In rational mode
    every field is an exact Fraction and ``exact`` is True.
    """
    res = lattice_width(P)
    v = volume(P)
    exact = P.mode == "rational"
    if exact:
        bound = Fraction(res.value) ** 3 / 12
        slack = Fraction(v) - bound
    else:
        bound = float(res.value) ** 3 / 12.0
        slack = float(v) - bound
    return {
        "volume": v,
        "width": res.value,
        "direction": res.direction,
        "bound": bound,
        "slack": slack,
        "holds": slack >= (0 if exact else -1e-9),
        "exact": exact,
    }


class LatticeBasis:
    """Integer basis B of a sublattice; widths are measured against it.

    The width of K with respect to the lattice B Z^3 equals the standard
    lattice width of B^(-1) K, computed exactly through the adjugate.
    """

    def __init__(self, rows):
        B = [[int(x) for x in row] for row in rows]
        if len(B) != 3 or any(len(r) != 3 for r in B):
            raise PreconditionError("basis must be a 3x3 integer matrix")
        (a, b, c), (d, e, f), (g, h, i) = B
        det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
        if det == 0:
            raise SingularLattice("basis vectors are linearly dependent")
        self.rows = tuple(tuple(r) for r in B)
        self.det = det
        # adjugate / det = exact inverse
        self._inv = [
            [Fraction(e * i - f * h, det), Fraction(c * h - b * i, det), Fraction(b * f - c * e, det)],
            [Fraction(f * g - d * i, det), Fraction(a * i - c * g, det), Fraction(c * d - a * f, det)],
            [Fraction(d * h - e * g, det), Fraction(b * g - a * h, det), Fraction(a * e - b * d, det)],
        ]

    def transform(self, P: Polytope) -> Polytope:
        """B^(-1) K as a new polytope (exact in rational mode)."""
        inv = self._inv
        if P.mode == "rational":
            verts = [
                tuple(inv[r][0] * x + inv[r][1] * y + inv[r][2] * z for r in range(3))
                for (x, y, z) in P.vertices
            ]
        else:
            fi = [[float(q) for q in row] for row in inv]
            verts = [
                tuple(fi[r][0] * x + fi[r][1] * y + fi[r][2] * z for r in range(3))
                for (x, y, z) in P.vertices
            ]
        return Polytope(verts, mode=P.mode)

    def width(self, P: Polytope) -> WidthResult:
        return lattice_width(self.transform(P))
