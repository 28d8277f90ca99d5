"""Exact geometry of the rotation lattice in integer coordinates.

The state ``(x, y)`` stands for the planar point ``x*e1 + y*e2`` with
``e1 = (-csc t, 0)`` and ``e2 = (cot t, 1)``, ``lam = -2 cos t``.  Its squared
Euclidean length is the quadratic form::

    N(x, y) = (x^2 + y^2 + lam*x*y) / (1 - lam^2/4)

so every predicate here stays inside Q(lam) and is decided exactly.  With
``shifted=True`` the lattice is translated by ``kappa*(e1 + e2)``, which
conjugates the eta-map to the unshifted one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .dynamics import LatticeState, RotationParams
from .exact import FieldElement

__all__ = [
    "TrapSpec",
    "ball_states",
    "embed_real",
    "embed_real_many",
    "in_ball",
    "in_trap",
    "norm_sq",
    "reflect_state",
    "trap_count",
    "trap_count_bruteforce",
    "trap_count_mod_reflection",
    "trap_states",
]


@dataclass(frozen=True)
class TrapSpec:
    radius_sq: Fraction
    shifted: bool = False

    def __post_init__(self):
        r2 = Fraction(self.radius_sq)
        if r2 <= 0:
            raise ValueError("radius_sq must be positive")
        object.__setattr__(self, "radius_sq", r2)

    @classmethod
    def from_radius(cls, radius, shifted: bool = False) -> TrapSpec:
        r = Fraction(radius)
        return cls(r * r, shifted)

    @property
    def radius(self) -> float:
        return math.sqrt(self.radius_sq)


def _coords(s, p: RotationParams, shifted: bool) -> tuple[FieldElement, FieldElement]:
    x, y = s
    if shifted:
        return x + p.kappa, y + p.kappa
    return FieldElement(x), FieldElement(y)


def _form(X: FieldElement, Y: FieldElement, p: RotationParams) -> FieldElement:
    # numerator x^2 + y^2 + lam*x*y, before division by sin^2
    return X * X + Y * Y + p.lam * X * Y


def norm_sq(s, p: RotationParams, shifted: bool = False) -> FieldElement:
    X, Y = _coords(s, p, shifted)
    return _form(X, Y, p) / p.sin_sq_theta


def _le_radius(X, Y, t: TrapSpec, p: RotationParams, strict: bool = False) -> bool:
    # N <= R^2  <=>  form <= R^2 sin^2, since sin^2 > 0
    diff = (_form(X, Y, p) - p.sin_sq_theta * t.radius_sq).sign()
    return diff < 0 if strict else diff <= 0


def in_ball(s, t: TrapSpec, p: RotationParams) -> bool:
    """Closed ball ``N(s) <= R^2``."""
    X, Y = _coords(s, p, t.shifted)
    return _le_radius(X, Y, t, p)


def in_trap(s, t: TrapSpec, p: RotationParams, include_top: bool = False) -> bool:
    """Membership in the sheared band ``{b + u*e2 : b in B(R), 0 <= u < 1} \\ B(R)``.

    ``h(u) = N(x, y - u)`` is a quadratic in ``u`` whose vertex sits at
    ``u* = y + lam*x/2`` with minimum value ``x^2``.  ``include_top`` also
    admits ``u = 1``, the alternative convention that matters only when the
    band touches the sphere at a lattice point (integer R).
    """
    X, Y = _coords(s, p, t.shifted)
    if _le_radius(X, Y, t, p):
        return False
    vertex = Y + p.lam * X / 2
    if vertex.sign() <= 0:
        # h increasing on (0, 1) and h(0) > R^2
        return False
    if (vertex - 1).sign() < 0:
        return (X * X - t.radius_sq).sign() <= 0
    # h decreasing on (0, 1): the infimum is h(1), attained only if u=1 allowed
    return _le_radius(X, Y - 1, t, p, strict=not include_top)


def reflect_state(s) -> LatticeState:
    """Swap of basis coefficients; an isometry since ``|e1| == |e2|``."""
    return LatticeState(s[1], s[0])


def _row_range(t: TrapSpec, p: RotationParams) -> range:
    r = math.sqrt(t.radius_sq)
    k = float(p.kappa) if t.shifted else 0.0
    return range(math.floor(-r - k) - 1, math.ceil(r - k) + 2)


def _chord(xf: float, r2: float, p: RotationParams) -> tuple[float, float] | None:
    """Float chord ``{Y : N(X, Y) <= R^2}`` on the row with shifted abscissa X."""
    h = r2 - xf * xf
    if h < 0:
        return None
    half = math.sqrt(float(p.sin_sq_theta) * h)
    centre = -float(p.lam) * xf / 2
    return centre - half, centre + half


def ball_states(t: TrapSpec, p: RotationParams) -> Iterator[LatticeState]:
    """All lattice states of the closed ball, ordered by ``(x, y)``.

    Rows and columns are bracketed in floating point with a two-unit margin;
    membership itself is decided exactly.
    """
    r2 = float(t.radius_sq)
    k = float(p.kappa) if t.shifted else 0.0
    for x in _row_range(t, p):
        chord = _chord(x + k, r2 + 1.0, p)
        if chord is None:
            continue
        lo, hi = chord
        for y in range(math.floor(lo - k) - 2, math.ceil(hi - k) + 3):
            if in_ball((x, y), t, p):
                yield LatticeState(x, y)


def trap_states(t: TrapSpec, p: RotationParams, include_top: bool = False) -> list[LatticeState]:
    """Every lattice state of the trap region, ordered by ``x``.

    A trap point on row ``x`` lies in ``(y_top, y_top + 1]`` above the top of
    the ball chord, so only a short window per row is examined.
    """
    r2 = float(t.radius_sq)
    k = float(p.kappa) if t.shifted else 0.0
    found = []
    for x in _row_range(t, p):
        chord = _chord(x + k, r2 + 1.0, p)
        if chord is None:
            continue
        top = _chord(x + k, r2, p)
        hi = top[1] if top is not None else chord[1]
        for y in range(math.floor(hi - k) - 2, math.ceil(hi - k) + 3):
            if in_trap((x, y), t, p, include_top):
                found.append(LatticeState(x, y))
    return found


def trap_count(t: TrapSpec, p: RotationParams, include_top: bool = False) -> int:
    return len(trap_states(t, p, include_top))


def trap_count_bruteforce(t: TrapSpec, p: RotationParams, include_top: bool = False) -> int:
    """Full scan of a provable bounding box; slow, used as a cross-check.

    ``N(x, y) >= (x^2 + y^2) / (1 + |lam|/2)`` bounds every coordinate of a
    ball point by ``R*sqrt(1 + |lam|/2)``; trap points sit at most one unit
    further along ``y``.
    """
    r = math.sqrt(t.radius_sq) * math.sqrt(1 + abs(float(p.lam)) / 2)
    k = abs(float(p.kappa)) if t.shifted else 0.0
    m = math.ceil(r + k) + 2
    return sum(
        in_trap((x, y), t, p, include_top)
        for x in range(-m, m + 1)
        for y in range(-m, m + 2)
    )


def trap_count_mod_reflection(t: TrapSpec, p: RotationParams) -> int:
    """Trap points counted up to the swap ``(x, y) -> (y, x)``.

    A pair ``{s, swap(s)}`` lying wholly inside the trap counts once.
    """
    pts = set(trap_states(t, p))
    paired = sum(1 for s in pts if s[0] != s[1] and reflect_state(s) in pts)
    return len(pts) - paired // 2


def embed_real(s, p: RotationParams, shifted: bool = False) -> tuple[float, float]:
    """Planar coordinates of a lattice state, for plotting."""
    (x, y), = embed_real_many([s], p, shifted)
    return float(x), float(y)


def embed_real_many(states, p: RotationParams, shifted: bool = False) -> np.ndarray:
    pts = np.asarray(list(states), dtype=float).reshape(-1, 2)
    if shifted:
        pts = pts + float(p.kappa)
    sin_t = math.sin(p.theta_float)
    basis = np.array([[-1.0 / sin_t, 0.0], [-float(p.lam) / 2 / sin_t, 1.0]])
    return pts @ basis
