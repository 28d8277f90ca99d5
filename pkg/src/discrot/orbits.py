"""Periodic orbit detection, time-reversal classification and enumeration."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import mpmath

from .dynamics import LatticeState, RotationParams, in_fix_g, in_fix_phi, involution_phi
from .exact import FieldElement
from .geometry import TrapSpec, ball_states, norm_sq

__all__ = [
    "Budget",
    "NotSymmetricError",
    "OrbitResult",
    "PeriodEnumeration",
    "RationalAngleError",
    "SymmetryClass",
    "UnresolvedOrbitError",
    "classify_orbit",
    "classify_symmetry",
    "detect_period",
    "detect_period_symmetric",
    "enumerate_orbits_with_period",
    "orbit_states",
    "period_p_ball_radius",
    "symmetry_centres",
    "theta_over_pi_rational",
]

DEFAULT_MAX_STEPS = 10**7


class RationalAngleError(ValueError):
    """The rotation angle is a rational multiple of pi."""


class NotSymmetricError(ValueError):
    pass


class UnresolvedOrbitError(RuntimeError):
    pass


@dataclass(frozen=True)
class Budget:
    max_steps: int = DEFAULT_MAX_STEPS
    max_norm_sq: Fraction | None = None

    def __post_init__(self):
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")


class SymmetryClass(str, enum.Enum):
    ASYMMETRIC = "asymmetric"
    PHI_SYMMETRIC = "phi_symmetric"
    G_SYMMETRIC = "g_symmetric"
    DOUBLY_SYMMETRIC = "doubly_symmetric"


@dataclass(frozen=True)
class OrbitResult:
    outcome: str  # "periodic" or "unresolved"
    steps_used: int
    max_norm_sq_seen: FieldElement
    period: int | None = None
    canonical: LatticeState | None = None

    @property
    def periodic(self) -> bool:
        return self.outcome == "periodic"


class _NormTracker:
    """Running exact maximum of the squared norm, prefiltered in floating point."""

    def __init__(self, p: RotationParams, cap: Fraction | None = None):
        self.p = p
        self.shifted = p.has_shift
        self.cap = cap
        self.cap_f = float(cap) if cap is not None else math.inf
        self.best = FieldElement(0)
        self.best_f = 0.0
        self._lam = float(p.lam)
        self._k = float(p.kappa) if self.shifted else 0.0
        self._s2 = float(p.sin_sq_theta)

    def update(self, s) -> bool:
        """Record ``s``; False once the norm cap is exceeded."""
        X, Y = s[0] + self._k, s[1] + self._k
        f = (X * X + Y * Y + self._lam * X * Y) / self._s2
        if f >= self.best_f * (1 - 1e-9):
            exact = norm_sq(s, self.p, self.shifted)
            if exact > self.best:
                self.best, self.best_f = exact, float(exact)
        if f > self.cap_f * (1 - 1e-9):
            return not norm_sq(s, self.p, self.shifted) > self.cap
        return True


def orbit_states(seed, p: RotationParams, budget: Budget = Budget(), track_norm: bool = True):
    """Forward orbit of ``seed`` up to its first return.

    Returns ``(states, steps_used, max_norm_sq)`` where ``states`` is None if
    the budget ran out.  ``F`` is a bijection, so the first return to the
    seed is the first repetition and ``len(states)`` is the minimal period.
    """
    seed = LatticeState(*seed)
    tracker = _NormTracker(p, budget.max_norm_sq) if track_norm or budget.max_norm_sq else None
    if tracker:
        tracker.update(seed)
    states = [seed]
    sx, sy = seed
    x, y = seed
    floor_arg = p.floor_arg
    for n in range(1, budget.max_steps + 1):
        x, y = y, -floor_arg(x, y)
        if x == sx and y == sy:
            return states, n, tracker.best if tracker else None
        s = LatticeState(x, y)
        states.append(s)
        if tracker and not tracker.update(s):
            return None, n, tracker.best
    return None, budget.max_steps, tracker.best if tracker else None


def detect_period(seed, p: RotationParams, budget: Budget = Budget()) -> OrbitResult:
    """Iterate until the orbit closes; canonical is the lexicographic minimum."""
    states, n, best = orbit_states(seed, p, budget)
    if states is None:
        return OrbitResult("unresolved", n, best)
    return OrbitResult("periodic", n, best, len(states), min(states))


def detect_period_symmetric(seed, p: RotationParams, budget: Budget = Budget()) -> OrbitResult:
    """Period of a symmetric seed from roughly half an orbit.

    Both ``phi`` and ``g`` reverse ``F``.  If the seed and ``F^n(seed)`` are
    fixed by the same involution then ``F^(2n)`` fixes the seed; for seed in
    Fix(phi) reaching Fix(g) it is ``F^(2n+1)``, and ``F^(2n-1)`` the other
    way round.  The period is the least divisor of that exponent that
    actually returns.  The unvisited half of the orbit is the ``phi``-image
    of the visited half.
    """
    seed = LatticeState(*seed)
    seed_phi = in_fix_phi(seed)
    seed_g = in_fix_g(seed, p)
    if not (seed_phi or seed_g):
        raise NotSymmetricError(f"{seed} is fixed by neither involution")
    tracker = _NormTracker(p, budget.max_norm_sq)
    tracker.update(seed)
    if seed_phi and seed_g:
        return OrbitResult("periodic", 0, tracker.best, 1, seed)

    floor_arg = p.floor_arg
    states = [seed]
    x, y = seed
    nx, ny = y, -floor_arg(x, y)  # F(seed), used to test Fix(g) membership
    for n in range(1, budget.max_steps + 1):
        x, y = nx, ny
        nx, ny = y, -floor_arg(x, y)
        s = LatticeState(x, y)
        states.append(s)
        if not tracker.update(s):
            return OrbitResult("unresolved", n, tracker.best)
        hit_phi = x == y
        hit_g = ny == x  # g(s) = phi(F(s)) == s
        if not (hit_phi or hit_g):
            continue
        exponents = []
        if hit_phi:
            exponents.append(2 * n if seed_phi else 2 * n - 1)
        if hit_g:
            exponents.append(2 * n if seed_g else 2 * n + 1)
        D = math.gcd(*exponents)
        period = next(q for q in _divisors(D) if q == D or states[q] == seed)
        canonical = min(min(states), min(involution_phi(t) for t in states))
        return OrbitResult("periodic", n, tracker.best, period, canonical)
    return OrbitResult("unresolved", budget.max_steps, tracker.best)


def _divisors(n: int) -> list[int]:
    small = [q for q in range(1, math.isqrt(n) + 1) if n % q == 0]
    return sorted(set(small + [n // q for q in small]))


def _hits(states: list) -> tuple[list[int], list[int]]:
    P = len(states)
    phi_hits = [i for i, (x, y) in enumerate(states) if x == y]
    # (x, y) is g-fixed iff the next state is (y, x)
    g_hits = [i for i, (x, _) in enumerate(states) if states[(i + 1) % P][1] == x]
    return phi_hits, g_hits


def classify_orbit(states: list) -> SymmetryClass:
    """Class of a closed orbit given as its full list of states."""
    phi_hits, g_hits = _hits(states)
    if phi_hits and g_hits:
        return SymmetryClass.DOUBLY_SYMMETRIC
    if len(phi_hits) > 1 or len(g_hits) > 1:
        return SymmetryClass.DOUBLY_SYMMETRIC
    if phi_hits:
        return SymmetryClass.PHI_SYMMETRIC
    if g_hits:
        return SymmetryClass.G_SYMMETRIC
    return SymmetryClass.ASYMMETRIC


def symmetry_centres(states: list) -> list[int]:
    """Doubled centres ``b`` (``a[b-n] == a[n]``) of the first-coordinate sequence.

    ``a[i] == a[i+1]`` gives ``b = 2i + 1``; ``a[i] == a[i+2]`` gives ``b = 2i + 2``.
    """
    phi_hits, g_hits = _hits(states)
    return sorted([2 * i + 1 for i in phi_hits] + [2 * i + 2 for i in g_hits])


def classify_symmetry(seed, p: RotationParams, budget: Budget = Budget()) -> SymmetryClass:
    states, n, _ = orbit_states(seed, p, budget, track_norm=False)
    if states is None:
        raise UnresolvedOrbitError(f"orbit of {tuple(seed)} unresolved after {n} steps")
    return classify_orbit(states)


def theta_over_pi_rational(p: RotationParams) -> bool:
    """Whether ``arccos(-lam/2) / pi`` is rational.

    Over Q and real quadratic fields ``2 cos(q*pi)`` only takes the values
    0, +-1, +-sqrt(2), +-sqrt(3) and (+-1 +- sqrt(5))/2.
    """
    lam = p.lam
    if lam.is_rational:
        return lam in (0, 1, -1)
    sq = lam * lam
    return sq == 2 or sq == 3 or sq + lam - 1 == 0 or sq - lam - 1 == 0


def period_p_ball_radius(pd: int, p: RotationParams) -> float:
    """Radius ``pd * csc(t) / (2|sin(pd*t/2)|)`` containing every period-``pd`` state.

    Over one period the rounding translations (each of length at most
    ``csc t``) must cancel the displacement ``(I - rot(pd*t)) v``, whose
    length is ``2|sin(pd*t/2)| |v|``.  Inflated by ``1 + 1e-9``.
    """
    if pd < 1:
        raise ValueError("period must be positive")
    if theta_over_pi_rational(p):
        raise RationalAngleError(f"theta/pi is rational for lambda={p.lam}")
    with mpmath.workdps(50):
        lam = _mp_value(p.lam)
        theta = mpmath.acos(-lam / 2)
        rho = pd / mpmath.sin(theta) / (2 * abs(mpmath.sin(pd * theta / 2)))
        return float(rho * (1 + mpmath.mpf("1e-9")))


def _mp_value(v: FieldElement):
    if v.is_rational:
        return mpmath.mpf(v.a) / v.c
    return (v.a + v.b * mpmath.sqrt(v.d)) / v.c


class PeriodEnumeration(NamedTuple):
    representatives: list[LatticeState]
    radius_sq: Fraction
    unresolved: list[LatticeState]

    @property
    def complete(self) -> bool:
        return not self.unresolved


def enumerate_orbits_with_period(
    pd: int, p: RotationParams, budget: Budget = Budget(), radius_factor: float = 1.0
) -> PeriodEnumeration:
    """Canonical representatives of all orbits of exact period ``pd``.

    Every state in the ball of radius ``radius_factor * rho(pd)`` is scanned.
    A seed whose orbit does not close within ``pd`` steps has a longer
    period (or none), so the step budget per seed is ``min(pd, max_steps)``;
    only a user budget smaller than ``pd`` leaves seeds unresolved.
    """
    rho = period_p_ball_radius(pd, p) * radius_factor
    r = Fraction(rho)
    trap = TrapSpec(r * r, shifted=p.has_shift)
    local = Budget(min(pd, budget.max_steps))
    reps: set[LatticeState] = set()
    unresolved = []
    seen: set[LatticeState] = set()
    for s in ball_states(trap, p):
        if s in seen:
            continue
        states, n, _ = orbit_states(s, p, local, track_norm=False)
        if states is None:
            if local.max_steps < pd:
                unresolved.append(s)
            continue
        seen.update(states)
        if len(states) == pd:
            reps.add(min(states))
    return PeriodEnumeration(sorted(reps), trap.radius_sq, unresolved)
