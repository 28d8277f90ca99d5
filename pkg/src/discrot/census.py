"""Whole-region experiments: ball censuses and the counting bookkeeping.

A census scans every lattice state of a closed ball, follows each new seed
to its periodic orbit (or to budget exhaustion) and deduplicates orbits by
their lexicographically least state.  Partial censuses over disjoint seed
sets merge into the full one, which is what makes process-parallel scans
reproducible byte for byte.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .dynamics import LatticeState, RotationParams
from .exact import FieldElement
from .geometry import (
    TrapSpec,
    ball_states,
    in_ball,
    trap_count,
    trap_count_mod_reflection,
)
from .orbits import Budget, SymmetryClass, classify_orbit, orbit_states

__all__ = [
    "BookkeepingSection",
    "CensusReport",
    "CorollarySection",
    "EquidistSection",
    "OrbitRep",
    "UnresolvedSeed",
    "corollary_low_check",
    "enumerate_symmetric_seeds",
    "equidist_stats",
    "exact_radius",
    "floor_sqrt",
    "floor_r_cos_half_theta",
    "merge_reports",
    "scan_ball",
    "scan_seeds",
    "verify_bookkeeping",
]


class OrbitRep(NamedTuple):
    canonical: LatticeState
    period: int
    symmetry: SymmetryClass


class UnresolvedSeed(NamedTuple):
    seed: LatticeState
    steps_used: int
    max_norm_sq: FieldElement


@dataclass
class CensusReport:
    params: RotationParams
    radius_sq: Fraction
    orbit_reps: list[OrbitRep]
    unresolved: list[UnresolvedSeed]
    seeds_scanned: int
    counts: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def period_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for rep in self.orbit_reps:
            hist[rep.period] = hist.get(rep.period, 0) + 1
        return dict(sorted(hist.items()))

    @property
    def class_histogram(self) -> dict[str, int]:
        hist = {c.value: 0 for c in SymmetryClass}
        for rep in self.orbit_reps:
            hist[rep.symmetry.value] += 1
        return hist

    @property
    def empirical_C(self) -> Fraction:
        """Distinct periodic orbits per unit radius."""
        return Fraction(len(self.orbit_reps)) / exact_radius(self.radius_sq)


def exact_radius(radius_sq: Fraction) -> Fraction:
    """``sqrt(radius_sq)``, exactly when it is rational, else to 1e-12."""
    r2 = Fraction(radius_sq)
    n, d = math.isqrt(r2.numerator), math.isqrt(r2.denominator)
    if n * n == r2.numerator and d * d == r2.denominator:
        return Fraction(n, d)
    return Fraction(math.sqrt(r2)).limit_denominator(10**12)


def floor_sqrt(v) -> int:
    """``floor(sqrt(v))`` for a nonnegative exact value."""
    v = FieldElement.coerce(v)
    m = math.isqrt(max(0, math.floor(float(v))))
    while (v - (m + 1) ** 2).sign() >= 0:
        m += 1
    while m > 0 and (v - m * m).sign() < 0:
        m -= 1
    return m


def floor_r_cos_half_theta(radius_sq: Fraction, p: RotationParams) -> int:
    """``floor(R cos(t/2))`` with ``cos^2(t/2) = (2 - lam)/4``."""
    return floor_sqrt((2 - p.lam) * Fraction(radius_sq) / 4)


# -- scanning -------------------------------------------------------------------


def _scan_seeds(seeds: list, p: RotationParams, budget: Budget):
    reps: dict[LatticeState, OrbitRep] = {}
    unresolved = []
    seen: set = set()
    for s in seeds:
        if s in seen:
            continue
        states, n, best = orbit_states(s, p, budget)
        if states is None:
            unresolved.append(UnresolvedSeed(s, n, best))
            continue
        seen.update(states)
        canonical = min(states)
        reps[canonical] = OrbitRep(canonical, len(states), classify_orbit(states))
    return reps, unresolved


def _scan_chunk(args):
    seeds, p, budget = args
    return _scan_seeds(seeds, p, budget)


def _chunks(seeds: list, n: int) -> list[list]:
    size = max(1, math.ceil(len(seeds) / n))
    return [seeds[i : i + size] for i in range(0, len(seeds), size)]


def scan_ball(
    radius_sq,
    p: RotationParams,
    budget: Budget = Budget(),
    workers: int | None = 1,
    with_counts: bool = True,
) -> CensusReport:
    """Census of every state in the closed ball ``N <= radius_sq``.

    For ``eta != 0`` the ball is centred on the kappa-shifted lattice.
    ``workers`` > 1 spreads seed chunks over processes; the report does not
    depend on it.
    """
    radius_sq = Fraction(radius_sq)
    trap = TrapSpec(radius_sq, shifted=p.has_shift)
    seeds = list(ball_states(trap, p))
    workers = workers or os.cpu_count() or 1
    if workers <= 1 or len(seeds) < 64:
        parts = [_scan_seeds(seeds, p, budget)]
    else:
        jobs = [(c, p, budget) for c in _chunks(seeds, 4 * workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_chunk, jobs))
    reps: dict = {}
    unresolved = []
    for part_reps, part_unres in parts:
        reps.update(part_reps)
        unresolved.extend(part_unres)
    report = CensusReport(
        params=p,
        radius_sq=radius_sq,
        orbit_reps=sorted(reps.values()),
        unresolved=sorted(unresolved),
        seeds_scanned=len(seeds),
        meta={"max_steps": budget.max_steps, "shifted": trap.shifted},
    )
    if with_counts:
        _fill_counts(report)
    return report


def scan_seeds(seeds, radius_sq, p: RotationParams, budget: Budget = Budget()) -> CensusReport:
    """Census restricted to ``seeds``, a subset of the ball of ``radius_sq``."""
    seeds = [LatticeState(*s) for s in seeds]
    reps, unresolved = _scan_seeds(seeds, p, budget)
    return CensusReport(
        params=p,
        radius_sq=Fraction(radius_sq),
        orbit_reps=sorted(reps.values()),
        unresolved=sorted(unresolved),
        seeds_scanned=len(seeds),
        meta={"max_steps": budget.max_steps, "shifted": p.has_shift},
    )


def merge_reports(a: CensusReport, b: CensusReport) -> CensusReport:
    """Merge censuses over disjoint seed sets of the same ball."""
    if a.params != b.params or a.radius_sq != b.radius_sq:
        raise ValueError("can only merge reports for the same parameters and radius")
    reps = {r.canonical: r for r in a.orbit_reps}
    reps.update((r.canonical, r) for r in b.orbit_reps)
    return CensusReport(
        params=a.params,
        radius_sq=a.radius_sq,
        orbit_reps=sorted(reps.values()),
        unresolved=sorted(set(a.unresolved) | set(b.unresolved)),
        seeds_scanned=a.seeds_scanned + b.seeds_scanned,
        counts=dict(a.counts or b.counts),
        bounds=dict(a.bounds or b.bounds),
        meta=dict(a.meta),
    )


def _fill_counts(report: CensusReport) -> None:
    p, r2 = report.params, report.radius_sq
    stream_a, stream_b = enumerate_symmetric_seeds(r2, p)
    trap = TrapSpec(r2, shifted=p.has_shift)
    report.counts = {
        "fix_phi_seeds": len(stream_a),
        "fix_g_seeds": len(stream_b),
        "trap_points": trap_count(trap, p),
        "trap_points_mod_reflection": trap_count_mod_reflection(trap, p),
    }
    r = math.sqrt(r2)
    c = math.cos(p.theta_float / 2)
    report.bounds = {
        "two_R_cos_half_theta": 2 * r * c,
        "R_plus_R_cos_half_theta": r + r * c,
        "two_floor_R_plus_1": 2 * floor_sqrt(r2) + 1,
    }


# -- symmetric seeds and the counting argument --------------------------------------


def _row_bound(radius_sq: Fraction, p: RotationParams, shifted: bool) -> range:
    k = abs(float(p.kappa)) if shifted else 0.0
    m = math.isqrt(math.ceil(radius_sq)) + math.ceil(k) + 2
    return range(-m, m + 1)


def _band_states(radius_sq: Fraction, p: RotationParams, shift: int, shifted: bool) -> list:
    """Ball states with ``-eta + shift <= 2x + lam*y < 1 - eta + shift``.

    For fixed ``y`` the unique integer ``n`` in that unit interval is
    ``shift - floor(lam*y + eta)``; it yields a state only when even.
    """
    trap = TrapSpec(radius_sq, shifted)
    out = []
    for y in _row_bound(radius_sq, p, shifted):
        n = shift - p.floor_arg(0, y)
        if n % 2:
            continue
        s = LatticeState(n // 2, y)
        if in_ball(s, trap, p):
            out.append(s)
    return out


def enumerate_symmetric_seeds(radius_sq, p: RotationParams) -> tuple[list, list]:
    """Ball states fixed by ``phi`` (stream A) and by ``g`` (stream B)."""
    radius_sq = Fraction(radius_sq)
    shifted = p.has_shift
    trap = TrapSpec(radius_sq, shifted)
    stream_a = [
        LatticeState(x, x)
        for x in _row_bound(radius_sq, p, shifted)
        if in_ball((x, x), trap, p)
    ]
    stream_b = _band_states(radius_sq, p, 0, shifted)
    return stream_a, stream_b


@dataclass
class BookkeepingSection:
    radius_sq: Fraction
    fix_phi_count: int
    fix_phi_closed_form: int | None
    fix_g_count: int
    fix_g_residual: float
    band_lower_count: int
    band_origin_adjustment: int
    trap_count: int
    trap_expected: int | None
    trap_count_closed_top: int | None
    trap_mod_reflection: int
    trap_mod_reflection_residual: float
    lhs: int
    rhs: int
    lhs_formula: float
    rhs_formula: float

    @property
    def gap(self) -> int:
        return self.lhs - self.rhs

    @property
    def fix_phi_exact(self) -> bool:
        return self.fix_phi_count == self.fix_phi_closed_form

    @property
    def trap_exact(self) -> bool:
        return self.trap_count == self.trap_expected


def verify_bookkeeping(radius_sq, p: RotationParams) -> BookkeepingSection:
    """Every count of the symmetric-orbit argument at one radius.

    ``lhs`` counts symmetric seeds (the supply of distinct symmetric orbits
    that would have to escape); ``rhs`` counts trap points up to reflection
    (the room they would have to pass through).  Closed forms are filled
    in only for ``eta == 0``.
    """
    radius_sq = Fraction(radius_sq)
    exact = not p.has_shift
    stream_a, stream_b = enumerate_symmetric_seeds(radius_sq, p)
    lower = _band_states(radius_sq, p, -1, p.has_shift)
    trap = TrapSpec(radius_sq, p.has_shift)
    t_count = trap_count(trap, p)
    t_mod = trap_count_mod_reflection(trap, p)
    r = math.sqrt(radius_sq)
    c = math.cos(p.theta_float / 2)
    fl = floor_sqrt(radius_sq)
    integer_r = fl * fl == radius_sq
    return BookkeepingSection(
        radius_sq=radius_sq,
        fix_phi_count=len(stream_a),
        fix_phi_closed_form=2 * floor_r_cos_half_theta(radius_sq, p) + 1 if exact else None,
        fix_g_count=len(stream_b),
        fix_g_residual=len(stream_b) - r,
        band_lower_count=len(lower),
        band_origin_adjustment=len(stream_b) - len(lower),
        trap_count=t_count,
        trap_expected=2 * fl + 1 if exact else None,
        trap_count_closed_top=trap_count(trap, p, include_top=True) if integer_r else None,
        trap_mod_reflection=t_mod,
        trap_mod_reflection_residual=t_mod - (r + r * c),
        lhs=len(stream_a) + len(stream_b),
        rhs=t_mod,
        lhs_formula=2 * r * c + r,
        rhs_formula=r + r * c,
    )


@dataclass
class CorollarySection:
    radii: list[Fraction]
    counts: list[int]
    unresolved: list[int]
    empirical_C: Fraction | None

    @property
    def poisoned(self) -> list[bool]:
        return [u > 0 for u in self.unresolved]

    @property
    def strictly_increasing(self) -> bool:
        return all(b > a for a, b in zip(self.counts, self.counts[1:]))

    @property
    def doubling_growth(self) -> bool:
        """``count(R2) > count(R1)`` whenever ``R2 >= 2 R1``."""
        return all(
            c2 > c1
            for (r1, c1) in zip(self.radii, self.counts)
            for (r2, c2) in zip(self.radii, self.counts)
            if r2 >= 2 * r1
        )


def corollary_low_check(
    radii, p: RotationParams, budget: Budget = Budget(), workers: int | None = 1
) -> CorollarySection:
    """Distinct periodic orbits meeting ``B(R)`` for each radius ``R``."""
    radii = sorted(Fraction(r) for r in radii)
    counts, unresolved = [], []
    for r in radii:
        rep = scan_ball(r * r, p, budget, workers, with_counts=False)
        counts.append(len(rep.orbit_reps))
        unresolved.append(len(rep.unresolved))
    ratios = [Fraction(c) / r for r, c, u in zip(radii, counts, unresolved) if u == 0]
    return CorollarySection(radii, counts, unresolved, min(ratios) if ratios else None)


@dataclass
class EquidistSection:
    half_width: int
    n_values: int
    ud_count: int
    q: int | None
    residue_counts: dict[int, int] | None
    interval_cardinality: int | None

    @property
    def ud_fraction(self) -> Fraction:
        return Fraction(self.ud_count, self.n_values)

    @property
    def residue_frequencies(self) -> dict[int, Fraction] | None:
        if self.residue_counts is None:
            return None
        return {i: Fraction(c, self.n_values) for i, c in self.residue_counts.items()}

    @property
    def max_residue_deviation(self) -> Fraction | None:
        freqs = self.residue_frequencies
        if freqs is None:
            return None
        return max(abs(f - Fraction(1, self.q)) for f in freqs.values())


def equidist_stats(radius, p: RotationParams) -> EquidistSection:
    """How often ``lam*Y/2 mod 1`` meets ``[-eta/2, (1 - eta)/2)`` for ``|Y| <= R``.

    That is exactly when some integer ``X`` puts ``(X, Y)`` in Fix(g), i.e.
    when ``floor(lam*Y + eta)`` is even.  For rational ``lam/2 = a/q`` the
    residues ``a*Y mod q`` are tallied as well, together with the number of
    classes ``i/q`` that meet the interval.
    """
    m = math.floor(Fraction(radius))
    ys = range(-m, m + 1)
    ud = sum(1 for y in ys if p.floor_arg(0, y) % 2 == 0)
    q = counts = card = None
    if p.lam.is_rational:
        half = p.lam.to_fraction() / 2
        a, q = half.numerator, half.denominator
        counts = {i: 0 for i in range(q)}
        for y in ys:
            counts[(a * y) % q] += 1
        lo = -p.eta / 2
        hi = (1 - p.eta) / 2
        card = 0
        for i in range(q):
            k = (lo - Fraction(i, q)).ceil()
            card += (k + Fraction(i, q) - hi).sign() < 0
    return EquidistSection(m, len(ys), ud, q, counts, card)
