import math
import random
from fractions import Fraction

import mpmath
import pytest

from discrot.census import (
    corollary_low_check,
    enumerate_symmetric_seeds,
    equidist_stats,
    floor_r_cos_half_theta,
    floor_sqrt,
    merge_reports,
    scan_ball,
    scan_seeds,
    verify_bookkeeping,
)
from discrot.dynamics import in_fix_g
from discrot.geometry import TrapSpec, ball_states, norm_sq
from discrot.orbits import Budget, SymmetryClass, detect_period
from discrot.report_io import report_to_json

from conftest import mp_value, params


def quarter_turn_orbits(radius):
    """lam = 0 is the exact rotation (x, y) -> (y, -x)."""
    r2 = radius * radius
    orbits = set()
    m = math.floor(radius)
    for x in range(-m, m + 1):
        for y in range(-m, m + 1):
            if x * x + y * y <= r2:
                orbits.add(frozenset({(x, y), (y, -x), (-x, -y), (-y, x)}))
    return orbits


class TestScanBall:
    def test_quarter_turn(self):
        rep = scan_ball(Fraction(25, 4), params("rat:0/1"))
        assert rep.seeds_scanned == 21
        assert rep.period_histogram == {1: 1, 4: 5}
        assert len(rep.orbit_reps) == len(quarter_turn_orbits(Fraction(5, 2)))

    def test_lambda_one(self):
        rep = scan_ball(Fraction(25, 4), params("rat:1/1"))
        assert not rep.unresolved
        assert set(rep.period_histogram) <= {1, 3}

    def test_half(self):
        rep = scan_ball(Fraction(441, 4), params("rat:1/2"))
        assert not rep.unresolved
        assert 7 in rep.period_histogram
        assert any(r.canonical == (-1, 0) and r.period == 7 for r in rep.orbit_reps)

    def test_every_seed_accounted_for(self):
        p = params("quad:1,1,2,5")
        r2 = Fraction(225)
        rep = scan_ball(r2, p)
        reps = {r.canonical: r for r in rep.orbit_reps}
        seeds = list(ball_states(TrapSpec(r2), p))
        assert rep.seeds_scanned == len(seeds)
        for s in seeds:
            res = detect_period(s, p)
            assert reps[res.canonical].period == res.period
        # every listed orbit meets the ball
        touched = {detect_period(s, p).canonical for s in seeds}
        assert touched == set(reps)

    def test_unresolved_recorded(self):
        p = params("rat:1/2")
        rep = scan_ball(Fraction(441, 4), p, Budget(max_steps=20))
        assert rep.unresolved
        assert all(u.steps_used == 20 for u in rep.unresolved)
        resolved = {r.canonical for r in rep.orbit_reps}
        for u in rep.unresolved:
            assert detect_period(u.seed, p).period > 20
        assert all(r.period <= 20 for r in rep.orbit_reps)
        assert resolved

    def test_partition_independence(self):
        p = params("quad:0,1,1,2")
        r2 = Fraction(400)
        full = scan_ball(r2, p, with_counts=False)
        seeds = list(ball_states(TrapSpec(r2), p))
        rng = random.Random(11)
        for _ in range(3):
            rng.shuffle(seeds)
            cut = sorted(rng.sample(range(1, len(seeds)), 3))
            parts = [seeds[i:j] for i, j in zip([0] + cut, cut + [len(seeds)])]
            reports = [scan_seeds(sorted(part), r2, p) for part in parts]
            merged = reports[0]
            for other in reports[1:]:
                merged = merge_reports(merged, other)
            assert merged.orbit_reps == full.orbit_reps
            assert merged.period_histogram == full.period_histogram
            assert merged.seeds_scanned == full.seeds_scanned
            # merge order does not matter
            back = reports[-1]
            for other in reversed(reports[:-1]):
                back = merge_reports(other, back)
            assert back.orbit_reps == merged.orbit_reps

    def test_workers_do_not_change_output(self):
        p = params("rat:1/2")
        one = scan_ball(Fraction(2601, 4), p, workers=1)
        three = scan_ball(Fraction(2601, 4), p, workers=3)
        assert report_to_json(one) == report_to_json(three)

    def test_shifted_ball(self):
        p = params("quad:1,1,2,5", "rat:1/1")
        rep = scan_ball(Fraction(100), p)
        assert rep.meta["shifted"]
        assert not rep.unresolved
        assert rep.class_histogram[SymmetryClass.ASYMMETRIC.value] > 0


class TestSymmetricSeeds:
    def test_half_radius_three(self):
        p = params("rat:1/2")
        a, b = enumerate_symmetric_seeds(9, p)
        assert a == [(-1, -1), (0, 0), (1, 1)]
        assert len(a) == 2 * math.floor(3 * math.cos(p.theta_float / 2)) + 1
        assert (0, 1) in b

    @pytest.mark.parametrize("lam", ["rat:1/2", "quad:0,1,1,2", "quad:-1,-1,2,5", "rat:-5/3"])
    def test_origin_in_both(self, lam):
        a, b = enumerate_symmetric_seeds(Fraction(1, 4), params(lam))
        assert (0, 0) in a and (0, 0) in b

    @pytest.mark.parametrize("lam,eta", [("quad:1,1,2,5", "rat:0/1"), ("rat:2/3", "rat:1/5"), ("quad:0,1,1,3", "quad:1,1,4,3")])
    def test_streams_match_brute_force(self, lam, eta):
        p = params(lam, eta)
        r2 = Fraction(1369, 4)
        box = [(x, y) for x in range(-45, 46) for y in range(-45, 46)]
        a, b = enumerate_symmetric_seeds(r2, p)
        ball = [s for s in box if norm_sq(s, p, p.has_shift) <= r2]
        assert a == [s for s in ball if s[0] == s[1]]
        assert sorted(b) == sorted(s for s in ball if in_fix_g(s, p))


class TestBookkeeping:
    def test_half_large_radius(self):
        p = params("rat:1/2")
        r = Fraction(201, 2)
        sec = verify_bookkeeping(r * r, p)
        assert sec.trap_count == sec.trap_expected == 201
        # independent closed form: |x| <= R cos(theta/2)
        cos_half = mpmath.sqrt((2 - mp_value(p.lam)) / 4)
        assert sec.fix_phi_count == sec.fix_phi_closed_form == 2 * int(mpmath.floor(mpmath.mpf(201) / 2 * cos_half)) + 1

    def test_gap_grows(self):
        p = params("quad:0,1,1,2")
        gaps = [verify_bookkeeping(Fraction(r) ** 2, p).gap for r in ("51/2", "101/2", "201/2")]
        assert gaps[0] < gaps[1] < gaps[2]

    @pytest.mark.parametrize("lam", ["quad:0,1,1,2", "quad:1,1,2,5", "quad:0,-1,1,3"])
    def test_band_symmetry_irrational(self, lam):
        # (X, Y) -> (-X, -Y) swaps [-1, 0) with (0, 1]; only the origin sits on an endpoint
        for r in ("21/2", "77/2"):
            sec = verify_bookkeeping(Fraction(r) ** 2, params(lam))
            assert sec.band_origin_adjustment == 1

    def test_integer_radius_reports_both_conventions(self):
        sec = verify_bookkeeping(Fraction(100), params("rat:0/1"))
        assert sec.trap_count_closed_top is not None
        assert verify_bookkeeping(Fraction(441, 4), params("rat:0/1")).trap_count_closed_top is None

    def test_shifted_has_no_closed_forms(self):
        sec = verify_bookkeeping(Fraction(100), params("quad:1,1,2,5", "rat:1/1"))
        assert sec.fix_phi_closed_form is None and sec.trap_expected is None

    def test_floor_sqrt(self):
        assert floor_sqrt(Fraction(99)) == 9
        assert floor_sqrt(Fraction(100)) == 10
        assert floor_sqrt(Fraction(0)) == 0
        p = params("quad:1,1,2,5")
        for r in range(1, 200):
            v = mpmath.mpf(r) * mpmath.sqrt((2 - mp_value(p.lam)) / 4)
            assert floor_r_cos_half_theta(Fraction(r * r), p) == int(mpmath.floor(v))


class TestCorollary:
    def test_quarter_turn_counts(self):
        sec = corollary_low_check([Fraction(5, 2), Fraction(11, 2)], params("rat:0/1"))
        assert sec.counts[0] == 6 == len(quarter_turn_orbits(Fraction(5, 2)))
        assert sec.counts[1] == len(quarter_turn_orbits(Fraction(11, 2)))
        assert sec.counts[1] >= 2 * sec.counts[0]
        assert sec.doubling_growth

    def test_half_increasing(self):
        sec = corollary_low_check([Fraction(51, 2), Fraction(101, 2)], params("rat:1/2"))
        assert sec.strictly_increasing
        assert sec.empirical_C > 0

    def test_empirical_c_definition(self):
        radii = [Fraction(21, 2), Fraction(51, 2)]
        sec = corollary_low_check(radii, params("quad:1,1,2,5", "rat:1/1"))
        assert sec.empirical_C == min(Fraction(c) / r for c, r in zip(sec.counts, radii))
        assert all(c >= math.floor(sec.empirical_C * r) for c, r in zip(sec.counts, radii))

    def test_poisoned(self):
        sec = corollary_low_check([Fraction(21, 2)], params("rat:1/2"), Budget(max_steps=10))
        assert sec.poisoned == [True]
        assert sec.empirical_C is None


class TestEquidist:
    def test_two_classes(self):
        st = equidist_stats(10, params("rat:1/1"))
        assert st.q == 2
        assert st.residue_counts == {0: 11, 1: 10}
        assert st.interval_cardinality == 1
        assert st.ud_count == 11

    def test_quarter_classes(self):
        st = equidist_stats(10**4, params("rat:1/2"))
        assert st.q == 4
        assert st.max_residue_deviation < Fraction(1, 1000)
        assert st.interval_cardinality == 2

    def test_sqrt2(self):
        st = equidist_stats(10**4, params("quad:0,1,1,2"))
        assert abs(st.ud_fraction - Fraction(1, 2)) < Fraction(1, 100)
        assert st.q is None

    def test_ud_matches_fix_g_rows(self):
        # (UD) at Y holds iff some X puts (X, Y) in Fix(g)
        p = params("quad:1,-1,2,5", "rat:1/3")
        for y in range(-60, 61):
            lo = (-p.eta - p.lam * y).ceil()
            has_x = any(in_fix_g((x, y), p) for x in range(lo // 2 - 2, lo // 2 + 3))
            assert has_x == (p.floor_arg(0, y) % 2 == 0)

    @pytest.mark.parametrize("eta", ["rat:0/1", "rat:1/3", "rat:-7/5", "rat:1/2"])
    def test_odd_q_cardinality(self, eta):
        # lam/2 = 1/3: either (q-1)/2 or (q+1)/2 classes meet the half-length window
        st = equidist_stats(30, params("rat:2/3", eta))
        assert st.q == 3
        assert st.interval_cardinality in (1, 2)
