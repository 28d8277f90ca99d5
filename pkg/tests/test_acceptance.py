"""Acceptance suite.

Each test carries a ``criterion`` marker; the conftest hook prints one
PASS/FAIL line per criterion at the end of the run.  Run on its own with

    pytest tests/test_acceptance.py -v
"""

import os
import random
import time
from fractions import Fraction

import mpmath
import pytest

from discrot.census import (
    corollary_low_check,
    enumerate_symmetric_seeds,
    equidist_stats,
    floor_r_cos_half_theta,
    scan_ball,
)
from discrot.dynamics import (
    involution_g,
    involution_phi,
    in_fix_g,
    in_fix_phi,
    step,
    step_back,
)
from discrot.geometry import TrapSpec, ball_states, trap_count, trap_count_bruteforce
from discrot.orbits import (
    Budget,
    classify_symmetry,
    detect_period,
    detect_period_symmetric,
    enumerate_orbits_with_period,
    period_p_ball_radius,
)
from discrot.report_io import report_to_json

from conftest import LAMBDAS, PARAM_SETS, PROVEN, mp_value, params

C1 = "trap count is exactly 2*floor(R)+1"
C2 = "Fix(phi) seed count equals 2*floor(R cos(theta/2))+1"
C3 = "no unresolved seeds at the eleven proven lambdas"
C4 = "known small orbits reproduced"
C5 = "symmetric shortcut agrees with plain period detection"
C6 = "period-p enumeration complete inside rho(p)"
C7 = "involution and reversibility identities"
C8 = "orbit counts grow at least linearly in R"
C9 = "frequency statistics of lam*Y/2 mod 1"
C10 = "census bytes independent of worker count"


# -- 1 -------------------------------------------------------------------------


@pytest.mark.criterion(1, C1)
@pytest.mark.parametrize("radius", [Fraction(11, 2), Fraction(101, 2), Fraction(1001, 2)])
@pytest.mark.parametrize("lam", list(LAMBDAS.values()), ids=list(LAMBDAS))
def test_c1_trap_count(lam, radius):
    p = params(lam)
    trap = TrapSpec(radius * radius)
    t0 = time.perf_counter()
    n = trap_count(trap, p)
    elapsed = time.perf_counter() - t0
    assert n == 2 * (radius.numerator // radius.denominator) + 1
    assert elapsed < 10
    if radius < 100:
        # independent box scan
        assert trap_count_bruteforce(trap, p) == n


# -- 2 -------------------------------------------------------------------------


def _mp_closed_form(radius: Fraction, lam) -> int:
    # cos(theta/2) = sqrt((2 - lam)/4) since lam = -2 cos(theta)
    with mpmath.workdps(80):
        r = mpmath.mpf(radius.numerator) / radius.denominator
        return 2 * int(mpmath.floor(r * mpmath.sqrt((2 - mp_value(lam)) / 4))) + 1


@pytest.mark.criterion(2, C2)
@pytest.mark.parametrize("radius", [Fraction(21, 2), Fraction(201, 2), Fraction(2001, 2)])
@pytest.mark.parametrize("lam", list(LAMBDAS.values()), ids=list(LAMBDAS))
def test_c2_fix_phi_seed_count(lam, radius):
    p = params(lam)
    r2 = radius * radius
    stream_a, _ = enumerate_symmetric_seeds(r2, p)
    closed = 2 * floor_r_cos_half_theta(r2, p) + 1
    assert len(stream_a) == closed == _mp_closed_form(radius, p.lam)
    assert all(in_fix_phi(s) for s in stream_a)


# -- 3 -------------------------------------------------------------------------


@pytest.mark.criterion(3, C3)
@pytest.mark.parametrize("lam", PROVEN)
def test_c3_proven_values_resolve(lam):
    rep = scan_ball(Fraction(101, 2) ** 2, params(lam), Budget(max_steps=10**7), workers=os.cpu_count())
    assert rep.unresolved == []
    assert rep.orbit_reps


# -- 4 -------------------------------------------------------------------------


@pytest.mark.criterion(4, C4)
@pytest.mark.parametrize(
    "lam,eta,seed,period,cls",
    [
        ("rat:0/1", "rat:0/1", (1, 0), 4, None),
        ("rat:1/1", "rat:0/1", (1, 0), 3, "asymmetric"),
        ("rat:1/2", "rat:0/1", (1, 0), 7, None),
        ("quad:1,1,2,5", "rat:1/1", (-1, 4), 5, "asymmetric"),
    ],
)
def test_c4_known_orbits(lam, eta, seed, period, cls):
    p = params(lam, eta)
    res = detect_period(seed, p)
    assert res.outcome == "periodic"
    assert res.period == period
    if cls is not None:
        assert classify_symmetry(seed, p).value == cls


# -- 5 -------------------------------------------------------------------------


@pytest.mark.criterion(5, C5)
@pytest.mark.parametrize("lam", ["rat:1/2", "quad:0,1,1,2", "quad:1,1,2,5"])
def test_c5_symmetric_shortcut(lam):
    p = params(lam)
    r2 = Fraction(61, 2) ** 2
    seeds = [s for s in ball_states(TrapSpec(r2), p) if in_fix_phi(s) or in_fix_g(s, p)]
    # the diagonal alone contributes this many
    assert len(seeds) > 2 * floor_r_cos_half_theta(r2, p) + 1
    t0 = time.perf_counter()
    for s in seeds:
        fast = detect_period_symmetric(s, p)
        slow = detect_period(s, p)
        assert fast.outcome == slow.outcome == "periodic"
        assert fast.period == slow.period, s
        assert fast.canonical == slow.canonical, s
    assert time.perf_counter() - t0 < 60


# -- 6 -------------------------------------------------------------------------


def _period_reps_by_iteration(pd, p, radius):
    """Brute force: iterate ``step`` from every state of the ball."""
    reps = set()
    for s in ball_states(TrapSpec(Fraction(radius) ** 2), p):
        cur, orbit = s, [s]
        for _ in range(pd):
            cur = step(cur, p)
            if cur == s:
                break
            orbit.append(cur)
        if cur == s and len(orbit) == pd:
            reps.add(min(orbit))
    return reps


@pytest.mark.criterion(6, C6)
@pytest.mark.parametrize("pd", range(3, 9))
def test_c6_period_enumeration(pd):
    p = params("rat:1/2")
    inner = enumerate_orbits_with_period(pd, p)
    control = enumerate_orbits_with_period(pd, p, radius_factor=2.0)
    assert inner.complete and control.complete
    assert set(inner.representatives) == set(control.representatives)
    oracle = _period_reps_by_iteration(pd, p, 2 * period_p_ball_radius(pd, p))
    assert set(inner.representatives) == oracle


# -- 7 -------------------------------------------------------------------------


@pytest.mark.criterion(7, C7)
@pytest.mark.parametrize("lam,eta", PARAM_SETS, ids=[f"{a}|{b}" for a, b in PARAM_SETS])
def test_c7_involutions(lam, eta):
    p = params(lam, eta)
    rng = random.Random(f"{lam}|{eta}")
    failures = 0
    for i in range(10**4):
        span = 10 ** rng.choice((1, 3, 6, 12))
        s = (rng.randint(-span, span), rng.randint(-span, span))
        fs = step(s, p)
        ok = (
            involution_phi(involution_phi(s)) == s
            and involution_g(involution_g(s, p), p) == s
            and involution_phi(involution_g(s, p)) == fs
            and step_back(fs, p) == s
            and step(step_back(s, p), p) == s
            and involution_phi(step_back(s, p)) == step(involution_phi(s), p)
        )
        failures += not ok
    assert failures == 0


# -- 8 -------------------------------------------------------------------------


@pytest.mark.criterion(8, C8)
@pytest.mark.parametrize("lam,eta", [("rat:1/2", "rat:0/1"), ("quad:1,1,2,5", "rat:1/1")])
def test_c8_growth(lam, eta):
    radii = [Fraction(51, 2), Fraction(101, 2), Fraction(201, 2)]
    sec = corollary_low_check(radii, params(lam, eta), workers=os.cpu_count())
    assert sec.unresolved == [0, 0, 0]
    assert sec.strictly_increasing
    assert Fraction(sec.counts[2], sec.counts[1]) >= Fraction(3, 2)
    assert sec.empirical_C is not None and sec.empirical_C > 0


# -- 9 -------------------------------------------------------------------------


@pytest.mark.criterion(9, C9)
def test_c9_rational_residues():
    t0 = time.perf_counter()
    st = equidist_stats(10**4, params("rat:1/2"))
    assert time.perf_counter() - t0 < 10
    assert st.q == 4
    assert sum(st.residue_counts.values()) == st.n_values == 2 * 10**4 + 1
    assert all(abs(f - Fraction(1, 4)) <= Fraction(1, 1000) for f in st.residue_frequencies.values())


@pytest.mark.criterion(9, C9)
def test_c9_irrational_ud_fraction():
    t0 = time.perf_counter()
    p = params("quad:0,1,1,2")
    st = equidist_stats(10**4, p)
    assert time.perf_counter() - t0 < 10
    # oracle: fractional part of sqrt(2)*Y/2 in [0, 1/2) at high precision
    with mpmath.workdps(50):
        h = mpmath.sqrt(2) / 2
        ud = sum(1 for y in range(-(10**4), 10**4 + 1) if mpmath.frac(h * y) < 0.5)
    assert st.ud_count == ud
    assert abs(st.ud_fraction - Fraction(1, 2)) <= Fraction(1, 100)


# -- 10 ------------------------------------------------------------------------


@pytest.mark.criterion(10, C10)
def test_c10_determinism():
    p = params("rat:1/2")
    r2 = Fraction(201, 2) ** 2
    one = report_to_json(scan_ball(r2, p, workers=1))
    eight = report_to_json(scan_ball(r2, p, workers=8))
    assert one.encode() == eight.encode()
