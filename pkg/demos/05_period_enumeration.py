"""Every orbit of a given period, found inside a finite ball."""

from discrot import RotationParams, enumerate_orbits_with_period, period_p_ball_radius

p = RotationParams.from_text("rat:1/2")
for pd in range(3, 9):
    res = enumerate_orbits_with_period(pd, p)
    ctl = enumerate_orbits_with_period(pd, p, radius_factor=2.0)
    rho = period_p_ball_radius(pd, p)
    reps = [tuple(s) for s in res.representatives]
    print(f"period {pd}: rho={rho:8.3f}  {len(reps)} orbit(s) {reps}  control agrees: {ctl.representatives == res.representatives}")
