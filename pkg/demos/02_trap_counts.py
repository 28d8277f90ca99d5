"""Lattice points in the thin band just outside the ball B(R)."""

from fractions import Fraction

from discrot import RotationParams, TrapSpec, trap_count
from discrot.geometry import trap_count_bruteforce, trap_states

lams = {"1/2": "rat:1/2", "sqrt2": "quad:0,1,1,2", "sqrt3": "quad:0,1,1,3", "golden": "quad:1,1,2,5"}

print(f"{'lambda':>8} {'R':>7} {'count':>6} {'2[R]+1':>7}")
for name, text in lams.items():
    p = RotationParams.from_text(text)
    for r in (Fraction(11, 2), Fraction(101, 2), Fraction(1001, 2)):
        n = trap_count(TrapSpec(r * r), p)
        print(f"{name:>8} {float(r):7.1f} {n:6d} {2 * int(r) + 1:7d}")

# the row-window count against a plain box scan
p = RotationParams.from_text("quad:0,1,1,2")
t = TrapSpec.from_radius(Fraction(31, 2))
print("row window", trap_count(t, p), "box scan", trap_count_bruteforce(t, p))
print("one point per row:", trap_states(TrapSpec.from_radius(Fraction(7, 2)), p))
