"""Follow a few orbits of the rounded rotation and look at their symmetry."""

from discrot import RotationParams, detect_period, classify_symmetry
from discrot.orbits import orbit_states, symmetry_centres

half = RotationParams.from_text("rat:1/2")
res = detect_period((1, 0), half)
print("lambda = 1/2, seed (1,0):", "period", res.period, "canonical", tuple(res.canonical))

states, _, _ = orbit_states((1, 0), half)
for s in states:
    print("   ", tuple(s))

# lambda = 1 has an asymmetric 3-cycle
unit = RotationParams.from_text("rat:1/1")
print("lambda = 1:", detect_period((1, 0), unit).period, classify_symmetry((1, 0), unit).value)

# golden lambda with shift eta = 1
gold = RotationParams.from_text("quad:1,1,2,5", "rat:1/1")
states, _, _ = orbit_states((-1, 4), gold)
print("golden, eta=1:", [tuple(s) for s in states], classify_symmetry((-1, 4), gold).value)

# a symmetric orbit meets the two reflection sets at two centres
states, _, _ = orbit_states((3, 3), half)
print("centres of the orbit through (3,3):", symmetry_centres(states), "period", len(states))
