"""Draw the trap band with one orbit on top."""

import sys
from fractions import Fraction

from discrot import RotationParams
from discrot.orbits import orbit_states
from discrot.svg import trap_svg

p = RotationParams.from_text("quad:1,1,2,5", "rat:1/1")
states, _, _ = orbit_states((-5, 3), p)
out = sys.argv[1] if len(sys.argv) > 1 else "trap.svg"
with open(out, "w", encoding="utf-8") as fh:
    fh.write(trap_svg(Fraction(15, 2) ** 2, p, orbit=states))
print("wrote", out)
