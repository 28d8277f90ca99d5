"""Discretized rotations ``(x, y) -> (y, -floor(x + lam*y + eta))`` on Z^2.

Exact dynamics for rational and real-quadratic coefficients, symmetric
periodic orbit detection, and the lattice counts behind the existence of
infinitely many periodic orbits.
"""

from .census import (
    CensusReport,
    corollary_low_check,
    enumerate_symmetric_seeds,
    equidist_stats,
    scan_ball,
    verify_bookkeeping,
)
from .dynamics import (
    LatticeState,
    RotationParams,
    in_fix_g,
    in_fix_phi,
    involution_g,
    involution_phi,
    step,
    step_back,
    three_term_check,
)
from .exact import ExactCoeff, FieldElement, fe_add, fe_floor, fe_inv, fe_mul, fe_sign, make_coeff
from .geometry import TrapSpec, in_ball, in_trap, norm_sq, trap_count, trap_count_mod_reflection
from .orbits import (
    Budget,
    SymmetryClass,
    classify_symmetry,
    detect_period,
    detect_period_symmetric,
    enumerate_orbits_with_period,
    period_p_ball_radius,
)

__version__ = "0.1.0"
