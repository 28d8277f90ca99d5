"""Count symmetric seeds and compare with the trap count."""

from fractions import Fraction

from discrot import RotationParams, verify_bookkeeping

for text in ("rat:1/2", "quad:1,1,2,5"):
    p = RotationParams.from_text(text)
    print("lambda =", p.lam)
    for r in (Fraction(21, 2), Fraction(201, 2), Fraction(2001, 2)):
        b = verify_bookkeeping(r * r, p)
        print(
            f"  R={float(r):7.1f}  |A|={b.fix_phi_count:5d} (closed {b.fix_phi_closed_form})"
            f"  |A|+|B|={b.lhs:5d}  trap/reflection={b.rhs:5d}  gap={b.gap}"
        )
