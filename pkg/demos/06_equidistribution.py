"""How lam*Y/2 mod 1 spreads over [0, 1)."""

from discrot import RotationParams, equidist_stats

st = equidist_stats(10**4, RotationParams.from_text("rat:1/2"))
print("lambda = 1/2, q =", st.q)
for i, f in st.residue_frequencies.items():
    print(f"  residue {i}/{st.q}: {float(f):.6f}")
print("  max deviation from 1/4:", float(st.max_residue_deviation))

st = equidist_stats(10**4, RotationParams.from_text("quad:0,1,1,2"))
print("lambda = sqrt2, fraction landing in Fix(g):", float(st.ud_fraction))
