"""Census of every orbit through a ball, written as JSON and CSV."""

import os
from fractions import Fraction

from discrot import RotationParams, scan_ball
from discrot.report_io import report_to_json, reps_to_csv

p = RotationParams.from_text("rat:1/2")
report = scan_ball(Fraction(41, 2) ** 2, p, workers=os.cpu_count())

print("seeds scanned:", report.seeds_scanned)
print("orbits:", len(report.orbit_reps), "unresolved:", len(report.unresolved))
print("periods:", report.period_histogram)
print("classes:", report.class_histogram)
print("orbits per unit radius:", float(report.empirical_C))

print(report_to_json(report)[:400], "...")
print(reps_to_csv(report).splitlines()[:5])
