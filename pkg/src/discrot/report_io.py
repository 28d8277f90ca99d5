"""JSON and CSV persistence for census reports.

Every exact value is written in the coefficient grammar (``rat:p/q`` or
``quad:a,b,c,d``) so that a report re-parses to an equal object.  Output is
canonically ordered; equal reports serialize to identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .census import CensusReport, OrbitRep, UnresolvedSeed
from .dynamics import LatticeState, RotationParams
from .exact import FieldElement, make_coeff
from .orbits import SymmetryClass

CSV_COLUMNS = ["canonical_x", "canonical_y", "period", "symmetry_class"]


def rat_text(q) -> str:
    q = Fraction(q)
    return f"rat:{q.numerator}/{q.denominator}"


def parse_rat_text(text: str) -> Fraction:
    return make_coeff(text).to_fraction()


def report_to_dict(report: CensusReport) -> dict:
    return {
        "params": report.params.describe(),
        "radius_sq": rat_text(report.radius_sq),
        "histogram": {str(k): v for k, v in report.period_histogram.items()},
        "orbit_reps": [
            {
                "canonical": list(r.canonical),
                "period": r.period,
                "symmetry_class": r.symmetry.value,
            }
            for r in report.orbit_reps
        ],
        "unresolved": [
            {
                "seed": list(u.seed),
                "steps_used": u.steps_used,
                "max_norm_sq": u.max_norm_sq.to_text(),
            }
            for u in report.unresolved
        ],
        "counts": dict(sorted(report.counts.items())),
        "bounds": dict(sorted(report.bounds.items())),
        "empirical_C": rat_text(report.empirical_C),
        "meta": dict(sorted({**report.meta, "seeds_scanned": report.seeds_scanned}.items())),
    }


def report_to_json(report: CensusReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, ensure_ascii=False) + "\n"


def report_from_dict(data: dict) -> CensusReport:
    params = RotationParams(
        make_coeff(data["params"]["lambda"], rotation=True),
        make_coeff(data["params"]["eta"]),
    )
    meta = dict(data.get("meta", {}))
    seeds = meta.pop("seeds_scanned")
    report = CensusReport(
        params=params,
        radius_sq=parse_rat_text(data["radius_sq"]),
        orbit_reps=[
            OrbitRep(LatticeState(*r["canonical"]), r["period"], SymmetryClass(r["symmetry_class"]))
            for r in data["orbit_reps"]
        ],
        unresolved=[
            UnresolvedSeed(LatticeState(*u["seed"]), u["steps_used"], make_coeff(u["max_norm_sq"]))
            for u in data["unresolved"]
        ],
        seeds_scanned=seeds,
        counts=data.get("counts", {}),
        bounds=data.get("bounds", {}),
        meta=meta,
    )
    hist = {str(k): v for k, v in report.period_histogram.items()}
    if hist != data["histogram"]:
        raise ValueError("histogram does not match orbit_reps")
    return report


def report_from_json(text: str) -> CensusReport:
    return report_from_dict(json.loads(text))


def reps_to_csv(report: CensusReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in report.orbit_reps:
        writer.writerow([r.canonical.x, r.canonical.y, r.period, r.symmetry.value])
    return buf.getvalue()


def to_jsonable(obj):
    """Plain-JSON view of analysis sections (dataclasses, exact numbers)."""
    if isinstance(obj, FieldElement):
        return obj.to_text()
    if isinstance(obj, Fraction):
        return rat_text(obj)
    if isinstance(obj, SymmetryClass):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "__dataclass_fields__"):
        out = {name: to_jsonable(getattr(obj, name)) for name in obj.__dataclass_fields__}
        for name in dir(type(obj)):
            if isinstance(getattr(type(obj), name), property):
                out[name] = to_jsonable(getattr(obj, name))
        return out
    return obj
