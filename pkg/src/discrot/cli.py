"""Command line interface: ``discrot <subcommand> --lambda ... [options]``.

Exit codes: 0 success, 1 invalid configuration or I/O failure, 2 some
orbit stayed unresolved within the step budget.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import census, geometry, orbits, report_io, svg
from .dynamics import RotationParams
from .exact import make_coeff, parse_rational

EXIT_OK, EXIT_CONFIG, EXIT_UNRESOLVED = 0, 1, 2


class ConfigError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> tuple[int, int]:
    try:
        x, y = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must look like 'x,y', got {text!r}")
    return x, y


def _add_common(sp: argparse.ArgumentParser, radius: bool = True) -> None:
    sp.add_argument("--lambda", dest="lam", required=True, help="rat:a/c or quad:a,b,c,d")
    sp.add_argument("--eta", default="rat:0/1")
    if radius:
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--radius", help="exact rational radius R, e.g. 21/2")
        g.add_argument("--radius-sq", help="exact rational R^2")
    sp.add_argument("--max-steps", type=int, default=orbits.DEFAULT_MAX_STEPS)
    sp.add_argument("--threads", type=int, default=None, help="worker processes (default: all cores)")
    sp.add_argument("--out", help="output file (default: stdout)")
    sp.add_argument("--format", choices=["json", "csv", "text"], default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="discrot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("orbit", help="period and symmetry class of one orbit")
    _add_common(sp, radius=False)
    sp.add_argument("--seed", type=_seed, required=True)

    sp = sub.add_parser("census", help="scan every state of a ball")
    _add_common(sp)
    sp.add_argument("--csv", help="also write orbit representatives as CSV here")
    sp.add_argument("--radii", help="comma list of radii for the growth check")

    sp = sub.add_parser("trap", help="lattice points of the trap region")
    _add_common(sp)
    sp.add_argument("--points", action="store_true", help="list the trap points")

    sp = sub.add_parser("verify", help="bookkeeping of the symmetric-orbit count")
    _add_common(sp)
    sp.add_argument("--radii", help="comma list of radii (overrides --radius)")

    sp = sub.add_parser("enumerate-period", help="all orbits of one period (irrational angle)")
    _add_common(sp, radius=False)
    sp.add_argument("--period", type=int, required=True)
    sp.add_argument("--control", type=float, default=None, help="also scan at this multiple of the radius")

    sp = sub.add_parser("equidist", help="frequency statistics of lam*Y/2 mod 1")
    _add_common(sp)

    sp = sub.add_parser("plot", help="SVG of the trap region")
    _add_common(sp)
    sp.add_argument("--seed", type=_seed, help="overlay this orbit")
    sp.add_argument("--width", type=int, default=640)
    sp.add_argument("--height", type=int, default=640)
    return parser


# -- config ---------------------------------------------------------------------


def _params(args) -> RotationParams:
    try:
        return RotationParams(make_coeff(args.lam, rotation=True), make_coeff(args.eta))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(str(exc)) from exc


def _radius_sq(args) -> Fraction:
    try:
        if getattr(args, "radius_sq", None):
            r2 = parse_rational(args.radius_sq)
        elif getattr(args, "radius", None):
            r = parse_rational(args.radius)
            if r <= 0:
                raise ConfigError("radius must be positive")
            r2 = r * r
        else:
            raise ConfigError("a radius is required (--radius or --radius-sq)")
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if r2 <= 0:
        raise ConfigError("radius must be positive")
    return r2


def _radii(text: str) -> list[Fraction]:
    try:
        radii = [parse_rational(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if not radii or min(radii) <= 0:
        raise ConfigError("radii must be positive")
    return radii


def _budget(args) -> orbits.Budget:
    if args.max_steps < 1:
        raise ConfigError("--max-steps must be >= 1")
    return orbits.Budget(args.max_steps)


def _workers(args) -> int:
    if args.threads is not None and args.threads < 1:
        raise ConfigError("--threads must be >= 1")
    return args.threads or os.cpu_count() or 1


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(report_io.to_jsonable(obj), indent=2, ensure_ascii=False) + "\n"


# -- subcommands -------------------------------------------------------------------


def cmd_orbit(args) -> int:
    p = _params(args)
    budget = _budget(args)
    states, n, best = orbits.orbit_states(args.seed, p, budget)
    out = {"seed": list(args.seed), "params": p.describe(), "steps_used": n, "max_norm_sq": best}
    if states is None:
        out["outcome"] = "unresolved"
    else:
        out.update(
            outcome="periodic",
            period=len(states),
            symmetry_class=orbits.classify_orbit(states).value,
            canonical=list(min(states)),
        )
        if len(states) <= 1000:
            out["orbit"] = [list(s) for s in states]
    if args.format == "json":
        _emit(args, _dump(out))
    else:
        lines = [f"seed {args.seed[0]},{args.seed[1]}  lambda={p.lam}  eta={p.eta}"]
        if states is None:
            lines.append(f"UNRESOLVED after {n} steps (max norm^2 {float(best):.6g})")
        else:
            lines.append(f"period {out['period']}")
            lines.append(f"symmetry {out['symmetry_class']}")
            lines.append(f"canonical {out['canonical'][0]},{out['canonical'][1]}")
            if "orbit" in out:
                lines.append("orbit " + " ".join(f"({x},{y})" for x, y in out["orbit"]))
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if states is not None else EXIT_UNRESOLVED


def cmd_census(args) -> int:
    p = _params(args)
    r2 = _radius_sq(args)
    budget = _budget(args)
    radii = _radii(args.radii) if args.radii else None
    report = census.scan_ball(r2, p, budget, workers=_workers(args))
    if args.format == "csv":
        _emit(args, report_io.reps_to_csv(report))
    else:
        data = report_io.report_to_dict(report)
        if radii:
            data["corollary"] = report_io.to_jsonable(
                census.corollary_low_check(radii, p, budget, _workers(args))
            )
        _emit(args, json.dumps(data, indent=2, ensure_ascii=False) + "\n")
    if args.csv:
        Path(args.csv).write_text(report_io.reps_to_csv(report), encoding="utf-8")
    return EXIT_UNRESOLVED if report.unresolved else EXIT_OK


def cmd_trap(args) -> int:
    p = _params(args)
    trap = geometry.TrapSpec(_radius_sq(args), shifted=p.has_shift)
    pts = geometry.trap_states(trap, p)
    out = {
        "params": p.describe(),
        "radius_sq": trap.radius_sq,
        "trap_count": len(pts),
        "trap_count_mod_reflection": geometry.trap_count_mod_reflection(trap, p),
        "two_floor_R_plus_1": 2 * census.floor_sqrt(trap.radius_sq) + 1,
    }
    if census.floor_sqrt(trap.radius_sq) ** 2 == trap.radius_sq:
        out["trap_count_closed_top"] = geometry.trap_count(trap, p, include_top=True)
    if args.points:
        out["points"] = [list(s) for s in pts]
    _emit(args, _dump(out))
    return EXIT_OK


def cmd_verify(args) -> int:
    p = _params(args)
    if args.radii:
        radii_sq = [r * r for r in _radii(args.radii)]
    else:
        radii_sq = [_radius_sq(args)]
    sections = [census.verify_bookkeeping(r2, p) for r2 in radii_sq]
    _emit(args, _dump({"params": p.describe(), "bookkeeping": sections}))
    return EXIT_OK


def cmd_enumerate_period(args) -> int:
    p = _params(args)
    budget = _budget(args)
    try:
        res = orbits.enumerate_orbits_with_period(args.period, p, budget)
        out = {
            "params": p.describe(),
            "period": args.period,
            "radius": orbits.period_p_ball_radius(args.period, p),
            "radius_sq": res.radius_sq,
            "representatives": [list(s) for s in res.representatives],
            "complete": res.complete,
        }
        if args.control:
            ctl = orbits.enumerate_orbits_with_period(args.period, p, budget, args.control)
            out["control_representatives"] = [list(s) for s in ctl.representatives]
            out["control_matches"] = ctl.representatives == res.representatives
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _emit(args, _dump(out))
    return EXIT_OK if res.complete else EXIT_UNRESOLVED


def cmd_equidist(args) -> int:
    p = _params(args)
    if args.radius_sq:
        raise ConfigError("equidist takes --radius")
    r = _radius_sq(args)
    radius = census.exact_radius(r)
    stats = census.equidist_stats(radius, p)
    _emit(args, _dump({"params": p.describe(), "radius": radius, "stats": stats}))
    return EXIT_OK


def cmd_plot(args) -> int:
    p = _params(args)
    r2 = _radius_sq(args)
    if args.width < 16 or args.height < 16:
        raise ConfigError("plot dimensions too small")
    orbit = None
    if args.seed:
        states, _, _ = orbits.orbit_states(args.seed, p, _budget(args), track_norm=False)
        orbit = states
    text = svg.trap_svg(r2, p, args.width, args.height, orbit=orbit)
    _emit(args, text)
    return EXIT_OK


COMMANDS = {
    "orbit": cmd_orbit,
    "census": cmd_census,
    "trap": cmd_trap,
    "verify": cmd_verify,
    "enumerate-period": cmd_enumerate_period,
    "equidist": cmd_equidist,
    "plot": cmd_plot,
}


def _join_negative_seeds(argv: list[str]) -> list[str]:
    # argparse would read "-1,4" as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--seed":
            nxt = next(it, None)
            if nxt is not None and re.fullmatch(r"-?\d+,-?\d+", nxt):
                out.append(f"--seed={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_join_negative_seeds(argv))
    except SystemExit as exc:
        return exc.code
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"discrot {args.command}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"discrot {args.command}: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
