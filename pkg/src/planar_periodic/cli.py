"""Command-line front end.

Exit codes: 0 success, 1 runtime failure, 2 usage or input error,
3 condition violated, 4 inconclusive.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
import typing

from . import __version__
from .conditions import (INCONCLUSIVE, SATISFIED, VIOLATED, ConditionConfig,
                         check_nirenberg, check_ortega_sanchez)
from .errors import PlanarPeriodicError
from .model import ConjugatePolynomial, Point2, load_problem, to_planar
from .ode import IntegratorConfig, integrate, write_trajectory_csv
from .poincare import displacement, displacement_curve, poincare_map
from .serialize import write_json
from .solver import BoxRegion, SolverConfig, exp_demo, fta_roots, solve_periodic
from .svg import write_svg
from .winding import WindingConfig, winding_number, write_samples_csv

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, EXIT_VIOLATED, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4

_SECTIONS = {"integrator": IntegratorConfig, "winding": WindingConfig,
             "conditions": ConditionConfig}


class UsageError(Exception):
    pass


def _override_keys() -> dict:
    """Flat key -> (section or None, field)."""
    keys = {}
    for section, cls in _SECTIONS.items():
        for f in dataclasses.fields(cls):
            if f.name in _SECTIONS:
                continue
            keys[f.name] = (section, f.name)
    for f in dataclasses.fields(SolverConfig):
        if f.name in _SECTIONS:
            continue
        if f.name in keys:
            raise RuntimeError(f"ambiguous override key {f.name}")
        keys[f.name] = (None, f.name)
    return keys


OVERRIDE_KEYS = _override_keys()


def _parse_value(text: str, current, name: str):
    t = text.strip()
    if name == "region":
        if t.lower() == "none":
            return None
        parts = [float(v) for v in t.split(",")]
        if len(parts) != 3:
            raise UsageError("region expects cx,cy,half_width")
        return BoxRegion(Point2(parts[0], parts[1]), parts[2])
    if name == "saturation_level":
        return None if t.lower() == "none" else float(t)
    if isinstance(current, bool):
        if t.lower() in ("1", "true", "yes", "on"):
            return True
        if t.lower() in ("0", "false", "no", "off"):
            return False
        raise UsageError(f"{name} expects a boolean, got {text!r}")
    if isinstance(current, int):
        return int(float(t)) if "e" in t.lower() else int(t)
    if isinstance(current, float):
        return float(t)
    if isinstance(current, tuple):
        return tuple(float(v) for v in t.split(",") if v.strip())
    return t


def build_config(overrides) -> SolverConfig:
    """Apply ``key=value`` strings to the default configuration."""
    sections = {name: getattr(SolverConfig(), name) for name in _SECTIONS}
    top = {}
    for item in overrides or ():
        if "=" not in item:
            raise UsageError(f"--set expects key=value, got {item!r}")
        key, val = item.split("=", 1)
        key = key.strip()
        if key not in OVERRIDE_KEYS:
            raise UsageError(f"unknown key {key!r}; valid keys: {', '.join(sorted(OVERRIDE_KEYS))}")
        section, name = OVERRIDE_KEYS[key]
        target = sections[section] if section else SolverConfig()
        try:
            value = _parse_value(val, getattr(target, name), name)
        except ValueError as exc:
            raise UsageError(f"bad value for {key}: {exc}") from None
        if section:
            sections[section] = dataclasses.replace(sections[section], **{name: value})
        else:
            top[name] = value
    try:
        cond = dataclasses.replace(sections["conditions"], winding=sections["winding"])
        return SolverConfig(integrator=sections["integrator"], winding=sections["winding"],
                            conditions=cond, **top)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------

def _out_dir(args) -> str:
    os.makedirs(args.out, exist_ok=True)
    return args.out


def _load(args):
    if not args.problem:
        raise UsageError("--problem is required for this command")
    try:
        return load_problem(args.problem)
    except FileNotFoundError:
        raise UsageError(f"problem file not found: {args.problem}") from None
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid problem file {args.problem}: {exc}") from None


def _write(args, name, payload):
    write_json(payload, os.path.join(_out_dir(args), name))


def _curve_series(values):
    pts = [(v.real, v.imag) for v in values]
    return pts + pts[:1]


def cmd_integrate(args, cfg) -> int:
    problem = _load(args)
    traj = integrate(problem, tuple(args.u0), cfg.integrator)
    out = _out_dir(args)
    write_trajectory_csv(traj, os.path.join(out, "trajectory.csv"))
    write_svg(os.path.join(out, "orbit.svg"), [list(zip(traj.x, traj.y))],
              title=f"orbit from ({args.u0[0]:g}, {args.u0[1]:g}) over T = {problem.period:g}",
              markers=[traj.start, traj.end])
    _write(args, "results.json", {"command": "integrate", "u0": list(traj.start),
                                  "end": list(traj.end), "period": problem.period,
                                  "nodes": len(traj), "n_accepted": traj.n_accepted,
                                  "n_rejected": traj.n_rejected})
    print(f"u(T) = ({traj.end.x:.17g}, {traj.end.y:.17g})")
    return EXIT_OK


def cmd_poincare(args, cfg) -> int:
    problem = _load(args)
    P = poincare_map(problem, tuple(args.u0), cfg.integrator)
    D = displacement(problem, tuple(args.u0), cfg.integrator)
    _write(args, "results.json", {"command": "poincare", "u0": list(args.u0),
                                  "P": list(P), "displacement": list(D)})
    print(f"P(u0) = ({P.x:.17g}, {P.y:.17g})\nPhi(u0) = ({D.x:.17g}, {D.y:.17g})")
    return EXIT_OK


def cmd_curve(args, cfg) -> int:
    problem = _load(args)
    curve = displacement_curve(problem, args.radius, args.normalization, cfg.integrator)
    thetas = [2 * math.pi * k / args.samples for k in range(args.samples + 1)]
    vals = curve.values(thetas)
    out = _out_dir(args)
    with open(os.path.join(out, "curve.csv"), "w") as fh:
        fh.write("theta,x,y\n")
        for t, v in zip(thetas, vals):
            fh.write(f"{t:.17g},{v.real:.17g},{v.imag:.17g}\n")
    write_svg(os.path.join(out, "curve.svg"), [_curve_series(vals)], markers=[(0.0, 0.0)],
              title=f"displacement curve r = {args.radius:g} ({args.normalization})")
    _write(args, "results.json", {"command": "curve", "radius": args.radius,
                                  "normalization": args.normalization,
                                  "offset": list(curve.offset), "samples": len(thetas)})
    return EXIT_OK


def cmd_winding(args, cfg) -> int:
    problem = _load(args)
    curve = displacement_curve(problem, args.radius, args.normalization, cfg.integrator)
    res = winding_number(curve.oracle(), 0j, cfg.winding)
    out = _out_dir(args)
    write_samples_csv(res, os.path.join(out, "samples.csv"))
    write_svg(os.path.join(out, "curve.svg"), [_curve_series(res.values)],
              markers=[(0.0, 0.0)], title=f"r = {args.radius:g}: winding {res.winding}")
    _write(args, "results.json", {"command": "winding", "radius": args.radius,
                                  "normalization": args.normalization, **res.to_dict()})
    print(f"winding = {res.winding}")
    return EXIT_OK


_VERDICT_EXIT = {SATISFIED: EXIT_OK, VIOLATED: EXIT_VIOLATED, INCONCLUSIVE: EXIT_INCONCLUSIVE}


def cmd_check(args, cfg) -> int:
    problem = _load(args)
    which = args.condition
    if which == "auto":
        which = "nirenberg" if problem.field.bounded else "ortega-sanchez"
    check = check_nirenberg if which == "nirenberg" else check_ortega_sanchez
    rep = check(problem, cfg.conditions)
    _write(args, "results.json", {"command": "check", "report": rep})
    print(json.dumps({"condition": rep.condition, "verdict": rep.verdict,
                      "margin": rep.margin, "winding": rep.winding}))
    return _VERDICT_EXIT[rep.verdict]


def cmd_solve(args, cfg) -> int:
    problem = _load(args)
    res = solve_periodic(problem, cfg)
    out = _out_dir(args)
    for k, sol in enumerate(res.solutions):
        write_trajectory_csv(sol.trajectory, os.path.join(out, f"solution_{k}.csv"))
    if res.certificate is not None:
        c = res.certificate
        write_svg(os.path.join(out, "displacement.svg"), [_curve_series(c.curve_values)],
                  markers=[(0.0, 0.0)],
                  title=f"displacement curve r = {c.radius:g}: winding {c.winding}")
    _write(args, "results.json", {"command": "solve", **res.to_dict()})
    for sol in res.solutions:
        print(f"u0 = ({sol.u0.x:.17g}, {sol.u0.y:.17g})  residual = {sol.residual:.3e}")
    if res.report is not None and res.report.verdict != SATISFIED:
        print(f"conditions {res.report.verdict}: {'; '.join(res.diagnostics)}", file=sys.stderr)
        return _VERDICT_EXIT[res.report.verdict]
    if not res.solutions:
        print(f"{res.status}: {'; '.join(res.diagnostics)}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def _coefficients(args):
    if args.coef:
        try:
            return [complex(c.replace(" ", "")) for c in args.coef]
        except ValueError as exc:
            raise UsageError(f"bad coefficient: {exc}") from None
    if args.problem:
        problem = _load(args)
        if isinstance(problem.field, ConjugatePolynomial):
            return list(problem.field.coefficients)
        raise UsageError("fta needs a conjugate_polynomial field or --coef values")
    raise UsageError("fta needs --coef values (lowest degree first) or --problem")


def cmd_fta(args, cfg) -> int:
    try:
        poly = to_planar(_coefficients(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = fta_roots(poly, cfg)
    _write(args, "results.json", {"command": "fta",
                                  "coefficients": [[c.real, c.imag] for c in poly.coefficients],
                                  **res.to_dict()})
    print(f"{'re':>24} {'im':>24} {'|f(root)|':>12}")
    for r, v in zip(res.roots, res.residuals):
        print(f"{r.x:24.17g} {r.y:24.17g} {v:12.3e}")
    if res.missing:
        print("warning: " + "; ".join(res.diagnostics), file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def cmd_demo_exp(args, cfg) -> int:
    rep = exp_demo(args.R, cfg.winding)
    out = _out_dir(args)
    write_svg(os.path.join(out, "exp_curve.svg"), [_curve_series(rep.values)],
              markers=[(0.0, 0.0)],
              title=f"exp(R e^(-i theta)), R = {args.R:g}: winding {rep.winding}")
    _write(args, "results.json", {"command": "demo-exp", **rep.to_dict()})
    if not rep.certified:
        print(f"winding not certified: {rep.error}", file=sys.stderr)
        return EXIT_RUNTIME
    print(f"winding = {rep.winding}, modulus in [{rep.min_modulus:.17g}, {rep.max_modulus:.17g}]")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--problem", help="problem JSON file")
    common.add_argument("--out", default=".", help="output directory (default: current)")
    common.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override a configuration value (repeatable)")

    p = argparse.ArgumentParser(prog="planar-periodic",
                                description="Periodic solutions of planar forced systems "
                                            "u' = g(u) + p(t) by shooting and winding numbers.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("integrate", parents=[common], help="integrate one period from u0")
    s.add_argument("--u0", nargs=2, type=float, required=True, metavar=("X", "Y"))
    s.set_defaults(func=cmd_integrate)

    s = sub.add_parser("poincare", parents=[common], help="Poincaré map and displacement at u0")
    s.add_argument("--u0", nargs=2, type=float, required=True, metavar=("X", "Y"))
    s.set_defaults(func=cmd_poincare)

    for name, func, helptext in (("curve", cmd_curve, "sample a displacement curve"),
                                 ("winding", cmd_winding, "winding of a displacement curve")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--radius", type=float, required=True)
        s.add_argument("--normalization", choices=("raw", "divided"), default="raw")
        if name == "curve":
            s.add_argument("--samples", type=int, default=720)
        s.set_defaults(func=func)

    s = sub.add_parser("check", parents=[common], help="check the solvability conditions")
    s.add_argument("--condition", choices=("auto", "nirenberg", "ortega-sanchez"), default="auto")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("solve", parents=[common], help="find periodic solutions")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("fta", parents=[common], help="polynomial roots as periodic orbits")
    s.add_argument("--coef", action="append", metavar="C",
                   help="coefficient (complex literal such as 1, -2.5, 1+2j), lowest degree first")
    s.set_defaults(func=cmd_fta)

    s = sub.add_parser("demo-exp", parents=[common], help="winding of the exponential curve")
    s.add_argument("--R", type=float, required=True)
    s.set_defaults(func=cmd_demo_exp)
    return p


def main(argv: typing.Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits on --help/--version (0) and on usage errors (2)
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = build_config(args.set)
        return args.func(args, cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PlanarPeriodicError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
