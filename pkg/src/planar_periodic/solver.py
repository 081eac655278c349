"""Locating T-periodic solutions as zeros of the displacement map.

Pipeline: conditions, Rouché radius, quadtree on boundary windings, Newton
polishing, re-verification against the original problem.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .conditions import (SATISFIED, ConditionConfig, ConditionReport, check_nirenberg,
                         check_ortega_sanchez, limit_curve)
from .errors import (FieldOverflowError, LimitCurveVanishes, MaxStepsExceeded,
                     NoZeroCertified, PlanarPeriodicError, PolishFailed, RadiusNotFound,
                     SingularJacobian, VerificationFailed, WindingError)
from .model import (ConjugatePolynomial, Forcing, Point2, ProblemSpec, as_complex,
                    is_gradient_type, point, to_planar)
from .ode import IntegratorConfig, integrate, l2_norm_derivative
from .poincare import DisplacementMap, RadiusCertificate, select_radius, shooting_problem
from .winding import CurveOracle, WindingConfig, boundary_oracle, winding_number

__all__ = [
    "SolverConfig", "BoxRegion", "Candidate", "SubdivisionResult", "find_zeros_subdivision",
    "newton_polish", "VerificationReport", "verify_solution", "PeriodicSolution",
    "SolveResult", "solve_periodic", "fta_time", "FTAResult", "fta_roots",
    "ExpDemoReport", "exp_demo",
]

_INTEGRATION_ERRORS = (FieldOverflowError, MaxStepsExceeded)


@dataclass(frozen=True)
class BoxRegion:
    center: Point2
    half_width: float
    depth: int = 0

    def __post_init__(self):
        object.__setattr__(self, "center", point(self.center))
        if not self.half_width > 0:
            raise ValueError("half_width must be positive")

    @property
    def z(self) -> complex:
        return self.center.z

    def children(self) -> list:
        h = 0.5 * self.half_width
        cx, cy = self.center
        return [BoxRegion(Point2(cx + dx * h, cy + dy * h), h, self.depth + 1)
                for dy in (-1.0, 1.0) for dx in (-1.0, 1.0)]

    def scaled(self, factor: float) -> "BoxRegion":
        return BoxRegion(self.center, self.half_width * factor, self.depth)

    def contains(self, u, slack: float = 0.0) -> bool:
        x, y = point(u)
        h = self.half_width + slack
        return abs(x - self.center.x) <= h and abs(y - self.center.y) <= h

    def to_dict(self):
        return {"center": list(self.center), "half_width": self.half_width,
                "depth": self.depth}


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and budgets; defaults sit near the double-precision ODE floor."""

    integrator: IntegratorConfig = IntegratorConfig()
    winding: WindingConfig = WindingConfig()
    conditions: ConditionConfig = ConditionConfig()
    min_box: float = 1e-3
    max_depth: int = 40
    solve_tol: float = 1e-10
    periodicity_tol: float = 1e-8
    dedupe_radius: float = 1e-4
    root_tol: float = 1e-8
    h_J: float = 1e-6
    l2_slack: float = 1e-6
    max_iter: int = 50
    max_halvings: int = 20
    cond_max: float = 1e12
    retry_factors: tuple = (1.05, 0.95, 1.10)
    r_start: float = 8.0
    r_max: float = 2.0**16
    variation: float = 0.1
    enforce_conditions: bool = True
    region: Optional[BoxRegion] = None
    saturation_level: Optional[float] = None
    degeneracy_grid: int = 4
    verify_tighten: float = 10.0
    verify_max_step_divisor: int = 1024

    def boundary_winding_config(self) -> WindingConfig:
        # Phi is only known to integrator accuracy, so values that small count as zero
        floor = 10.0 * self.integrator.abs_tol
        if self.winding.pole_abs_tol >= floor:
            return self.winding
        return replace(self.winding, pole_abs_tol=floor)


# ---------------------------------------------------------------------------
# subdivision

@dataclass(frozen=True)
class Candidate:
    box: BoxRegion
    winding: Optional[int]
    reason: str = "min_box"

    def to_dict(self):
        return {"box": self.box.to_dict(), "winding": self.winding, "reason": self.reason}


@dataclass
class SubdivisionResult:
    """Candidate boxes plus bookkeeping; iterates over the candidate boxes."""

    region: BoxRegion
    root_winding: int
    candidates: list = field(default_factory=list)
    pruned: int = 0
    pruned_boxes: list = field(default_factory=list, repr=False)
    boxes_examined: int = 0
    partial: bool = False
    sum_mismatches: int = 0
    diagnostics: list = field(default_factory=list)

    def __iter__(self):
        return iter(c.box for c in self.candidates)

    def __len__(self):
        return len(self.candidates)

    def __getitem__(self, k):
        return self.candidates[k].box


def _box_winding(map_, box: BoxRegion, cfg: WindingConfig) -> int:
    return winding_number(boundary_oracle(box.center, box.half_width, map_), 0j, cfg).winding


def _box_winding_with_retries(map_, box, cfg, factors):
    """(winding, box actually used) or (None, box) if every retry fails."""
    try:
        return _box_winding(map_, box, cfg), box
    except (WindingError,) + _INTEGRATION_ERRORS:
        pass
    for f in factors:
        alt = box.scaled(f)
        try:
            return _box_winding(map_, alt, cfg), alt
        except (WindingError,) + _INTEGRATION_ERRORS:
            continue
    return None, box


def find_zeros_subdivision(map_oracle, region: BoxRegion,
                           config: SolverConfig = SolverConfig()) -> SubdivisionResult:
    """Quadtree on boundary windings of ``map_oracle`` (Point2 -> Point2).

    Boxes with winding 0 are pruned, boxes with nonzero winding are split
    until ``min_box``; boxes whose boundary meets a zero of the map are
    retried with scaled boundaries and, failing that, kept as candidates.
    """
    wcfg = config.boundary_winding_config()
    root_w, root_box = _box_winding_with_retries(map_oracle, region, wcfg, config.retry_factors)
    if root_w is None:
        raise WindingError("boundary winding of the search region is undefined "
                           "(the map vanishes on or near every tried boundary)")
    if root_w == 0:
        raise NoZeroCertified("no zero certified in region: boundary winding is 0")
    res = SubdivisionResult(root_box, root_w, boxes_examined=1)
    queue = [(root_box, root_w)]
    while queue:
        nxt = []
        for box, w in queue:
            if box.half_width <= config.min_box:
                res.candidates.append(Candidate(box, w, "min_box"))
                continue
            if box.depth >= config.max_depth:
                res.partial = True
                res.candidates.append(Candidate(box, w, "max_depth"))
                continue
            kids = []
            exact = True
            for child in box.children():
                cw, used = _box_winding_with_retries(map_oracle, child, wcfg, config.retry_factors)
                res.boxes_examined += 1
                if used is not child:
                    exact = False
                kids.append((cw, used))
            if exact and all(cw is not None for cw, _ in kids) and w is not None:
                if sum(cw for cw, _ in kids) != w:
                    res.sum_mismatches += 1
                    res.diagnostics.append(
                        f"children windings do not add up at {box.to_dict()}")
            for cw, used in kids:
                if cw is None:
                    res.candidates.append(Candidate(used, None, "boundary_zero"))
                elif cw == 0:
                    res.pruned += 1
                    res.pruned_boxes.append(used)
                else:
                    nxt.append((used, cw))
        queue = nxt
    res.candidates = _merge_overlapping(map_oracle, res.candidates, wcfg, config.retry_factors)
    res.candidates.sort(key=lambda c: (c.box.center.x, c.box.center.y))
    return res


def _overlap(a: BoxRegion, b: BoxRegion) -> bool:
    h = a.half_width + b.half_width
    return abs(a.center.x - b.center.x) <= h and abs(a.center.y - b.center.y) <= h


def _merge_overlapping(map_, cands, cfg, factors):
    """Retried (scaled) boxes can overlap their neighbours; merge each
    overlapping cluster into its bounding square and recount its winding."""
    groups = []
    for c in cands:
        hits = [g for g in groups if any(_overlap(c.box, o.box) for o in g)]
        merged = [c]
        for g in hits:
            merged.extend(g)
            groups.remove(g)
        groups.append(merged)
    out = []
    for g in groups:
        if len(g) == 1:
            out.append(g[0])
            continue
        xs = [b.box.center.x - b.box.half_width for b in g] + \
             [b.box.center.x + b.box.half_width for b in g]
        ys = [b.box.center.y - b.box.half_width for b in g] + \
             [b.box.center.y + b.box.half_width for b in g]
        box = BoxRegion(Point2(0.5 * (min(xs) + max(xs)), 0.5 * (min(ys) + max(ys))),
                        0.5 * max(max(xs) - min(xs), max(ys) - min(ys)),
                        max(b.box.depth for b in g))
        w, used = _box_winding_with_retries(map_, box, cfg, factors)
        out.append(Candidate(used, w, "merged"))
    return out


# ---------------------------------------------------------------------------
# Newton

def _many(map_, zs):
    many = getattr(map_, "evaluate_many", None)
    if many is not None:
        return [as_complex(v) for v in many(zs)]
    return [as_complex(map_(Point2.from_complex(z))) for z in zs]


def newton_polish(map_oracle, u_init, config: SolverConfig = SolverConfig()) -> Point2:
    """Damped Newton on the map with a central-difference Jacobian.

    Raises :class:`SingularJacobian` when cond(J) exceeds ``cond_max`` and
    :class:`PolishFailed` when the residual does not reach ``solve_tol``.
    """
    u = as_complex(point(u_init))
    h = config.h_J
    F = _many(map_oracle, [u])[0]
    if abs(F) < config.solve_tol:
        return Point2.from_complex(u)
    for _ in range(config.max_iter):
        if F == 0:
            return Point2.from_complex(u)
        fx_p, fx_m, fy_p, fy_m = _many(map_oracle, [u + h, u - h, u + 1j * h, u - 1j * h])
        cx, cy = (fx_p - fx_m) / (2 * h), (fy_p - fy_m) / (2 * h)
        J = np.array([[cx.real, cy.real], [cx.imag, cy.imag]])
        if not np.all(np.isfinite(J)):
            raise PolishFailed("polish failed: non-finite Jacobian")
        cond = np.linalg.cond(J)
        if not cond <= config.cond_max:
            raise SingularJacobian(f"polish failed: singular Jacobian (cond {cond:.3e})")
        dx, dy = np.linalg.solve(J, [-F.real, -F.imag])
        step = complex(dx, dy)
        lam = 1.0
        for _ in range(config.max_halvings + 1):
            trial = u + lam * step
            try:
                F_new = _many(map_oracle, [trial])[0]
            except _INTEGRATION_ERRORS:
                lam *= 0.5
                continue
            if abs(F_new) < abs(F):
                break
            lam *= 0.5
        else:
            if abs(F) < config.solve_tol:
                return Point2.from_complex(u)
            raise PolishFailed(f"polish failed: no decrease from |Phi| = {abs(F):.3e}")
        u, F = trial, F_new
        if abs(F) < config.solve_tol and abs(lam * step) < 1e-12 * (1.0 + abs(u)):
            return Point2.from_complex(u)
    if abs(F) < config.solve_tol:
        return Point2.from_complex(u)
    raise PolishFailed(f"polish failed after {config.max_iter} iterations (|Phi| = {abs(F):.3e})")


# ---------------------------------------------------------------------------
# verification

@dataclass(frozen=True, eq=False)
class VerificationReport:
    u0: Point2
    periodicity_error: float
    residual_drift: float
    l2_lhs: Optional[float]
    l2_rhs: Optional[float]
    l2_ok: Optional[bool]
    passed: bool
    trajectory: object = field(default=None, repr=False)
    message: str = ""

    def to_dict(self):
        return {"u0": list(self.u0), "periodicity_error": self.periodicity_error,
                "residual_drift": self.residual_drift, "l2_lhs": self.l2_lhs,
                "l2_rhs": self.l2_rhs, "l2_ok": self.l2_ok, "passed": self.passed,
                "message": self.message}


def verify_solution(problem: ProblemSpec, sol, config: SolverConfig = SolverConfig()) -> VerificationReport:
    """Re-integrate the original problem from ``sol`` (a PeriodicSolution or a point).

    Uses tolerances tightened by ``verify_tighten`` and steps no longer than
    T / ``verify_max_step_divisor`` so the L2 quadrature is resolved.  Raises
    :class:`VerificationFailed` (carrying the report) when |u(T) - u(0)|
    exceeds 10 solve_tol or the L2 inequality fails.
    """
    u0 = sol.u0 if isinstance(sol, PeriodicSolution) else point(sol)
    prior = sol.residual if isinstance(sol, PeriodicSolution) else None
    T = problem.period
    icfg = config.integrator.tightened(config.verify_tighten)
    icfg = replace(icfg, max_step=T / config.verify_max_step_divisor
                   if icfg.max_step == 0 else min(icfg.max_step, T / config.verify_max_step_divisor))
    try:
        traj = integrate(problem, u0, icfg)
    except _INTEGRATION_ERRORS as exc:
        rep = VerificationReport(u0, math.inf, math.inf, None, None, None, False, None,
                                 f"verification failed: {exc}")
        raise VerificationFailed(rep.message, rep) from exc
    err = math.hypot(traj.x[-1] - u0.x, traj.y[-1] - u0.y)
    drift = abs(err - prior) if prior is not None else err
    lhs = rhs = ok = None
    if is_gradient_type(problem.field):
        lhs = l2_norm_derivative(traj, problem)
        rhs = problem.forcing.l2_norm()
        ok = lhs <= rhs + config.l2_slack
    passed = err <= 10.0 * config.solve_tol and ok is not False
    msg = "verified" if passed else (
        f"verification failed: |u(T) - u(0)| = {err:.3e}" if err > 10.0 * config.solve_tol
        else f"verification failed: L2 bound {lhs:.6g} > {rhs:.6g} + {config.l2_slack:g}")
    rep = VerificationReport(u0, err, drift, lhs, rhs, ok, passed, traj, msg)
    if not passed:
        raise VerificationFailed(msg, rep)
    return rep


# ---------------------------------------------------------------------------
# pipeline

@dataclass(frozen=True, eq=False)
class PeriodicSolution:
    u0: Point2
    residual: float
    trajectory: object = field(repr=False)
    box: Optional[BoxRegion] = None
    box_winding: Optional[int] = None
    verification: Optional[VerificationReport] = None

    def to_dict(self):
        v = self.verification
        return {"u0": list(self.u0), "residual": self.residual,
                "l2_lhs": v.l2_lhs if v else None, "l2_rhs": v.l2_rhs if v else None,
                "periodicity_error": v.periodicity_error if v else None,
                "box": self.box.to_dict() if self.box else None,
                "box_winding": self.box_winding}


@dataclass(eq=False)
class SolveResult:
    """Outcome of :func:`solve_periodic`; iterates over the solutions."""

    status: str
    solutions: list = field(default_factory=list)
    report: Optional[ConditionReport] = None
    certificate: Optional[RadiusCertificate] = None
    region: Optional[BoxRegion] = None
    subdivision: Optional[SubdivisionResult] = None
    unrefined: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.solutions)

    def __len__(self):
        return len(self.solutions)

    def __getitem__(self, k):
        return self.solutions[k]

    def to_dict(self):
        return {"status": self.status,
                "solutions": [s.to_dict() for s in self.solutions],
                "conditions": self.report.to_dict() if self.report else None,
                "certificate": self.certificate.to_dict() if self.certificate else None,
                "region": self.region.to_dict() if self.region else None,
                "candidates": [c.to_dict() for c in self.subdivision.candidates]
                if self.subdivision else [],
                "unrefined": [b.to_dict() for b in self.unrefined],
                "diagnostics": list(self.diagnostics)}


def _check_conditions(problem: ProblemSpec, cfg: SolverConfig) -> ConditionReport:
    if problem.field.bounded:
        rep = check_nirenberg(problem, cfg.conditions)
        if rep.verdict != SATISFIED and rep.margin is not None and \
                rep.margin <= cfg.conditions.margin_floor:
            alt = check_ortega_sanchez(problem, cfg.conditions)
            if alt.verdict == SATISFIED:
                return alt
        return rep
    return check_ortega_sanchez(problem, cfg.conditions)


def _jittered(center: complex, hw: float) -> BoxRegion:
    # keeps symmetric zero sets (e.g. real roots) off the quadtree's edges
    c = center + hw * complex(0.01234, 0.00987)
    return BoxRegion(Point2.from_complex(c), 1.02 * hw)


def _degenerate(phi, region: BoxRegion, cfg: SolverConfig) -> bool:
    """More than half of a grid of starts polish to mutually distant zeros."""
    n = cfg.degeneracy_grid
    h = region.half_width
    offs = [(-1 + (2 * k + 1) / n) for k in range(n)]
    found = []
    for a in offs:
        for b in offs:
            try:
                found.append(newton_polish(phi, (region.center.x + a * h,
                                                 region.center.y + b * h), cfg).z)
            except (PlanarPeriodicError,):
                continue
    if len(found) * 2 <= n * n:
        return False
    distinct = all(abs(p - q) > cfg.dedupe_radius
                   for i, p in enumerate(found) for q in found[i + 1:])
    return distinct


def solve_periodic(problem: ProblemSpec, config: SolverConfig = SolverConfig()) -> SolveResult:
    """All distinct T-periodic solutions found by the degree pipeline.

    Failures are reported through ``status`` and ``diagnostics``; the
    solution list is then empty.
    """
    res = SolveResult("solved")
    normalization = "raw" if problem.field.bounded else "divided"
    if config.enforce_conditions:
        rep = _check_conditions(problem, config)
        res.report = rep
        if rep.verdict != SATISFIED:
            res.status = "conditions_" + rep.verdict
            res.diagnostics.extend(rep.diagnostics)
            return res
        normalization = "raw" if rep.condition == "nirenberg" else "divided"

    if config.region is not None:
        region = config.region
    else:
        try:
            gamma = limit_curve(problem, "raw" if normalization == "raw" else "unit",
                                config.conditions)
            r, cert = select_radius(problem, gamma, config.r_start, config.r_max,
                                    config.integrator, normalization=normalization,
                                    winding_config=config.winding,
                                    variation=config.variation,
                                    level=config.saturation_level)
        except (RadiusNotFound, LimitCurveVanishes, WindingError) as exc:
            res.status = "radius_not_found"
            res.diagnostics.append(str(exc))
            return res
        res.certificate = cert
        region = _jittered(0j, r)
    res.region = region

    phi = DisplacementMap(shooting_problem(problem, config.saturation_level), config.integrator)
    try:
        sub = find_zeros_subdivision(phi, region, config)
    except NoZeroCertified as exc:
        res.status = "no_zero"
        res.diagnostics.append(str(exc))
        return res
    except WindingError as exc:
        if _degenerate(phi, region, config):
            res.status = "non_isolated"
            res.diagnostics.append("non-isolated solution set: displacement vanishes on an open set")
        else:
            res.status = "winding_undefined"
            res.diagnostics.append(str(exc))
        return res
    res.subdivision = sub
    res.diagnostics.extend(sub.diagnostics)
    if sub.partial:
        res.diagnostics.append("max_depth reached with unresolved boxes (partial result)")

    found = []
    for cand in sub.candidates:
        try:
            u = newton_polish(phi, cand.box.center, config)
        except PolishFailed as exc:
            res.unrefined.append(cand.box)
            res.diagnostics.append(f"{exc} (box {cand.box.to_dict()})")
            continue
        residual = abs(phi.evaluate_many([u.z])[0])
        try:
            ver = verify_solution(problem, u, config)
        except VerificationFailed as exc:
            res.diagnostics.append(f"candidate {tuple(u)} discarded: {exc}")
            continue
        found.append(PeriodicSolution(u, residual, ver.trajectory, cand.box, cand.winding, ver))

    found.sort(key=lambda s: s.residual)
    kept = []
    for s in found:
        if all(abs(s.u0.z - k.u0.z) > config.dedupe_radius for k in kept):
            kept.append(s)
    kept.sort(key=lambda s: (s.u0.x, s.u0.y))
    res.solutions = kept
    if not kept:
        res.status = "no_verified_solution"
    return res


# ---------------------------------------------------------------------------
# roots of polynomials

def fta_time(poly: ConjugatePolynomial) -> float:
    """Period used for root finding: min(1, 1/Lambda).

    Lambda bounds |f'| on a disk containing every root (Fujiwara radius), so
    the Poincaré map's multipliers e^{+-T|f'(root)|} stay moderate.
    """
    a = [complex(c) for c in poly.coefficients]
    n = poly.degree
    an = a[n]
    terms = [abs(a[n - k] / an) ** (1.0 / k) for k in range(1, n)]
    terms.append(abs(a[0] / (2 * an)) ** (1.0 / n))
    rho = max(2.0 * max(terms), 1.0)
    lam = sum(k * abs(a[k]) * rho ** (k - 1) for k in range(1, n + 1))
    return min(1.0, 1.0 / lam)


@dataclass(eq=False)
class FTAResult:
    roots: list
    residuals: list
    period: float
    region: BoxRegion
    missing: bool
    solve: SolveResult = field(repr=False)
    diagnostics: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    def to_dict(self):
        return {"roots": [list(r) for r in self.roots], "abs_f": self.residuals,
                "period": self.period, "region": self.region.to_dict(),
                "missing_roots": self.missing, "status": self.solve.status,
                "diagnostics": self.diagnostics}


def fta_roots(f, config: SolverConfig = SolverConfig()) -> FTAResult:
    """Roots of f as periodic orbits of z' = f(conj z) with zero forcing.

    Orbits are constant at points u with f(conj u) = 0, so the roots are the
    conjugates of the fixed points found.
    """
    poly = f if isinstance(f, ConjugatePolynomial) else to_planar(f)
    a = [complex(c) for c in poly.coefficients]
    n, an = poly.degree, poly.leading
    T = fta_time(poly)
    hw = 2.0 + max(abs(c / an) for c in a[:n]) if n > 0 else 2.0
    region = _jittered(0j, hw)
    cfg = replace(config, region=region)
    sol = solve_periodic(ProblemSpec(poly, Forcing.zero(T)), cfg)
    roots, residuals, diags = [], [], list(sol.diagnostics)
    for s in sol.solutions:
        z = s.u0.z.conjugate()
        val = abs(poly.poly(z))
        if val < config.root_tol:
            roots.append(Point2.from_complex(z))
            residuals.append(val)
        else:
            diags.append(f"discarded {z!r}: |f| = {val:.3e} >= root_tol")
    order = sorted(range(len(roots)), key=lambda k: (roots[k].x, roots[k].y))
    roots = [roots[k] for k in order]
    residuals = [residuals[k] for k in order]
    missing = _missing_zeros(sol)
    if missing:
        diags.append("missing roots: some certified candidate boxes yielded no verified zero")
    return FTAResult(roots, residuals, T, region, missing, sol, diags)


def _missing_zeros(sol: SolveResult) -> bool:
    """True unless candidate windings add up to the region winding and every
    cluster of nonzero-winding candidates has a solution next to it."""
    sub = sol.subdivision
    if sub is None:
        return True
    cands = [c for c in sub.candidates if c.winding]
    if any(c.winding is None for c in sub.candidates):
        return True
    if sum(c.winding for c in cands) != sub.root_winding:
        return True
    groups = []
    for c in cands:
        for g in groups:
            if any(abs(c.box.z - o.z) <= 2.5 * (c.box.half_width + o.half_width) for o in g):
                g.append(c.box)
                break
        else:
            groups.append([c.box])
    for g in groups:
        reach = 4.0 * max(b.half_width for b in g)
        if not any(abs(s.u0.z - b.z) <= reach for s in sol.solutions for b in g):
            return True
    return False


# ---------------------------------------------------------------------------
# exponential example

@dataclass(frozen=True, eq=False)
class ExpDemoReport:
    R: float
    winding: Optional[int]
    min_modulus: float
    max_modulus: float
    expected_range: tuple
    samples_used: int
    min_pole_distance: Optional[float]
    max_step_turn: Optional[float]
    near_quarter_turns: float
    thetas: tuple = field(default=(), repr=False)
    values: tuple = field(default=(), repr=False)
    error: Optional[str] = None

    @property
    def certified(self) -> bool:
        return self.error is None

    def to_dict(self):
        return {"R": self.R, "winding": self.winding, "min_modulus": self.min_modulus,
                "max_modulus": self.max_modulus, "expected_range": list(self.expected_range),
                "samples_used": self.samples_used, "min_pole_distance": self.min_pole_distance,
                "max_step_turn": self.max_step_turn,
                "fraction_of_samples_near_quarter_turns": self.near_quarter_turns,
                "error": self.error}


def exp_demo(R: float, config: WindingConfig = WindingConfig()) -> ExpDemoReport:
    """Winding of theta -> exp(R e^{-i theta}) about 0 (the conjugate-exp field on a circle).

    The modulus e^{R cos theta} spans [e^{-R}, e^{R}].  For large R the
    pole tolerance (relative to the curve scale) eventually exceeds e^{-R}
    and certification fails; that is reported in ``error``.
    """
    if not R > 0:
        raise ValueError("R must be positive")
    R = float(R)

    def f(t):
        return cmath.exp(R * complex(math.cos(t), -math.sin(t)))

    curve = CurveOracle(f, lambda ts: [f(t) for t in ts], f"exp R={R:g}")
    expected = (math.exp(-R), math.exp(R))
    try:
        wr = winding_number(curve, 0j, config)
    except WindingError as exc:
        thetas = [2 * math.pi * k / 1024 for k in range(1025)]
        vals = curve.values(thetas)
        mods = [abs(v) for v in vals]
        return ExpDemoReport(R, None, min(mods), max(mods), expected, len(thetas), None,
                             None, float("nan"), tuple(thetas), tuple(vals), str(exc))
    thetas = wr.thetas
    mods = [abs(v) for v in wr.values]
    near = sum(1 for t in thetas if abs(math.sin(t)) > math.sqrt(0.5)) / len(thetas)
    return ExpDemoReport(R, wr.winding, min(mods), max(mods), expected, wr.samples_used,
                         wr.min_pole_distance, wr.max_step_turn, near, tuple(thetas),
                         tuple(wr.values))
