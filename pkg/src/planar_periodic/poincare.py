"""Poincaré map, displacement map and displacement curves on circles.

For unbounded gradient-type fields the shooting is done on a bounded
surrogate (see :func:`shooting_problem`): trajectories of u' = f(conj u)
blow up in finite time from large circles, while the surrogate keeps every
direction and every zero of the field.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import (FieldOverflowError, LimitCurveVanishes, MaxStepsExceeded,
                     NoAprioriBound, RadiusNotFound, VanishingDenominator)
from .model import (Point2, ProblemSpec, Saturated, as_complex, field_sup_norm,
                    is_gradient_type, point, reduce_to_zero_mean)
from .ode import IntegratorConfig, endpoints, integrate, _raise_for
from .winding import CurveOracle, WindingConfig, rouche_equal_winding

__all__ = [
    "poincare_map", "displacement", "apriori_bound", "shooting_problem",
    "saturation_level", "DisplacementCurve", "displacement_curve",
    "DisplacementMap", "RadiusCertificate", "select_radius", "DENOMINATOR_FLOOR",
]

DENOMINATOR_FLOOR = 1e-12


def poincare_map(problem: ProblemSpec, u0, config: IntegratorConfig = IntegratorConfig()) -> Point2:
    """P(u0) = u(T)."""
    return integrate(problem, u0, config, record=False).end


def displacement(problem: ProblemSpec, u0, config: IntegratorConfig = IntegratorConfig()) -> Point2:
    """Phi(u0) = P(u0) - u0."""
    u0 = point(u0)
    end = poincare_map(problem, u0, config)
    return Point2(end.x - u0.x, end.y - u0.y)


def apriori_bound(problem: ProblemSpec) -> float:
    """M with |u(t) - u0| <= M on [0, T].

    Bounded fields: T (sup|g| + sup|p|), valid for every trajectory.
    Gradient fields: sqrt(T) ||p||_L2, valid for T-periodic solutions.
    """
    T = problem.period
    if problem.field.bounded:
        return T * (field_sup_norm(problem.field) + problem.forcing.sup_bound())
    if is_gradient_type(problem.field):
        return math.sqrt(T) * problem.forcing.l2_norm()
    raise NoAprioriBound("no a priori bound available: field is unbounded and not a gradient")


def saturation_level(problem: ProblemSpec) -> float:
    """Default level for the bounded surrogate: 4 (1 + sup|p - pbar|)."""
    return 4.0 * (1.0 + problem.forcing.without_mean().sup_bound())


def shooting_problem(problem: ProblemSpec, level: Optional[float] = None) -> ProblemSpec:
    """Zero-mean reduction, then saturation of unbounded gradient fields.

    The surrogate equals the field wherever |g + pbar| <= level, so periodic
    orbits staying there are genuine; others are caught by re-verification
    against the original problem.
    """
    reduced = reduce_to_zero_mean(problem)
    if reduced.field.bounded or not is_gradient_type(reduced.field):
        return reduced
    lvl = saturation_level(problem) if level is None else float(level)
    return ProblemSpec(Saturated(reduced.field, lvl), reduced.forcing)


class DisplacementMap:
    """u0 -> Phi(u0) with memoised, batched evaluation on complex numbers."""

    def __init__(self, problem: ProblemSpec, config: IntegratorConfig = IntegratorConfig()):
        self.problem = problem
        self.config = config
        self.cache: dict = {}
        self.evaluations = 0

    def evaluate_many(self, zs) -> list:
        zs = [as_complex(z) for z in zs]
        todo = [z for z in dict.fromkeys(zs) if z not in self.cache]
        if todo:
            ends, sts = endpoints(self.problem, todo, self.config)
            self.evaluations += len(todo)
            for z, e, s in zip(todo, ends, sts):
                if s:
                    _raise_for(s, (z.real, z.imag))
                self.cache.setdefault(z, e - z)
        return [self.cache[z] for z in zs]

    def __call__(self, u) -> Point2:
        return Point2.from_complex(self.evaluate_many([as_complex(point(u))])[0])


@dataclass(eq=False)
class DisplacementCurve:
    """theta -> Phi(r e^{i theta}), optionally divided by |h(r e^{i theta})|.

    ``problem`` is the shooting problem actually integrated; ``offset`` is the
    constant c of the normalisation |g - c| expressed for the original field
    (c = -pbar).
    """

    problem: ProblemSpec
    radius: float
    normalization: str = "raw"
    offset: Point2 = Point2(0.0, 0.0)
    config: IntegratorConfig = IntegratorConfig()
    floor: float = DENOMINATOR_FLOOR
    cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        if self.normalization not in ("raw", "divided"):
            raise ValueError("normalization must be 'raw' or 'divided'")

    def values(self, thetas) -> list:
        thetas = [float(t) for t in thetas]
        todo = [t for t in dict.fromkeys(thetas) if t not in self.cache]
        if todo:
            starts = [self.radius * complex(math.cos(t), math.sin(t)) for t in todo]
            ends, sts = endpoints(self.problem, starts, self.config)
            for t, z, e, s in zip(todo, starts, ends, sts):
                if s:
                    _raise_for(s, (z.real, z.imag))
                v = e - z
                if self.normalization == "divided":
                    d = abs(complex(*self.problem.field.evaluate(z.real, z.imag)))
                    if not d > self.floor:
                        raise VanishingDenominator(
                            f"vanishing denominator at theta = {t!r} (|g - c| = {d:.3e})", t)
                    v = v / d
                self.cache.setdefault(t, v)
        return [self.cache[t] for t in thetas]

    def __call__(self, theta: float) -> Point2:
        return Point2.from_complex(self.values([theta])[0])

    def oracle(self) -> CurveOracle:
        return CurveOracle(lambda t: self.values([t])[0], self.values,
                           f"displacement r={self.radius:g}")


def displacement_curve(problem: ProblemSpec, r: float, normalization: str = "raw",
                       config: IntegratorConfig = IntegratorConfig(), *,
                       surrogate: bool = True, level: Optional[float] = None) -> DisplacementCurve:
    """Displacement curve on the circle of radius ``r``.

    With ``surrogate`` (default) the problem is first passed through
    :func:`shooting_problem`; the integrated dynamics are identical for
    bounded fields.
    """
    shoot = shooting_problem(problem, level) if surrogate else reduce_to_zero_mean(problem)
    pbar = problem.forcing.mean
    return DisplacementCurve(shoot, float(r), normalization, Point2(0.0 - pbar.x, 0.0 - pbar.y), config)


@dataclass(frozen=True)
class RadiusCertificate:
    radius: float
    margin: float
    samples: int
    refinement_depth: int
    winding: int
    normalization: str
    offset: Point2
    radii_tried: tuple = ()
    thetas: tuple = field(default=(), repr=False)
    curve_values: tuple = field(default=(), repr=False)
    note: str = "Rouché inequality checked on a finite adaptive sample; numerical evidence, not a proof"

    def to_dict(self):
        return {"radius": self.radius, "margin": self.margin, "samples": self.samples,
                "refinement_depth": self.refinement_depth, "winding": self.winding,
                "normalization": self.normalization, "offset": list(self.offset),
                "radii_tried": list(self.radii_tried), "note": self.note}


def select_radius(problem: ProblemSpec, limit_curve, r_start: float = 8.0,
                  r_max: float = 2.0**16, config: IntegratorConfig = IntegratorConfig(), *,
                  normalization: str = "raw", winding_config: WindingConfig = WindingConfig(),
                  variation: float = 0.1, surrogate: bool = True,
                  level: Optional[float] = None) -> tuple[float, RadiusCertificate]:
    """Double r from ``r_start`` until |gamma_r - T Gamma| < |T Gamma| on the sample.

    ``limit_curve`` is Gamma of the original field (raw) or Gamma_q
    (divided).  In the raw case it is shifted by pbar to match the reduced
    field, and in both cases scaled by T here.  The sample is refined until neighbouring values of both curves
    move by less than ``variation`` times the margin.
    """
    if not r_start > 0:
        raise ValueError("r_start must be positive")
    limit = limit_curve if isinstance(limit_curve, CurveOracle) else CurveOracle(limit_curve)
    T = problem.period
    pbar = problem.forcing.mean
    if normalization == "raw" and pbar != (0.0, 0.0):
        limit = limit.shifted(-pbar.z)
    target = limit.scaled(T)
    probe = target.values([2 * math.pi * k / 720 for k in range(720)])
    if min(abs(v) for v in probe) <= 1e-12 * max(1.0, max(abs(v) for v in probe)):
        raise LimitCurveVanishes("limit curve vanishes: condition 1 fails")
    tried = []
    r = float(r_start)
    last_margin = None
    while r <= r_max:
        tried.append(r)
        curve = displacement_curve(problem, r, normalization, config,
                                   surrogate=surrogate, level=level)
        try:
            res = rouche_equal_winding(curve.oracle(), target, 0j, winding_config, variation)
        except (FieldOverflowError, MaxStepsExceeded, VanishingDenominator):
            res = None
        if res is not None and res.equal:
            return r, RadiusCertificate(
                r, res.margin, res.samples, res.passes, res.winding_a, normalization,
                curve.offset, tuple(tried), tuple(2 * math.pi * s for s in res.params),
                res.values_a)
        if res is not None:
            last_margin = res.margin
        r *= 2.0
    raise RadiusNotFound(f"Rouché radius not found up to r_max = {r_max:g} "
                         f"(last margin {last_margin})")
