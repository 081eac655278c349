"""Numerical checks of the asymptotic solvability conditions.

Verdicts are ``satisfied``, ``violated`` or ``inconclusive``; a finite
radius ladder can fail to settle an asymptotic hypothesis, and such cases are
never upgraded.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import FieldOverflowError, VanishingDenominator, WindingError
from .model import (Affine, ConjugatePolynomial, PlanarField, ProblemSpec,
                    SaturatingRadial, Shifted, as_complex, to_planar)
from .winding import CurveOracle, WindingConfig, winding_number

__all__ = [
    "SATISFIED", "VIOLATED", "INCONCLUSIVE", "DEFAULT_LADDER", "ConditionConfig",
    "RadialLimitEstimate", "ConditionReport", "radial_limit_curve", "check_nirenberg",
    "check_ortega_sanchez", "check_scalar_LL", "analytic_gamma_q_polynomial",
    "limit_curve",
]

SATISFIED, VIOLATED, INCONCLUSIVE = "satisfied", "violated", "inconclusive"
DEFAULT_LADDER = tuple(16.0 * 4.0**k for k in range(7))


@dataclass(frozen=True)
class ConditionConfig:
    ladder: tuple = DEFAULT_LADDER
    n_theta: int = 720
    conv_tol: float = 1e-3
    margin_floor: float = 1e-6
    denominator_floor: float = 1e-12
    refine_points: int = 64
    winding: WindingConfig = WindingConfig()

    def __post_init__(self):
        lad = tuple(float(r) for r in self.ladder)
        if not lad or any(r <= 0 for r in lad) or any(b <= a for a, b in zip(lad, lad[1:])):
            raise ValueError("ladder must be a non-empty increasing list of positive radii")
        object.__setattr__(self, "ladder", lad)
        if self.n_theta < 8:
            raise ValueError("n_theta must be at least 8")


def _sample(field: PlanarField, r: float, thetas, unit: bool, c: complex, floor: float):
    out = np.empty(len(thetas), dtype=complex)
    for k, t in enumerate(thetas):
        try:
            gx, gy = field.evaluate(r * math.cos(t), r * math.sin(t))
        except OverflowError as exc:
            raise FieldOverflowError(f"field overflow at r = {r:g}, theta = {t!r}") from exc
        w = complex(gx, gy) - c
        if not (math.isfinite(w.real) and math.isfinite(w.imag)):
            raise FieldOverflowError(f"field overflow at r = {r:g}, theta = {t!r}")
        if unit:
            d = abs(w)
            if not d > floor:
                raise VanishingDenominator(
                    f"vanishing denominator at theta = {t!r} (r = {r:g}, |g - c| = {d:.3e})", t)
            w = w / d
        out[k] = w
    return out


@dataclass(frozen=True, eq=False)
class RadialLimitEstimate:
    """Samples of theta -> g(r e^{i theta}) (or its unit version) on a ladder."""

    thetas: np.ndarray
    radii: tuple
    values: tuple
    defects: tuple
    conv_tol: float
    normalization: str
    offset: complex
    field: PlanarField = field(repr=False)
    floor: float = 1e-12

    @property
    def converged(self) -> bool:
        return bool(self.defects) and self.defects[-1] < self.conv_tol

    @property
    def curve(self) -> np.ndarray:
        return self.values[-1]

    def at(self, theta: float, r: Optional[float] = None) -> complex:
        r = self.radii[-1] if r is None else r
        return complex(_sample(self.field, r, [theta], self.normalization == "unit",
                               self.offset, self.floor)[0])

    def oracle(self, r: Optional[float] = None) -> CurveOracle:
        """The curve at a fixed rung (default the last), evaluable anywhere."""
        r = self.radii[-1] if r is None else float(r)
        unit = self.normalization == "unit"

        def batch(ts):
            return list(_sample(self.field, r, ts, unit, self.offset, self.floor))

        return CurveOracle(lambda t: batch([t])[0], batch, f"radial limit r={r:g}")


def radial_limit_curve(field: PlanarField, normalization: str = "raw", offset=0j,
                       ladder=DEFAULT_LADDER, n_theta: int = 720, conv_tol: float = 1e-3,
                       floor: float = 1e-12) -> RadialLimitEstimate:
    """Estimate lim g(r e^{i theta}) (``raw``) or of (g - c)/|g - c| (``unit``).

    ``offset`` is c; raw curves are reported without subtracting it.
    The defect of rung j is sup over the grid of |Gamma_{j+1} - Gamma_j|.
    """
    if normalization not in ("raw", "unit"):
        raise ValueError("normalization must be 'raw' or 'unit'")
    cfg = ConditionConfig(ladder=ladder, n_theta=n_theta, conv_tol=conv_tol)
    c = as_complex(offset)
    unit = normalization == "unit"
    thetas = np.linspace(0.0, 2 * math.pi, cfg.n_theta, endpoint=False)
    vals = tuple(_sample(field, r, thetas, unit, c, floor) for r in cfg.ladder)
    defects = tuple(float(np.max(np.abs(b - a))) for a, b in zip(vals, vals[1:]))
    return RadialLimitEstimate(thetas, cfg.ladder, vals, defects, conv_tol, normalization,
                               c if unit else 0j, field, floor)


@dataclass(frozen=True)
class ConditionReport:
    condition: str
    verdict: str
    margin: Optional[float]
    winding: Optional[int]
    pole: complex
    defects: tuple
    ladder: tuple
    converged: bool
    conv_tol: float
    margin_floor: float
    translated_winding: Optional[int] = None
    argmin_theta: Optional[float] = None
    diagnostics: tuple = ()

    @property
    def satisfied(self) -> bool:
        return self.verdict == SATISFIED

    def to_dict(self):
        return {"condition": self.condition, "verdict": self.verdict, "margin": self.margin,
                "winding": self.winding, "pole": [self.pole.real, self.pole.imag],
                "defects": list(self.defects), "ladder": list(self.ladder),
                "converged": self.converged, "conv_tol": self.conv_tol,
                "margin_floor": self.margin_floor, "argmin_theta": self.argmin_theta,
                "diagnostics": list(self.diagnostics)}


def _refined_margin(est: RadialLimitEstimate, pole: complex, npts: int):
    """min |Gamma - pole| on the grid, then on a fine patch around the argmin."""
    d = np.abs(est.curve - pole)
    k = int(np.argmin(d))
    best, arg = float(d[k]), float(est.thetas[k])
    step = 2 * math.pi / len(est.thetas)
    patch = np.linspace(arg - step, arg + step, npts)
    vals = est.oracle().values(list(patch))
    for t, v in zip(patch, vals):
        if abs(v - pole) < best:
            best, arg = abs(v - pole), float(t % (2 * math.pi))
    return best, arg


def _report(name, est, pole, cfg, diagnostics):
    margin, arg = _refined_margin(est, pole, cfg.refine_points)
    diags = list(diagnostics)
    winding = translated = None
    if margin > cfg.margin_floor:
        try:
            winding = winding_number(est.oracle(), pole, cfg.winding).winding
            translated = winding_number(est.oracle().shifted(pole), 0j, cfg.winding).winding
        except WindingError as exc:
            diags.append(f"winding not certified: {exc}")
    if not est.converged:
        verdict = INCONCLUSIVE
        last = est.defects[-1] if est.defects else float("nan")
        diags.append(f"radial limit not converged: last defect {last:.3e} >= {cfg.conv_tol:g}")
    elif margin <= cfg.margin_floor:
        verdict = VIOLATED
        diags.append(f"condition 1 fails: limit curve reaches the pole (margin {margin:.3e})")
    elif winding is None:
        verdict = INCONCLUSIVE
    elif winding == 0:
        verdict = VIOLATED
        diags.append("condition 2 fails: winding number 0")
    else:
        verdict = SATISFIED
    return ConditionReport(name, verdict, margin, winding, pole, est.defects, est.radii,
                           est.converged, cfg.conv_tol, cfg.margin_floor, translated, arg,
                           tuple(diags))


def _failed(name, cfg, pole, verdict, message):
    return ConditionReport(name, verdict, None, None, pole, (), cfg.ladder, False,
                           cfg.conv_tol, cfg.margin_floor, diagnostics=(message,))


def check_nirenberg(problem: ProblemSpec, config: ConditionConfig = ConditionConfig()) -> ConditionReport:
    """Raw limit curve Gamma against the pole c = -pbar.

    With u' = g(u) + p the averaged balance is g = -pbar, so Gamma must
    avoid -pbar and wind around it.
    """
    pbar = problem.forcing.mean
    pole = complex(-pbar.x, -pbar.y) + 0j
    if not problem.field.bounded:
        return _failed("nirenberg", config, pole, INCONCLUSIVE,
                       "field is unbounded: raw radial limit not available")
    try:
        est = radial_limit_curve(problem.field, "raw", 0j, config.ladder, config.n_theta,
                                 config.conv_tol, config.denominator_floor)
    except FieldOverflowError as exc:
        return _failed("nirenberg", config, pole, INCONCLUSIVE, str(exc))
    return _report("nirenberg", est, pole, config, ())


def check_ortega_sanchez(problem: ProblemSpec,
                         config: ConditionConfig = ConditionConfig()) -> ConditionReport:
    """Unit curve Gamma_q of (g - c)/|g - c|, c = -pbar, against the pole 0."""
    pbar = problem.forcing.mean
    c = complex(-pbar.x, -pbar.y) + 0j
    try:
        est = radial_limit_curve(problem.field, "unit", c, config.ladder, config.n_theta,
                                 config.conv_tol, config.denominator_floor)
    except VanishingDenominator as exc:
        return _failed("ortega_sanchez", config, 0j, VIOLATED,
                       f"condition 1 fails: g(rv) - c vanishes on the ladder ({exc})")
    except FieldOverflowError as exc:
        return _failed("ortega_sanchez", config, 0j, INCONCLUSIVE, str(exc))
    diags = []
    raw = _sample(problem.field, est.radii[-1], est.thetas, False, c, 0.0)
    smallest = float(np.min(np.abs(raw)))
    if smallest < 1e3 * config.denominator_floor:
        diags.append(f"|g - c| approaches the floor on the last rung (min {smallest:.3e})")
    return _report("ortega_sanchez", est, 0j, config, diags)


def check_scalar_LL(g_minus: float, g_plus: float, p_mean: float) -> str:
    """Strict betweenness of the forcing mean and the two limits, either order."""
    lo, hi = min(g_minus, g_plus), max(g_minus, g_plus)
    return SATISFIED if lo < p_mean < hi else VIOLATED


def analytic_gamma_q_polynomial(f) -> CurveOracle:
    """theta -> (a_n/|a_n|) e^{-i n theta} for f given as coefficients or a field."""
    poly = f if isinstance(f, ConjugatePolynomial) else to_planar(f)
    n = poly.degree
    u = poly.leading / abs(poly.leading)
    return CurveOracle(lambda t: u * cmath.exp(-1j * n * t),
                       lambda ts: [u * cmath.exp(-1j * n * t) for t in ts],
                       f"unit limit degree {n}")


def _raw_limit(field: PlanarField) -> Optional[CurveOracle]:
    if isinstance(field, SaturatingRadial):
        A = field.amplitude
        return CurveOracle(lambda t: A * cmath.exp(1j * t))
    if isinstance(field, Affine) and field.bounded:
        c = complex(*field.offset)
        return CurveOracle(lambda t: c)
    if isinstance(field, Shifted):
        base = _raw_limit(field.base)
        if base is not None:
            return base.shifted(-complex(*field.offset))
    return None


def limit_curve(problem: ProblemSpec, normalization: str = "raw",
                config: ConditionConfig = ConditionConfig()) -> CurveOracle:
    """Gamma (raw) or Gamma_q (unit, relative to c = -pbar).

    Closed forms are used where known; otherwise the field sampled at the
    largest ladder radius stands in for the limit.
    """
    field = problem.field
    pbar = problem.forcing.mean
    c = complex(-pbar.x, -pbar.y)
    if normalization == "raw":
        exact = _raw_limit(field)
        if exact is not None:
            return exact
        est = radial_limit_curve(field, "raw", 0j, config.ladder[-1:], 8)
        return est.oracle()
    if normalization != "unit":
        raise ValueError("normalization must be 'raw' or 'unit'")
    if isinstance(field, ConjugatePolynomial):
        return analytic_gamma_q_polynomial(field)
    est = radial_limit_curve(field, "unit", c, config.ladder[-1:], 8,
                             floor=config.denominator_floor)
    return est.oracle()
