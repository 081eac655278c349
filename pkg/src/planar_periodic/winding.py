"""Certified winding numbers of closed curves given as re-evaluable oracles.

A curve is sampled on a dyadic partition of its parameter and refined until
every consecutive pair of samples (relative to the pole)

* turns by less than ``max_turn`` (pi/2 by default), and
* is joined by a chord shorter than the smaller of the two distances to the
  pole, so the connecting segment provably misses the pole.

The winding number of the resulting polygon is then exact.  This certifies
the polygon, not the curve between samples.
"""
from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import (ClosureError, InconsistentTurnSum, PoleProximityError,
                     RefinementBudgetExceeded, RoucheInternalError, WindingError)
from .model import Point2, as_complex

__all__ = [
    "WindingConfig", "WindingResult", "CurveOracle", "RoucheResult",
    "winding_number", "winding_number_of_points", "rouche_equal_winding",
    "boundary_oracle", "box_point", "certified_winding", "write_samples_csv",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class WindingConfig:
    initial_samples: int = 64
    max_turn: float = 0.5 * math.pi
    chord_ratio: float = 1.0
    pole_rel_tol: float = 1e-9
    pole_abs_tol: float = 0.0
    budget: int = 2**18
    closure_tol: float = 1e-9
    residue_tol: float = 0.1
    min_spacing: float = 2.0**-44


@dataclass(frozen=True)
class WindingResult:
    winding: int
    min_pole_distance: float
    max_step_turn: float
    samples_used: int
    params: tuple = field(default=(), repr=False)
    values: tuple = field(default=(), repr=False)
    passes: int = 0

    @property
    def thetas(self):
        return tuple(TWO_PI * s for s in self.params)

    def to_dict(self):
        return {"winding": self.winding, "min_pole_distance": self.min_pole_distance,
                "max_step_turn": self.max_step_turn, "samples_used": self.samples_used}


class CurveOracle:
    """theta in [0, 2 pi] -> point, with optional batched evaluation.

    ``func`` may return a Point2, a pair or a complex number.  ``batch`` takes
    a list of thetas and returns a list of complex numbers.
    """

    def __init__(self, func: Callable, batch: Optional[Callable] = None, name: str = ""):
        self.func = func
        self._batch = batch
        self.name = name

    def __call__(self, theta: float) -> Point2:
        return Point2.from_complex(as_complex(self.func(theta)))

    def values(self, thetas) -> list:
        if self._batch is not None:
            return [as_complex(v) for v in self._batch(list(thetas))]
        return [as_complex(self.func(t)) for t in thetas]

    def shifted(self, c) -> "CurveOracle":
        c = as_complex(c)
        return CurveOracle(lambda t: self.values([t])[0] - c,
                           lambda ts: [v - c for v in self.values(ts)], self.name)

    def scaled(self, a: float) -> "CurveOracle":
        return CurveOracle(lambda t: a * self.values([t])[0],
                           lambda ts: [a * v for v in self.values(ts)], self.name)

    def reversed(self) -> "CurveOracle":
        return CurveOracle(lambda t: self.values([TWO_PI - t])[0],
                           lambda ts: self.values([TWO_PI - t for t in ts]), self.name)


def _turn(w0: complex, w1: complex) -> float:
    return cmath.phase(w1 * w0.conjugate())


def _segment_ok(w0: complex, w1: complex, cfg: WindingConfig) -> bool:
    if abs(_turn(w0, w1)) >= cfg.max_turn:
        return False
    return abs(w1 - w0) < cfg.chord_ratio * min(abs(w0), abs(w1))


def _initial_params(n: int) -> list:
    return [k / n for k in range(n + 1)]


def _check_samples(params, w, cfg, delta):
    for s, v in zip(params, w):
        if abs(v) <= delta:
            raise PoleProximityError(
                f"curve too close to pole at theta = {TWO_PI * s!r} (|w| = {abs(v):.3e} "
                f"<= {delta:.3e}); winding undefined at this resolution")


def _bisect(params, values, bad, evaluate, evals, cfg):
    mids = []
    for k in bad:
        d = params[k + 1] - params[k]
        if d <= cfg.min_spacing:
            raise RefinementBudgetExceeded(
                f"cannot resolve the curve near theta = {TWO_PI * params[k]!r}")
        mids.append(params[k] + 0.5 * d)
    if evals + len(mids) > cfg.budget:
        raise RefinementBudgetExceeded(
            f"refinement budget of {cfg.budget} evaluations exhausted")
    new_vals = evaluate(mids)
    bad_set = dict(zip(bad, zip(mids, new_vals)))
    p2, v2 = [], []
    for k in range(len(params)):
        p2.append(params[k])
        v2.append(values[k])
        if k in bad_set:
            m, mv = bad_set[k]
            p2.append(m)
            v2.append(mv)
    return p2, v2, evals + len(mids)


def _result(params, values, pole, evals, passes, cfg) -> WindingResult:
    w = [v - pole for v in values]
    total = 0.0
    max_turn = 0.0
    for a, b in zip(w[:-1], w[1:]):
        d = _turn(a, b)
        total += d
        max_turn = max(max_turn, abs(d))
    turns = total / TWO_PI
    k = round(turns)
    if abs(turns - k) >= cfg.residue_tol:
        raise InconsistentTurnSum(f"turn sum {turns!r} is not within "
                                  f"{cfg.residue_tol} of an integer")
    return WindingResult(int(k), min(abs(v) for v in w), max_turn, evals,
                         tuple(params), tuple(values), passes)


def certified_winding(evaluate: Callable, pole: complex = 0j,
                      config: WindingConfig = WindingConfig(),
                      extra_split: Optional[Callable] = None) -> WindingResult:
    """Core refinement loop on a parameter s in [0, 1].

    ``evaluate`` maps a list of parameters to a list of complex values.
    ``extra_split(k, params, values)`` may request refinement of segment k.
    """
    cfg = config
    pole = as_complex(pole)
    params = _initial_params(cfg.initial_samples)
    values = list(evaluate(params))
    evals = len(params)
    scale_raw = max(abs(v) for v in values)
    if abs(values[-1] - values[0]) > cfg.closure_tol * max(scale_raw, 1e-300):
        raise ClosureError(f"curve is not closed: |c(2pi) - c(0)| = "
                           f"{abs(values[-1] - values[0]):.3e}")
    passes = 0
    while True:
        w = [v - pole for v in values]
        delta = max(cfg.pole_rel_tol * max(abs(v) for v in w), cfg.pole_abs_tol)
        _check_samples(params, w, cfg, delta)
        bad = [k for k in range(len(w) - 1)
               if not _segment_ok(w[k], w[k + 1], cfg)
               or (extra_split is not None and extra_split(k, params, values))]
        if not bad:
            return _result(params, values, pole, evals, passes, cfg)
        params, values, evals = _bisect(params, values, bad, evaluate, evals, cfg)
        passes += 1


def winding_number(curve, pole=0j, config: WindingConfig = WindingConfig()) -> WindingResult:
    """Certified winding number of ``curve`` around ``pole``."""
    if not isinstance(curve, CurveOracle):
        curve = CurveOracle(curve)
    return certified_winding(lambda ss: curve.values([TWO_PI * s for s in ss]),
                             as_complex(pole), config)


def winding_number_of_points(points: Sequence, pole=0j,
                             config: WindingConfig = WindingConfig()) -> WindingResult:
    """Strict mode for a fixed closed polyline: fails instead of refining."""
    z = [as_complex(p) for p in points]
    if len(z) < 3:
        raise WindingError("need at least three points")
    if z[0] != z[-1]:
        z.append(z[0])
    pole = as_complex(pole)
    w = [v - pole for v in z]
    delta = max(config.pole_rel_tol * max(abs(v) for v in w), config.pole_abs_tol)
    params = [k / (len(z) - 1) for k in range(len(z))]
    _check_samples(params, w, config, delta)
    for k in range(len(w) - 1):
        if not _segment_ok(w[k], w[k + 1], config):
            raise WindingError(f"segment {k} is under-resolved and points cannot be refined")
    return _result(params, z, pole, len(z), 0, config)


@dataclass(frozen=True)
class RoucheResult:
    equal: bool
    margin: float
    witness_theta: Optional[float] = None
    winding_a: Optional[int] = None
    winding_b: Optional[int] = None
    samples: int = 0
    passes: int = 0
    params: tuple = field(default=(), repr=False)
    values_a: tuple = field(default=(), repr=False)
    values_b: tuple = field(default=(), repr=False)


def rouche_equal_winding(curve_a, curve_b, pole=0j, config: WindingConfig = WindingConfig(),
                         variation: Optional[float] = None) -> RoucheResult:
    """Check |A - B| < |B - pole| on a jointly refined sample.

    The sample is refined until both curves are certified and, if
    ``variation`` is given, until neighbouring samples of each curve differ
    by less than ``variation`` times the current margin.  When the inequality
    holds both windings are computed and must agree.
    """
    cfg = config
    A = curve_a if isinstance(curve_a, CurveOracle) else CurveOracle(curve_a)
    B = curve_b if isinstance(curve_b, CurveOracle) else CurveOracle(curve_b)
    pole = as_complex(pole)

    def evaluate(ss):
        th = [TWO_PI * s for s in ss]
        return list(zip(A.values(th), B.values(th)))

    params = _initial_params(cfg.initial_samples)
    pairs = evaluate(params)
    evals = len(params)
    passes = 0
    while True:
        gaps = [abs(b - pole) - abs(a - b) for a, b in pairs]
        k_min = min(range(len(gaps)), key=gaps.__getitem__)
        margin = gaps[k_min]
        if margin <= 0:
            return RoucheResult(False, margin, TWO_PI * params[k_min], samples=evals,
                                passes=passes)
        wa = [a - pole for a, _ in pairs]
        wb = [b - pole for _, b in pairs]
        bad = []
        for k in range(len(pairs) - 1):
            if not (_segment_ok(wa[k], wa[k + 1], cfg) and _segment_ok(wb[k], wb[k + 1], cfg)):
                bad.append(k)
            elif variation is not None and (
                    abs(wa[k + 1] - wa[k]) >= variation * margin
                    or abs(wb[k + 1] - wb[k]) >= variation * margin):
                bad.append(k)
        if not bad:
            break
        params, pairs, evals = _bisect(params, pairs, bad, evaluate, evals, cfg)
        passes += 1
    ra = _result(params, [a for a, _ in pairs], pole, evals, passes, cfg)
    rb = _result(params, [b for _, b in pairs], pole, evals, passes, cfg)
    if ra.winding != rb.winding:
        raise RoucheInternalError(
            f"Rouché inequality holds (margin {margin:.3e}) but windings differ: "
            f"{ra.winding} vs {rb.winding}")
    return RoucheResult(True, margin, None, ra.winding, rb.winding, evals, passes,
                        tuple(params), tuple(a for a, _ in pairs), tuple(b for _, b in pairs))


def box_point(center: complex, half_width: float, s: float) -> complex:
    """Counter-clockwise square boundary, s in [0, 1], starting at the
    lower-right corner; each edge takes a quarter of the parameter."""
    q = min(int(4.0 * s), 3)
    f = 4.0 * s - q
    h = half_width
    cx, cy = center.real, center.imag
    if q == 0:
        return complex(cx + h, cy - h + 2 * h * f)
    if q == 1:
        return complex(cx + h - 2 * h * f, cy + h)
    if q == 2:
        return complex(cx - h, cy + h - 2 * h * f)
    return complex(cx - h + 2 * h * f, cy - h)


def boundary_oracle(center, half_width: float, map_) -> CurveOracle:
    """theta -> map(point on the square boundary), counter-clockwise.

    ``map_`` takes a point and returns a point; if it has an
    ``evaluate_many`` method (list of complex -> list of complex) that is used
    for batches.
    """
    if not half_width > 0:
        raise ValueError("half_width must be positive")
    c = as_complex(center)

    def pts(thetas):
        return [box_point(c, half_width, t / TWO_PI) for t in thetas]

    many = getattr(map_, "evaluate_many", None)
    if many is not None:
        batch = lambda ts: many(pts(ts))
    else:
        batch = lambda ts: [as_complex(map_(Point2.from_complex(z))) for z in pts(ts)]
    return CurveOracle(lambda t: batch([t])[0], batch, "boundary")


def write_samples_csv(result: WindingResult, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["theta", "x", "y"])
        for s, v in zip(result.params, result.values):
            w.writerow([format(TWO_PI * s, ".17g"), format(v.real, ".17g"),
                        format(v.imag, ".17g")])
