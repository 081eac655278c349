"""Time integration of u' = g(u) + p(t) over one forcing period."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import _core
from .errors import FieldOverflowError, MaxStepsExceeded, StepSizeUnderflow
from .model import Forcing, Point2, ProblemSpec, point

__all__ = [
    "IntegratorConfig", "Trajectory", "integrate", "endpoints",
    "l2_norm_derivative", "l2_norm_forcing", "l2_quadrature",
    "write_trajectory_csv", "read_trajectory_csv",
]

_METHODS = {"rk45": 0, "rk4": 1}


@dataclass(frozen=True)
class IntegratorConfig:
    """``method`` is "rk45" (adaptive Dormand-Prince) or "rk4" (fixed step ``h``).

    ``max_step`` of 0 leaves the adaptive step unbounded.
    """

    method: str = "rk45"
    h: float = 1e-3
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_steps: int = 10**6
    max_step: float = 0.0

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {sorted(_METHODS)}")
        if not (self.h > 0 and self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("h and tolerances must be positive")
        if self.max_steps < 1 or self.max_step < 0:
            raise ValueError("max_steps must be >= 1 and max_step >= 0")

    def tightened(self, factor: float = 10.0) -> "IntegratorConfig":
        return replace(self, abs_tol=self.abs_tol / factor, rel_tol=self.rel_tol / factor,
                       h=self.h / factor ** 0.25)


@dataclass(frozen=True, eq=False)
class Trajectory:
    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    config: Optional[IntegratorConfig] = None
    n_accepted: int = 0
    n_rejected: int = 0

    @property
    def nodes(self):
        return [(float(t), Point2(float(x), float(y))) for t, x, y in zip(self.t, self.x, self.y)]

    @property
    def start(self) -> Point2:
        return Point2(float(self.x[0]), float(self.y[0]))

    @property
    def end(self) -> Point2:
        return Point2(float(self.x[-1]), float(self.y[-1]))

    @property
    def period(self) -> float:
        return float(self.t[-1])

    def __len__(self):
        return len(self.t)

    def at(self, t: float) -> Point2:
        """Linear interpolation between accepted nodes."""
        return Point2(float(np.interp(t, self.t, self.x)), float(np.interp(t, self.t, self.y)))


def _lower(problem: ProblemSpec):
    prog = problem.field.program()
    if prog is None:
        return None
    kind, params, coef, ncoef, extra = prog.arrays()
    ks, ab, K, mean, omega = problem.forcing.arrays()
    return kind, params, coef, ncoef, extra, ks, ab, K, mean, omega


def _python_rhs(problem: ProblemSpec):
    g = problem.field.evaluate
    p = problem.forcing.evaluate

    def rhs(t, x, y):
        try:
            gx, gy = g(x, y)
        except (OverflowError, FieldOverflowError):
            return math.inf, math.inf
        px, py = p(t)
        return gx + px, gy + py

    return rhs


def _raise_for(status: int, u0) -> None:
    if status == 1:
        raise MaxStepsExceeded(f"max_steps exceeded integrating from {tuple(u0)!r}")
    if status == 2:
        raise FieldOverflowError(f"field overflow along the trajectory from {tuple(u0)!r}")
    if status == 3:
        raise StepSizeUnderflow(f"field overflow suspected: step size underflow integrating "
                                f"from {tuple(u0)!r} (finite-time blow-up or extreme stiffness)")


def integrate(problem: ProblemSpec, u0, config: IntegratorConfig = IntegratorConfig(),
              *, record: bool = True) -> Trajectory:
    """Integrate from ``u0`` over [0, T]; the last node is exactly t = T."""
    x0, y0 = point(u0)
    T = problem.period
    method = _METHODS[config.method]
    lowered = _lower(problem)
    if lowered is not None:
        out = _core.kernel.run(*lowered, T, x0, y0, method, config.h, config.abs_tol,
                               config.rel_tol, config.max_step, config.max_steps, record)
    else:
        out = _core.pure.integrate_rhs(_python_rhs(problem), T, x0, y0, method, config.h,
                                       config.abs_tol, config.rel_tol, config.max_step,
                                       config.max_steps, record)
    ts, xs, ys, nacc, nrej, status = out
    _raise_for(status, (x0, y0))
    return Trajectory(np.asarray(ts, float), np.asarray(xs, float), np.asarray(ys, float),
                      config, int(nacc), int(nrej))


def endpoints(problem: ProblemSpec, starts, config: IntegratorConfig = IntegratorConfig()):
    """u(T) for each start (complex numbers); returns (ends, statuses).

    Failed integrations get status 1-3 and an undefined endpoint.
    """
    starts = list(starts)
    if not starts:
        return [], []
    T = problem.period
    method = _METHODS[config.method]
    lowered = _lower(problem)
    if lowered is not None:
        x0s = np.array([z.real for z in starts], dtype=float)
        y0s = np.array([z.imag for z in starts], dtype=float)
        xe, ye, st, _ = _core.kernel.run_batch(*lowered, T, x0s, y0s, method, config.h,
                                               config.abs_tol, config.rel_tol,
                                               config.max_step, config.max_steps)
        return [complex(a, b) for a, b in zip(xe, ye)], [int(s) for s in st]
    rhs = _python_rhs(problem)
    ends, sts = [], []
    for z in starts:
        ts, xs, ys, _, _, s = _core.pure.integrate_rhs(
            rhs, T, z.real, z.imag, method, config.h, config.abs_tol, config.rel_tol,
            config.max_step, config.max_steps, False)
        ends.append(complex(xs[-1], ys[-1]))
        sts.append(s)
    return ends, sts


def _quad_pieces(h0, h1, v0, v1, v2):
    # integral over [t0, t2] and over [t1, t2] of the parabola through 3 nodes
    H = h0 + h1
    whole = H / 6.0 * ((2.0 - h1 / h0) * v0 + H * H / (h0 * h1) * v1 + (2.0 - h0 / h1) * v2)
    last = h1 / 6.0 * (-(h1 * h1) / (h0 * H) * v0 + (3.0 + h1 / h0) * v1
                       + (2.0 * h1 + 3.0 * h0) / H * v2)
    return whole, last


def l2_quadrature(t, v):
    """Composite Simpson rule on uneven nodes.

    Returns ``(simpson, trapezoid)``.  With an odd number of intervals the
    last one is integrated with the parabola through the final three nodes.
    """
    t = np.asarray(t, float)
    v = np.asarray(v, float)
    h = np.diff(t)
    trap = float(np.sum(h * (v[1:] + v[:-1]) * 0.5))
    n = len(h)
    if n < 2:
        return trap, trap
    total = 0.0
    for i in range(0, n - 1, 2):
        total += _quad_pieces(h[i], h[i + 1], v[i], v[i + 1], v[i + 2])[0]
    if n % 2:
        total += _quad_pieces(h[n - 2], h[n - 1], v[n - 2], v[n - 1], v[n])[1]
    return float(total), trap


def l2_norm_derivative(traj: Trajectory, problem: ProblemSpec) -> float:
    """(int_0^T |g(u) + p(t)|^2 dt)^(1/2) on the trajectory's nodes."""
    g = problem.field.evaluate
    p = problem.forcing.evaluate
    v = np.empty(len(traj))
    for i, (t, x, y) in enumerate(zip(traj.t, traj.x, traj.y)):
        gx, gy = g(float(x), float(y))
        px, py = p(float(t))
        v[i] = (gx + px) ** 2 + (gy + py) ** 2
    value, _ = l2_quadrature(traj.t, v)
    return math.sqrt(max(value, 0.0))


def l2_norm_forcing(p: Forcing) -> float:
    """Closed form T (|a0|^2 + 1/2 sum(|a_k|^2 + |b_k|^2)), square-rooted."""
    return p.l2_norm()


def write_trajectory_csv(traj: Trajectory, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "x", "y"])
        for t, x, y in zip(traj.t, traj.x, traj.y):
            w.writerow([format(float(t), ".17g"), format(float(x), ".17g"),
                        format(float(y), ".17g")])


def read_trajectory_csv(path) -> Trajectory:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows or set(rows[0]) != {"t", "x", "y"}:
        raise ValueError(f"{path}: expected a CSV with header t,x,y")
    arr = np.array([[float(r["t"]), float(r["x"]), float(r["y"])] for r in rows])
    return Trajectory(arr[:, 0], arr[:, 1], arr[:, 2])
