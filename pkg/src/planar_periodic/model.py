"""Problem data for planar forced systems u'(t) = g(u(t)) + p(t).

Points of the plane are identified with complex numbers x + iy.  Fields are
immutable; each knows whether it is bounded, whether it is a gradient, and
(for the variants the compiled kernel understands) how to lower itself to a
:class:`FieldProgram`.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field as dc_field, replace
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from .errors import ControlViolation, FieldOverflowError, GradientMismatch

__all__ = [
    "Point2", "point", "as_complex",
    "PlanarField", "ConjugatePolynomial", "SaturatingRadial", "ComponentArctan",
    "Affine", "Gradient", "TruncatedGradient", "Shifted", "Saturated", "CallableField",
    "FieldProgram", "Harmonic", "Forcing", "ProblemSpec",
    "eval_field", "mean_forcing", "reduce_to_zero_mean", "to_planar",
    "build_truncated_field", "field_sup_norm", "estimate_sup_norm", "SupNormEstimate",
    "blend_factor", "check_gradient_consistency", "is_gradient_type",
    "field_from_dict", "problem_from_dict", "load_problem", "dump_problem",
]


class Point2(NamedTuple):
    x: float
    y: float

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    @classmethod
    def from_complex(cls, z: complex) -> "Point2":
        return cls(z.real, z.imag)


def as_complex(u) -> complex:
    """Accept a Point2, a pair or a complex number; return a complex."""
    if isinstance(u, complex):
        return u
    if isinstance(u, (int, float)):
        return complex(u, 0.0)
    x, y = u
    return complex(float(x), float(y))


def point(u) -> Point2:
    """Coerce ``u`` to a finite :class:`Point2`."""
    z = as_complex(u)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite point {u!r}")
    return Point2(z.real, z.imag)


# ---------------------------------------------------------------------------
# kernel lowering

KIND_POLY = 0
KIND_RADIAL = 1
KIND_ARCTAN = 2
KIND_AFFINE = 3


@dataclass(frozen=True)
class FieldProgram:
    """Flat description of a field the integration kernel can evaluate.

    The kernel computes ``sat(base(u) + shift) + shift2`` where ``sat`` is the
    magnitude saturation with the given level (0 disables it).
    """

    kind: int
    params: tuple = ()
    coeffs: tuple = ()
    shift: tuple = (0.0, 0.0)
    level: float = 0.0
    shift2: tuple = (0.0, 0.0)

    def arrays(self):
        params = np.zeros(6)
        params[: len(self.params)] = self.params
        coef = np.array([[c.real, c.imag] for c in self.coeffs] or [[0.0, 0.0]], dtype=float)
        extra = np.array([self.shift[0], self.shift[1], self.level, self.shift2[0], self.shift2[1]])
        return int(self.kind), params, coef.ravel(), len(self.coeffs), extra


def blend_factor(s: float, R: float, inv_xi: float) -> float:
    """phi'(s): 1 on |s| <= R, ``inv_xi`` on |s| >= 2R, cosine blend between."""
    a = abs(s)
    if a <= R:
        return 1.0
    if a >= 2.0 * R:
        return inv_xi
    w = 0.5 * (1.0 - math.cos(math.pi * (a - R) / R))
    return 1.0 + (inv_xi - 1.0) * w


# ---------------------------------------------------------------------------
# fields

class PlanarField:
    """Base class.  Subclasses implement :meth:`evaluate` on raw floats."""

    bounded = False
    gradient = False

    def evaluate(self, x: float, y: float) -> tuple[float, float]:
        raise NotImplementedError

    def __call__(self, u) -> Point2:
        return eval_field(self, u)

    def program(self) -> Optional[FieldProgram]:
        return None

    def sup_norm(self) -> float:
        return math.inf

    def to_dict(self) -> dict:
        raise TypeError(f"{type(self).__name__} cannot be serialised")


@dataclass(frozen=True)
class ConjugatePolynomial(PlanarField):
    """g(z) = f(conj z) with f(z) = sum a_k z^k, coefficients lowest degree first."""

    coefficients: tuple
    gradient = True

    def __post_init__(self):
        coeffs = tuple(as_complex(c) for c in self.coefficients)
        if len(coeffs) < 2:
            raise ValueError("polynomial degree must be at least 1")
        if any(not cmath.isfinite(c) for c in coeffs):
            raise ValueError("non-finite coefficient")
        if coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> complex:
        return self.coefficients[-1]

    def poly(self, z: complex) -> complex:
        acc = self.coefficients[-1]
        for a in reversed(self.coefficients[:-1]):
            acc = acc * z + a
        return acc

    def evaluate(self, x, y):
        w = self.poly(complex(x, -y))
        return w.real, w.imag

    def potential(self, u) -> float:
        """Re F(conj z) where F is the antiderivative of f vanishing at 0."""
        w = as_complex(u).conjugate()
        acc = 0j
        for k in range(self.degree, -1, -1):
            acc = acc * w + self.coefficients[k] / (k + 1)
        return (acc * w).real

    def program(self):
        return FieldProgram(KIND_POLY, coeffs=self.coefficients)

    def to_dict(self):
        return {"variant": "conjugate_polynomial",
                "coefficients": [[c.real, c.imag] for c in self.coefficients]}


@dataclass(frozen=True)
class SaturatingRadial(PlanarField):
    """g(z) = amplitude * z / (1 + |z|)."""

    amplitude: float = 1.0
    bounded = True

    def evaluate(self, x, y):
        s = self.amplitude / (1.0 + math.hypot(x, y))
        return s * x, s * y

    def sup_norm(self):
        return abs(self.amplitude)

    def program(self):
        return FieldProgram(KIND_RADIAL, params=(float(self.amplitude),))

    def to_dict(self):
        return {"variant": "saturating_radial", "amplitude": self.amplitude}


@dataclass(frozen=True)
class ComponentArctan(PlanarField):
    """g(u) = (c1 atan u1, c2 atan u2)."""

    c1: float = 1.0
    c2: float = 1.0
    bounded = True
    gradient = True

    def evaluate(self, x, y):
        return self.c1 * math.atan(x), self.c2 * math.atan(y)

    def sup_norm(self):
        # each component approaches |c_i| pi/2, jointly along the diagonals
        return 0.5 * math.pi * math.hypot(self.c1, self.c2)

    def program(self):
        return FieldProgram(KIND_ARCTAN, params=(float(self.c1), float(self.c2)))

    def to_dict(self):
        return {"variant": "component_arctan", "c": [self.c1, self.c2]}


@dataclass(frozen=True)
class Affine(PlanarField):
    """g(u) = A u + b.  Covers rotations and constant fields used in tests."""

    matrix: tuple = ((0.0, 0.0), (0.0, 0.0))
    offset: tuple = (0.0, 0.0)

    def __post_init__(self):
        m = tuple(tuple(float(v) for v in row) for row in self.matrix)
        if len(m) != 2 or any(len(row) != 2 for row in m):
            raise ValueError("matrix must be 2x2")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "offset", tuple(point(self.offset)))

    @classmethod
    def constant(cls, c) -> "Affine":
        return cls(offset=tuple(point(c)))

    @classmethod
    def rotation(cls, omega: float = 1.0) -> "Affine":
        return cls(matrix=((0.0, -omega), (omega, 0.0)))

    @property
    def bounded(self):
        return all(v == 0.0 for row in self.matrix for v in row)

    @property
    def gradient(self):
        return self.matrix[0][1] == self.matrix[1][0]

    def evaluate(self, x, y):
        (a, b), (c, d) = self.matrix
        return a * x + b * y + self.offset[0], c * x + d * y + self.offset[1]

    def sup_norm(self):
        return math.hypot(*self.offset) if self.bounded else math.inf

    def program(self):
        (a, b), (c, d) = self.matrix
        return FieldProgram(KIND_AFFINE, params=(a, b, c, d, *self.offset))

    def to_dict(self):
        return {"variant": "affine", "matrix": [list(r) for r in self.matrix],
                "offset": list(self.offset)}


def check_gradient_consistency(potential, gradient, points, *, step=1e-5, tol=1e-6):
    """Central-difference check of ``gradient`` against ``potential``.

    Returns the worst relative error; raises :class:`GradientMismatch` if it
    exceeds ``tol``.  Errors are relative to ``max(1, |grad|)``.
    """
    worst = 0.0
    for u in points:
        x, y = as_complex(u).real, as_complex(u).imag
        gx = (potential((x + step, y)) - potential((x - step, y))) / (2 * step)
        gy = (potential((x, y + step)) - potential((x, y - step))) / (2 * step)
        ex, ey = _pair(gradient((x, y)))
        err = math.hypot(gx - ex, gy - ey) / max(1.0, math.hypot(ex, ey))
        if err > worst:
            worst = err
        if err > tol:
            raise GradientMismatch(
                f"gradient disagrees with finite differences at ({x!r}, {y!r}): "
                f"relative error {err:.3e} > {tol:.1e}")
    return worst


def _pair(v) -> tuple[float, float]:
    z = as_complex(v)
    return z.real, z.imag


def _sample_disk(n: int, radius: float, seed: int = 0):
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.random(n))
    t = 2 * np.pi * rng.random(n)
    return [(float(a * math.cos(b)), float(a * math.sin(b))) for a, b in zip(r, t)]


@dataclass(frozen=True, eq=False)
class Gradient(PlanarField):
    """g = grad G given by oracles, with optional control function xi.

    ``potential`` and ``grad`` take a point (pair) and return a float and a
    pair respectively.  The oracles are checked against each other on
    ``check_points`` (by default 64 seeded points in the disk of radius 2).
    """

    potential: Callable
    grad: Callable
    control: Optional[Callable] = None
    check_points: Optional[Sequence] = None
    tol: float = 1e-6
    gradient = True

    def __post_init__(self):
        pts = self.check_points if self.check_points is not None else _sample_disk(64, 2.0)
        check_gradient_consistency(self.potential, self.grad, pts, tol=self.tol)

    def evaluate(self, x, y):
        return _pair(self.grad((x, y)))


@dataclass(frozen=True, eq=False)
class TruncatedGradient(PlanarField):
    """grad(phi o G) = phi'(G(u)) grad G(u) with the cosine-blended phi'."""

    base: Gradient
    R: float
    bounded = True
    gradient = True

    def factor(self, s: float) -> float:
        a = abs(s)
        if a <= self.R:
            return 1.0
        return blend_factor(s, self.R, 1.0 / self.base.control(s))

    def evaluate(self, x, y):
        s = self.base.potential((x, y))
        gx, gy = _pair(self.base.grad((x, y)))
        f = self.factor(s)
        return f * gx, f * gy

    def sup_norm(self):
        return estimate_sup_norm(self).value


@dataclass(frozen=True, eq=False)
class Shifted(PlanarField):
    """base(u) + offset."""

    base: PlanarField
    offset: tuple

    def __post_init__(self):
        object.__setattr__(self, "offset", tuple(point(self.offset)))

    @property
    def bounded(self):
        return self.base.bounded

    @property
    def gradient(self):
        # a constant is grad of a linear potential
        return self.base.gradient

    def evaluate(self, x, y):
        fx, fy = self.base.evaluate(x, y)
        return fx + self.offset[0], fy + self.offset[1]

    def sup_norm(self):
        return self.base.sup_norm() + math.hypot(*self.offset)

    def program(self):
        p = self.base.program()
        if p is None:
            return None
        if p.level == 0.0:
            return replace(p, shift=(p.shift[0] + self.offset[0], p.shift[1] + self.offset[1]))
        return replace(p, shift2=(p.shift2[0] + self.offset[0], p.shift2[1] + self.offset[1]))

    def potential(self, u):
        x, y = _pair(u)
        return self.base.potential(u) + self.offset[0] * x + self.offset[1] * y

    def to_dict(self):
        return {"variant": "shifted", "base": self.base.to_dict(), "offset": list(self.offset)}


@dataclass(frozen=True, eq=False)
class Saturated(PlanarField):
    """Direction-preserving bounded surrogate of an unbounded field.

    h_hat(u) = phi'(|h(u)|) h(u) with phi' the same cosine blend used by
    :class:`TruncatedGradient` and control xi(s) = s / level, so that
    h_hat = h where |h| <= level and |h_hat| = level where |h| >= 2 level.
    Zeros and directions of ``base`` are unchanged.
    """

    base: PlanarField
    level: float
    bounded = True

    def __post_init__(self):
        if not self.level > 0:
            raise ValueError("saturation level must be positive")

    def factor(self, s: float) -> float:
        if s <= self.level:
            return 1.0
        return blend_factor(s, self.level, self.level / s)

    def evaluate(self, x, y):
        hx, hy = self.base.evaluate(x, y)
        f = self.factor(math.hypot(hx, hy))
        return f * hx, f * hy

    def sup_norm(self):
        L = self.level
        s = np.linspace(L, 2 * L, 4097)
        w = 0.5 * (1 - np.cos(np.pi * (s - L) / L))
        return float(max(L, np.max(s * (1 + (L / s - 1) * w))))

    def program(self):
        p = self.base.program()
        if p is None or p.level != 0.0:
            return None
        return replace(p, level=float(self.level))

    def to_dict(self):
        return {"variant": "saturated", "base": self.base.to_dict(), "level": self.level}


@dataclass(frozen=True, eq=False)
class CallableField(PlanarField):
    """Escape hatch for test and demo fields given as a Python callable."""

    func: Callable
    sup: float = math.inf
    is_gradient: bool = False

    @property
    def bounded(self):
        return math.isfinite(self.sup)

    @property
    def gradient(self):
        return self.is_gradient

    def evaluate(self, x, y):
        return _pair(self.func((x, y)))

    def sup_norm(self):
        return self.sup


def eval_field(field: PlanarField, u) -> Point2:
    """g(u), raising :class:`FieldOverflowError` on a non-finite result."""
    x, y = point(u)
    try:
        fx, fy = field.evaluate(x, y)
    except OverflowError as exc:
        raise FieldOverflowError(f"field overflow at ({x!r}, {y!r})") from exc
    if not (math.isfinite(fx) and math.isfinite(fy)):
        raise FieldOverflowError(f"field overflow at ({x!r}, {y!r})")
    return Point2(fx, fy)


def is_gradient_type(field: PlanarField) -> bool:
    return bool(field.gradient)


def to_planar(coefficients) -> ConjugatePolynomial:
    """Cauchy-Riemann conversion of f to the planar gradient field f(conj z).

    The returned field carries the potential Re F(conj z); it is checked
    against the field by finite differences before being returned.
    """
    g = ConjugatePolynomial(tuple(coefficients))
    scale = 1.0 + max(abs(c / g.leading) for c in g.coefficients)
    pts = _sample_disk(32, min(2.0, scale), seed=1)
    check_gradient_consistency(g.potential, lambda u: g.evaluate(*u), pts)
    return g


def build_truncated_field(G, grad_G=None, xi=None, R: float = 1.0, *,
                          check_radius: float = 1e3, n_check: int = 64) -> TruncatedGradient:
    """Replace G by phi(G) so the gradient becomes bounded.

    ``G`` may be a :class:`Gradient` (its ``control`` is used as xi) or a
    potential callable given together with ``grad_G`` and ``xi``.  The control
    inequality |grad G(u)| <= xi(G(u)) and positivity of xi where 1/xi is used
    are checked on an ``n_check`` x ``n_check`` polar grid out to
    ``check_radius``.
    """
    if not R > 0:
        raise ValueError("R must be positive")
    base = G if isinstance(G, Gradient) else Gradient(G, grad_G, xi)
    if xi is not None and base.control is None:
        base = Gradient(base.potential, base.grad, xi, base.check_points, base.tol)
    if base.control is None:
        raise ValueError("a control function xi is required")
    radii = np.geomspace(1e-3, check_radius, n_check)
    angles = np.linspace(0.0, 2 * np.pi, n_check, endpoint=False)
    for r in radii:
        for t in angles:
            u = (float(r * math.cos(t)), float(r * math.sin(t)))
            s = base.potential(u)
            c = base.control(s)
            if abs(s) > R and not c > 0:
                raise ControlViolation(f"xi({s!r}) = {c!r} is not positive (at u = {u!r})", u)
            gnorm = math.hypot(*_pair(base.grad(u)))
            if gnorm > c * (1 + 1e-9) + 1e-300:
                raise ControlViolation(
                    f"|grad G(u)| = {gnorm:.6g} exceeds xi(G(u)) = {c:.6g} at u = {u!r}", u)
    return TruncatedGradient(base, float(R))


@dataclass(frozen=True)
class SupNormEstimate:
    value: float
    n_radial: int
    n_angular: int
    r_max: float
    argmax: Point2


def estimate_sup_norm(field: PlanarField, n_radial: int = 256, n_angular: int = 256,
                      r_max: float = 1e4) -> SupNormEstimate:
    """Grid estimate of sup |g| (not a certificate).

    Radii are log-spaced from r_max * 1e-7 to r_max (plus the origin); the
    best grid point is then refined by three rounds of local zooming.
    """
    radii = np.concatenate([[0.0], np.geomspace(r_max * 1e-7, r_max, n_radial - 1)])
    angles = np.linspace(0.0, 2 * np.pi, n_angular, endpoint=False)
    best, best_u = -1.0, (0.0, 0.0)
    for r in radii:
        for t in angles:
            x, y = float(r * math.cos(t)), float(r * math.sin(t))
            v = math.hypot(*field.evaluate(x, y))
            if v > best:
                best, best_u = v, (float(r), float(t))
    r0, t0 = best_u
    dr = r0 * (r_max / (r_max * 1e-7)) ** (1 / (n_radial - 2)) - r0 if r0 > 0 else radii[1]
    dt = 2 * np.pi / n_angular
    for _ in range(3):
        for r in np.linspace(max(0.0, r0 - dr), r0 + dr, 9):
            for t in np.linspace(t0 - dt, t0 + dt, 9):
                v = math.hypot(*field.evaluate(float(r * math.cos(t)), float(r * math.sin(t))))
                if v > best:
                    best, best_u = v, (float(r), float(t))
        r0, t0 = best_u
        dr, dt = dr / 4, dt / 4
    r0, t0 = best_u
    return SupNormEstimate(best, n_radial, n_angular, r_max,
                           Point2(r0 * math.cos(t0), r0 * math.sin(t0)))


def field_sup_norm(field: PlanarField) -> float:
    """sup |g|; ``math.inf`` stands for "unbounded".

    Exact for the library variants, a bound for :class:`Shifted`, a grid
    estimate for :class:`TruncatedGradient`.
    """
    return field.sup_norm()


# ---------------------------------------------------------------------------
# forcing

@dataclass(frozen=True)
class Harmonic:
    k: int
    a: Point2
    b: Point2

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError("harmonic index must be an integer >= 1")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "a", point(self.a))
        object.__setattr__(self, "b", point(self.b))


@dataclass(frozen=True)
class Forcing:
    """p(t) = a0 + sum_k a_k cos(2 pi k t / T) + b_k sin(2 pi k t / T)."""

    period: float
    mean: Point2 = Point2(0.0, 0.0)
    harmonics: tuple = ()

    def __post_init__(self):
        if not (math.isfinite(self.period) and self.period > 0):
            raise ValueError("period must be positive")
        object.__setattr__(self, "mean", point(self.mean))
        merged: dict[int, list] = {}
        for h in self.harmonics:
            if not isinstance(h, Harmonic):
                h = Harmonic(*h) if not isinstance(h, dict) else Harmonic(h["k"], h["a"], h["b"])
            acc = merged.setdefault(h.k, [0j, 0j])
            acc[0] += h.a.z
            acc[1] += h.b.z
        object.__setattr__(self, "harmonics", tuple(
            Harmonic(k, Point2.from_complex(a), Point2.from_complex(b))
            for k, (a, b) in sorted(merged.items())))

    @classmethod
    def zero(cls, period: float = 1.0) -> "Forcing":
        return cls(period)

    @classmethod
    def constant(cls, c, period: float = 1.0) -> "Forcing":
        return cls(period, point(c))

    def evaluate(self, t: float) -> tuple[float, float]:
        x, y = self.mean
        w = 2.0 * math.pi * t / self.period
        for h in self.harmonics:
            c, s = math.cos(h.k * w), math.sin(h.k * w)
            x += h.a.x * c + h.b.x * s
            y += h.a.y * c + h.b.y * s
        return x, y

    def __call__(self, t: float) -> Point2:
        return Point2(*self.evaluate(t))

    def l2_norm(self) -> float:
        s = abs(self.mean.z) ** 2
        s += 0.5 * sum(abs(h.a.z) ** 2 + abs(h.b.z) ** 2 for h in self.harmonics)
        return math.sqrt(self.period * s)

    def sup_bound(self) -> float:
        """Componentwise triangle bound on sup |p|, combined euclidean."""
        bx = abs(self.mean.x) + sum(abs(h.a.x) + abs(h.b.x) for h in self.harmonics)
        by = abs(self.mean.y) + sum(abs(h.a.y) + abs(h.b.y) for h in self.harmonics)
        return math.hypot(bx, by)

    def without_mean(self) -> "Forcing":
        return Forcing(self.period, Point2(0.0, 0.0), self.harmonics)

    def arrays(self):
        K = len(self.harmonics)
        ks = np.array([h.k for h in self.harmonics] or [0], dtype=float)
        ab = np.zeros((max(K, 1), 4))
        for i, h in enumerate(self.harmonics):
            ab[i] = (h.a.x, h.a.y, h.b.x, h.b.y)
        return ks, ab.ravel(), K, np.array(self.mean, dtype=float), 2.0 * math.pi / self.period

    def to_dict(self):
        return {"T": self.period, "mean": list(self.mean),
                "harmonics": [{"k": h.k, "a": list(h.a), "b": list(h.b)} for h in self.harmonics]}

    @classmethod
    def from_dict(cls, d: dict) -> "Forcing":
        if "T" not in d:
            raise ValueError("forcing needs a period 'T'")
        return cls(float(d["T"]), point(d.get("mean", (0.0, 0.0))),
                   tuple(Harmonic(h["k"], h["a"], h["b"]) for h in d.get("harmonics", ())))


def mean_forcing(p: Forcing) -> Point2:
    return p.mean


# ---------------------------------------------------------------------------
# problems

@dataclass(frozen=True)
class ProblemSpec:
    """u'(t) = g(u(t)) + p(t), T-periodic through the forcing."""

    field: PlanarField
    forcing: Forcing = dc_field(default_factory=Forcing.zero)

    def __post_init__(self):
        if not isinstance(self.forcing, Forcing):
            raise TypeError("forcing must be a trigonometric Forcing")

    @property
    def period(self) -> float:
        return self.forcing.period

    def to_dict(self):
        return {"field": self.field.to_dict(), "forcing": self.forcing.to_dict()}


def reduce_to_zero_mean(problem: ProblemSpec) -> ProblemSpec:
    """Move the forcing mean into the field: (g + pbar, p - pbar)."""
    pbar = problem.forcing.mean
    if pbar.x == 0.0 and pbar.y == 0.0:
        return problem
    return ProblemSpec(Shifted(problem.field, tuple(pbar)), problem.forcing.without_mean())


def field_from_dict(d: dict) -> PlanarField:
    variant = d.get("variant")
    if variant == "conjugate_polynomial":
        return ConjugatePolynomial(tuple(as_complex(c) for c in d["coefficients"]))
    if variant == "saturating_radial":
        return SaturatingRadial(float(d.get("amplitude", 1.0)))
    if variant == "component_arctan":
        c1, c2 = d.get("c", (1.0, 1.0))
        return ComponentArctan(float(c1), float(c2))
    if variant == "affine":
        return Affine(tuple(tuple(r) for r in d.get("matrix", ((0, 0), (0, 0)))),
                      tuple(d.get("offset", (0.0, 0.0))))
    if variant == "shifted":
        return Shifted(field_from_dict(d["base"]), tuple(d["offset"]))
    if variant == "saturated":
        return Saturated(field_from_dict(d["base"]), float(d["level"]))
    raise ValueError(f"unknown field variant {variant!r}")


def problem_from_dict(d: dict) -> ProblemSpec:
    return ProblemSpec(field_from_dict(d["field"]), Forcing.from_dict(d["forcing"]))


def load_problem(path) -> ProblemSpec:
    with open(path) as fh:
        return problem_from_dict(json.load(fh))


def dump_problem(problem: ProblemSpec, path) -> None:
    with open(path, "w") as fh:
        json.dump(problem.to_dict(), fh, indent=2)
        fh.write("\n")
