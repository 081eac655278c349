import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from planar_periodic.errors import (ControlViolation, FieldOverflowError, GradientMismatch)
from planar_periodic.model import (Affine, ConjugatePolynomial, Forcing, Gradient, Harmonic,
                                   Point2, ProblemSpec, SaturatingRadial, Shifted,
                                   build_truncated_field, dump_problem, estimate_sup_norm,
                                   eval_field, field_sup_norm, load_problem, mean_forcing,
                                   point, reduce_to_zero_mean, to_planar)
from planar_periodic.ode import IntegratorConfig, integrate

from conftest import forcing, quartic_potential, random_disk, truncated_quartic


# evaluation -----------------------------------------------------------------

def test_square_at_one_plus_i():
    assert eval_field(to_planar([0, 0, 1]), (1.0, 1.0)) == Point2(0.0, -2.0)


def test_saturating_radial_value():
    g = eval_field(SaturatingRadial(1.0), (3.0, 4.0))
    assert g.x == pytest.approx(0.5, abs=1e-15)
    assert g.y == pytest.approx(2 / 3, abs=1e-15)


@given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3))
def test_identity_polynomial_is_conjugation(x, y):
    assert eval_field(to_planar([0, 1]), (x, y)) == Point2(x, -y)


def test_overflow_is_reported():
    with pytest.raises(FieldOverflowError):
        eval_field(to_planar([0] * 9 + [1]), (1e40, 1e40))


def test_non_finite_points_rejected():
    with pytest.raises(ValueError):
        point((math.nan, 0.0))
    with pytest.raises(ValueError):
        eval_field(SaturatingRadial(1.0), (math.inf, 0.0))


# forcing --------------------------------------------------------------------

def test_mean_forcing_examples():
    p = forcing(mean=(0.5, 0.0), harmonics=((1, (0.3, 0.0), (0.0, 0.3)),))
    assert mean_forcing(p) == Point2(0.5, 0.0)
    assert mean_forcing(Forcing.zero()) == Point2(0.0, 0.0)
    q = Forcing(2 * math.pi, Point2(0, 0), [Harmonic(1, (1, 0), (0, 1))])
    assert mean_forcing(q) == Point2(0.0, 0.0)


def _quadrature(p, n=4096):
    t = np.arange(n) * p.period / n
    vals = np.array([p.evaluate(s) for s in t])
    mean = vals.mean(axis=0)
    l2 = math.sqrt(p.period * np.mean(np.sum(vals ** 2, axis=1)))
    return mean, l2


def test_mean_and_l2_match_quadrature(rng):
    # rectangle rule is exact for trigonometric polynomials of low degree
    for _ in range(20):
        K = int(rng.integers(0, 4))
        hs = [(int(rng.integers(1, 6)), tuple(rng.normal(size=2)), tuple(rng.normal(size=2)))
              for _ in range(K)]
        p = forcing(T=float(rng.uniform(0.5, 3.0)), mean=tuple(rng.normal(size=2)), harmonics=hs)
        mean, l2 = _quadrature(p)
        assert np.allclose(mean, p.mean, atol=1e-10)
        assert abs(l2 - p.l2_norm()) < 1e-10


@given(st.floats(-10, 10))
@settings(max_examples=50)
def test_forcing_is_periodic(t):
    p = forcing(T=1.7, mean=(0.1, 0.2), harmonics=((1, (1, 0), (0, 1)), (3, (0.2, -0.5), (0.7, 0))))
    a, b = p.evaluate(t), p.evaluate(t + 1.7)
    assert a == pytest.approx(b, abs=1e-12)


def test_duplicate_harmonics_merge():
    p = Forcing(1.0, Point2(0, 0), [Harmonic(1, (1, 0), (0, 0)), Harmonic(1, (0.5, 0), (0, 0))])
    assert len(p.harmonics) == 1
    assert p.evaluate(0.0) == pytest.approx((1.5, 0.0))


def test_sup_bound_componentwise_then_euclidean():
    p = forcing(mean=(1.0, 0.0), harmonics=((1, (0.5, 0.5), (0.0, 1.0)),))
    assert p.sup_bound() == pytest.approx(math.hypot(1.5, 1.5))


# zero-mean reduction ---------------------------------------------------------

def test_reduction_shifts_field_and_forcing():
    P = ProblemSpec(SaturatingRadial(1.0), forcing(mean=(0.5, 0.0), harmonics=((1, (0.3, 0), (0, 0.3)),)))
    R = reduce_to_zero_mean(P)
    assert isinstance(R.field, Shifted)
    assert R.field.offset == (0.5, 0.0)
    assert R.forcing.mean == Point2(0.0, 0.0)
    assert R.forcing.harmonics == P.forcing.harmonics


def test_reduction_identity_on_zero_mean():
    P = ProblemSpec(SaturatingRadial(1.0), forcing(harmonics=((1, (0.3, 0), (0, 0.3)),)))
    assert reduce_to_zero_mean(P) is P


def test_reduction_preserves_trajectories():
    cfg = IntegratorConfig(method="rk4", h=1e-3)
    P = ProblemSpec(to_planar([0.2, -1, 0.5]), forcing(mean=(0.3, -0.7), harmonics=((2, (0.3, 0), (0, 0.3)),)))
    a = integrate(P, (0.4, 0.1), cfg)
    b = integrate(reduce_to_zero_mean(P), (0.4, 0.1), cfg)
    assert np.array_equal(a.t, b.t)
    assert np.max(np.hypot(a.x - b.x, a.y - b.y)) < 10 * IntegratorConfig().abs_tol


# conversion ------------------------------------------------------------------

def test_to_planar_linear():
    g = to_planar([0, 1])
    assert g.evaluate(2.0, 3.0) == (2.0, -3.0)
    assert g.potential((2.0, 3.0)) == pytest.approx((4 - 9) / 2)


def test_to_planar_square():
    g = to_planar([0, 0, 1])
    x, y = 0.7, -1.3
    assert g.evaluate(x, y) == pytest.approx((x * x - y * y, -2 * x * y), abs=1e-14)


def test_potential_gradient_matches_finite_differences(rng):
    g = to_planar([0.3 - 0.2j, 1j, -0.5, 1 + 1j, 0.25])
    xs, ys = random_disk(rng, 100, 2.0)
    h = 1e-5
    for x, y in zip(xs, ys):
        dx = (g.potential((x + h, y)) - g.potential((x - h, y))) / (2 * h)
        dy = (g.potential((x, y + h)) - g.potential((x, y - h))) / (2 * h)
        gx, gy = g.evaluate(x, y)
        assert math.hypot(dx - gx, dy - gy) <= 1e-6 * max(1.0, math.hypot(gx, gy))


def test_zero_leading_coefficient_rejected():
    with pytest.raises(ValueError):
        to_planar([1, 2, 0])
    with pytest.raises(ValueError):
        to_planar([5])


def test_gradient_consistency_enforced():
    with pytest.raises(GradientMismatch):
        Gradient(lambda u: u[0] ** 2, lambda u: (u[0], 0.0))


# truncation ------------------------------------------------------------------

def test_truncated_field_is_bounded_on_radial_grid():
    g = truncated_quartic()
    vals = [math.hypot(*g.evaluate(r * math.cos(t), r * math.sin(t)))
            for r in np.geomspace(1e-3, 1e3, 200) for t in np.linspace(0, 2 * math.pi, 16)]
    # the plateau value is 1 = |grad G| / xi(G) for large |u|
    assert max(vals) < 10.0
    assert vals[-1] == pytest.approx(1.0, rel=1e-12)


def test_truncation_preserves_direction(rng):
    G, grad, _ = quartic_potential()
    g = truncated_quartic()
    xs, ys = random_disk(rng, 100, 5.0)
    for x, y in zip(xs, ys):
        a = np.array(g.evaluate(x, y))
        b = np.array(grad((x, y)))
        assert np.linalg.norm(a / np.linalg.norm(a) - b / np.linalg.norm(b)) < 1e-12


def test_truncation_is_exact_inside(rng):
    G, grad, _ = quartic_potential()
    g = truncated_quartic(R=2.0)
    xs, ys = random_disk(rng, 200, 2.0 ** 0.75)
    for x, y in zip(xs, ys):
        if G((x, y)) <= 2.0:
            assert g.evaluate(x, y) == tuple(grad((x, y)))


def test_truncation_seams_are_continuous():
    G, grad, _ = quartic_potential()
    R = 2.0
    g = truncated_quartic(R)
    for level in (R, 2 * R):
        r = (4 * level) ** 0.25  # G = r^4 / 4
        for t in np.linspace(0, 2 * math.pi, 12):
            c, s = math.cos(t), math.sin(t)
            a = np.array(g.evaluate((r - 1e-12) * c, (r - 1e-12) * s))
            b = np.array(g.evaluate((r + 1e-12) * c, (r + 1e-12) * s))
            assert np.linalg.norm(a - b) < 1e-8


def test_nonpositive_control_rejected():
    G, grad, _ = quartic_potential()
    with pytest.raises(ControlViolation):
        build_truncated_field(G, grad, lambda s: -1.0, R=1.0)


def test_control_violation_names_point():
    G, grad, _ = quartic_potential()
    with pytest.raises(ControlViolation) as exc:
        build_truncated_field(G, grad, lambda s: 1.0, R=1.0)
    assert exc.value.point is not None
    assert "u =" in str(exc.value)


# sup norms -------------------------------------------------------------------

def test_sup_norms():
    assert field_sup_norm(SaturatingRadial(1.0)) == 1.0
    assert field_sup_norm(to_planar([0, 0, 1])) == math.inf
    assert field_sup_norm(Affine.rotation()) == math.inf


def test_truncated_sup_norm_stable_under_refinement():
    g = truncated_quartic()
    coarse = estimate_sup_norm(g, 256, 256, 1e4)
    fine = estimate_sup_norm(g, 512, 512, 1e4)
    assert math.isfinite(coarse.value)
    assert abs(coarse.value - fine.value) < 0.05 * fine.value
    assert (coarse.n_radial, coarse.n_angular, coarse.r_max) == (256, 256, 1e4)


# serialisation ---------------------------------------------------------------

def test_problem_json_round_trip(tmp_path):
    P = ProblemSpec(to_planar([1 - 2j, 0, 1]), forcing(T=2.0, mean=(0.1, 0.2),
                                                       harmonics=((1, (0.3, 0), (0, 0.3)),)))
    path = tmp_path / "p.json"
    dump_problem(P, path)
    doc = json.loads(path.read_text())
    assert doc["field"]["coefficients"][0] == [1.0, -2.0]
    Q = load_problem(path)
    assert Q.field.coefficients == P.field.coefficients
    assert Q.forcing == P.forcing
