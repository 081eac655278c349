import cmath
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from planar_periodic.conditions import (DEFAULT_LADDER, INCONCLUSIVE, SATISFIED, VIOLATED,
                                        ConditionConfig, analytic_gamma_q_polynomial,
                                        check_nirenberg, check_ortega_sanchez,
                                        check_scalar_LL, limit_curve, radial_limit_curve)
from planar_periodic.model import (Affine, CallableField, ComponentArctan, Forcing,
                                   ProblemSpec, SaturatingRadial, to_planar)
from planar_periodic.winding import winding_number

from conftest import CIRCLE, forcing

THETAS = np.linspace(0, 2 * math.pi, 721)[:-1]


def saturating(mean, harmonics=()):
    return ProblemSpec(SaturatingRadial(1.0), forcing(mean=mean, harmonics=harmonics))


# radial limits -----------------------------------------------------------

def test_saturating_raw_limit_is_unit_circle():
    est = radial_limit_curve(SaturatingRadial(1.0))
    assert est.converged
    assert np.max(np.abs(est.curve - np.exp(1j * THETAS))) < 1e-3
    assert est.defects[-1] < est.defects[0]


def test_polynomial_unit_limit():
    f = to_planar([1, -2, 0, 2j])
    est = radial_limit_curve(f, "unit")
    assert est.converged
    assert np.max(np.abs(est.curve - 1j * np.exp(-3j * THETAS))) < 1e-3


def test_constant_field_has_zero_defects():
    est = radial_limit_curve(Affine.constant((0.3, -0.7)))
    assert list(est.defects) == [0.0] * len(est.defects)
    assert np.all(est.curve == 0.3 - 0.7j)


def test_numeric_unit_curve_matches_analytic_cubic():
    f = to_planar([0, -2, 0, 1])
    est = radial_limit_curve(f, "unit", ladder=(250.0, 500.0, 1000.0))
    exact = analytic_gamma_q_polynomial(f).values(THETAS)
    assert np.max(np.abs(est.curve - np.array(exact))) < 1e-3


def test_unit_limit_requires_nonvanishing_field():
    from planar_periodic.errors import VanishingDenominator
    with pytest.raises(VanishingDenominator):
        radial_limit_curve(Affine(), "unit")


def test_ladder_and_normalisation_validated():
    with pytest.raises(ValueError):
        radial_limit_curve(SaturatingRadial(1.0), "sideways")
    with pytest.raises(ValueError):
        ConditionConfig(ladder=(64.0, 16.0))


# Nirenberg ---------------------------------------------------------------

def test_nirenberg_interior_pole():
    rep = check_nirenberg(saturating((0.5, 0.0)))
    assert rep.verdict == SATISFIED
    assert rep.margin == pytest.approx(0.5, abs=1e-3)
    assert rep.winding == 1
    assert rep.pole == -0.5 + 0j


def test_nirenberg_exterior_pole():
    rep = check_nirenberg(saturating((2.0, 0.0)))
    assert rep.verdict == VIOLATED and rep.winding == 0


def test_nirenberg_zero_field():
    rep = check_nirenberg(ProblemSpec(Affine(), Forcing.zero()))
    assert rep.verdict == VIOLATED and rep.margin == 0.0


def test_nirenberg_unbounded_is_inconclusive():
    rep = check_nirenberg(ProblemSpec(to_planar([0, 1]), Forcing.zero()))
    assert rep.verdict == INCONCLUSIVE


def test_nonuniform_limit_is_inconclusive():
    # arctan components converge like 1/r except near the axes, where they do not converge at all
    rep = check_nirenberg(ProblemSpec(ComponentArctan(1.0, 1.0), Forcing.zero()))
    assert rep.verdict == INCONCLUSIVE
    assert not rep.converged


def test_short_ladder_is_inconclusive():
    rep = check_nirenberg(saturating((0.5, 0.0)), ConditionConfig(ladder=(16.0, 64.0)))
    assert rep.verdict == INCONCLUSIVE


@settings(max_examples=15, deadline=None)
@given(st.floats(-1.5, 1.5), st.floats(-1.5, 1.5), st.floats(0, 2), st.floats(0, 2))
def test_nirenberg_ignores_zero_mean_harmonics(mx, my, a, b):
    if abs(math.hypot(mx, my) - 1) < 0.01:
        return
    plain = check_nirenberg(saturating((mx, my)))
    forced = check_nirenberg(saturating((mx, my), ((2, (a, 0.0), (0.0, b)),)))
    assert plain.verdict == forced.verdict
    assert plain.winding == forced.winding


@pytest.mark.parametrize("mean", [(0.5, 0.0), (0.0, -0.9), (2.0, 0.0), (-1.2, 0.3)])
def test_pole_translation_identity(mean):
    rep = check_nirenberg(saturating(mean))
    est = radial_limit_curve(SaturatingRadial(1.0))
    pole = complex(rep.pole)
    direct = winding_number(est.oracle(), pole).winding
    shifted = winding_number(est.oracle().shifted(pole), 0j).winding
    assert rep.winding == direct == shifted
    assert rep.translated_winding == rep.winding


# Ortega-Sánchez ----------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_conjugate_polynomial_winds_minus_n(n):
    f = to_planar([0.5] + [0] * (n - 1) + [1])
    rep = check_ortega_sanchez(ProblemSpec(f, forcing(mean=(0.2, 0.1), harmonics=CIRCLE)))
    assert rep.converged
    assert rep.winding == -n
    assert rep.verdict == SATISFIED


def test_linear_field_with_forcing():
    p = forcing(mean=(1.0, -1.0), harmonics=((1, (0.5, 0.0), (0.0, 0.5)), (3, (0.1, 0.2), (0.3, 0.0))))
    rep = check_ortega_sanchez(ProblemSpec(to_planar([0, 1]), p))
    assert rep.winding == -1 and rep.verdict == SATISFIED


def test_vanishing_constant_direction_violated():
    g = CallableField(lambda u: (1.0 / (1.0 + u[0] ** 2 + u[1] ** 2), 0.0), sup=1.0)
    rep = check_ortega_sanchez(ProblemSpec(g, Forcing.zero()))
    assert rep.winding == 0 and rep.verdict == VIOLATED


def test_vanishing_field_reported_as_condition_one():
    rep = check_ortega_sanchez(ProblemSpec(Affine(), Forcing.zero()))
    assert rep.verdict == VIOLATED
    assert any("condition 1" in d for d in rep.diagnostics)


def test_report_json():
    rep = check_ortega_sanchez(ProblemSpec(to_planar([0, 0, 1]), Forcing.zero()))
    d = json.loads(json.dumps(rep.to_dict()))
    assert {"margin", "winding", "verdict", "defects", "ladder"} <= set(d)
    assert d["ladder"] == list(DEFAULT_LADDER)


# scalar condition --------------------------------------------------------

def test_scalar_condition():
    assert check_scalar_LL(-math.pi / 2, math.pi / 2, 0.0) == SATISFIED
    assert check_scalar_LL(1.0, 2.0, 0.0) == VIOLATED
    assert check_scalar_LL(2.0, -1.0, 0.0) == SATISFIED
    assert check_scalar_LL(-1.0, 1.0, 1.0) == VIOLATED


# analytic oracle ---------------------------------------------------------

def test_analytic_quadratic():
    c = analytic_gamma_q_polynomial(to_planar([0, 0, 1]))
    assert winding_number(c).winding == -2
    assert abs(c.values([0.4])[0] - cmath.exp(-0.8j)) < 1e-15


def test_analytic_rotated_linear():
    c = analytic_gamma_q_polynomial(to_planar([0, 1j]))
    assert abs(c.values([1.0])[0] - 1j * cmath.exp(-1j)) < 1e-15


def test_analytic_requires_leading_coefficient():
    with pytest.raises(ValueError):
        analytic_gamma_q_polynomial([1, 2, 0])


# limit curves fed to radius selection ------------------------------------

def test_limit_curve_analytic_forms():
    raw = limit_curve(saturating((0.5, 0.0)), "raw")
    assert abs(raw.values([1.0])[0] - cmath.exp(1j)) < 1e-15
    unit = limit_curve(ProblemSpec(to_planar([0, 0, 3j]), Forcing.zero()), "unit")
    assert abs(unit.values([0.5])[0] - 1j * cmath.exp(-1j)) < 1e-15


def test_random_polynomials_converge_to_minus_degree(rng):
    for _ in range(10):
        n = int(rng.integers(1, 5))
        coeffs = list(rng.normal(size=n) + 1j * rng.normal(size=n)) + [1.0]
        rep = check_ortega_sanchez(ProblemSpec(to_planar(coeffs), Forcing.zero()))
        assert rep.converged and rep.winding == -n
