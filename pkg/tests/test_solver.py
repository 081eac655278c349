import cmath
import json
import math

import numpy as np
import pytest

from planar_periodic.errors import (NoZeroCertified, PolishFailed, VerificationFailed,
                                    WindingError)
from planar_periodic.model import (Affine, Forcing, Point2, ProblemSpec, SaturatingRadial,
                                   to_planar)
from planar_periodic.poincare import DisplacementMap, shooting_problem
from planar_periodic.solver import (BoxRegion, SolverConfig, exp_demo, find_zeros_subdivision,
                                    fta_roots, newton_polish, solve_periodic, verify_solution)
from planar_periodic.winding import boundary_oracle, winding_number

from conftest import CIRCLE, companion_roots, forcing

ZERO = Forcing.zero(1.0)
CFG = SolverConfig()


def benchmark_problem():
    return ProblemSpec(SaturatingRadial(1.0), forcing(mean=(0.5, 0.0), harmonics=CIRCLE))


def quadratic_map():
    return DisplacementMap(shooting_problem(ProblemSpec(to_planar([-1, 0, 1]), ZERO)))


# boxes -------------------------------------------------------------------

def test_box_children_tile_parent():
    b = BoxRegion((0.5, -1.0), 2.0, 3)
    kids = b.children()
    assert {k.center for k in kids} == {(-0.5, -2.0), (1.5, -2.0), (-0.5, 0.0), (1.5, 0.0)}
    assert all(k.half_width == 1.0 and k.depth == 4 for k in kids)


def test_box_validation():
    with pytest.raises(ValueError):
        BoxRegion((0, 0), 0.0)


# subdivision -------------------------------------------------------------

def test_identity_single_candidate():
    sub = find_zeros_subdivision(lambda u: u, BoxRegion((0.3, -0.2), 2.0), CFG)
    assert len(sub) == 1
    box = sub[0]
    assert box.contains((0.0, 0.0))
    assert box.half_width <= 2 * CFG.min_box


def test_quadratic_two_candidates():
    sub = find_zeros_subdivision(quadratic_map(), BoxRegion((0.0, 0.0), 3.0), CFG)
    assert len(sub) == 2
    left, right = sorted(sub, key=lambda b: b.center.x)
    assert left.contains((-1.0, 0.0), slack=1e-9)
    assert right.contains((1.0, 0.0), slack=1e-9)
    assert sum(c.winding for c in sub.candidates) == sub.root_winding == -2


def test_constant_map_has_no_zero():
    phi = DisplacementMap(ProblemSpec(Affine.constant((1.0, 0.0)), ZERO))
    with pytest.raises(NoZeroCertified, match="no zero certified"):
        find_zeros_subdivision(phi, BoxRegion((0.0, 0.0), 2.0), CFG)


@pytest.mark.parametrize("make", [quadratic_map,
                                  lambda: DisplacementMap(benchmark_problem()),
                                  lambda: (lambda u: complex(*u) ** 3 - 0.5)])
def test_children_windings_add_up(make):
    sub = find_zeros_subdivision(make(), BoxRegion((0.013, 0.021), 2.5), CFG)
    assert sub.sum_mismatches == 0


def test_children_add_up_on_random_boxes(rng):
    phi = quadratic_map()
    cfg = CFG.boundary_winding_config()
    checked = 0
    for _ in range(30):
        box = BoxRegion(tuple(rng.uniform(-2, 2, 2)), rng.uniform(0.2, 1.5))
        try:
            parent = winding_number(boundary_oracle(box.center, box.half_width, phi), 0j, cfg).winding
            kids = [winding_number(boundary_oracle(k.center, k.half_width, phi), 0j, cfg).winding
                    for k in box.children()]
        except WindingError:
            continue
        checked += 1
        assert sum(kids) == parent
    assert checked >= 20


def test_pruned_boxes_hold_no_zero(rng):
    # spot-check: Newton from 10 random interior points never lands inside a pruned box
    for phi in (quadratic_map(), DisplacementMap(benchmark_problem())):
        sub = find_zeros_subdivision(phi, BoxRegion((0.013, 0.021), 2.5), CFG)
        assert sub.pruned == len(sub.pruned_boxes) > 0
        for box in sub.pruned_boxes[:6]:
            for _ in range(10):
                start = box.center.z + box.half_width * complex(*rng.uniform(-1, 1, 2))
                try:
                    u = newton_polish(phi, Point2.from_complex(start), CFG)
                except PolishFailed:
                    continue
                assert not box.contains(u)


# Newton ------------------------------------------------------------------

def test_newton_affine():
    u = newton_polish(lambda v: (v[0] - 1.0, v[1] - 1.0), (0.9, 1.2), CFG)
    assert math.hypot(u.x - 1, u.y - 1) < 1e-12


def test_newton_quadratic_root():
    u = newton_polish(quadratic_map(), (0.8, 0.1), CFG)
    assert math.hypot(u.x - 1, u.y) < 1e-8
    assert abs(quadratic_map()(u).z) < CFG.solve_tol


def test_newton_constant_fails():
    with pytest.raises(PolishFailed, match="polish failed"):
        newton_polish(lambda v: (1.0, 0.0), (0.0, 0.0), CFG)


# verification ------------------------------------------------------------

def test_verify_constant_solution():
    rep = verify_solution(ProblemSpec(to_planar([-1, 0, 1]), ZERO), (1.0, 0.0), CFG)
    assert rep.passed
    assert rep.l2_lhs == 0.0 and rep.l2_rhs == 0.0


def test_verify_corrupted_point():
    P = benchmark_problem()
    sol = solve_periodic(P)[0]
    bad = (sol.u0.x + 0.1, sol.u0.y)
    with pytest.raises(VerificationFailed, match="verification failed") as info:
        verify_solution(P, bad, CFG)
    assert info.value.report.periodicity_error > 10 * CFG.solve_tol


def test_l2_bound_holds_with_forcing():
    P = ProblemSpec(to_planar([-1, 0, 1]), forcing(harmonics=((1, (0.1, 0.0), (0.0, 0.1)),)))
    res = solve_periodic(P)
    assert res.status == "solved" and len(res) == 2
    for s in res:
        v = s.verification
        assert v.l2_ok and v.l2_lhs <= v.l2_rhs + CFG.l2_slack


# pipeline ----------------------------------------------------------------

def test_benchmark_pipeline():
    res = solve_periodic(benchmark_problem())
    assert res.status == "solved" and len(res) >= 1
    for s in res:
        assert s.residual < 1e-8
        assert s.verification.passed
        assert s.verification.periodicity_error < CFG.periodicity_tol
        tr = s.trajectory
        assert math.hypot(tr.x[-1] - tr.x[0], tr.y[-1] - tr.y[0]) < CFG.periodicity_tol


def test_quadratic_constant_solutions():
    res = solve_periodic(ProblemSpec(to_planar([-1, 0, 1]), ZERO))
    assert [round(s.u0.x, 9) for s in res] == [-1.0, 1.0]
    assert all(abs(s.u0.y) < 1e-9 for s in res)


def test_degenerate_zero_field():
    res = solve_periodic(ProblemSpec(Affine(), forcing(harmonics=CIRCLE)),
                         SolverConfig(enforce_conditions=False, region=BoxRegion((0.1, 0.1), 1.0)))
    assert res.status == "non_isolated"
    assert len(res) == 0
    assert any("non-isolated" in d for d in res.diagnostics)


def test_violated_conditions_return_report():
    res = solve_periodic(ProblemSpec(SaturatingRadial(1.0), forcing(mean=(2.0, 0.0))))
    assert res.status == "conditions_violated"
    assert len(res) == 0 and res.report.verdict == "violated"


def test_radius_failure_is_reported():
    res = solve_periodic(benchmark_problem(), SolverConfig(r_start=8.0, r_max=4.0))
    assert res.status == "radius_not_found" and len(res) == 0


def test_solve_is_deterministic():
    a = json.dumps(solve_periodic(benchmark_problem()).to_dict(), sort_keys=True)
    b = json.dumps(solve_periodic(benchmark_problem()).to_dict(), sort_keys=True)
    assert a == b


def test_solutions_export_fields():
    d = solve_periodic(benchmark_problem()).to_dict()
    assert {"u0", "residual", "l2_lhs", "l2_rhs", "box"} <= set(d["solutions"][0])


# roots -------------------------------------------------------------------

def _match(found, expected, tol):
    found = [complex(*r) for r in found]
    assert len(found) == len(expected)
    for e in expected:
        assert min(abs(f - e) for f in found) < tol


def test_fta_linear():
    _match(fta_roots([0, 1]), [0j], 1e-9)


def test_fta_quadratic():
    _match(fta_roots([-1, 0, 1]), [1, -1], 1e-9)


def test_fta_cubic_against_companion():
    coeffs = [0, -1, 0, 1]
    res = fta_roots(coeffs)
    _match(res, companion_roots(coeffs), 1e-6)
    assert not res.missing


def test_fta_complex_coefficients_returns_roots_not_conjugates():
    a, b = 1 + 1j, 0.5 - 1j
    coeffs = [a * b, -(a + b), 1]
    _match(fta_roots(coeffs), [1 + 1j, 0.5 - 1j], 1e-8)


def test_fta_random_polynomials(rng):
    for _ in range(3):
        n = int(rng.integers(2, 5))
        while True:
            r = 2 * np.sqrt(rng.uniform(0, 1, n)) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
            if n < 2 or min(abs(a - b) for i, a in enumerate(r) for b in r[i + 1:]) >= 0.5:
                break
        coeffs = np.poly(r)[::-1]
        res = fta_roots(list(coeffs))
        _match(res, companion_roots(coeffs), 1e-6)
        assert all(v < CFG.root_tol for v in res.residuals)


# exp ---------------------------------------------------------------------

@pytest.mark.parametrize("R", [0.1, 3.0, 10.0])
def test_exp_demo_zero_winding(R):
    rep = exp_demo(R)
    assert rep.certified and rep.winding == 0
    assert rep.min_modulus == pytest.approx(math.exp(-R), rel=1e-9)
    assert rep.max_modulus == pytest.approx(math.exp(R), rel=1e-9)


def test_exp_demo_needs_refinement_for_large_radius():
    # phase speed R|cos| and log-modulus speed R|sin| both force splits,
    # so the extra samples spread around the whole circle
    big, small = exp_demo(10.0), exp_demo(0.1)
    assert big.samples_used > small.samples_used == 65
    assert big.max_step_turn < math.pi / 2
    assert 0.3 < big.near_quarter_turns < 0.7


def test_exp_demo_reports_certification_failure():
    rep = exp_demo(12.0)
    assert not rep.certified and rep.winding is None
    assert "pole" in rep.error


def test_exp_demo_curve_is_exp_of_conjugate_circle():
    rep = exp_demo(2.0)
    t, v = rep.thetas[5], rep.values[5]
    assert abs(v - cmath.exp(2.0 * cmath.exp(-1j * t))) < 1e-12


def test_exp_demo_rejects_nonpositive_radius():
    with pytest.raises(ValueError):
        exp_demo(0.0)
