"""Periodic solutions of forced planar systems u' = g(u) + p(t).

Shooting (Poincaré and displacement maps), certified winding numbers,
asymptotic solvability checks and a degree-guided zero finder, plus the
special case z' = f(conj z) whose periodic orbits are the roots of f.
"""
__version__ = "0.1.0"

from ._core import BACKEND
from .errors import *  # noqa: F401,F403
from .model import (Affine, CallableField, ComponentArctan, ConjugatePolynomial, Forcing,
                    Gradient, Harmonic, PlanarField, Point2, ProblemSpec, Saturated,
                    SaturatingRadial, Shifted, TruncatedGradient, build_truncated_field,
                    eval_field, field_sup_norm, load_problem, mean_forcing,
                    reduce_to_zero_mean, to_planar)
from .ode import IntegratorConfig, Trajectory, integrate, l2_norm_derivative, l2_norm_forcing
from .poincare import (apriori_bound, displacement, displacement_curve, poincare_map,
                       select_radius, shooting_problem)
from .winding import (CurveOracle, WindingConfig, WindingResult, boundary_oracle,
                      rouche_equal_winding, winding_number)
from .conditions import (ConditionConfig, ConditionReport, analytic_gamma_q_polynomial,
                         check_nirenberg, check_ortega_sanchez, check_scalar_LL,
                         radial_limit_curve)
from .solver import (BoxRegion, PeriodicSolution, SolverConfig, exp_demo,
                     find_zeros_subdivision, fta_roots, newton_polish, solve_periodic,
                     verify_solution)
