import math

import numpy as np
import pytest

from planar_periodic.model import (Affine, ComponentArctan, Forcing, Harmonic, Point2,
                                   ProblemSpec, SaturatingRadial, build_truncated_field,
                                   to_planar)


def companion_roots(coeffs):
    """Eigenvalues of the companion matrix; coefficients lowest degree first."""
    a = np.asarray(coeffs, dtype=complex)
    n = len(a) - 1
    a = a / a[-1]
    C = np.zeros((n, n), dtype=complex)
    C[1:, :-1] = np.eye(n - 1)
    C[:, -1] = -a[:-1]
    return np.linalg.eigvals(C)


def forcing(T=1.0, mean=(0.0, 0.0), harmonics=()):
    return Forcing(T, Point2(*mean), [Harmonic(k, a, b) for k, a, b in harmonics])


CIRCLE = ((1, (0.3, 0.0), (0.0, 0.3)),)


def quartic_potential():
    G = lambda u: (u[0] ** 2 + u[1] ** 2) ** 2 / 4
    grad = lambda u: ((u[0] ** 2 + u[1] ** 2) * u[0], (u[0] ** 2 + u[1] ** 2) * u[1])
    xi = lambda s: (4 * s) ** 0.75
    return G, grad, xi


def truncated_quartic(R=2.0):
    G, grad, xi = quartic_potential()
    return build_truncated_field(G, grad, xi, R=R)


def bounded_library():
    """Bounded library problems used by several property tests."""
    return {
        "saturating": ProblemSpec(SaturatingRadial(1.0), forcing(mean=(0.5, 0.0), harmonics=CIRCLE)),
        "saturating_amp2": ProblemSpec(SaturatingRadial(2.0), forcing(T=2.0, harmonics=CIRCLE)),
        "arctan": ProblemSpec(ComponentArctan(1.0, 0.5), forcing(mean=(0.2, -0.1), harmonics=CIRCLE)),
        "constant": ProblemSpec(Affine.constant((1.0, 0.5)), forcing(harmonics=CIRCLE)),
        "truncated": ProblemSpec(truncated_quartic(), forcing(harmonics=CIRCLE)),
    }


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_disk(rng, n, radius):
    r = radius * np.sqrt(rng.uniform(0, 1, n))
    t = rng.uniform(0, 2 * math.pi, n)
    return r * np.cos(t), r * np.sin(t)
