"""Compiled kernel vs pure-Python twin.

Times batched one-period integrations on a few problems with both kernels,
checks the endpoints agree, then times the full periodic-solution pipeline
under each backend in a subprocess.

    python3 benchmarks/bench_kernel.py [--starts 256] [--repeat 3]
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from planar_periodic import _core, _pure
from planar_periodic.model import Forcing, Harmonic, Point2, ProblemSpec, SaturatingRadial, to_planar
from planar_periodic.ode import IntegratorConfig, _lower
from planar_periodic.poincare import shooting_problem

CIRCLE = [Harmonic(1, (0.3, 0.0), (0.0, 0.3))]

PIPELINE = """
import time
from planar_periodic import BACKEND
from planar_periodic.model import Forcing, Harmonic, Point2, ProblemSpec, SaturatingRadial
from planar_periodic.solver import solve_periodic
p = Forcing(1.0, Point2(0.5, 0.0), [Harmonic(1, (0.3, 0.0), (0.0, 0.3))])
t = time.perf_counter()
res = solve_periodic(ProblemSpec(SaturatingRadial(1.0), p))
print(BACKEND, len(res), time.perf_counter() - t)
"""


def problems():
    return {
        "saturating": ProblemSpec(SaturatingRadial(1.0), Forcing(1.0, Point2(0.5, 0.0), CIRCLE)),
        "cubic (saturated)": shooting_problem(
            ProblemSpec(to_planar([0.5j, -1, 0, 1]), Forcing(1.0, Point2(0.0, 0.0), CIRCLE))),
    }


def time_batch(mod, P, x0s, y0s, repeat):
    cfg = IntegratorConfig()
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = mod.run_batch(*_lower(P), P.period, x0s, y0s, 0, cfg.h, cfg.abs_tol,
                            cfg.rel_tol, 0.0, cfg.max_steps)
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--starts", type=int, default=256)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if _core.BACKEND != "compiled":
        print("compiled kernel not available; build with `pip install -e . --no-build-isolation`")
        return 1
    rng = np.random.default_rng(0)
    x0s = rng.uniform(-8, 8, args.starts)
    y0s = rng.uniform(-8, 8, args.starts)
    print(f"{'problem':<20}{'compiled [s]':>14}{'python [s]':>14}{'speed-up':>10}{'max |diff|':>13}")
    for name, P in problems().items():
        tc, (xc, yc, _, _) = time_batch(_core.kernel, P, x0s, y0s, args.repeat)
        tp, (xp, yp, _, _) = time_batch(_pure, P, x0s, y0s, 1)
        diff = float(np.max(np.hypot(np.asarray(xc) - xp, np.asarray(yc) - yp)))
        print(f"{name:<20}{tc:>14.4f}{tp:>14.4f}{tp / tc:>10.1f}{diff:>13.1e}")

    print("\nend-to-end solve (benchmark problem):")
    for pure in ("0", "1"):
        env = dict(os.environ, PLANAR_PERIODIC_PURE=pure)
        out = subprocess.run([sys.executable, "-c", PIPELINE], env=env, capture_output=True,
                             text=True, check=True).stdout.split()
        print(f"  backend {out[0]:<9} solutions {out[1]}  time {float(out[2]):.3f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
