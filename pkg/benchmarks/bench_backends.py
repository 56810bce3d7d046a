"""Per-kernel timing: numba build vs pure-numpy build.

Runs every hot kernel on representative inputs with both backends in one
process (the package picks one backend at import, but both builds stay
importable) and prints per-call times plus the speedup.  The numbers
motivate keeping the numba path as the default while the numpy path
remains the drop-in fallback selected by GUESSGAP_PURE_NUMPY=1.
"""

import argparse
import time

import numpy as np

from guessgap import backend, kernels
from guessgap.search import _fill_compositions


def best_of(fn, args, repeat, number):
    """Best average seconds per call over `repeat` timing runs."""
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(number):
            fn(*args)
        dt = (time.perf_counter() - t0) / number
        best = min(best, dt)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--number", type=int, default=2000, help="calls per timing run")
    ap.add_argument("--repeat", type=int, default=5, help="timing runs per kernel")
    args = ap.parse_args()

    rng = np.random.Generator(np.random.PCG64(12345))
    draws = rng.standard_gamma(1.0, size=16)
    p = draws / draws.sum()
    vec = rng.normal(size=16)
    comps = _fill_compositions(8, 8)

    cases = [
        ("tensor_stats", (p, 2, 2, 4)),
        ("penalized_objective", (p, 2, 2, 4, 0.02, 10.0)),
        ("penalized_gradient", (p, 2, 2, 4, 0.02, 10.0)),
        ("project_simplex", (vec,)),
        ("best_grid_point", (comps, 8.0, 2, 2, 2, 0.0)),
    ]

    if not backend.NUMBA_AVAILABLE:
        print("numba is not importable; timing the numpy build only\n")

    header = f"{'kernel':22s} {'numpy':>12s} {'numba':>12s} {'speedup':>9s}"
    print(header)
    print("-" * len(header))
    for name, call_args in cases:
        np_fn = getattr(kernels, "_np_" + name)
        number = args.number if name != "best_grid_point" else max(args.number // 100, 5)
        t_np = best_of(np_fn, call_args, args.repeat, number)
        if backend.NUMBA_AVAILABLE:
            nb_fn = getattr(kernels, "_nb_" + name)
            nb_fn(*call_args)  # compile outside the timed region
            t_nb = best_of(nb_fn, call_args, args.repeat, number)
            print(
                f"{name:22s} {t_np * 1e6:10.2f} us {t_nb * 1e6:10.2f} us "
                f"{t_np / t_nb:8.1f}x"
            )
        else:
            print(f"{name:22s} {t_np * 1e6:10.2f} us {'-':>12s} {'-':>9s}")
    print(f"\nactive backend for normal imports: {backend.backend_name()}")


if __name__ == "__main__":
    main()
