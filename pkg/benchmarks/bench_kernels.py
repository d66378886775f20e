"""Compare the numba-compiled kernels with their interpreted versions.

Run with ``python3 benchmarks/bench_kernels.py``.  Each kernel is called
once to trigger compilation, then timed with ``timeit``; the interpreted
reference is reached through ``.py_func``.  With ``KGAIM_NUMBA=0`` both
columns time the same interpreted code.
"""

import argparse
import math
import timeit

import numpy as np

from kgaim._accel import USE_NUMBA
from kgaim._kernels import count_nodes, numerov_inward, numerov_outward
from kgaim.specfun import _bessel_k_int


def _coulomb_g(points=20000):
    # w'' = g w on x = log r for a Coulomb problem near its ground state
    x = np.linspace(math.log(1e-6), math.log(60.0), points)
    r = np.exp(x)
    g = r * r * (0.75 / r**2 - 1.6 / r + 0.64) + 0.25
    return g, x[1] - x[0]


def cases():
    g, h = _coulomb_g()
    w = np.sin(np.linspace(0, 40, g.size))
    return {
        "numerov_outward": (numerov_outward, (g, h, 1.0, 1.001, g.size - 1, -1)),
        "numerov_inward": (numerov_inward, (g, h, 1.0, 1.001, 1)),
        "count_nodes": (count_nodes, (w, 1e-10)),
        "bessel_k_int": (_bessel_k_int, (9, 3.7)),
    }


def bench(repeat=5):
    rows = []
    for name, (fn, args) in cases().items():
        fn(*args)  # compile
        fast = min(timeit.repeat(lambda: fn(*args), number=10, repeat=repeat)) / 10
        slow = min(timeit.repeat(lambda: fn.py_func(*args), number=3, repeat=repeat)) / 3
        rows.append((name, fast, slow))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"numba enabled: {USE_NUMBA}")
    print(f"{'kernel':<18}{'compiled [s]':>14}{'python [s]':>14}{'speedup':>10}")
    for name, fast, slow in bench(args.repeat):
        print(f"{name:<18}{fast:>14.3e}{slow:>14.3e}{slow / fast:>10.1f}")


if __name__ == "__main__":
    main()
