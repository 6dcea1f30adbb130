"""Compare the compiled nested-layer kernel with the numpy fallback.

Run: python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from radix import _kernels_py
from radix.integrals import _de_grid, _sinc_weights

try:
    from radix import _kernels
except ImportError:
    _kernels = None


def _case(level, depth, seed=0):
    h = 2.0**-level
    frac, comp, jac = _de_grid(h, 5.0)
    rng = np.random.default_rng(seed)
    vals = np.ascontiguousarray(rng.normal(size=(depth, len(frac))) + 0j)
    return vals, np.ascontiguousarray(jac), _sinc_weights(len(frac)), h


def _time(fn, args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    print(f"{'grid':>6} {'depth':>5} {'numpy [ms]':>11} {'compiled [ms]':>14} {'ratio':>7}")
    for level in (3, 4, 5, 6, 7):
        for depth in (2, 4, 6):
            args = _case(level, depth)
            tn, vn = _time(_kernels_py.nested_layers, args)
            if _kernels is None:
                print(f"{args[0].shape[1]:>6} {depth:>5} {tn * 1e3:>11.3f} {'n/a':>14}")
                continue
            tc, vc = _time(_kernels.nested_layers, args)
            assert abs(vn - vc) <= 1e-9 * max(1.0, abs(vn))
            print(f"{args[0].shape[1]:>6} {depth:>5} {tn * 1e3:>11.3f} {tc * 1e3:>14.3f} {tn / tc:>7.2f}")


if __name__ == "__main__":
    main()
