"""Time the numba and numpy backends of each sweep kernel.

    python3 benchmarks/bench_kernels.py [--size N] [--repeat R]

The first numba call per kernel is a warm-up (compilation or cache load) and
is not timed.  Outputs of the two backends are compared before timing.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from theodorus import _accel


def _best(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=10**6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    ns = np.arange(1, args.size + 1, dtype=np.int64)
    kernels = {
        "isqrt_array": lambda b: _accel.isqrt_array(ns, b),
        "squarefree_array": lambda b: _accel.squarefree_array(ns, b),
        "classify_array": lambda b: _accel.classify_array(ns, True, b),
        "odd_square_counterexample": lambda b: _accel.odd_square_counterexample(1, args.size, b),
    }
    backends = [b for b in _accel.BACKENDS if b != "numba" or _accel.JIT_ENABLED]
    print(f"n = 1..{args.size}, best of {args.repeat}")
    print(f"{'kernel':28}" + "".join(f"{b:>12}" for b in backends) + "     speedup")
    for name, fn in kernels.items():
        results = {b: fn(b) for b in backends}  # warm-up and agreement check
        first = results[backends[0]]
        for b in backends[1:]:
            same = np.array_equal(first, results[b]) if not isinstance(first, tuple) else all(
                np.array_equal(x, y) for x, y in zip(first, results[b])
            )
            if not same:
                raise SystemExit(f"{name}: backends disagree")
        t = {b: _best(lambda: fn(b), args.repeat) for b in backends}
        ratio = t["numpy"] / t["numba"] if "numba" in t and t["numba"] > 0 else float("nan")
        print(f"{name:28}" + "".join(f"{t[b] * 1e3:10.1f}ms" for b in backends) + f"  {ratio:8.1f}x")


if __name__ == "__main__":
    main()
