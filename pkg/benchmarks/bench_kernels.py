"""Compiled core against the numpy fallback on the two hot kernels.

    python3 benchmarks/bench_kernels.py [--n 12] [--samples 1000000]

Both backends are imported directly, so the environment override is not needed.
Each timing is the best of ``--repeat`` runs.
"""

import argparse
import time

import numpy as np

from quasirand import _fallback, build_mk, validate
from quasirand.density import _prepare, _stack

try:
    from quasirand import _core
except ImportError:
    _core = None


def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--samples", type=int, default=10**6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    table = rng.uniform(-1, 1, size=(args.n,) * 3)
    from quasirand import Kernel

    f = Kernel(table)
    M = build_mk(3, validate([(0, 1), (1, 2)], 3))
    prep = _prepare(M, f)
    tables, index = _stack(prep)
    assign = rng.integers(0, args.n, size=(args.samples, prep.nverts), dtype=np.intp)

    backends = [("python", _fallback)] + ([("cython", _core)] if _core else [])
    print(f"pattern: 5 vertices, 4 edges; n={args.n}; {args.n ** 5} assignments; "
          f"{args.samples} sampled maps")
    results = {}
    for name, mod in backends:
        t_sum, v = best(lambda: mod.naive_sum(tables, prep.edges, index, args.n, prep.nverts,
                                              0, args.n), args.repeat)
        t_prod, p = best(lambda: mod.edge_products(tables, prep.edges, index, args.n, assign),
                         args.repeat)
        results[name] = (t_sum, t_prod, float(v), p)
        print(f"{name:>7}  naive_sum {t_sum * 1e3:9.2f} ms   edge_products {t_prod * 1e3:9.2f} ms")
    if len(results) == 2:
        a, b = results["python"], results["cython"]
        print(f"speedup  naive_sum {a[0] / b[0]:9.1f}x     edge_products {a[1] / b[1]:9.1f}x")
        print(f"agreement  |sum diff| = {abs(a[2] - b[2]):.3g}, "
              f"max |product diff| = {np.max(np.abs(a[3] - b[3])):.3g}")
    else:
        print("compiled core not built; only the fallback was timed")


if __name__ == "__main__":
    main()
