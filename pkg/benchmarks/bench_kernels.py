"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from ordhyp import _kernels_py
from ordhyp.groupmodel import FiniteAbelianGroup
from ordhyp.scalar import get_field

try:
    from ordhyp import _kernels as compiled
except ImportError:
    compiled = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases():
    rng = np.random.default_rng(0)
    for m in (40, 120, 220):
        f = get_field(m)
        a = [int(v) for v in rng.integers(-10**4, 10**4, f.degree)]
        b = [int(v) for v in rng.integers(-10**4, 10**4, f.degree)]

        def mul(k, a=a, b=b, f=f):
            red = f._red_np if k is compiled else f._red
            return [list(k.poly_mulmod(a, b, red)) for _ in range(200)][-1]

        yield f"mulmod x200, Q(zeta_{m}) (phi={f.degree})", mul
    for n, weights in ((12, (2, 1, 1, 1, 1)), (14, (3, 2, 1, 1, 1))):
        g = FiniteAbelianGroup.cyclic(n)
        mul_rows = np.stack([g.mul_row(m) for m in weights])

        def hist(k, g=g, mul_rows=mul_rows):
            return list(k.count_histogram(g.add_table, mul_rows))

        yield f"histogram {list(weights)} in Z{n}", hist


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled is None:
        print("compiled extension not built; only the fallback is available")
    print(f"{'case':44s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn in cases():
        tp, out_p = best_of(lambda: fn(_kernels_py), args.repeat)
        if compiled is None:
            print(f"{name:44s} {tp:10.4f} {'-':>10s} {'-':>8s}")
            continue
        tc, out_c = best_of(lambda: fn(compiled), args.repeat)
        assert out_p == out_c, name
        print(f"{name:44s} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
