"""Compiled versus numpy jet kernels.

Times the truncated jet product and jet inverse on a disk-quadrature-sized
batch of points for both backends and checks that they agree.

    python benchmarks/bench_kernels.py [--points 3072] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from starloop.jets import available_backends
from starloop.jets import kernels
from starloop.jets._tables import n_slots


def batch(rng, order, points, n):
    S = n_slots(order)
    a = rng.standard_normal((S, points, n, n)) + 1j * rng.standard_normal((S, points, n, n))
    a[0] += 3 * np.eye(n)
    return a


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--points", type=int, default=48 * 64)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--n", type=int, default=2)
    args = p.parse_args(argv)
    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels are not built; only the numpy backend is available")
    rng = np.random.default_rng(0)
    print(f"points={args.points} n={args.n} repeat={args.repeat}")
    print(f"{'kernel':<8}{'order':>6}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}{'rel diff':>12}")
    for order in (2, 4, 6, 8):
        a, b = batch(rng, order, args.points, args.n), batch(rng, order, args.points, args.n)
        inv0 = np.linalg.inv(a[0])
        cases = {
            "mul": lambda be: kernels.jet_mul(a, b, order, backend=be),
            "inv": lambda be: kernels.jet_inv(a, order, inv0, backend=be),
        }
        for name, fn in cases.items():
            times = {be: best(lambda: fn(be), args.repeat) for be in backends}
            row = f"{name:<8}{order:>6}" + "".join(f"{times[be] * 1e3:>10.2f}ms" for be in backends)
            if len(backends) == 2:
                ref = fn("python")
                diff = float(np.abs(ref - fn("cython")).max() / np.abs(ref).max())
                row += f"{times['python'] / times['cython']:>9.1f}x{diff:>12.1e}"
            print(row)


if __name__ == "__main__":
    main()
