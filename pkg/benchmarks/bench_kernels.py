"""Numba vs numpy timing for the permutation kernels.

    python3 benchmarks/bench_kernels.py [--sizes 1000,100000,1000000] [--repeat 5]

Both backends are called directly, so the SPECLAB_NUMBA flag does not matter
here.  Inputs are random permutations (few long cycles) and rotations of a
product group (many equal cycles).  Results must agree before timing counts.
"""
import argparse
import time

import numpy as np

from speclab import _kernels as K
from speclab.models import ProductModel, truncate


def best_of(fn, *args, repeat=5):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def inputs(size, rng):
    yield "random", rng.permutation(size).astype(np.int64)
    # largest truncation of (8, 27, 25, 7, 11, 13) not above size
    model = ProductModel((8, 27, 25, 7, 11, 13))
    k = max(k for k in range(1, 7) if model.order_at(k) <= size)
    yield f"rotation@{model.order_at(k)}", truncate(model, k)[1].permutation


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="1000,100000,1000000")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--exponent", type=int, default=123457)
    args = parser.parse_args()
    if not K.HAS_NUMBA:
        print("numba is not installed; only the numpy kernels can run")
        return
    rng = np.random.default_rng(0)
    # compile once, outside the timings
    warm = rng.permutation(16).astype(np.int64)
    K.cycle_labels_numba(warm)
    K.perm_power_numba(warm, 3)

    print(f"{'kernel':<12}{'input':<20}{'numpy s':>12}{'numba s':>12}{'speedup':>10}")
    for size in (int(s) for s in args.sizes.split(",")):
        for name, perm in inputs(size, rng):
            pairs = [
                ("cycles", K.cycle_labels_numpy, K.cycle_labels_numba, (perm,)),
                ("power", K.perm_power_numpy, K.perm_power_numba, (perm, args.exponent)),
            ]
            for kernel, slow, fast, call in pairs:
                if not np.array_equal(slow(*call), fast(*call)):
                    raise SystemExit(f"{kernel} backends disagree on {name}")
                t_np = best_of(slow, *call, repeat=args.repeat)
                t_nb = best_of(fast, *call, repeat=args.repeat)
                label = f"{name}/{size}" if name == "random" else name
                print(f"{kernel:<12}{label:<20}{t_np:>12.5f}{t_nb:>12.5f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
