"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py --n 8 --repeat 5

Prints one ``key=value`` line per kernel. Compilation is excluded: each
numba kernel is called once before timing.
"""

import argparse
import timeit

import numpy as np

from gradedgroups import kernels
from gradedgroups._accel import HAVE_NUMBA


def cases(n, tmask):
    table = kernels.NUMPY_KERNELS["vee_mul_table"](n, tmask)
    inverse = np.argmax(table == 0, axis=1).astype(np.int64)
    return {
        "vee_mul_table": (n, tmask),
        "cocycle_defects": (min(n, 7), tmask & ((1 << min(n, 7)) - 1)),
        "conjugation_defects": (n, tmask),
        "element_orders": (table, 0),
        "conjugacy_reps": (table, inverse),
    }


def best_of(func, args, repeat):
    return min(timeit.repeat(lambda: func(*args), number=1, repeat=repeat))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=8, help="number of generators (default 8)")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if not HAVE_NUMBA:
        parser.error("numba is not installed")

    tmask = int("01" * 16, 2) & ((1 << args.n) - 1)
    print(f"n={args.n} tmask={tmask:#x} order={1 << (args.n + 1)}")
    for name, call_args in cases(args.n, tmask).items():
        fast, slow = kernels.NUMBA_KERNELS[name], kernels.NUMPY_KERNELS[name]
        fast(*call_args)
        t_nb = best_of(fast, call_args, args.repeat)
        t_np = best_of(slow, call_args, args.repeat)
        print(f"{name}: numba={t_nb * 1e3:.3f}ms numpy={t_np * 1e3:.3f}ms speedup={t_np / t_nb:.1f}x")


if __name__ == "__main__":
    main()
