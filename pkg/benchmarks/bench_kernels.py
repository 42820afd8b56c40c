"""Compare the compiled and pure-Python N-statistic histogram kernels.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import timeit

from flagpoincare import _kernels_py
from flagpoincare.kernels import BACKEND

PROFILES = [
    (1, 1, 1, 1, 1, 1, 1, 1),
    (2, 2, 2, 2, 2),
    (1,) * 9,
    (3, 3, 4),
    (1,) * 10,
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    try:
        from flagpoincare import _kernels as compiled
    except ImportError:
        compiled = None
        print("compiled kernel not built; timing the pure-Python kernel only")
    print(f"selected backend: {BACKEND}")
    print(f"{'profile':<28}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for prof in PROFILES:
        prof = list(prof)
        t_py = min(timeit.repeat(lambda: _kernels_py.nstat_histogram(prof), number=1, repeat=args.repeat))
        if compiled is None:
            print(f"{str(tuple(prof)):<28}{t_py:>12.4f}{'-':>12}{'-':>10}")
            continue
        assert compiled.nstat_histogram(prof) == _kernels_py.nstat_histogram(prof)
        t_cy = min(timeit.repeat(lambda: compiled.nstat_histogram(prof), number=1, repeat=args.repeat))
        print(f"{str(tuple(prof)):<28}{t_py:>12.4f}{t_cy:>12.4f}{t_py / t_cy:>9.0f}x")


if __name__ == "__main__":
    main()
