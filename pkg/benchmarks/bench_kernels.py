"""Time the compiled kernels against the pure-Python ones.

    python3 benchmarks/bench_kernels.py [--repeat N]

The last two rows time whole library calls, which use whichever backend was
selected at import.
"""
import argparse
import random
import timeit

from principal_boundary import _kernels, _pykernels
from principal_boundary.configs import count_Z
from principal_boundary.flatsurf import analyze, build_type1_surface

try:
    from principal_boundary import _ckernels
except ImportError:
    _ckernels = None


def cases():
    rng = random.Random(0)
    n = 20000
    left = [rng.randrange(n) for _ in range(n)]
    right = [rng.randrange(n) for _ in range(n)]
    return {
        "count_bounded(40, [6]*12)": lambda k: k.count_bounded(40, [6] * 12),
        "compositions(12, 6, 4)": lambda k: sum(1 for _ in k.compositions(12, 6, 4)),
        "union_find(20000 random edges)": lambda k: k.union_find(n, left, right),
    }


def best(fn, repeat):
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat, number)) / number


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    print(f"selected backend: {_kernels.BACKEND}")
    print(f"{'kernel':34} {'python':>12} {'cython':>12} {'speedup':>8}")
    for name, call in cases().items():
        py = best(lambda: call(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:34} {py * 1e3:10.3f}ms {'n/a':>12} {'':>8}")
            continue
        cy = best(lambda: call(_ckernels), args.repeat)
        print(f"{name:34} {py * 1e3:10.3f}ms {cy * 1e3:10.3f}ms {py / cy:7.1f}x")
    for name, fn in (("count_Z(11, 11, [4]*6)", lambda: count_Z(11, 11, [4] * 6)),
                     ("analyze(p=3 surface)", lambda: analyze(build_type1_surface([(2, 1), (1, 2), (0, 0)])))):
        print(f"{name:34} {best(fn, args.repeat) * 1e3:10.3f}ms  (end to end)")


if __name__ == "__main__":
    main()
