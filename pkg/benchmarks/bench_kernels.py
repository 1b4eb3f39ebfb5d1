"""Compare the compiled kernels with the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import itertools
import random
import timeit

from szero import _kernels_py

try:
    from szero import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def bott_workload(mod, weights):
    def run():
        for w in weights:
            mod.bott(w)
    return run


def lr_workload(mod, pairs):
    def run():
        for a, b, m in pairs:
            mod.lr_expand(a, b, m)
    return run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = random.Random(1)
    weights = [tuple(rng.randint(-6, 6) for _ in range(rng.randint(2, 8))) for _ in range(5000)]
    parts = [p for m in range(0, 4) for p in itertools.combinations_with_replacement(range(4, -1, -1), m)]
    parts = sorted({tuple(x for x in p if x) for p in parts})
    pairs = [(a, b, 4) for a in parts for b in parts][:1500]

    cases = [("bott x5000", bott_workload, weights), ("lr_expand x%d" % len(pairs), lr_workload, pairs)]
    print(f"{'kernel':<18}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for name, make, data in cases:
        t_py = min(timeit.repeat(make(_kernels_py, data), number=1, repeat=args.repeat))
        if _kernels_c is None:
            print(f"{name:<18}{t_py:>12.4f}{'n/a':>12}{'':>10}")
            continue
        t_c = min(timeit.repeat(make(_kernels_c, data), number=1, repeat=args.repeat))
        print(f"{name:<18}{t_py:>12.4f}{t_c:>12.4f}{t_py / t_c:>9.1f}x")


if __name__ == "__main__":
    main()
