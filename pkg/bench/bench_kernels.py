#!/usr/bin/env python3
"""Benchmark the pure-Python kernels against the compiled extension.

Times the hot arithmetic loops on representative workloads: encoding
paths to matrices and back, Euclid quotient chains (Fibonacci pairs are
the worst case), Bezout coefficients, continued-fraction evaluation and
exact rational comparison.  Prints ns/op per backend and the speedup.

Usage: python bench/bench_kernels.py [--repeat N] [--scale N]
"""

import argparse
import random
import time

from mobiustree import _pykernels

try:
    from mobiustree import _ckernels
except ImportError:
    _ckernels = None


def fib_pair(n):
    a, b = 1, 1
    for _ in range(n):
        a, b = b, a + b
    return b, a


def make_inputs(scale, rng):
    paths = [
        [rng.randint(1, 30) for _ in range(rng.randint(1, 12))] for _ in range(scale)
    ]
    matrices = [_pykernels.path_to_matrix_raw(p) for p in paths]
    fibs = [fib_pair(rng.randint(50, 300)) for _ in range(scale // 10 or 1)]
    big_pairs = [
        (rng.getrandbits(256) | 1, rng.getrandbits(256) | 1) for _ in range(scale // 10 or 1)
    ]
    ratios = [
        (rng.getrandbits(64), rng.getrandbits(64) | 1, rng.getrandbits(64), rng.getrandbits(64) | 1)
        for _ in range(scale)
    ]
    return {
        "path_to_matrix": (lambda k: [k.path_to_matrix_raw(p) for p in paths], scale),
        "matrix_to_path": (lambda k: [k.matrix_to_path_raw(*m) for m in matrices], scale),
        "euclid_fibonacci": (lambda k: [k.euclid_quotients_raw(a, b) for a, b in fibs], len(fibs)),
        "ext_gcd_256bit": (lambda k: [k.ext_gcd_raw(a, b) for a, b in big_pairs], len(big_pairs)),
        "cf_eval": (lambda k: [k.cf_eval_raw(p) for p in paths], scale),
        "ratio_cmp": (lambda k: [k.cmp_raw(*r) for r in ratios], scale),
    }


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5, help="timing repetitions (best-of)")
    ap.add_argument("--scale", type=int, default=20000, help="number of sample inputs")
    args = ap.parse_args()

    rng = random.Random(99)
    cases = make_inputs(args.scale, rng)

    backends = [("pure", _pykernels)]
    if _ckernels is not None:
        backends.append(("compiled", _ckernels))
    else:
        print("note: compiled kernels not built; timing pure backend only")

    print(f"{'kernel':<18}" + "".join(f"{name + ' ns/op':>16}" for name, _ in backends) + f"{'speedup':>10}")
    for case_name, (fn, ops) in cases.items():
        row = f"{case_name:<18}"
        times = []
        for _, mod in backends:
            t = best_of(lambda m=mod: fn(m), args.repeat)
            times.append(t)
            row += f"{t / ops * 1e9:>16.0f}"
        if len(times) == 2 and times[1] > 0:
            row += f"{times[0] / times[1]:>9.2f}x"
        print(row)


if __name__ == "__main__":
    main()
