"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--size 60] [--repeat 5]
"""

import argparse
import random
import timeit

import numpy as np

from cosetkit import _kernels_py

try:
    from cosetkit import _kernels
except ImportError:
    _kernels = None


def _matrices(size, seed):
    rng = random.Random(seed)
    a = np.array([[rng.randint(-50, 50) for _ in range(size)] for _ in range(size)], dtype=np.int64)
    b = np.array([[rng.randint(-50, 50) for _ in range(size)] for _ in range(size)], dtype=np.int64)
    # rank-deficient integer rows for elimination
    base = [[rng.randint(-9, 9) for _ in range(size)] for _ in range(size // 2)]
    rows = base + [[x + y for x, y in zip(base[i], base[-1 - i])] for i in range(size - len(base))]
    return a, b, rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=60)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    a, b, rows = _matrices(args.size, 1)
    half = [r[: args.size // 2] for r in rows[: args.size // 2]]
    # weight blocks of the gram matrices are this small; elimination stays in int64
    _, _, block = _matrices(8, 2)
    cases = {
        "matmul_int64": lambda k: k.matmul_int64(a, b),
        "bareiss_rank": lambda k: k.bareiss_rank(rows),
        "bareiss_det": lambda k: k.bareiss_det(half),
        "det_8x8": lambda k: k.bareiss_det(block),
        "rank_8x8": lambda k: k.bareiss_rank(block),
    }
    backends = [("python", _kernels_py)] + ([("compiled", _kernels)] if _kernels else [])
    print(f"size={args.size} repeat={args.repeat}")
    print("times are per call")
    print(f"{'kernel':<14}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for label, fn in cases.items():
        results = {name: fn(mod) for name, mod in backends}
        values = [np.asarray(v).tolist() for v in results.values()]
        if any(v != values[0] for v in values):
            raise SystemExit(f"{label}: backends disagree")
        times = [min(timeit.repeat(lambda m=mod: fn(m), number=20, repeat=args.repeat)) for _, mod in backends]
        speedup = f"{times[0] / times[1]:>9.1f}x" if len(times) == 2 else f"{'n/a':>10}"
        print(f"{label:<14}" + "".join(f"{t / 20 * 1e3:>10.3f}ms" for t in times) + speedup)
    if _kernels is None:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
