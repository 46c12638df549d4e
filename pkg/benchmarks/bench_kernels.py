"""Compare the compiled and numpy kernel backends on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 5]

Each workload is run on every available backend; results are checked to be
identical before timings are reported.
"""

import argparse
import timeit

import numpy as np

from coset2pc import paper_code_20_4_ternary
from coset2pc._kernels import available_backends


def _random_masks(rng, points, n):
    words = (n + 63) // 64
    masks = rng.integers(0, 2**63, size=(points, words), dtype=np.uint64)
    if n % 64:
        masks[:, -1] &= np.uint64((1 << (n % 64)) - 1)
    return masks


def workloads():
    rng = np.random.default_rng(7)
    code20 = paper_code_20_4_ternary()
    _, masks20 = code20._projective_masks
    big = _random_masks(rng, 3000, 100)
    sparse = np.sort(rng.integers(0, 1 << 20, size=4000).astype(np.uint64))
    h = rng.integers(0, 3, size=(8, 14))
    base = rng.integers(0, 3, size=8)
    a = rng.integers(0, 65521, size=(60, 120))
    return [
        ("first_containment [20,4]_3", "first_containment", (masks20,)),
        ("first_containment 3000x100 random", "first_containment", (big,)),
        ("first_disjoint 3000x100 random", "first_disjoint", (big,)),
        ("subset_counts n=20", "subset_counts", (sparse, 20)),
        ("syndrome_histogram r=8 u=14 q=3", "syndrome_histogram", (h, base, 3)),
        ("rref_mod 60x120 q=65521", "rref_mod", (a, 65521)),
    ]


def _same(x, y):
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[1], list):
        return np.array_equal(x[0], y[0]) and x[1] == y[1]
    if isinstance(x, np.ndarray):
        return np.array_equal(x, y)
    return x == y


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    backends = available_backends()
    names = sorted(backends)
    print(f"backends: {', '.join(names)}")
    print(f"{'workload':<36}" + "".join(f"{n + ' ms':>14}" for n in names) + f"{'speedup':>10}")
    for label, fn, fargs in workloads():
        results = {n: getattr(backends[n], fn)(*fargs) for n in names}
        ref = results[names[0]]
        if not all(_same(ref, results[n]) for n in names[1:]):
            raise SystemExit(f"backends disagree on {label}")
        times = {}
        for n in names:
            f = getattr(backends[n], fn)
            times[n] = min(timeit.repeat(lambda: f(*fargs), number=1, repeat=args.repeat)) * 1e3
        speed = f"{times['python'] / times['cython']:.1f}x" if "cython" in times else "-"
        print(f"{label:<36}" + "".join(f"{times[n]:>14.3f}" for n in names) + f"{speed:>10}")


if __name__ == "__main__":
    main()
