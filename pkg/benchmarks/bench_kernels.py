"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Inputs are frequency tables drawn from the sub-exponential reference
distribution, with the default profile range for each sample size.
"""

import argparse
import timeit

import numpy as np

from tailscope import _fallback
from tailscope.classifier import default_range
from tailscope.distributions import reference_distributions, sample

try:
    from tailscope import _kernels
except ImportError:
    _kernels = None


def count_groups(n, seed):
    x = sample(reference_distributions()[1], n, seed)
    _, counts = np.unique(x, return_counts=True)
    ys, mult = np.unique(counts, return_counts=True)
    return ys.astype(np.int64), mult.astype(np.int64)


def best(fn, repeat):
    number = max(1, int(0.2 / max(timeit.timeit(fn, number=1), 1e-7)))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    impls = {"python": _fallback}
    if _kernels is not None:
        impls["cython"] = _kernels
    else:
        print("compiled kernels not built; timing the fallback only")

    print(f"{'kernel':<14}{'size':>36}" + "".join(f"{k:>12}" for k in impls) + f"{'speedup':>10}")
    for n in (2000, 10_000, 100_000, 1_000_000):
        ys, mult = count_groups(n, seed=n)
        vmax = default_range(n)[1]
        times = {k: best(lambda m=m: m.z_profile(ys, mult, n, vmax), args.repeat)
                 for k, m in impls.items()}
        ref = _fallback.z_profile(ys, mult, n, vmax)
        for m in impls.values():
            np.testing.assert_allclose(m.z_profile(ys, mult, n, vmax), ref, rtol=1e-12)
        report("z_profile", f"n={n}, v<={vmax}, {ys.size} groups", times)

    rng = np.random.default_rng(0)
    for m in (100, 500, 2000):
        x = np.arange(m, dtype=np.float64)
        y = np.cumsum(rng.standard_normal(m))
        times = {k: best(lambda mod=mod: mod.kendall_trend(x, y), args.repeat)
                 for k, mod in impls.items()}
        report("kendall_trend", f"m={m}", times)


def report(kernel, size, times):
    cells = "".join(f"{t * 1e6:>10.1f}us" for t in times.values())
    speed = f"{times['python'] / times['cython']:>9.1f}x" if "cython" in times else ""
    print(f"{kernel:<14}{size:>36}{cells}{speed}")


if __name__ == "__main__":
    main()
