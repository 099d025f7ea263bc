"""Compiled vs pure-Python kernels on lattice, Moebius and chamber workloads.

Chamber timings include the shared Python set-up around the tope walk.

Run: python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

from arrkit import chambers, essentialize, weyl_arrangement
from arrkit.kernels import _pure

try:
    from arrkit.kernels import _ckernels
except ImportError:
    _ckernels = None

WORKLOADS = [("A", 5), ("B", 4), ("D", 5), ("D", 6), ("B", 5)]


def chambers_with(kernels, a):
    saved = chambers.topes
    chambers.topes = kernels.topes
    try:
        return chambers.enumerate_chambers(a)
    finally:
        chambers.topes = saved


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not built; nothing to compare")
        return 1
    print(f"{'workload':<22}{'pure s':>10}{'compiled s':>12}{'speedup':>10}")
    for kind, n in WORKLOADS:
        a = weyl_arrangement(kind, n)
        normals = a.normals
        masks, ranks, _ = _pure.build_flats(normals)
        assert _ckernels.build_flats(normals) == _pure.build_flats(normals)
        rows = [
            (f"flats {kind}{n} ({len(a)})", lambda m=_pure: m.build_flats(normals),
             lambda m=_ckernels: m.build_flats(normals)),
            (f"moebius {kind}{n} ({len(masks)})", lambda m=_pure: m.moebius(masks, ranks),
             lambda m=_ckernels: m.moebius(masks, ranks)),
        ]
        if n <= 5:
            ess, _ = essentialize(a)
            rows.append((f"chambers {kind}{n}", lambda m=_pure: chambers_with(m, ess),
                         lambda m=_ckernels: chambers_with(m, ess)))
        for name, slow, fast in rows:
            tp = best_of(slow, args.repeat)
            tc = best_of(fast, args.repeat)
            print(f"{name:<22}{tp:>10.4f}{tc:>12.4f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
