#!/usr/bin/env python3
"""Time the compiled scan kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import math
import time

import numpy as np

from bktele import _pykern

try:
    from bktele import _corekern
except ImportError:
    _corekern = None


def tmss_entries(r=1.0):
    ch, sh = math.cosh(2 * r), math.sinh(2 * r)
    return (ch, 0.0, ch, ch, 0.0, ch, sh, 0.0, 0.0, -sh)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    kbars = np.linspace(-1.0, 1.0, 400)
    t_surface = np.linspace(0.002, 1.0, 500)
    t_rob = np.linspace(0.05, 1.0, 20)
    entries = tmss_entries()
    return [
        ("region_grid 400x400",
         lambda m: m.region_grid(2.0, 2.0, kbars, kbars, 1.0, 1.0, 1.0)),
        ("surface_grid 500x500",
         lambda m: m.surface_grid(entries, 1.0, t_surface, t_surface)),
        ("robustness_grid 20x20",
         lambda m: m.robustness_grid(entries, t_rob, t_rob)),
        ("best_gain_ratio x100",
         lambda m: [m.best_gain_ratio(entries, 0.7, 0.9) for _ in range(100)]),
    ]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    impls = [("python", _pykern)]
    if _corekern is not None:
        impls.append(("compiled", _corekern))
    else:
        print("note: compiled kernels not built; timing the fallback only")

    print(f"{'case':26s}" + "".join(f"{name:>12s}" for name, _ in impls)
          + ("     speedup" if len(impls) == 2 else ""))
    for label, run in cases():
        times = [best_of(lambda m=mod: run(m), args.repeat)
                 for _, mod in impls]
        row = f"{label:26s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)

    if _corekern is not None:
        kbars = np.linspace(-1.0, 1.0, 400)
        a = _corekern.region_grid(2.0, 2.0, kbars, kbars, 1.0, 1.0, 1.0)
        b = _pykern.region_grid(2.0, 2.0, kbars, kbars, 1.0, 1.0, 1.0)
        assert np.array_equal(a, b), "kernel outputs disagree"
        print("outputs agree: region grids identical cell-for-cell")


if __name__ == "__main__":
    main()
