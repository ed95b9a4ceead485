"""Compare the compiled and pure-Python subset kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload runs ``delta`` and ``eta`` end to end with both backends and
reports the best wall time over ``--repeat`` runs.
"""

from __future__ import annotations

import argparse
import time

from stabloc import _kernels
from stabloc.codes import steane
from stabloc.locality import delta, eta
from stabloc.stabilizer import random_stabilizer_group
from stabloc.surface import build_code, toric


def workloads():
    yield "steane (n=7)", steane()
    yield "toric L=3 (n=18)", build_code(toric(3))
    yield "toric L=4 (n=32)", build_code(toric(4))
    yield "random n=14 m=10", random_stabilizer_group(14, 10, seed=1)
    yield "random n=20 m=12", random_stabilizer_group(20, 12, seed=2)


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    names = sorted(_kernels.BACKENDS)
    if "compiled" not in names:
        print("compiled extension not built; only the pure backend is available")
    header = f"{'workload':<20} {'metric':<6} {'value':>5} " + " ".join(f"{n + ' (s)':>14}" for n in names)
    if len(names) == 2:
        header += f" {'speedup':>8}"
    print(header)
    for label, G in workloads():
        for metric, fn in (("delta", delta), ("eta", eta)):
            value = fn(G).value
            times = [best_time(lambda: fn(G, backend=n), args.repeat) for n in names]
            line = f"{label:<20} {metric:<6} {value:>5} " + " ".join(f"{t:>14.4f}" for t in times)
            if len(names) == 2:
                line += f" {times[1] / times[0]:>7.1f}x"
            print(line)


if __name__ == "__main__":
    main()
