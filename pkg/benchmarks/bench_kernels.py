"""Time the compiled and pure-Python kernels on the same oracle workloads.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Every workload runs under each available backend and the Betti tables
are compared, so the benchmark doubles as a cross-check.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

from oriented_reg import kernels
from oriented_reg.families import dumbbell, naturally_oriented_cycle, join_of_cycles, sink_path
from oriented_reg.homology import graded_betti
from oriented_reg.monomial import edge_ideal


def workloads(quick: bool):
    yield "C6 w=2, reduced, gf2", edge_ideal(naturally_oriented_cycle(6, 2)), "gf2", True
    yield "C6 w=2, reduced, qq", edge_ideal(naturally_oriented_cycle(6, 2)), "qq", True
    yield "dumbbell 3.1.3 w=2, plain, gf2", edge_ideal(dumbbell(3, 3, 1, 2)), "gf2", False
    yield "join C3*C3 w=2, reduced, qq", edge_ideal(join_of_cycles(3, 3, "all", 2)), "qq", True
    yield "sink P5, plain, qq", edge_ideal(sink_path(5, ["x2", "x5"], [3, 2])), "qq", False
    if not quick:
        yield "C6 w=3, reduced, qq", edge_ideal(naturally_oriented_cycle(6, 3)), "qq", True
        yield "C6 w=3, plain, gf2", edge_ideal(naturally_oriented_cycle(6, 3)), "gf2", False


def _time(ideal, field, reduce, repeat):
    samples = []
    table = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        table = graded_betti(ideal, field, reduce=reduce)
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples), table


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="skip the slowest workloads")
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    if "compiled" not in backends:
        print("compiled kernels are not built; timing the Python fallback only", file=sys.stderr)
    print(f"{'workload':34s}" + "".join(f"{b:>12s}" for b in backends) + "   speedup")
    mismatch = False
    for name, ideal, field, reduce in workloads(args.quick):
        times, tables = {}, {}
        for b in backends:
            with kernels.use_backend(b):
                times[b], tables[b] = _time(ideal, field, reduce, args.repeat)
        if len({tuple(sorted(t.entries.items())) for t in tables.values()}) > 1:
            mismatch = True
            name += "  MISMATCH"
        speed = f"{times['python'] / times['compiled']:8.1f}x" if "compiled" in times else ""
        print(f"{name:34s}" + "".join(f"{times[b]:11.4f}s" for b in backends) + f"  {speed}")
    return 1 if mismatch else 0


if __name__ == "__main__":
    sys.exit(main())
