"""Compare the compiled and pure-Python search kernels.

Usage: python benchmarks/bench_kernels.py [k_max] [dropout]

Thins the shipped fixture, runs first-solution search and full counting at
each k on every available backend, prints the CSV and a per-k speedup table.
"""

import sys

from fsmid import bench, kernels


def main(argv):
    k_max = int(argv[1]) if len(argv) > 1 else 5
    dropout = float(argv[2]) if len(argv) > 2 else 0.6
    d = bench.thin(bench.load_fixture(), dropout, seed=0)
    rows = bench.run_kernels(d, k_max)
    print(bench.report_bench(rows), end="")
    names = kernels.available()
    if "cython" not in names:
        print("compiled kernels not built; only the Python backend was timed", file=sys.stderr)
        return 0
    secs = {(r.k, r.method): r.seconds for r in rows}
    print("\nk\tbrute speedup\tcount speedup")
    for k in range(1, k_max + 1):
        b = secs[(k, "brute-python")] / max(secs[(k, "brute-cython")], 1e-9)
        c = secs[(k, "count-python")] / max(secs[(k, "count-cython")], 1e-9)
        print(f"{k}\t{b:.1f}x\t{c:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
