"""Scaling measurements written as CSV.

The ``blowup`` suite times both existence checks for every ``k`` on a nested
chain of data sets (the shipped fixture thinned by increasing dropout) and
reports the ambiguity count and the hole density next to each timing.  The
``kernels`` suite runs the same brute-force and counting work on the compiled
and the pure-Python kernels.
"""

from __future__ import annotations

import csv
import io
import random
import time
from dataclasses import dataclass
from importlib import resources

from . import charmatrix as cm
from . import kernels
from .observations import ObservationSet, parse_tsv
from .solvers import brute_force_exists, count_consistent, sat_exists

HEADER = ["k", "method", "seconds", "consistent_count", "hole_density"]
DROPOUTS = (0.0, 0.3, 0.6)
MATRIX_BUDGET = 8


@dataclass(frozen=True)
class BenchRow:
    k: int
    method: str
    seconds: float
    consistent_count: int
    hole_density: float


def load_fixture(name: str = "blowup.tsv") -> ObservationSet:
    text = resources.files("fsmid").joinpath("data", name).read_text(encoding="utf-8")
    return parse_tsv(text)


def thin(d: ObservationSet, dropout: float, seed: int) -> ObservationSet:
    """Drop each entry independently; for one seed, higher dropout gives a subset."""
    rng = random.Random(seed)
    keep = [w for w in d.domain() if rng.random() >= dropout]
    return d.restrict(keep)


def hole_density(d: ObservationSet, budget: int = MATRIX_BUDGET) -> float:
    mx = cm.build(d, cm.auto_tests(d, budget), cm.auto_experiments(d, budget))
    return cm.holes(mx)[1]


def _timed(fn, *args, repeats: int = 3):
    """Best of ``repeats`` wall-clock runs."""
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def data_chain(d: ObservationSet, seed: int, dropouts=DROPOUTS) -> list:
    return [thin(d, p, seed) for p in dropouts]


def run_blowup(d: ObservationSet, k_max: int, seed: int = 0, dropouts=DROPOUTS) -> list:
    rows = []
    for data in data_chain(d, seed, dropouts):
        density = hole_density(data)
        for k in range(1, k_max + 1):
            count = count_consistent(data, k)
            rows.append(BenchRow(k, "brute", _timed(brute_force_exists, data, k), count, density))
            rows.append(BenchRow(k, "sat", _timed(sat_exists, data, k), count, density))
    return sort_rows(rows)


def run_kernels(d: ObservationSet, k_max: int) -> list:
    rows = []
    density = hole_density(d)
    for name in kernels.available():
        for k in range(1, k_max + 1):
            count = count_consistent(d, k, backend=name)
            rows.append(BenchRow(k, f"brute-{name}", _timed(brute_force_exists, d, k, name), count, density))
            rows.append(BenchRow(k, f"count-{name}", _timed(count_consistent, d, k, name), count, density))
    return sort_rows(rows)


def sort_rows(rows) -> list:
    # stable: within (k, method) the data-chain order is kept
    return sorted(rows, key=lambda r: (r.k, r.method))


def report_bench(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in sort_rows(rows):
        w.writerow([r.k, r.method, f"{r.seconds:.6f}", r.consistent_count, f"{r.hole_density:.6f}"])
    return buf.getvalue()


def parse_bench(text: str) -> list:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != HEADER:
        raise ValueError("bad bench header")
    return [BenchRow(int(k), m, float(s), int(c), float(h)) for k, m, s, c, h in rows[1:]]
