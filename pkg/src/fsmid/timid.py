"""Polynomial-time state-merging learner ("timid" identification).

The learner builds the prefix tree of the data and visits its nodes in
breadth-first (length-lex) order.  A node that is still its own block is
merged into the earliest kept block it is compatible with; otherwise it
becomes a new kept state.  Merging folds the two subtrees together
(congruence closure) and fails if two observed, different outputs land in
one block; unobserved nodes are wildcards.

After merging, an undefined transition of a state loops back to that state
and an undefined output is output id 0.  The hypothesis always reproduces
the data.  It may use more states than necessary.

Work is counted in ``stats["ops"]`` (one unit per merge attempt, per
processed fold pair and per relabelled node).  With ``N`` tree nodes and
``s`` input symbols it is bounded by ``N^2 * (N^2 + (s + 1) * N + 1)``:
at most ``N^2`` attempts, each with at most ``N`` unions, ``s * N + 1`` fold
pairs and ``N^2`` relabellings.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .automata import MooreMachine, all_strings, equivalent, minimize, behaviors, run
from .errors import FormatError
from .observations import ObservationSet
from .prefixtree import PrefixTree


def ops_bound(n_nodes: int, sigma: int) -> int:
    n = n_nodes
    return n * n * (n * n + (sigma + 1) * n + 1)


class _Merger:
    def __init__(self, tree: PrefixTree):
        n = len(tree)
        self.s = tree.sigma
        self.rep = list(range(n))
        self.members = [[i] for i in range(n)]
        self.out = list(tree.obs)
        self.kid = list(tree.child)
        self.log = []
        self.ops = 0

    def undo(self, mark):
        log = self.log
        while len(log) > mark:
            kind, idx, old = log.pop()
            if kind == 0:
                self.rep[idx] = old
            elif kind == 1:
                self.out[idx] = old
            elif kind == 2:
                self.kid[idx] = old
            else:
                del self.members[idx][old:]

    def merge(self, u, v) -> bool:
        rep, out, kid, members, log, s = self.rep, self.out, self.kid, self.members, self.log, self.s
        self.ops += 1
        work = [(u, v)]
        while work:
            self.ops += 1
            x, y = work.pop()
            x, y = rep[x], rep[y]
            if x == y:
                continue
            r, o = (x, y) if x < y else (y, x)
            if out[o] >= 0:
                if out[r] < 0:
                    log.append((1, r, out[r]))
                    out[r] = out[o]
                elif out[r] != out[o]:
                    return False
            for node in members[o]:
                self.ops += 1
                log.append((0, node, rep[node]))
                rep[node] = r
            log.append((3, r, len(members[r])))
            members[r].extend(members[o])
            for a in range(s):
                co = kid[o * s + a]
                if co < 0:
                    continue
                cr = kid[r * s + a]
                if cr < 0:
                    log.append((2, r * s + a, cr))
                    kid[r * s + a] = co
                else:
                    work.append((cr, co))
        return True


def hypothesis(d: ObservationSet, stats: dict | None = None) -> MooreMachine:
    tree = PrefixTree(d)
    mg = _Merger(tree)
    kept = [0]
    for u in range(1, len(tree)):
        if mg.rep[u] != u:
            continue
        for v in kept:
            mark = len(mg.log)
            if mg.merge(u, v):
                del mg.log[mark:]
                break
            mg.undo(mark)
        else:
            kept.append(u)
            continue
        kept = [x for x in kept if mg.rep[x] == x]
    if stats is not None:
        stats["ops"] = mg.ops
        stats["nodes"] = len(tree)
    s = tree.sigma
    ids = {r: i for i, r in enumerate(kept)}
    delta = []
    outputs = []
    for r in kept:
        row = []
        for a in range(s):
            c = mg.kid[r * s + a]
            row.append(ids[mg.rep[c]] if c >= 0 else ids[r])
        delta.append(row)
        outputs.append(mg.out[r] if mg.out[r] >= 0 else 0)
    return MooreMachine(d.input_alphabet, d.output_alphabet, delta, outputs, 0)


def characteristic_sample(m: MooreMachine) -> ObservationSet:
    """All strings up to twice the minimal state count; sufficient for the learner at desk scale."""
    return behaviors(m, 2 * minimize(m).n)


@dataclass
class ConvergenceLog:
    entries: list = field(default_factory=list)
    hypotheses: list = field(default_factory=list)

    def append(self, data_size, states, eq, h=None):
        if self.entries and data_size <= self.entries[-1][0]:
            raise ValueError("data size must increase strictly across log entries")
        self.entries.append((data_size, states, eq))
        self.hypotheses.append(h)

    def __len__(self):
        return len(self.entries)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["data_size", "hypothesis_states", "equivalent"])
        for size, states, eq in self.entries:
            w.writerow([size, states, "true" if eq else "false"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "ConvergenceLog":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0] != ["data_size", "hypothesis_states", "equivalent"]:
            raise FormatError("bad convergence log header", 1)
        log = cls()
        for lineno, row in enumerate(rows[1:], 2):
            try:
                size, states, eq = int(row[0]), int(row[1]), row[2]
            except (IndexError, ValueError):
                raise FormatError("bad convergence log row", lineno) from None
            if eq not in ("true", "false"):
                raise FormatError(f"bad equivalent flag {eq!r}", lineno)
            try:
                log.append(size, states, eq == "true")
            except ValueError as exc:
                raise FormatError(str(exc), lineno) from None
        return log


def identify_incremental(m: MooreMachine, max_len: int) -> ConvergenceLog:
    """Feed all strings by increasing length; log the hypothesis after each completed length."""
    log = ConvergenceLog()
    entries = {}
    sigma = len(m.input_alphabet)
    for length in range(max_len + 1):
        for w in all_strings(sigma, length, length):
            entries[w] = run(m, w)
        d = ObservationSet._trusted(dict(entries), m.input_alphabet, m.output_alphabet)
        h = hypothesis(d)
        log.append(len(d), h.n, equivalent(h, m), h)
    return log
