"""State characterization matrices.

``build(d, T, E)`` tabulates ``d(t.e)`` for every row ``t`` in ``T`` and every
one-symbol extension of ``T``, and every column ``e`` in ``E``.  Missing
observations are holes (``HOLE``, i.e. ``None``); nothing is imputed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .automata import EPS_TOKEN, Alphabet, MooreMachine, length_lex
from .errors import ClosureError, ExtractionError
from .observations import ObservationSet

HOLE = None
HOLE_CHAR = "·"


def prefix_closure(ws: Iterable) -> tuple:
    """Smallest prefix-complete superset of ``ws``, length-lex ordered."""
    out = set()
    for w in ws:
        w = tuple(w)
        for i in range(len(w) + 1):
            out.add(w[:i])
    return tuple(sorted(out, key=length_lex))


def suffix_closure(ws: Iterable) -> tuple:
    """Smallest suffix-complete superset of ``ws``, length-lex ordered."""
    out = set()
    for w in ws:
        w = tuple(w)
        for i in range(len(w) + 1):
            out.add(w[i:])
    return tuple(sorted(out, key=length_lex))


def missing_prefix(ws):
    members = {tuple(w) for w in ws}
    for w in sorted(members, key=length_lex):
        for i in range(len(w)):
            if w[:i] not in members:
                return w, w[:i]
    return None


def missing_suffix(ws):
    members = {tuple(w) for w in ws}
    for w in sorted(members, key=length_lex):
        for i in range(1, len(w) + 1):
            if w[i:] not in members:
                return w, w[i:]
    return None


def is_prefix_complete(ws) -> bool:
    return missing_prefix(ws) is None


def is_suffix_complete(ws) -> bool:
    return missing_suffix(ws) is None


@dataclass(frozen=True)
class CharMatrix:
    input_alphabet: Alphabet
    output_alphabet: Alphabet
    T: tuple
    E: tuple
    rows: tuple
    cells: tuple

    def __post_init__(self):
        object.__setattr__(self, "_row_index", {r: i for i, r in enumerate(self.rows)})
        object.__setattr__(self, "_col_index", {e: j for j, e in enumerate(self.E)})

    @property
    def extension_rows(self) -> tuple:
        return self.rows[len(self.T):]

    def row(self, t) -> tuple:
        return self.cells[self._row_index[tuple(t)]]

    def cell(self, t, e):
        return self.row(t)[self._col_index[tuple(e)]]

    def has_row(self, t) -> bool:
        return tuple(t) in self._row_index

    def pretty(self) -> str:
        return pretty(self)


def build(d: ObservationSet, T: Iterable, E: Iterable) -> CharMatrix:
    sigma = d.input_alphabet
    T = tuple(sorted({sigma.check(t) for t in T}, key=length_lex))
    E = tuple(sorted({sigma.check(e) for e in E}, key=length_lex))
    bad = missing_prefix(T)
    if bad is not None:
        raise ClosureError("prefix", *bad)
    bad = missing_suffix(E)
    if bad is not None:
        raise ClosureError("suffix", *bad)
    tset = set(T)
    ext = {t + (a,) for t in T for a in range(len(sigma))} - tset
    rows = T + tuple(sorted(ext, key=length_lex))
    entries = d.entries
    cells = tuple(tuple(entries.get(r + e, HOLE) for e in E) for r in rows)
    return CharMatrix(sigma, d.output_alphabet, T, E, rows, cells)


def holes(mx: CharMatrix):
    """``(count, density, positions)``; positions are ``(row, column)`` strings in row-major order."""
    positions = [
        (r, e) for r, vec in zip(mx.rows, mx.cells) for e, c in zip(mx.E, vec) if c is HOLE
    ]
    total = len(mx.rows) * len(mx.E)
    density = len(positions) / total if total else 0.0
    return len(positions), density, positions


def compatible(u: tuple, v: tuple) -> bool:
    """Rows agree wherever both are defined."""
    return all(a is HOLE or b is HOLE or a == b for a, b in zip(u, v))


@dataclass(frozen=True)
class Ties:
    """Exact-tie classes over hole-free rows plus the hole-tolerant compatibility relation."""

    classes: tuple
    rows: tuple
    vectors: tuple

    def class_of(self, row):
        row = tuple(row)
        for cls in self.classes:
            if row in cls:
                return cls
        return None

    def tied(self, r1, r2) -> bool:
        cls = self.class_of(r1)
        return cls is not None and tuple(r2) in cls

    def compatible(self, r1, r2) -> bool:
        i, j = self.rows.index(tuple(r1)), self.rows.index(tuple(r2))
        return compatible(self.vectors[i], self.vectors[j])

    def compatible_pairs(self) -> list:
        out = []
        for i in range(len(self.rows)):
            for j in range(i + 1, len(self.rows)):
                if compatible(self.vectors[i], self.vectors[j]):
                    out.append((self.rows[i], self.rows[j]))
        return out


def tied_rows(mx: CharMatrix, columns: Iterable | None = None) -> Ties:
    """Tie analysis, optionally restricted to a subset of the experiment columns."""
    if columns is None:
        idx = list(range(len(mx.E)))
    else:
        wanted = [tuple(c) for c in columns]
        idx = [mx.E.index(c) for c in wanted]
    vectors = tuple(tuple(vec[i] for i in idx) for vec in mx.cells)
    groups = {}
    for r, vec in zip(mx.rows, vectors):
        if HOLE in vec:
            continue
        groups.setdefault(vec, []).append(r)
    classes = tuple(tuple(g) for g in groups.values())
    return Ties(classes, mx.rows, vectors)


@dataclass(frozen=True)
class Status:
    hole_free: bool
    closed: bool
    consistent: bool
    witnesses: dict

    @property
    def ok(self) -> bool:
        return self.hole_free and self.closed and self.consistent


def _exactly_tied(u, v):
    return HOLE not in u and u == v


def status(mx: CharMatrix) -> Status:
    witnesses = {}
    count, _, positions = holes(mx)
    hole_free = count == 0
    if not hole_free:
        witnesses["hole_free"] = positions[0]
    t_vectors = {v for v in (mx.row(t) for t in mx.T) if HOLE not in v}
    closed = True
    for r in mx.extension_rows:
        if mx.row(r) not in t_vectors:
            closed = False
            witnesses["closed"] = r
            break
    # exactly tied test rows share a hole-free vector; compare each to the first of its group
    consistent = True
    sigma = len(mx.input_alphabet)
    first = {}
    for t in mx.T:
        vec = mx.row(t)
        if HOLE in vec:
            continue
        t1 = first.setdefault(vec, t)
        if t1 == t:
            continue
        bad = next(
            (a for a in range(sigma) if not _exactly_tied(mx.row(t1 + (a,)), mx.row(t + (a,)))),
            None,
        )
        if bad is not None:
            consistent = False
            witnesses["consistent"] = (t1, t, bad)
            break
    return Status(hole_free, closed, consistent, witnesses)


def extract(mx: CharMatrix) -> MooreMachine:
    """Machine whose states are the exact-tie classes of the test rows."""
    st = status(mx)
    for flag in ("hole_free", "closed", "consistent"):
        if not getattr(st, flag):
            raise ExtractionError(flag, st.witnesses.get(flag))
    if () not in mx.T:
        raise ExtractionError("empty string in T", None)
    if () not in mx.E:
        raise ExtractionError("empty string in E", None)
    eps_col = mx.E.index(())
    state_of_vec = {}
    reps = []
    for t in mx.T:
        vec = mx.row(t)
        if vec not in state_of_vec:
            state_of_vec[vec] = len(reps)
            reps.append(t)
    sigma = len(mx.input_alphabet)
    delta = tuple(tuple(state_of_vec[mx.row(t + (a,))] for a in range(sigma)) for t in reps)
    outputs = tuple(mx.row(t)[eps_col] for t in reps)
    return MooreMachine(mx.input_alphabet, mx.output_alphabet, delta, outputs, state_of_vec[mx.row(())])


def pretty(mx: CharMatrix) -> str:
    """Tab-separated text rendering; ``EPS`` for the empty string, a middle dot for holes."""
    fmt = mx.input_alphabet.format
    out_syms = mx.output_alphabet.symbols
    lines = ["\t".join([""] + [fmt(e) for e in mx.E])]
    for r, vec in zip(mx.rows, mx.cells):
        cells = [HOLE_CHAR if c is HOLE else out_syms[c] for c in vec]
        lines.append("\t".join([fmt(r)] + cells))
    return "\n".join(lines) + "\n"


def auto_tests(d: ObservationSet, budget: int) -> tuple:
    """First ``budget`` strings (length-lex) of the prefix closure of the data; still prefix-complete."""
    return prefix_closure(d.domain())[:budget]


def auto_experiments(d: ObservationSet, budget: int) -> tuple:
    return suffix_closure(d.domain())[:budget]


__all__ = [
    "EPS_TOKEN", "HOLE", "CharMatrix", "Status", "Ties", "auto_experiments", "auto_tests", "build",
    "compatible", "extract", "holes", "is_prefix_complete", "is_suffix_complete", "prefix_closure",
    "pretty", "status", "suffix_closure", "tied_rows",
]
