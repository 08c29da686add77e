"""CNF formulas, a deterministic DPLL solver and DIMACS interchange.

The solver is plain DPLL: unit propagation to fixpoint (two watched literals),
then branch on the lowest-index unassigned variable, ``True`` first.  No
clause learning, so the search and the returned model are fully reproducible.

Model interchange follows the minisat result-file convention::

    SAT
    1 -2 3 0

i.e. a status line (``SAT`` or ``UNSAT``) followed, for ``SAT``, by one line
of space-separated signed literals covering every variable in increasing
order, terminated by ``0``.  Readers also accept a bare literal line and a
competition-style ``v`` prefix.  Models that come back from an external
solver are always re-checked against the formula.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import FormatError, InputDomainError


@dataclass(frozen=True)
class CnfFormula:
    n_vars: int
    clauses: tuple

    def __post_init__(self):
        clauses = tuple(tuple(c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if not isinstance(self.n_vars, int) or self.n_vars < 0:
            raise InputDomainError(f"n_vars must be a non-negative integer, got {self.n_vars!r}")
        for i, clause in enumerate(clauses):
            if not clause:
                raise InputDomainError(f"clause {i} is empty")
            for lit in clause:
                if not isinstance(lit, int) or lit == 0 or abs(lit) > self.n_vars:
                    raise InputDomainError(f"literal {lit!r} in clause {i} out of range 1..{self.n_vars}")


def satisfies(phi: CnfFormula, model) -> bool:
    """Independent check: every clause has a true literal under ``model`` (var -> bool)."""
    return all(any(model[abs(l)] == (l > 0) for l in clause) for clause in phi.clauses)


def truth_table_sat(phi: CnfFormula) -> bool:
    for bits in itertools.product((False, True), repeat=phi.n_vars):
        model = dict(zip(range(1, phi.n_vars + 1), bits))
        if satisfies(phi, model):
            return True
    return False


class _Dpll:
    def __init__(self, phi: CnfFormula):
        self.n = phi.n_vars
        self.val = [None] * (self.n + 1)
        self.trail = []
        self.qhead = 0
        self.watches = {}
        self.clauses = []
        self.units = []
        self.trivially_unsat = False
        for clause in phi.clauses:
            lits = list(dict.fromkeys(clause))
            if any(-l in lits for l in lits):
                continue
            if len(lits) == 1:
                self.units.append(lits[0])
                continue
            idx = len(self.clauses)
            self.clauses.append(lits)
            self.watches.setdefault(lits[0], []).append(idx)
            self.watches.setdefault(lits[1], []).append(idx)

    def value(self, lit):
        v = self.val[abs(lit)]
        if v is None:
            return None
        return v if lit > 0 else not v

    def assign(self, lit):
        self.val[abs(lit)] = lit > 0
        self.trail.append(lit)

    def undo(self, pos):
        for lit in self.trail[pos:]:
            self.val[abs(lit)] = None
        del self.trail[pos:]
        self.qhead = min(self.qhead, pos)

    def propagate(self) -> bool:
        """Run unit propagation to fixpoint; False on conflict."""
        while self.qhead < len(self.trail):
            false_lit = -self.trail[self.qhead]
            self.qhead += 1
            watching = self.watches.get(false_lit)
            if not watching:
                continue
            keep = []
            conflict = False
            for pos, ci in enumerate(watching):
                if conflict:
                    keep.append(ci)
                    continue
                c = self.clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                if self.value(first) is True:
                    keep.append(ci)
                    continue
                for j in range(2, len(c)):
                    if self.value(c[j]) is not False:
                        c[1], c[j] = c[j], c[1]
                        self.watches.setdefault(c[1], []).append(ci)
                        break
                else:
                    keep.append(ci)
                    fv = self.value(first)
                    if fv is False:
                        conflict = True
                    elif fv is None:
                        self.assign(first)
            self.watches[false_lit] = keep
            if conflict:
                return False
        return True

    def solve(self):
        for lit in self.units:
            v = self.value(lit)
            if v is False:
                return None
            if v is None:
                self.assign(lit)
        decisions = []  # (trail position, variable, already flipped)
        next_var = 1
        while True:
            if not self.propagate():
                while decisions:
                    pos, var, flipped = decisions.pop()
                    self.undo(pos)
                    if not flipped:
                        decisions.append((pos, var, True))
                        self.assign(-var)
                        next_var = 1
                        break
                else:
                    return None
                continue
            while next_var <= self.n and self.val[next_var] is not None:
                next_var += 1
            if next_var > self.n:
                return {v: self.val[v] for v in range(1, self.n + 1)}
            decisions.append((len(self.trail), next_var, False))
            self.assign(next_var)


def solve(phi: CnfFormula):
    """Return a satisfying model ``{var: bool}`` or None if ``phi`` is unsatisfiable."""
    model = _Dpll(phi).solve()
    if model is not None and not satisfies(phi, model):
        raise AssertionError("solver produced a model that does not satisfy the formula")
    return model


# -- DIMACS -----------------------------------------------------------------

def parse_dimacs(text: str) -> CnfFormula:
    header = None
    header_line = None
    clauses = []
    current = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("p"):
            if header is not None:
                raise FormatError("duplicate problem header", lineno)
            parts = stripped.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError("malformed header, expected 'p cnf <vars> <clauses>'", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise FormatError("non-integer header field", lineno) from None
            if header[0] < 0 or header[1] < 0:
                raise FormatError("negative header field", lineno)
            header_line = lineno
            continue
        if header is None:
            raise FormatError("clause before problem header", lineno)
        for tok in stripped.split():
            try:
                lit = int(tok)
            except ValueError:
                raise FormatError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                if not current:
                    raise FormatError("empty clause", lineno)
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > header[0]:
                raise FormatError(f"literal {lit} out of range 1..{header[0]}", lineno)
            else:
                current.append(lit)
    if header is None:
        raise FormatError("missing problem header")
    if current:
        raise FormatError("last clause is not terminated by 0", len(text.splitlines()))
    if len(clauses) != header[1]:
        raise FormatError(f"header declares {header[1]} clauses, found {len(clauses)}", header_line)
    return CnfFormula(header[0], tuple(clauses))


def emit_dimacs(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.n_vars} {len(phi.clauses)}"]
    lines.extend(" ".join(map(str, c)) + " 0" for c in phi.clauses)
    return "\n".join(lines) + "\n"


def format_model(model, n_vars: int | None = None) -> str:
    if model is None:
        return "UNSAT\n"
    n = len(model) if n_vars is None else n_vars
    lits = [str(v if model[v] else -v) for v in range(1, n + 1)]
    return "SAT\n" + " ".join(lits + ["0"]) + "\n"


def parse_model(text: str, n_vars: int):
    """Read a solver result; returns ``{var: bool}`` for SAT or None for UNSAT."""
    lines = [l.strip() for l in text.splitlines() if l.strip() and not l.startswith("c")]
    if not lines:
        raise FormatError("empty model text")
    if lines[0] in ("UNSAT", "s UNSATISFIABLE"):
        return None
    if lines[0] in ("SAT", "s SATISFIABLE"):
        lines = lines[1:]
    lits = []
    for lineno, line in enumerate(lines, 1):
        if line.startswith("v"):
            line = line[1:]
        for tok in line.split():
            try:
                lits.append(int(tok))
            except ValueError:
                raise FormatError(f"bad literal {tok!r}", lineno) from None
    if not lits or lits[-1] != 0:
        raise FormatError("model is not 0-terminated")
    model = {v: False for v in range(1, n_vars + 1)}
    for lit in lits[:-1]:
        if lit == 0 or abs(lit) > n_vars:
            raise FormatError(f"literal {lit} out of range 1..{n_vars}")
        model[abs(lit)] = lit > 0
    return model


def verify_external(phi: CnfFormula, text: str):
    """Accept an external solver's answer only if its model satisfies ``phi``."""
    model = parse_model(text, phi.n_vars)
    if model is not None and not satisfies(phi, model):
        raise FormatError("external model does not satisfy the formula")
    return model
