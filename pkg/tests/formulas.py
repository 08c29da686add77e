"""CNF corpora shared by the SAT, reduction and acceptance tests.

Template family (exhaustive, up to 3 variables): a clause is any non-empty
choice of polarity-or-absent per variable (3^n - 1 clauses, none
tautological).  For 1 and 2 variables every non-empty set of clauses is
included; for 3 variables every set of 1, 2 or 3 clauses.
"""

import itertools
import random

from fsmid.sat import CnfFormula


def clause_templates(n):
    out = []
    for signs in itertools.product((0, 1, -1), repeat=n):
        clause = tuple(s * (i + 1) for i, s in enumerate(signs) if s)
        if clause:
            out.append(clause)
    return out


def template_family(max_vars=3):
    for n in range(1, max_vars + 1):
        clauses = clause_templates(n)
        sizes = range(1, len(clauses) + 1) if n <= 2 else range(1, 4)
        for size in sizes:
            for combo in itertools.combinations(clauses, size):
                yield CnfFormula(n, combo)


def random_formulas(count, max_vars, max_clauses, seed, max_width=3):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_vars)
        clauses = []
        for _ in range(rng.randint(1, max_clauses)):
            width = rng.randint(1, min(max_width, n))
            vars_ = rng.sample(range(1, n + 1), width)
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vars_))
        yield CnfFormula(n, clauses)


def oracle_sat(phi):
    """Truth-table satisfiability, written independently of the package."""
    for bits in itertools.product((False, True), repeat=phi.n_vars):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in phi.clauses):
            return True
    return False


def oracle_satisfies(phi, model):
    return all(any(model[abs(l)] is (l > 0) for l in c) for c in phi.clauses)
