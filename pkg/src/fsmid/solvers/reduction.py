"""Reduction from CNF satisfiability to transition assignment.

``reduce_cnf`` builds an observation set ``d`` and budget ``k = 4`` such that
a 4-state machine consistent with ``d`` exists exactly when the formula is
satisfiable.

Input symbols are ``+`` and ``-`` plus one symbol ``p_i`` per variable;
outputs are ``a``, ``m`` and ``s``.  The intended machine has states

* ``A`` (initial, output ``a``): no literal of the current clause is true yet,
* ``S`` (output ``s``): the clause is satisfied; absorbing on every symbol,
* ``T``, ``F`` (output ``m``): "the last variable read is true / false".

``A --p_i--> T or F`` is the only free choice and encodes the value of
variable ``i``.  From ``T``, ``+`` leads to ``S`` and ``-`` back to ``A``;
from ``F`` it is the other way round.  A literal is thus the two-symbol
string ``p_i +`` or ``p_i -``, and a clause is the concatenation of its
literals, observed with output ``s``.

Observations (``n`` variables, ``m`` clauses)::

    EPS -> a
    +  -> m    ++ -> s    +- -> a          (pins T and S)
    -  -> m    -+ -> a    -- -> s          (pins F)
    ++x -> s   for every symbol x          (S is absorbing)
    +p_i -> a, -p_i -> a                   (pins the unused T/F rows)
    p_i -> m                               (A --p_i--> T or F)
    clause string -> s                     (one per clause)

Any consistent 4-state machine has four behaviourally distinct states
(outputs a, s and two m-states told apart by ``+``), so it is the intended
machine up to labelling, and ``delta(A, p_i) = T`` reads off a satisfying
assignment.  Size: at most ``4n + m + 9`` observed strings, each no longer
than ``max(3, 4n)`` (literals are deduplicated within a clause).
"""

from __future__ import annotations

import string

from ..automata import Alphabet
from ..observations import ObservationSet
from ..sat import CnfFormula
from .search import IdentificationInstance

REDUCTION_K = 4
OUTPUTS = Alphabet(("a", "m", "s"))
_A, _M, _S = 0, 1, 2
_POS, _NEG = 0, 1


def _variable_names(n):
    pool = [c for c in string.ascii_lowercase + string.ascii_uppercase + string.digits]
    code = 0xC0
    while len(pool) < n:
        c = chr(code)
        code += 1
        if c.isprintable() and not c.isspace():
            pool.append(c)
    return pool[:n]


def reduction_alphabet(n_vars: int) -> Alphabet:
    return Alphabet(("+", "-") + tuple(_variable_names(n_vars)))


def reduction_bound(n_vars: int, n_clauses: int):
    """``(max observed strings, max string length)`` guaranteed by ``reduce_cnf``."""
    return 4 * n_vars + n_clauses + 9, max(3, 4 * n_vars)


def clause_word(clause):
    word = []
    for lit in dict.fromkeys(clause):
        word.append(1 + abs(lit))
        word.append(_POS if lit > 0 else _NEG)
    return tuple(word)


def reduce_cnf(phi: CnfFormula) -> IdentificationInstance:
    sigma = reduction_alphabet(phi.n_vars)
    variables = [2 + i for i in range(phi.n_vars)]
    entries = {
        (): _A,
        (_POS,): _M, (_POS, _POS): _S, (_POS, _NEG): _A,
        (_NEG,): _M, (_NEG, _POS): _A, (_NEG, _NEG): _S,
    }
    for x in range(len(sigma)):
        entries[(_POS, _POS, x)] = _S
    for v in variables:
        entries[(_POS, v)] = _A
        entries[(_NEG, v)] = _A
        entries[(v,)] = _M
    for clause in phi.clauses:
        entries[clause_word(clause)] = _S
    return IdentificationInstance(ObservationSet(sigma, OUTPUTS, entries), REDUCTION_K)


def assignment_from_machine(m, n_vars: int) -> dict:
    """Read the variable values off a machine consistent with a reduced instance."""
    true_state = m.delta[m.initial][_POS]
    return {i + 1: m.delta[m.initial][2 + i] == true_state for i in range(n_vars)}
