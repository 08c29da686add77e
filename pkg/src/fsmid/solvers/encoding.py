"""SAT encoding of "is there a k-state machine consistent with d".

Variables, numbered in this order so that the solver branches on
transitions first:

* ``trans(q, a, p)`` -- delta(q, a) = p
* ``out(q, o)``      -- lambda(q) = o
* ``reach(n, q)``    -- prefix-tree node n ends in state q

Clauses: the root is in state 0; every node, every (state, symbol) pair and
every state has exactly one reach / trans / out atom true; reach is pushed
along tree edges by trans; an observed node forces the output of its state.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..automata import Alphabet, MooreMachine
from ..errors import DecodeError
from ..observations import ObservationSet
from ..prefixtree import PrefixTree
from ..sat import CnfFormula


@dataclass(frozen=True)
class VarMap:
    k: int
    n_nodes: int
    input_alphabet: Alphabet
    output_alphabet: Alphabet

    @property
    def sigma(self):
        return len(self.input_alphabet)

    @property
    def omega(self):
        return len(self.output_alphabet)

    @property
    def n_trans(self):
        return self.k * self.sigma * self.k

    @property
    def n_out(self):
        return self.k * self.omega

    @property
    def n_vars(self):
        return self.n_trans + self.n_out + self.n_nodes * self.k

    def trans(self, q, a, p):
        return 1 + (q * self.sigma + a) * self.k + p

    def out(self, q, o):
        return 1 + self.n_trans + q * self.omega + o

    def reach(self, node, q):
        return 1 + self.n_trans + self.n_out + node * self.k + q

    def atom(self, var):
        """Inverse of the numbering: ``("trans", q, a, p)``, ``("out", q, o)`` or ``("reach", node, q)``."""
        if not 1 <= var <= self.n_vars:
            raise ValueError(f"variable {var} out of range")
        i = var - 1
        if i < self.n_trans:
            qa, p = divmod(i, self.k)
            q, a = divmod(qa, self.sigma)
            return ("trans", q, a, p)
        i -= self.n_trans
        if i < self.n_out:
            return ("out",) + divmod(i, self.omega)
        i -= self.n_out
        return ("reach",) + divmod(i, self.k)


def _exactly_one(lits, clauses):
    clauses.append(tuple(lits))
    for i in range(len(lits)):
        for j in range(i + 1, len(lits)):
            clauses.append((-lits[i], -lits[j]))


def encode(d: ObservationSet, k: int):
    tree = PrefixTree(d)
    vm = VarMap(k, len(tree), d.input_alphabet, d.output_alphabet)
    states = range(k)
    clauses = [(vm.reach(0, 0),)]
    for node in range(len(tree)):
        _exactly_one([vm.reach(node, q) for q in states], clauses)
    for q in states:
        for a in range(vm.sigma):
            _exactly_one([vm.trans(q, a, p) for p in states], clauses)
    for q in states:
        _exactly_one([vm.out(q, o) for o in range(vm.omega)], clauses)
    for parent, a, node in tree.edges():
        for q in states:
            for p in states:
                clauses.append((-vm.reach(parent, q), -vm.trans(q, a, p), vm.reach(node, p)))
    for node, o in enumerate(tree.obs):
        if o >= 0:
            for q in states:
                clauses.append((-vm.reach(node, q), vm.out(q, o)))
    return CnfFormula(vm.n_vars, tuple(clauses)), vm


def decode(model, vm: VarMap) -> MooreMachine:
    """Read delta and lambda off a model.  Entries with no true atom default to state 0 / output 0."""
    delta = []
    for q in range(vm.k):
        row = []
        for a in range(vm.sigma):
            hits = [p for p in range(vm.k) if model.get(vm.trans(q, a, p))]
            if len(hits) > 1:
                raise DecodeError(f"delta({q}, {a}) has {len(hits)} true atoms")
            row.append(hits[0] if hits else 0)
        delta.append(row)
    outputs = []
    for q in range(vm.k):
        hits = [o for o in range(vm.omega) if model.get(vm.out(q, o))]
        if len(hits) > 1:
            raise DecodeError(f"lambda({q}) has {len(hits)} true atoms")
        outputs.append(hits[0] if hits else 0)
    return MooreMachine(vm.input_alphabet, vm.output_alphabet, delta, outputs, 0)
