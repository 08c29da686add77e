"""Finding and counting k-state machines consistent with an observation set.

Two independent routes decide whether a consistent ``k``-state machine
exists: exhaustive enumeration (``brute_force_exists``, run by the search
kernels) and the SAT encoding (``sat_exists``).  All enumeration fixes the
initial state to 0; consistency does not depend on state labels.
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import kernels
from ..automata import MooreMachine
from ..errors import InputDomainError
from ..observations import ObservationSet
from ..prefixtree import PrefixTree
from ..sat import solve
from .encoding import decode, encode


@dataclass(frozen=True)
class IdentificationInstance:
    d: ObservationSet
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise InputDomainError("state budget k must be at least 1")


def _check_k(k):
    if not isinstance(k, int) or k < 1:
        raise InputDomainError(f"state budget must be a positive integer, got {k!r}")


def _table_to_machine(d, delta_flat, state_out, k):
    sigma = len(d.input_alphabet)
    delta = [delta_flat[q * sigma:(q + 1) * sigma] for q in range(k)]
    outputs = [o if o >= 0 else 0 for o in state_out]
    return MooreMachine(d.input_alphabet, d.output_alphabet, delta, outputs, 0)


def brute_force_exists(d: ObservationSet, k: int, backend=None):
    """First consistent machine with exactly ``k`` states, or None.

    Tables are enumerated row-major in lexicographic order, initial state 0,
    restricted to canonical labellings: reachable states numbered in
    breadth-first discovery order, unreachable states last with all-zero
    rows.  Every machine has such a relabelling, so the answer to "does one
    exist" is unaffected.  The kernel cuts a branch as soon as its fixed part
    contradicts ``d``.  States no observation reaches get output 0.
    """
    _check_k(k)
    tree = PrefixTree(d)
    impl = kernels.get(backend)
    delta, state_out, _ = impl.search_first(tree.child, tree.obs, tree.sigma, k)
    if delta is None:
        return None
    return _table_to_machine(d, delta, state_out, k)


def sat_exists(d: ObservationSet, k: int):
    _check_k(k)
    phi, varmap = encode(d, k)
    model = solve(phi)
    if model is None:
        return None
    m = decode(model, varmap)
    if not d.consistent_with(m):
        raise AssertionError("decoded machine does not replay the observations")
    return m


_METHODS = {"brute": brute_force_exists, "sat": sat_exists}


def exists(d, k, method="brute"):
    try:
        fn = _METHODS[method]
    except KeyError:
        raise InputDomainError(f"unknown method {method!r}") from None
    return fn(d, k)


def min_k(d: ObservationSet, k_max: int, method: str = "brute"):
    """``(k_min, witness)`` for the smallest consistent state count up to ``k_max``; None if exhausted."""
    _check_k(k_max)
    for k in range(1, k_max + 1):
        m = exists(d, k, method)
        if m is not None:
            return k, m
    return None


def count_consistent(d: ObservationSet, k: int, backend=None) -> int:
    """Number of isomorphism classes of reachable machines with at most ``k`` states consistent with ``d``.

    Each class is counted once through its canonical form (breadth-first
    labelling, every state reachable).
    """
    _check_k(k)
    tree = PrefixTree(d)
    impl = kernels.get(backend)
    total = 0
    for j in range(1, k + 1):
        by_free, _ = impl.count_canonical(tree.child, tree.obs, tree.sigma, j)
        total += sum(c * tree.omega ** f for f, c in enumerate(by_free))
    return total
