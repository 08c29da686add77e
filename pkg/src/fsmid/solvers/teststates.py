"""Choosing the test-state set T for a characterization matrix.

A test set is adequate for ``(d, E)`` when the matrix ``build(d, T, E)`` is
hole-free, closed and consistent, and the extracted machine reproduces every
observation in ``d`` (not only the matrix cells).
"""

from __future__ import annotations

from .. import charmatrix as cm
from ..automata import length_lex
from ..errors import ClosureError, InadequacyError
from ..observations import ObservationSet


def adequate(d: ObservationSet, T, E) -> bool:
    T = tuple(T)
    if () not in T or () not in E:
        return False
    mx = cm.build(d, T, E)
    if not cm.status(mx).ok:
        return False
    return d.consistent_with(cm.extract(mx))


def _vector(d, p, E):
    entries = d.entries
    return tuple(entries.get(p + e, cm.HOLE) for e in E)


def greedy_test_states(d: ObservationSet, E) -> tuple:
    """Grow T from {EPS} until the matrix is closed.

    Each step takes the length-lex smallest prefix of the data whose row is not
    exactly tied to a row of T (a row with a hole never is) and adds it
    together with its prefixes.
    """
    E = tuple(E)
    prefixes = cm.prefix_closure(d.domain())
    T = [()]
    while True:
        mx = cm.build(d, T, E)
        st = cm.status(mx)
        if st.closed:
            break
        t_vectors = {v for v in (mx.row(t) for t in T) if cm.HOLE not in v}
        members = set(T)
        pick = None
        for p in prefixes:
            if p in members:
                continue
            vec = _vector(d, p, E)
            if cm.HOLE in vec or vec not in t_vectors:
                pick = p
                break
        if pick is None:
            raise InadequacyError(f"greedy selection cannot close the matrix (open row {st.witnesses['closed']!r})")
        T = list(cm.prefix_closure(T + [pick]))
    T = tuple(sorted(T, key=length_lex))
    if not adequate(d, T, E):
        raise InadequacyError("greedy test set is closed but not adequate for the data")
    return T


def _prefix_closed_subsets(nodes, size):
    """Prefix-closed subsets of ``nodes`` (length-lex sorted, starting with EPS) of exactly ``size``."""
    chosen = []
    members = set()

    def rec(i, remaining):
        if remaining == 0:
            yield tuple(chosen)
            return
        if len(nodes) - i < remaining:
            return
        w = nodes[i]
        if not w or w[:-1] in members:
            chosen.append(w)
            members.add(w)
            yield from rec(i + 1, remaining - 1)
            chosen.pop()
            members.discard(w)
        if w:
            yield from rec(i + 1, remaining)

    yield from rec(0, size)


def exact_test_states(d: ObservationSet, E, max_size=None) -> tuple:
    """Smallest adequate prefix-closed T within the prefixes of ``d``, by exhaustive search in size order."""
    E = tuple(E)
    nodes = list(cm.prefix_closure(d.domain())) or [()]
    limit = len(nodes) if max_size is None else min(max_size, len(nodes))
    for size in range(1, limit + 1):
        for T in _prefix_closed_subsets(nodes, size):
            if adequate(d, T, E):
                return T
    raise InadequacyError(f"no adequate test set of size <= {limit}")


def select_test_states(d: ObservationSet, E, method: str = "greedy", max_size=None) -> tuple:
    bad = cm.missing_suffix(E)
    if bad is not None:
        raise ClosureError("suffix", *bad)
    if method == "greedy":
        return greedy_test_states(d, E)
    if method == "exact":
        return exact_test_states(d, E, max_size)
    raise ValueError(f"unknown method {method!r}")
