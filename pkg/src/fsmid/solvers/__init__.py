"""Transition assignment in both directions, plus test-state selection."""

from .encoding import VarMap, decode, encode
from .reduction import REDUCTION_K, assignment_from_machine, reduce_cnf, reduction_bound
from .search import (
    IdentificationInstance,
    brute_force_exists,
    count_consistent,
    exists,
    min_k,
    sat_exists,
)
from .teststates import adequate, exact_test_states, greedy_test_states, select_test_states

__all__ = [
    "REDUCTION_K", "IdentificationInstance", "VarMap", "adequate", "assignment_from_machine",
    "brute_force_exists", "count_consistent", "decode", "encode", "exact_test_states", "exists",
    "greedy_test_states", "min_k", "reduce_cnf", "reduction_bound", "sat_exists", "select_test_states",
]
