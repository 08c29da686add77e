"""Random identification instances and an enumeration oracle for the solver tests."""

import itertools
import random

from fsmid.automata import MooreMachine, all_strings, canonicalize
from fsmid.observations import (
    gen_random_target,
    sample_crash_retrieval,
    sample_flight_show,
    sample_observational,
)


def random_data(rng: random.Random, max_states=4, max_sigma=2, max_omega=3, max_size=12):
    """Data drawn by one of the three samplers from a random target, cut to ``max_size`` entries."""
    m = gen_random_target(rng.randint(1, max_states), rng.randint(1, max_sigma),
                          rng.randint(1, max_omega), rng.getrandbits(64))
    sigma = len(m.input_alphabet)
    mode = rng.choice(("observational", "crash", "flightshow"))
    if mode == "observational":
        d = sample_observational(m, rng.randint(1, 5), rng.randint(0, 6), rng.choice((0.0, 0.3, 0.6)),
                                 rng.getrandbits(64))
    elif mode == "crash":
        d = sample_crash_retrieval(m, rng.randint(0, 2 if sigma > 1 else 8))
    else:
        traces = [tuple(rng.randrange(sigma) for _ in range(rng.randint(0, 5))) for _ in range(rng.randint(1, 4))]
        d = sample_flight_show(m, traces, rng.randint(1, 3))
    dom = d.domain()
    if len(dom) > max_size:
        d = d.restrict(rng.sample(dom, max_size))
    return m, d


def all_machines(input_alphabet, output_alphabet, n):
    """Every machine with ``n`` states and initial state 0."""
    s, o = len(input_alphabet), len(output_alphabet)
    for flat in itertools.product(range(n), repeat=n * s):
        delta = [flat[q * s:(q + 1) * s] for q in range(n)]
        for lam in itertools.product(range(o), repeat=n):
            yield MooreMachine(input_alphabet, output_alphabet, delta, lam, 0)


def replays(m, d):
    return all(m.outputs[m.state_after(w)] == o for w, o in d.items())


def oracle_exists(d, k):
    return any(replays(m, d) for m in all_machines(d.input_alphabet, d.output_alphabet, k))


def oracle_count(d, k):
    """Isomorphism classes of reachable machines with at most ``k`` states that replay ``d``."""
    seen = set()
    for n in range(1, k + 1):
        for m in all_machines(d.input_alphabet, d.output_alphabet, n):
            if replays(m, d):
                seen.add(canonicalize(m).encoding())
    return len(seen)
