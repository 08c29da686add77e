import random

import pytest
from hypothesis import settings, strategies as st

from fsmid.automata import Alphabet, MooreMachine
from fsmid.observations import ObservationSet, default_input_alphabet, default_output_alphabet

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

MUSIC_BOX_ENTRIES = {
    "ax": "1", "ay": "0", "az": "1",
    "aax": "1", "aay": "0", "aaz": "1",
    "bx": "0", "by": "1", "bz": "0",
}


@pytest.fixture
def music_box():
    sigma, omega = Alphabet.of("abxyz"), Alphabet.of("01")
    return ObservationSet(sigma, omega, {sigma.parse(w): omega.index(o) for w, o in MUSIC_BOX_ENTRIES.items()})


@st.composite
def machines(draw, max_states=4, max_sigma=2, max_omega=2):
    n = draw(st.integers(1, max_states))
    s = draw(st.integers(1, max_sigma))
    o = draw(st.integers(1, max_omega))
    delta = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=s, max_size=s), min_size=n, max_size=n))
    lam = draw(st.lists(st.integers(0, o - 1), min_size=n, max_size=n))
    initial = draw(st.integers(0, n - 1))
    return MooreMachine(default_input_alphabet(s), default_output_alphabet(o), delta, lam, initial)


def words(sigma, max_len=4):
    return st.lists(st.integers(0, sigma - 1), max_size=max_len).map(tuple)


def permuted(m: MooreMachine, rng: random.Random) -> MooreMachine:
    perm = list(range(m.n))
    rng.shuffle(perm)
    inv = {p: q for q, p in enumerate(perm)}
    delta = [[perm[t] for t in m.delta[inv[i]]] for i in range(m.n)]
    outputs = [m.outputs[inv[i]] for i in range(m.n)]
    return MooreMachine(m.input_alphabet, m.output_alphabet, delta, outputs, perm[m.initial])


# -- acceptance report --------------------------------------------------------

_ACCEPTANCE = []


def record(criterion: str, ok: bool, detail: str = ""):
    _ACCEPTANCE.append((criterion, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in _ACCEPTANCE:
        line = f"{'PASS' if ok else 'FAIL'}  {criterion}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
