"""Deterministic Moore machines over finite alphabets.

A machine has ``n`` states numbered ``0..n-1``, a transition table ``delta``
(``n`` rows of ``|input alphabet|`` state indices), one output symbol id per
state, and an initial state.  The behaviour of a machine maps every input
string, including the empty one, to the output of the state it reaches.

Input strings are plain tuples of symbol ids.  All values are immutable.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import FormatError, InputDomainError

Word = tuple  # tuple[int, ...]
EPS_TOKEN = "EPS"


def length_lex(word):
    """Sort key ordering strings by length, then lexicographically by symbol id."""
    return (len(word), word)


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of single-character symbol names; a symbol's id is its position."""

    symbols: tuple

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise InputDomainError("alphabet must be non-empty")
        for s in symbols:
            if not isinstance(s, str) or len(s) != 1 or not s.isprintable() or s.isspace():
                raise InputDomainError(f"alphabet symbol {s!r} is not a single printable character")
        if len(set(symbols)) != len(symbols):
            raise InputDomainError(f"alphabet symbols are not distinct: {''.join(symbols)!r}")

    @classmethod
    def of(cls, names: str | Sequence[str]) -> "Alphabet":
        return cls(tuple(names))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def index(self, name: str) -> int:
        try:
            return self.symbols.index(name)
        except ValueError:
            raise InputDomainError(f"symbol {name!r} is not in alphabet {''.join(self.symbols)!r}") from None

    def check(self, word) -> tuple:
        word = tuple(word)
        n = len(self.symbols)
        for i, s in enumerate(word):
            if not isinstance(s, int) or not 0 <= s < n:
                raise InputDomainError(f"symbol id {s!r} at position {i} is out of range for an alphabet of size {n}")
        return word

    def parse(self, text: str) -> tuple:
        """Read a string of symbol names; ``EPS`` stands for the empty string."""
        if text == EPS_TOKEN:
            return ()
        return tuple(self.index(c) for c in text)

    def format(self, word) -> str:
        if not word:
            return EPS_TOKEN
        return "".join(self.symbols[s] for s in word)


@dataclass(frozen=True)
class MooreMachine:
    input_alphabet: Alphabet
    output_alphabet: Alphabet
    delta: tuple
    outputs: tuple
    initial: int = 0

    def __post_init__(self):
        delta = tuple(tuple(row) for row in self.delta)
        outputs = tuple(self.outputs)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "outputs", outputs)
        n = len(delta)
        if n < 1:
            raise InputDomainError("a machine needs at least one state")
        if len(outputs) != n:
            raise InputDomainError(f"{len(outputs)} outputs given for {n} states")
        if not (isinstance(self.initial, int) and 0 <= self.initial < n):
            raise InputDomainError(f"initial state {self.initial!r} out of range")
        sigma = len(self.input_alphabet)
        omega = len(self.output_alphabet)
        for q, row in enumerate(delta):
            if len(row) != sigma:
                raise InputDomainError(f"delta row {q} has {len(row)} entries, expected {sigma}")
            for a, t in enumerate(row):
                if not (isinstance(t, int) and 0 <= t < n):
                    raise InputDomainError(f"delta[{q}][{a}] = {t!r} out of range")
        for q, o in enumerate(outputs):
            if not (isinstance(o, int) and 0 <= o < omega):
                raise InputDomainError(f"lambda[{q}] = {o!r} out of range")

    @property
    def n(self) -> int:
        return len(self.delta)

    def state_after(self, word, start=None) -> int:
        q = self.initial if start is None else start
        delta = self.delta
        sigma = len(self.input_alphabet)
        for s in word:
            if not (isinstance(s, int) and 0 <= s < sigma):
                raise InputDomainError(f"symbol id {s!r} is out of range for an alphabet of size {sigma}")
            q = delta[q][s]
        return q

    def to_dict(self) -> dict:
        return {
            "input_alphabet": list(self.input_alphabet.symbols),
            "output_alphabet": list(self.output_alphabet.symbols),
            "initial": self.initial,
            "delta": [list(row) for row in self.delta],
            "lambda": list(self.outputs),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"

    def encoding(self) -> bytes:
        """Byte string identifying this exact table; equal for equal machines."""
        return self.to_json().encode("utf-8")


def run(m: MooreMachine, w) -> int:
    """Output symbol id produced by ``m`` after reading ``w``."""
    return m.outputs[m.state_after(w)]


def all_strings(sigma: int, max_len: int, min_len: int = 0) -> Iterator[tuple]:
    """All strings over ``range(sigma)`` with length in ``[min_len, max_len]``, length-lex order."""
    for length in range(min_len, max_len + 1):
        yield from itertools.product(range(sigma), repeat=length)


def behaviors(m: MooreMachine, max_len: int):
    """The complete sample ``{(w, run(m, w)) : |w| <= max_len}`` as an ObservationSet."""
    from .observations import ObservationSet

    if max_len < 0:
        raise InputDomainError("length bound must be non-negative")
    entries = {}
    # breadth-first to avoid re-running prefixes
    layer = [((), m.initial)]
    for length in range(max_len + 1):
        nxt = []
        for w, q in layer:
            entries[w] = m.outputs[q]
            if length < max_len:
                row = m.delta[q]
                for a in range(len(m.input_alphabet)):
                    nxt.append((w + (a,), row[a]))
        layer = nxt
    return ObservationSet._trusted(entries, m.input_alphabet, m.output_alphabet)


def reachable_order(m: MooreMachine) -> list:
    """Reachable states in breadth-first discovery order (symbols in alphabet order)."""
    order = [m.initial]
    seen = {m.initial}
    i = 0
    while i < len(order):
        for t in m.delta[order[i]]:
            if t not in seen:
                seen.add(t)
                order.append(t)
        i += 1
    return order


def canonicalize(m: MooreMachine) -> MooreMachine:
    """Drop unreachable states and relabel the rest in BFS discovery order."""
    order = reachable_order(m)
    label = {q: i for i, q in enumerate(order)}
    delta = tuple(tuple(label[t] for t in m.delta[q]) for q in order)
    outputs = tuple(m.outputs[q] for q in order)
    return MooreMachine(m.input_alphabet, m.output_alphabet, delta, outputs, 0)


def minimize(m: MooreMachine) -> MooreMachine:
    """Minimum-state machine with the same behaviour, in canonical form.

    Moore-style partition refinement: start from the partition by output and
    split blocks by the blocks of their successors until stable.
    """
    m = canonicalize(m)
    block = list(m.outputs)
    n_blocks = len(set(block))
    while True:
        signature = {}
        new_block = []
        for q in range(m.n):
            key = (block[q],) + tuple(block[t] for t in m.delta[q])
            new_block.append(signature.setdefault(key, len(signature)))
        stable = len(signature) == n_blocks
        block, n_blocks = new_block, len(signature)
        if stable:
            break
    rep = {}
    for q in range(m.n):
        rep.setdefault(block[q], q)
    ids = sorted(rep)
    delta = tuple(tuple(block[t] for t in m.delta[rep[b]]) for b in ids)
    outputs = tuple(m.outputs[rep[b]] for b in ids)
    quotient = MooreMachine(m.input_alphabet, m.output_alphabet, delta, outputs, block[m.initial])
    return canonicalize(quotient)


def _check_same_alphabets(a: MooreMachine, b: MooreMachine):
    if a.input_alphabet != b.input_alphabet or a.output_alphabet != b.output_alphabet:
        raise InputDomainError("machines are over different alphabets")


def find_witness(a: MooreMachine, b: MooreMachine):
    """Shortest string on which ``a`` and ``b`` disagree, or None if they are equivalent.

    Breadth-first traversal of the product; any witness has length below ``a.n * b.n``.
    """
    _check_same_alphabets(a, b)
    start = (a.initial, b.initial)
    parent = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        p, q = pair
        if a.outputs[p] != b.outputs[q]:
            word = []
            while parent[pair] is not None:
                pair, sym = parent[pair]
                word.append(sym)
            return tuple(reversed(word))
        for s in range(len(a.input_alphabet)):
            nxt = (a.delta[p][s], b.delta[q][s])
            if nxt not in parent:
                parent[nxt] = (pair, s)
                queue.append(nxt)
    return None


def equivalent(a: MooreMachine, b: MooreMachine) -> bool:
    return find_witness(a, b) is None


def machine_from_dict(obj) -> MooreMachine:
    if not isinstance(obj, dict):
        raise FormatError("machine must be a JSON object")
    for key in ("input_alphabet", "output_alphabet", "initial", "delta", "lambda"):
        if key not in obj:
            raise FormatError(f"missing key {key!r}")
    try:
        sigma = Alphabet(tuple(obj["input_alphabet"]))
        omega = Alphabet(tuple(obj["output_alphabet"]))
    except (InputDomainError, TypeError) as exc:
        raise FormatError(f"bad alphabet: {exc}") from None
    delta, outputs, initial = obj["delta"], obj["lambda"], obj["initial"]
    if not isinstance(delta, list) or not delta:
        raise FormatError("delta must be a non-empty array")
    n = len(delta)
    for q, row in enumerate(delta):
        if not isinstance(row, list) or len(row) != len(sigma):
            raise FormatError(f"delta[{q}] must have {len(sigma)} entries")
        for s, t in enumerate(row):
            if type(t) is not int or not 0 <= t < n:
                raise FormatError(f"delta[{q}][{s}] = {t!r} out of range 0..{n - 1}")
    if not isinstance(outputs, list) or len(outputs) != n:
        raise FormatError(f"lambda must have {n} entries")
    for q, o in enumerate(outputs):
        if type(o) is not int or not 0 <= o < len(omega):
            raise FormatError(f"lambda[{q}] = {o!r} out of range 0..{len(omega) - 1}")
    if type(initial) is not int or not 0 <= initial < n:
        raise FormatError(f"initial = {initial!r} out of range 0..{n - 1}")
    return MooreMachine(sigma, omega, delta, outputs, initial)


def machine_from_json(text: str) -> MooreMachine:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    return machine_from_dict(obj)


def to_dot(m: MooreMachine) -> str:
    """Graphviz description: nodes ``q<i>/<output>``, one edge per (state, symbol)."""
    lines = ["digraph moore {", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in range(m.n):
        label = f"q{q}/{m.output_alphabet.symbols[m.outputs[q]]}"
        lines.append(f'  q{q} [shape=circle, label="{_dot_escape(label)}"];')
    lines.append(f"  __start -> q{m.initial};")
    for q in range(m.n):
        for s, t in enumerate(m.delta[q]):
            sym = _dot_escape(m.input_alphabet.symbols[s])
            lines.append(f'  q{q} -> q{t} [label="{sym}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_escape(text):
    return text.replace("\\", "\\\\").replace('"', '\\"')
