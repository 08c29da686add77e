"""Observation sets and the samplers that draw them from a hidden machine.

An :class:`ObservationSet` is a finite partial function from input strings to
output ids.  Recording the same pair twice is a no-op; recording a different
output for a known string raises :class:`ObservationConflict`.

Random generation uses :class:`random.Random` seeded with the caller's seed:

* ``gen_random_target`` draws ``delta[q][a] = rng.randrange(n)`` in row-major
  order, then ``lambda[q] = rng.randrange(omega)`` for ``q = 0..n-1``.
* ``sample_observational`` performs each walk by drawing its length with
  ``rng.randint(0, max_len)``, then each symbol with ``rng.randrange(sigma)``,
  then one ``rng.random()`` per prefix (shortest first); the prefix is kept
  when that draw is ``>= dropout``.  The stream does not depend on
  ``dropout``, so for a fixed seed a higher dropout yields a subset.
"""

from __future__ import annotations

import random
import string
from types import MappingProxyType
from typing import Iterable

from .automata import EPS_TOKEN, Alphabet, MooreMachine, behaviors, length_lex, run
from .errors import FormatError, InputDomainError, ObservationConflict

_INPUT_NAMES = string.ascii_lowercase + string.ascii_uppercase
_OUTPUT_NAMES = string.digits + string.ascii_uppercase


def default_input_alphabet(size: int) -> Alphabet:
    if not 1 <= size <= len(_INPUT_NAMES):
        raise InputDomainError(f"input alphabet size {size} not supported")
    return Alphabet(tuple(_INPUT_NAMES[:size]))


def default_output_alphabet(size: int) -> Alphabet:
    if not 1 <= size <= len(_OUTPUT_NAMES):
        raise InputDomainError(f"output alphabet size {size} not supported")
    return Alphabet(tuple(_OUTPUT_NAMES[:size]))


class ObservationSet:
    """Immutable map from input strings (tuples of symbol ids) to output ids."""

    __slots__ = ("_entries", "input_alphabet", "output_alphabet")

    def __init__(self, input_alphabet: Alphabet, output_alphabet: Alphabet, entries=()):
        self.input_alphabet = input_alphabet
        self.output_alphabet = output_alphabet
        self._entries = {}
        items = entries.items() if hasattr(entries, "items") else entries
        for w, o in items:
            self._add(w, o)

    @classmethod
    def _trusted(cls, entries: dict, input_alphabet, output_alphabet):
        obj = cls.__new__(cls)
        obj.input_alphabet = input_alphabet
        obj.output_alphabet = output_alphabet
        obj._entries = entries
        return obj

    def _add(self, w, o):
        w = self.input_alphabet.check(w)
        if not (isinstance(o, int) and 0 <= o < len(self.output_alphabet)):
            raise InputDomainError(f"output id {o!r} out of range")
        old = self._entries.get(w)
        if old is None:
            self._entries[w] = o
        elif old != o:
            raise ObservationConflict(w, old, o)

    def insert(self, w, o) -> "ObservationSet":
        """Return the set with ``(w, o)`` added; ``self`` if the pair is already present."""
        w = self.input_alphabet.check(w)
        if self._entries.get(w) == o:
            return self
        new = ObservationSet._trusted(dict(self._entries), self.input_alphabet, self.output_alphabet)
        new._add(w, o)
        return new

    @property
    def entries(self):
        return MappingProxyType(self._entries)

    def __len__(self):
        return len(self._entries)

    def __contains__(self, w):
        return tuple(w) in self._entries

    def __iter__(self):
        return iter(self.domain())

    def get(self, w, default=None):
        return self._entries.get(tuple(w), default)

    def __getitem__(self, w):
        return self._entries[tuple(w)]

    def domain(self) -> list:
        return sorted(self._entries, key=length_lex)

    def items(self) -> list:
        return [(w, self._entries[w]) for w in self.domain()]

    def issubset(self, other: "ObservationSet") -> bool:
        return all(other._entries.get(w) == o for w, o in self._entries.items())

    def restrict(self, words: Iterable) -> "ObservationSet":
        keep = {tuple(w) for w in words}
        entries = {w: o for w, o in self._entries.items() if w in keep}
        return ObservationSet._trusted(entries, self.input_alphabet, self.output_alphabet)

    def __eq__(self, other):
        if not isinstance(other, ObservationSet):
            return NotImplemented
        return (
            self.input_alphabet == other.input_alphabet
            and self.output_alphabet == other.output_alphabet
            and self._entries == other._entries
        )

    def __hash__(self):
        return hash((self.input_alphabet, self.output_alphabet, frozenset(self._entries.items())))

    def __repr__(self):
        shown = ", ".join(
            f"{self.input_alphabet.format(w)}->{self.output_alphabet.symbols[o]}" for w, o in self.items()[:8]
        )
        more = ", ..." if len(self) > 8 else ""
        return f"ObservationSet({{{shown}{more}}})"

    def consistent_with(self, m: MooreMachine) -> bool:
        return all(run(m, w) == o for w, o in self._entries.items())

    def to_tsv(self, header: bool = True) -> str:
        return format_tsv(self, header=header)


def insert(d: ObservationSet, w, o) -> ObservationSet:
    return d.insert(w, o)


def from_target(m: MooreMachine, ws: Iterable) -> ObservationSet:
    entries = {}
    for w in ws:
        w = m.input_alphabet.check(w)
        entries[w] = run(m, w)
    return ObservationSet._trusted(entries, m.input_alphabet, m.output_alphabet)


def gen_random_target(n: int, sigma: int, omega: int, seed: int) -> MooreMachine:
    if n < 1 or sigma < 1 or omega < 1:
        raise InputDomainError("n, sigma and omega must all be at least 1")
    rng = random.Random(seed)
    delta = tuple(tuple(rng.randrange(n) for _ in range(sigma)) for _ in range(n))
    outputs = tuple(rng.randrange(omega) for _ in range(n))
    return MooreMachine(default_input_alphabet(sigma), default_output_alphabet(omega), delta, outputs, 0)


def sample_observational(m: MooreMachine, walks: int, max_len: int, dropout: float, seed: int) -> ObservationSet:
    """Fragmentary operational data: prefixes of random walks, each kept with probability ``1 - dropout``."""
    if not 0.0 <= dropout <= 1.0:
        raise InputDomainError(f"dropout {dropout!r} not in [0, 1]")
    if walks < 0 or max_len < 0:
        raise InputDomainError("walks and max_len must be non-negative")
    rng = random.Random(seed)
    sigma = len(m.input_alphabet)
    entries = {}
    for _ in range(walks):
        length = rng.randint(0, max_len)
        walk = [rng.randrange(sigma) for _ in range(length)]
        q = m.initial
        for i in range(length + 1):
            if i:
                q = m.delta[q][walk[i - 1]]
            if rng.random() >= dropout:
                entries[tuple(walk[:i])] = m.outputs[q]
    return ObservationSet._trusted(entries, m.input_alphabet, m.output_alphabet)


def sample_crash_retrieval(m: MooreMachine, depth: int) -> ObservationSet:
    """Complete but shallow snapshot: every string up to ``depth``."""
    return behaviors(m, depth)


def sample_flight_show(m: MooreMachine, ws: Iterable, repetitions: int) -> ObservationSet:
    """Replay the same traces ``repetitions`` times; repeats are absorbed by idempotent insertion."""
    if repetitions < 1:
        raise InputDomainError("repetitions must be at least 1")
    ws = [m.input_alphabet.check(w) for w in ws]
    d = ObservationSet(m.input_alphabet, m.output_alphabet)
    for _ in range(repetitions):
        for w in ws:
            d = d.insert(w, run(m, w))
    return d


# -- text formats -----------------------------------------------------------

def format_tsv(d: ObservationSet, header: bool = True) -> str:
    lines = []
    if header:
        lines.append("# input: " + "".join(d.input_alphabet.symbols))
        lines.append("# output: " + "".join(d.output_alphabet.symbols))
    for w, o in d.items():
        text = d.input_alphabet.format(w)
        if w and text == EPS_TOKEN:
            raise FormatError(f"string {text!r} collides with the empty-string token")
        lines.append(f"{text}\t{d.output_alphabet.symbols[o]}")
    return "\n".join(lines) + "\n" if lines else ""


def _directive(line, key):
    body = line[1:].strip()
    if body.startswith(key + ":"):
        return body[len(key) + 1:].strip()
    return None


def parse_tsv(text: str, input_alphabet: Alphabet | None = None, output_alphabet: Alphabet | None = None) -> ObservationSet:
    """Read the observation format: ``<string>\\t<output-char>`` per line, ``EPS`` for the empty string.

    ``# input: ...`` and ``# output: ...`` comment lines declare the alphabets;
    without them (and without explicit arguments) the alphabets are the sorted
    characters that occur in the file.
    """
    raw = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if line.startswith("#"):
            for key in ("input", "output"):
                value = _directive(line, key)
                if value is not None:
                    try:
                        alpha = Alphabet(tuple(value))
                    except InputDomainError as exc:
                        raise FormatError(f"bad {key} alphabet: {exc}", lineno) from None
                    if key == "input" and input_alphabet is None:
                        input_alphabet = alpha
                    elif key == "output" and output_alphabet is None:
                        output_alphabet = alpha
            continue
        parts = line.split("\t")
        if len(parts) != 2 or len(parts[1]) != 1:
            raise FormatError("expected '<string>\\t<output-char>'", lineno)
        raw.append((lineno, parts[0], parts[1]))
    if input_alphabet is None:
        chars = sorted({c for _, w, _ in raw if w != EPS_TOKEN for c in w})
        input_alphabet = Alphabet(tuple(chars) or ("a",))
    if output_alphabet is None:
        chars = sorted({o for _, _, o in raw})
        output_alphabet = Alphabet(tuple(chars) or ("0",))
    d = ObservationSet(input_alphabet, output_alphabet)
    entries = d._entries
    for lineno, w_text, o_text in raw:
        try:
            w = input_alphabet.parse(w_text)
            o = output_alphabet.index(o_text)
        except InputDomainError as exc:
            raise FormatError(str(exc), lineno) from None
        old = entries.get(w)
        if old is not None and old != o:
            raise ObservationConflict(
                w, old, o,
                f"line {lineno}: conflicting outputs {output_alphabet.symbols[old]!r} and {o_text!r} for {w_text!r}",
            )
        entries[w] = o
    return d


def format_words(words: Iterable, alphabet: Alphabet) -> str:
    return "".join(alphabet.format(w) + "\n" for w in words)


def parse_words(text: str, alphabet: Alphabet) -> list:
    """One string per line (``EPS`` = empty), ``#`` comments; returns words in file order without repeats."""
    out = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            w = alphabet.parse(line)
        except InputDomainError as exc:
            raise FormatError(str(exc), lineno) from None
        if w not in seen:
            seen.add(w)
            out.append(w)
    return out
