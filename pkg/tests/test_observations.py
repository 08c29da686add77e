import pytest
from hypothesis import given, strategies as st

from conftest import machines, words
from fsmid.automata import Alphabet, MooreMachine, behaviors, run
from fsmid.errors import FormatError, InputDomainError, ObservationConflict
from fsmid.observations import (
    ObservationSet,
    format_tsv,
    format_words,
    from_target,
    gen_random_target,
    insert,
    parse_tsv,
    parse_words,
    sample_crash_retrieval,
    sample_flight_show,
    sample_observational,
)
from fsmid.solvers import min_k

AB = Alphabet.of("ab")
BIN = Alphabet.of("01")


def empty():
    return ObservationSet(AB, BIN)


class TestInsert:
    def test_idempotent(self):
        d = insert(empty(), (0,), 1)
        assert len(d) == 1
        assert len(insert(d, (0,), 1)) == 1

    def test_conflict_carries_details(self):
        d = insert(empty(), (0, 1), 1)
        with pytest.raises(ObservationConflict) as info:
            insert(d, (0, 1), 0)
        assert (info.value.word, info.value.existing, info.value.new) == ((0, 1), 1, 0)

    def test_value_semantics(self):
        d = empty()
        d2 = d.insert((), 0)
        assert len(d) == 0 and len(d2) == 1

    def test_validates_alphabets(self):
        with pytest.raises(InputDomainError):
            empty().insert((2,), 0)
        with pytest.raises(InputDomainError):
            empty().insert((0,), 2)


class TestFromTarget:
    m = MooreMachine(AB, BIN, [[1, 0], [0, 1]], [1, 0])

    def test_empty_and_eps(self):
        assert len(from_target(self.m, [])) == 0
        assert from_target(self.m, [()]).items() == [((), 1)]

    @given(st.lists(words(2, 5), max_size=12))
    def test_consistent(self, ws):
        d = from_target(self.m, ws)
        assert d.consistent_with(self.m)
        assert set(d.domain()) == set(ws)


class TestGenerator:
    def test_deterministic(self):
        assert gen_random_target(4, 2, 3, 99) == gen_random_target(4, 2, 3, 99)

    def test_valid_for_many_seeds(self):
        for seed in range(1000):
            m = gen_random_target(1 + seed % 6, 1 + seed % 3, 1 + seed % 4, seed)
            assert m.n == 1 + seed % 6

    def test_neighbouring_seeds_differ(self):
        same = sum(gen_random_target(4, 2, 2, s) == gen_random_target(4, 2, 2, s + 1) for s in range(1000))
        assert same <= 10

    def test_documented_draw_order(self):
        import random
        rng = random.Random(5)
        delta = [[rng.randrange(3) for _ in range(2)] for _ in range(3)]
        lam = [rng.randrange(2) for _ in range(3)]
        m = gen_random_target(3, 2, 2, 5)
        assert [list(r) for r in m.delta] == delta and list(m.outputs) == lam

    def test_bad_sizes(self):
        with pytest.raises(InputDomainError):
            gen_random_target(0, 2, 2, 1)


class TestObservational:
    m = gen_random_target(4, 2, 2, 3)

    def test_full_dropout_is_empty(self):
        assert len(sample_observational(self.m, 20, 6, 1.0, 1)) == 0

    def test_single_walk_prefixes(self):
        d = sample_observational(self.m, 1, 6, 0.0, 7)
        dom = d.domain()
        longest = dom[-1]
        assert dom == [longest[:i] for i in range(len(longest) + 1)]

    @given(st.integers(0, 10), st.integers(0, 6), st.floats(0, 1), st.integers(0, 2**64 - 1))
    def test_noise_free_and_deterministic(self, walks, L, p, seed):
        d = sample_observational(self.m, walks, L, p, seed)
        assert d.consistent_with(self.m)
        assert d == sample_observational(self.m, walks, L, p, seed)
        assert all(len(w) <= L for w in d)

    @given(st.floats(0, 1), st.floats(0, 1), st.integers(0, 1000))
    def test_dropout_nests(self, p, q, seed):
        lo, hi = sorted((p, q))
        assert sample_observational(self.m, 8, 5, hi, seed).issubset(sample_observational(self.m, 8, 5, lo, seed))

    def test_bad_dropout(self):
        with pytest.raises(InputDomainError):
            sample_observational(self.m, 1, 1, 1.5, 0)


class TestCrash:
    m = gen_random_target(3, 2, 2, 11)

    def test_depths(self):
        assert sample_crash_retrieval(self.m, 0).items() == [((), run(self.m, ()))]
        assert len(sample_crash_retrieval(self.m, 2)) == 7

    @given(st.integers(0, 5))
    def test_nested(self, depth):
        a = sample_crash_retrieval(self.m, depth)
        assert a.issubset(sample_crash_retrieval(self.m, depth + 1))
        assert a == behaviors(self.m, depth)


class TestFlightShow:
    m = gen_random_target(3, 2, 2, 4)
    traces = [(0, 1), (1,), (), (1, 1, 0)]

    def test_repetition_invariance(self):
        one = format_tsv(sample_flight_show(self.m, self.traces, 1))
        hundred = format_tsv(sample_flight_show(self.m, self.traces, 100))
        assert one == hundred
        assert sample_flight_show(self.m, self.traces, 1) == from_target(self.m, self.traces)

    def test_empty_traces(self):
        assert len(sample_flight_show(self.m, [], 7)) == 0

    def test_downstream_identical(self):
        a = sample_flight_show(self.m, self.traces, 1)
        b = sample_flight_show(self.m, self.traces, 100)
        assert min_k(a, 3) == min_k(b, 3)

    def test_repetitions_iterated(self, monkeypatch):
        calls = []
        original = ObservationSet.insert

        def spy(self, w, o):
            calls.append(w)
            return original(self, w, o)

        monkeypatch.setattr(ObservationSet, "insert", spy)
        sample_flight_show(self.m, self.traces, 5)
        assert len(calls) == 5 * len(self.traces)


class TestTsv:
    @given(machines(), st.integers(0, 3))
    def test_round_trip(self, m, depth):
        d = behaviors(m, depth)
        assert parse_tsv(format_tsv(d)) == d

    def test_infers_alphabets(self):
        d = parse_tsv("EPS\t0\nab\t1\n# comment\n")
        assert d.input_alphabet == AB and d.output_alphabet == BIN
        assert d.items() == [((), 0), ((0, 1), 1)]

    def test_conflict_has_line_number(self):
        with pytest.raises(ObservationConflict, match="line 3"):
            parse_tsv("a\t0\nb\t1\na\t1\n")

    def test_alphabet_violation_has_line_number(self):
        with pytest.raises(FormatError, match="line 4"):
            parse_tsv("# input: ab\n# output: 01\na\t0\nc\t0\n")

    def test_malformed_line(self):
        with pytest.raises(FormatError, match="line 1"):
            parse_tsv("a 0\n")

    def test_words_round_trip(self):
        ws = [(), (0,), (1, 0)]
        assert parse_words(format_words(ws, AB), AB) == ws
