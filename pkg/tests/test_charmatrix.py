import pytest
from hypothesis import given, strategies as st

from conftest import MUSIC_BOX_ENTRIES, machines, words
from fsmid import charmatrix as cm
from fsmid.automata import Alphabet, MooreMachine, all_strings, behaviors, equivalent, minimize, run
from fsmid.errors import ClosureError, ExtractionError
from fsmid.observations import ObservationSet, gen_random_target
from fsmid.solvers import min_k

AB = Alphabet.of("ab")
BIN = Alphabet.of("01")


def strs(alpha, *names):
    return [alpha.parse(n) for n in names]


class TestClosures:
    def test_prefix(self):
        assert cm.prefix_closure([(0, 1)]) == ((), (0,), (0, 1))
        assert cm.prefix_closure([()]) == ((),)
        assert cm.prefix_closure([]) == ()

    def test_suffix(self):
        assert cm.suffix_closure([(0, 1)]) == ((), (1,), (0, 1))
        assert cm.suffix_closure([]) == ()

    @given(st.lists(words(3, 5), max_size=6))
    def test_idempotent_and_forcing(self, ws):
        p, s = cm.prefix_closure(ws), cm.suffix_closure(ws)
        assert cm.prefix_closure(p) == p and cm.suffix_closure(s) == s
        assert cm.is_prefix_complete(p) and cm.is_suffix_complete(s)
        if ws:
            assert () in p and () in s

    def test_build_rejects_incomplete_sets(self):
        d = ObservationSet(AB, BIN)
        with pytest.raises(ClosureError) as info:
            cm.build(d, [(), (0, 1)], [()])
        assert info.value.missing == (0,)
        with pytest.raises(ClosureError):
            cm.build(d, [()], [(0, 1)])


class TestMusicBox:
    """The music-box matrix: rows a, aa, b over the x, y, z experiments."""

    @pytest.fixture
    def mx(self, music_box):
        s = music_box.input_alphabet
        T = cm.prefix_closure(strs(s, "a", "aa", "b"))
        E = [()] + strs(s, "x", "y", "z")
        return cm.build(music_box, T, E)

    def test_row_values(self, mx, music_box):
        s = music_box.input_alphabet
        xyz = strs(s, "x", "y", "z")
        pick = lambda r: tuple(mx.cell(s.parse(r), e) for e in xyz)
        assert pick("a") == (1, 0, 1)
        assert pick("aa") == (1, 0, 1)
        assert pick("b") == (0, 1, 0)

    def test_row_order(self, mx, music_box):
        names = [music_box.input_alphabet.format(r) for r in mx.rows]
        assert names[:4] == ["EPS", "a", "b", "aa"]
        assert len(names) == 4 + 20 - 3

    def test_holes_by_enumeration(self, mx, music_box):
        # independent count over symbol-name strings
        fmt = music_box.input_alphabet.format
        name = lambda w: "" if not w else fmt(w)
        expected = [
            (r, e) for r in mx.rows for e in mx.E if name(r) + name(e) not in MUSIC_BOX_ENTRIES
        ]
        count, density, positions = cm.holes(mx)
        assert positions == expected
        # each observation fills one test-row cell and one extension-row EPS cell
        assert count == len(mx.rows) * len(mx.E) - 18
        assert density == pytest.approx(count / (len(mx.rows) * len(mx.E)))
        # the EPS column is a hole on every test row; ba and bb are entirely holes
        assert all(mx.cell(r, ()) is cm.HOLE for r in mx.T)
        for r in strs(music_box.input_alphabet, "ba", "bb"):
            assert all(c is cm.HOLE for c in mx.row(r))

    def test_ties_on_xyz(self, mx, music_box):
        s = music_box.input_alphabet
        ties = cm.tied_rows(mx, columns=strs(s, "x", "y", "z"))
        a, aa, b = s.parse("a"), s.parse("aa"), s.parse("b")
        assert ties.tied(a, aa)
        assert not ties.tied(a, b)
        assert not ties.compatible(a, b)
        assert ties.compatible(a, aa)

    def test_full_columns_have_no_exact_ties(self, mx, music_box):
        # the EPS column is all holes, so no test row is hole-free there
        assert cm.tied_rows(mx).class_of(music_box.input_alphabet.parse("a")) is None

    def test_completed_matrix_extracts_two_states(self, mx, music_box):
        k, solution = min_k(music_box, 3)
        assert k == 2
        completed = dict(music_box.entries)
        for r in mx.rows:
            for e in mx.E:
                completed.setdefault(r + e, run(solution, r + e))
        d2 = ObservationSet(music_box.input_alphabet, music_box.output_alphabet, completed)
        full = cm.build(d2, mx.T, mx.E)
        assert cm.status(full).ok
        m = cm.extract(full)
        assert m.n == 2
        assert music_box.consistent_with(m)

    def test_pretty_is_stable(self, mx):
        text = mx.pretty()
        lines = text.splitlines()
        assert lines[0] == "\tEPS\tx\ty\tz"
        assert lines[2] == "a\t·\t1\t0\t1"
        assert lines[3] == "b\t·\t0\t1\t0"
        assert text == cm.pretty(mx)


class TestStatus:
    def test_empty_data(self):
        mx = cm.build(ObservationSet(AB, BIN), [()], [()])
        assert not cm.status(mx).hole_free
        assert cm.holes(mx)[1] == 1.0

    def test_open_table_has_witness(self):
        m = MooreMachine(AB, BIN, [[0, 1], [1, 1]], [0, 1])
        mx = cm.build(behaviors(m, 1), [()], [()])
        st_ = cm.status(mx)
        assert not st_.closed and st_.witnesses["closed"] == (1,)
        with pytest.raises(ExtractionError) as info:
            cm.extract(mx)
        assert info.value.flag == "closed"

    def test_inconsistent_table_has_witness(self):
        # a and b look alike on EPS but differ after one more a
        m = MooreMachine(AB, BIN, [[1, 2], [3, 3], [2, 2], [3, 3]], [0, 0, 0, 1])
        mx = cm.build(behaviors(m, 3), [(), (0,), (1,)], [()])
        st_ = cm.status(mx)
        assert not st_.consistent
        t1, t2, a = st_.witnesses["consistent"]
        assert mx.row(t1) == mx.row(t2) and mx.row(t1 + (a,)) != mx.row(t2 + (a,))

    def test_single_row(self):
        d = behaviors(MooreMachine(AB, BIN, [[0, 0]], [1]), 1)
        m = cm.extract(cm.build(d, [()], [()]))
        assert m.n == 1 and m.outputs == (1,)

    def test_eps_column_is_forced(self):
        d = behaviors(MooreMachine(AB, BIN, [[0, 0]], [1]), 3)
        with pytest.raises(ClosureError):
            cm.build(d, [()], [(0,)])

    def test_complete_matrices_for_random_targets(self):
        for seed in range(50):
            m = gen_random_target(1 + seed % 4, 1 + seed % 2, 2, seed)
            n = m.n
            T = E = list(all_strings(len(m.input_alphabet), n))
            mx = cm.build(behaviors(m, 2 * n + 1), T, E)
            assert cm.status(mx).ok
            assert equivalent(cm.extract(mx), minimize(m))


@given(machines(max_states=4), st.integers(0, 3))
def test_extraction_reproduces_cells(m, L):
    sigma = len(m.input_alphabet)
    T = E = list(all_strings(sigma, L))
    mx = cm.build(behaviors(m, 2 * L + 1), T, E)
    if cm.status(mx).ok:
        h = cm.extract(mx)
        assert all(run(h, r + e) == mx.cell(r, e) for r in mx.rows for e in mx.E)


@given(machines(max_states=3), st.integers(0, 2), st.data())
def test_hole_monotonicity(m, L, data):
    d2 = behaviors(m, 2 * L + 1)
    keep = data.draw(st.lists(st.sampled_from(d2.domain()), max_size=len(d2)))
    d1 = d2.restrict(keep)
    T = E = list(all_strings(len(m.input_alphabet), L))
    assert cm.holes(cm.build(d2, T, E))[0] <= cm.holes(cm.build(d1, T, E))[0]


@given(machines(max_states=3), st.data())
def test_exact_ties_refine_compatibility(m, data):
    d = behaviors(m, 3)
    keep = data.draw(st.lists(st.sampled_from(d.domain()), max_size=len(d)))
    T = E = list(all_strings(len(m.input_alphabet), 1))
    mx = cm.build(d.restrict(keep), T, E)
    ties = cm.tied_rows(mx)
    for cls in ties.classes:
        for r in cls:
            assert all(ties.compatible(r, s) for s in cls)
    hole_row = [r for r, v in zip(mx.rows, mx.cells) if all(c is cm.HOLE for c in v)]
    for r in hole_row:
        assert all(ties.compatible(r, s) for s in mx.rows)


def test_auto_sets_are_complete(music_box):
    for budget in (1, 3, 8, 40):
        assert cm.is_prefix_complete(cm.auto_tests(music_box, budget))
        assert cm.is_suffix_complete(cm.auto_experiments(music_box, budget))
