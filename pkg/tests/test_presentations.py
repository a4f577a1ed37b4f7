import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftshadow import (
    EmptyShiftError,
    LabeledGraph,
    WordNotAllowedError,
    essentialize,
    make_alphabet,
    presentation_from_definition,
    sft_from_forbidden,
    sofic_from_graph,
)

from .conftest import even_scan, naive_forbidden_scan, walk_scan


def all_binary_words(max_len):
    for n in range(1, max_len + 1):
        for tup in itertools.product("01", repeat=n):
            yield "".join(tup)


class TestEssentialize:
    def test_isolated_vertex_removed(self):
        g = LabeledGraph(("a", "b"), (("a", "a", 0),))
        out = essentialize(g)
        assert out.vertices == ("a",)

    def test_two_loop_graph_unchanged(self, chambers):
        assert chambers.graph.vertices == ("L", "R")
        assert len(chambers.graph.edges) == 4

    def test_acyclic_chain_becomes_empty(self):
        g = LabeledGraph(("a", "b", "c"), (("a", "b", 0), ("b", "c", 0)))
        assert essentialize(g).vertices == ()

    def test_empty_shift_is_an_error(self):
        al = make_alphabet(["0"])
        g = LabeledGraph(("a", "b"), (("a", "b", 0),))
        with pytest.raises(EmptyShiftError):
            sofic_from_graph(al, g)


class TestSftConstruction:
    def test_empty_forbidden_set_gives_full_shift(self):
        X = sft_from_forbidden(make_alphabet(["0", "1"]), [])
        assert all(X.is_allowed(w) for w in all_binary_words(5))

    def test_golden_mean_membership(self, golden):
        assert golden.is_allowed("010")
        assert not golden.is_allowed("0110")

    def test_forbidden_symbol_and_word_mix(self):
        X = sft_from_forbidden(make_alphabet(["0", "1", "2"]), ["2", "11"])
        assert X.is_allowed("0101" + "0")
        assert not X.is_allowed("012")
        assert not X.is_allowed("110")

    def test_all_symbols_forbidden_is_empty(self):
        with pytest.raises(EmptyShiftError):
            sft_from_forbidden(make_alphabet(["0"]), ["0"])

    def test_zero_length_forbidden_word_rejected(self):
        with pytest.raises(ValueError):
            sft_from_forbidden(make_alphabet(["0", "1"]), [""])

    def test_automaton_matches_naive_scan_three_symbol(self):
        al = make_alphabet(["0", "1", "2"])
        forbidden = ["12", "201"]
        X = sft_from_forbidden(al, forbidden)
        for n in range(1, 9):
            for tup in itertools.product("012", repeat=n):
                text = "".join(tup)
                assert X.is_allowed(text) == naive_forbidden_scan(text, forbidden), text


class TestSoficMembership:
    def test_two_chamber_words(self, chambers):
        # derived by walk search on the raw graph
        for text in ["001", "0101", "000", "12", "102", "21"]:
            assert chambers.is_allowed(text) == walk_scan(
                chambers.graph, chambers.alphabet, text)
        assert chambers.is_allowed("001")
        assert not chambers.is_allowed("12")
        assert not chambers.is_allowed("102")

    def test_one_way_door_words(self, door):
        for text in ["0102", "0012", "001", "244", "30", "10", "2344"]:
            assert door.is_allowed(text) == walk_scan(door.graph, door.alphabet, text)
        assert not door.is_allowed("0102")
        assert door.is_allowed("0012")
        assert door.is_allowed("244")
        assert not door.is_allowed("30")

    def test_even_shift_basics(self, even):
        assert not even.is_allowed("101")
        assert even.is_allowed("1001")
        assert not even.is_allowed("10001")

    def test_even_automaton_equals_run_scan_up_to_12(self, even):
        for text in all_binary_words(12):
            assert even.is_allowed(text) == even_scan(text), text


class TestEnumeration:
    def test_full_shift_counts(self, full2):
        assert len(full2.words_of_length(3)) == 8
        assert [w.text for w in full2.words_of_length(1)] == ["0", "1"]

    def test_golden_counts_follow_fibonacci(self, golden):
        counts = [len(golden.words_of_length(n)) for n in range(1, 16)]
        assert counts[0] == 2 and counts[1] == 3
        for i in range(2, len(counts)):
            assert counts[i] == counts[i - 1] + counts[i - 2]

    def test_two_chamber_single_symbols(self, chambers):
        assert [w.text for w in chambers.words_of_length(1)] == ["0", "1", "2"]

    def test_enumeration_is_sorted_and_matches_membership(self, even):
        words = [w.text for w in even.words_of_length(6)]
        assert words == sorted(words)
        assert set(words) == {t for t in ("".join(p) for p in itertools.product("01", repeat=6))
                              if even_scan(t)}

    def test_length_zero_is_the_empty_word(self, even):
        words = even.words_of_length(0)
        assert len(words) == 1 and len(words[0]) == 0

    def test_counting_matches_enumeration(self, even, golden, door):
        for X in (even, golden, door):
            for n in range(0, 9):
                assert X.count_words_of_length(n) == len(X.words_of_length(n))

    def test_counting_scales_without_enumeration(self, even):
        # Fibonacci-sized count, far beyond anything enumerable
        assert even.count_words_of_length(60) > 10**12


class TestWalkEndpoints:
    def test_full_shift_single_vertex(self, full2):
        assert len(full2.end_states("0110")) == 1
        assert full2.end_states("0") == full2.start_states("1")

    def test_two_chamber_marker_pins_the_vertex(self, chambers):
        assert chambers.end_states("1") == frozenset({"L"})
        assert chambers.start_states("2") == frozenset({"R"})
        assert chambers.end_states("0") == frozenset({"L", "R"})

    def test_even_shift_endpoints(self, even):
        assert even.end_states("10") == frozenset({"v2"})
        # a 0,1 walk must pass v1 before the 1-loop, so it starts at v2
        assert even.start_states("01") == frozenset({"v2"})
        assert even.start_states("1") == frozenset({"v1"})

    def test_not_allowed_raises(self, even):
        with pytest.raises(WordNotAllowedError):
            even.end_states("101")
        with pytest.raises(WordNotAllowedError):
            even.start_states("101")


class TestFindBridge:
    def test_even_shift_no_length_one_bridge(self, even):
        assert even.find_bridge("10", 1, "01") is None

    def test_even_shift_length_two_bridge(self, even):
        w = even.find_bridge("10", 2, "01")
        assert w.text == "00"
        assert even.is_allowed("10" + w.text + "01")

    def test_full_shift_bridge_is_all_zeros(self, full2):
        assert full2.find_bridge("1", 4, "1").text == "0000"

    def test_zero_length_bridge(self, even):
        assert even.find_bridge("1", 0, "1").text == ""
        assert even.find_bridge("10", 0, "01").text == ""  # 1001 is allowed
        assert even.find_bridge("1", 0, "01") is None  # 101 is not

    def test_bridge_requires_allowed_contexts(self, even):
        with pytest.raises(WordNotAllowedError):
            even.find_bridge("101", 2, "0")

    def test_soundness_and_completeness_against_enumeration(self, even):
        words = [w.text for w in even.words_of_length(2)]
        for u in words:
            for v in words:
                for n in range(0, 9):
                    got = even.find_bridge(u, n, v)
                    candidates = [w.text for w in even.words_of_length(n)
                                  if even.is_allowed(u + w.text + v)]
                    if got is None:
                        assert not candidates, (u, n, v)
                    else:
                        assert got.text == min(candidates), (u, n, v)


class TestQftBridge:
    def test_door_bridge_exists_when_whole_word_allowed(self, door):
        z = door.qft_bridge("2", "44444", "3")
        assert z is not None and len(z) == 5
        assert door.is_allowed("2" + z.text + "3")

    def test_door_bridge_with_crossing_context(self, door):
        z = door.qft_bridge("1", "24444", "4")
        assert z is not None and door.is_allowed("1" + z.text + "4")

    def test_full_shift_returns_least(self, full2):
        assert full2.qft_bridge("1", "11", "1").text == "00"

    def test_precondition_uw_checked(self, door):
        with pytest.raises(WordNotAllowedError):
            door.qft_bridge("3", "1", "1")  # "31" is not allowed

    def test_missing_bridge_is_none(self, door):
        # the length-one parity trap: "10w" and "w01" allowed, no "10z01"
        assert door.qft_bridge("10", "0", "01") is None


class TestFactorClosure:
    @settings(max_examples=60)
    @given(st.integers(0, 10**6))
    def test_subwords_of_allowed_words_are_allowed(self, even, seed):
        import random as _random

        rng = _random.Random(seed)
        w = even.random_walk_word(12, rng)
        assert even.is_allowed(w)
        for i in range(len(w)):
            for j in range(i, len(w) + 1):
                assert even.is_allowed(w[i:j])

    def test_allowed_words_extend_both_ways(self, even):
        for w in even.words_of_length(5):
            assert len(even.extend_right(w, 1)) == 6
            assert len(even.extend_left(w, 1)) == 6


class TestDefinitionRoundTrip:
    def test_sofic_round_trip(self, door):
        again = presentation_from_definition(door.definition())
        for n in range(1, 7):
            assert ([w.text for w in again.words_of_length(n)]
                    == [w.text for w in door.words_of_length(n)])

    def test_sft_round_trip(self, golden):
        again = presentation_from_definition(golden.definition())
        assert not again.is_allowed("11")
        assert again.source["forbidden"] == ["11"]
