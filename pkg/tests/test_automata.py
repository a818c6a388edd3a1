""" Tests for GFA validation, reachability, saturation and the three equivalences """

import itertools

import pytest
from hypothesis import given, settings

from core.errors import (
    EpsilonToNonFinal, FinalAmongStates, FinalIsInitial, FormatError, NotSaturated, OutgoingFromFinal,
    UnknownLabel, UnknownState,
)
from data.generators import random_gfa, random_saturated_dgfa, unrolled
from logic.automata_logic import (
    accepts, bisimilar, bisimilar_states, determinize, disjoint_union, is_epsilon_free, is_reduced,
    is_saturated, is_semi_deterministic, isomorphic, lang_equiv, language_up_to, reach, reduce, saturate,
    strip_epsilon, validate_gfa, with_initial, words_reaching,
)
from logic.semantics_logic import denote

from tests.strategies import rngs


def _renamed(g, mapping):
    rename = lambda q: mapping.get(q, q)
    return validate_gfa({
        "states": [rename(q) for q in g.states], "final": g.final, "initial": rename(g.initial),
        "alphabet": sorted(g.alphabet), "transitions": [(rename(s), a, rename(t)) for s, a, t in g.transitions],
    })


def _base(**changes):
    raw = {"states": ["q0", "q1"], "final": "f", "initial": "q0", "alphabet": ["a"],
           "transitions": [["q0", "a", "q1"], ["q1", "a", "f"]]}
    raw.update(changes)
    return raw


###################################################################################################
# Validation
###################################################################################################

def test_aplus_bplus_automaton_is_valid(bank):
    g = bank.load("aplus_bplus_gfa")
    assert g.states == {"A", "B"}
    assert g.final == "1"
    assert len(g.transitions) == 4


def test_empty_language_automaton_is_valid():
    g = validate_gfa({"states": ["q0"], "initial": "q0"})
    assert g.final is None
    assert language_up_to(g, 3) == set()


@pytest.mark.parametrize("changes, error", [
    ({"final": None, "transitions": [["q0", "eps", "q1"]]}, EpsilonToNonFinal),
    ({"final": "q0", "states": ["q1"]}, FinalIsInitial),
    ({"states": ["q0", "q1", "f"]}, FinalAmongStates),
    ({"transitions": [["f", "a", "q0"]]}, OutgoingFromFinal),
    ({"transitions": [["q0", "b", "q1"]]}, UnknownLabel),
    ({"alphabet": ["a", "eps"]}, UnknownLabel),
    ({"initial": "q9"}, UnknownState),
    ({"transitions": [["q0", "a", "q7"]]}, UnknownState),
])
def test_invalid_automata_are_rejected(changes, error):
    with pytest.raises(error):
        validate_gfa(_base(**changes))


def test_malformed_description_is_a_format_error():
    with pytest.raises(FormatError) as info:
        validate_gfa({"states": "q0"})
    assert info.value.problems


###################################################################################################
# Reachability and reduction
###################################################################################################

def test_reach_on_aplus_bplus(bank):
    g = bank.load("aplus_bplus_gfa")
    assert reach(g, "A") == {"A", "B", "1"}
    assert reach(g, "1") == {"1"}


def test_reach_on_deterministic_astar_bstar(bank):
    g = bank.load("astar_bstar_dgfa")
    assert reach(g, "q2") == {"q2", "q3", "q4", "r1"}


def test_reach_unknown_state():
    with pytest.raises(UnknownState):
        reach(validate_gfa(_base()), "nope")


def test_reduce_keeps_only_the_chosen_component(bank):
    union = disjoint_union(bank.load("astar_bstar_gfa"), bank.load("astar_bstar_dgfa"))
    assert not is_reduced(union)
    reduced = reduce(union)
    assert reduced.states == {"1:q0", "1:q1"}
    assert reduced.final == "1"
    assert len(reduced.transitions) == 5
    assert is_reduced(reduced)


def test_reduce_is_a_fixpoint_on_reduced_input(bank):
    g = bank.load("aplus_bplus_gfa")
    assert reduce(g) == g


def test_with_initial_reroots(bank):
    g = with_initial(bank.load("astar_bstar_gfa"), "q1")
    assert g.initial == "q1"
    assert g.states == {"q1"}


@given(rngs)
@settings(deadline=None, max_examples=100)
def test_reduce_preserves_language(rng):
    g = random_gfa(rng)
    assert language_up_to(reduce(g), 6) == language_up_to(g, 6)


@given(rngs)
@settings(deadline=None, max_examples=100)
def test_reduce_is_idempotent(rng):
    once = reduce(random_gfa(rng))
    assert reduce(once) == once
    assert is_reduced(once)


###################################################################################################
# Saturation and ε-freeness
###################################################################################################

def test_saturate_single_loop(bank):
    assert saturate(bank.load("astar_dgfa")) == bank.load("astar_saturated")


def test_saturate_then_strip(bank):
    saturated = saturate(bank.load("aplus_dgfa"))
    assert {("q1", "a", "1"), ("q2", "a", "1")} <= saturated.transitions
    assert is_saturated(saturated)
    assert strip_epsilon(saturated) == bank.load("aplus_epsilon_free")


def test_saturate_without_epsilon_is_identity(bank):
    g = bank.load("aplus_bplus_gfa")
    assert saturate(g) == g


def test_strip_requires_saturation(bank):
    with pytest.raises(NotSaturated):
        strip_epsilon(bank.load("aplus_dgfa"))


def test_strip_keeps_initial_epsilon(bank):
    g = bank.load("astar_saturated")
    assert is_epsilon_free(g)
    assert strip_epsilon(g) == g


@given(rngs)
@settings(deadline=None, max_examples=100)
def test_saturation_and_stripping_preserve_language(rng):
    g = random_gfa(rng)
    saturated = saturate(g)
    stripped = strip_epsilon(saturated)
    assert is_epsilon_free(stripped)
    assert language_up_to(saturated, 6) == language_up_to(g, 6)
    assert language_up_to(stripped, 6) == language_up_to(g, 6)


def test_semi_determinism(bank):
    assert is_semi_deterministic(bank.load("astar_bstar_dgfa"), {"a", "b"})
    assert not is_semi_deterministic(bank.load("astar_bstar_gfa"), {"a", "b"})
    loop = validate_gfa({"states": ["q0"], "initial": "q0", "alphabet": ["a"], "transitions": [["q0", "a", "q0"]]})
    assert is_semi_deterministic(loop, {"a"})


###################################################################################################
# Languages
###################################################################################################

def test_accepts(bank):
    g = bank.load("aplus_bplus_gfa")
    assert accepts(g, ("a", "b"))
    assert accepts(g, ("a", "a", "b", "b"))
    assert not accepts(g, ("b",))
    assert not accepts(g, ())


def test_language_of_aplus_bplus(bank):
    words = language_up_to(bank.load("aplus_bplus_gfa"), 4)
    expected = {("a",) * i + ("b",) * j for i in range(1, 4) for j in range(1, 4) if i + j <= 4}
    assert words == expected
    assert len(words) == 6


def test_words_reaching_a_state(bank):
    g = bank.load("astar_bstar_gfa")
    assert words_reaching(g, {"q1"}, 2) == {("b",), ("a", "b"), ("b", "b")}


def test_determinize_is_total_and_faithful(bank):
    g = bank.load("aplus_bplus_gfa")
    dfa = determinize(g)
    assert "{}" in dfa.states
    for state, symbol in itertools.product(dfa.states, dfa.alphabet):
        assert dfa.step(state, symbol) in dfa.states
    for length in range(5):
        for word in itertools.product(dfa.alphabet, repeat=length):
            state = dfa.initial
            for symbol in word:
                state = dfa.step(state, symbol)
            assert (state in dfa.accepting) == accepts(g, word)


@given(rngs)
@settings(deadline=None, max_examples=50)
def test_accepts_agrees_with_the_enumerated_language(rng):
    g = random_gfa(rng, max_states=3)
    words = language_up_to(g, 8)
    for length in range(9):
        for word in itertools.product(sorted(g.alphabet), repeat=length):
            assert accepts(g, word) == (word in words)


###################################################################################################
# Equivalences
###################################################################################################

def test_astar_bstar_automata_are_equivalent(bank):
    verdict = lang_equiv(bank.load("astar_bstar_gfa"), bank.load("astar_bstar_dgfa"))
    assert verdict
    assert verdict.counterexample is None


def test_astar_and_aplus_differ_on_the_empty_word(bank):
    verdict = lang_equiv(bank.load("astar_dgfa"), bank.load("aplus_dgfa"))
    assert not verdict
    assert verdict.counterexample == ()


def test_lang_equiv_is_reflexive(bank):
    g = bank.load("bstar_b_gfa")
    assert lang_equiv(g, g)


@given(rngs)
@settings(deadline=None, max_examples=150)
def test_counterexamples_are_shortest(rng):
    g1, g2 = random_gfa(rng), random_gfa(rng)
    verdict = lang_equiv(g1, g2)
    if verdict:
        assert language_up_to(g1, 5) == language_up_to(g2, 5)
        return
    w = verdict.counterexample
    assert accepts(g1, w) != accepts(g2, w)
    if w:
        assert language_up_to(g1, len(w) - 1) == language_up_to(g2, len(w) - 1)


def test_astar_bstar_inner_states_are_not_bisimilar(bank):
    union = disjoint_union(bank.load("astar_bstar_gfa"), bank.load("astar_bstar_dgfa"))
    assert not bisimilar_states(union, "1:q1", "2:q3")
    assert bisimilar_states(union, "1:q1", "1:q1")
    assert not bisimilar(bank.load("astar_bstar_gfa"), bank.load("astar_bstar_dgfa"))


def test_renamed_copy_is_bisimilar_and_isomorphic(bank):
    g = bank.load("aplus_bplus_gfa")
    copy = _renamed(g, {"A": "X", "B": "Y"})
    assert bisimilar(g, copy)
    assert isomorphic(g, copy) == {"A": "X", "B": "Y", "1": "1"}


def test_denotation_is_isomorphic_to_astar_bstar(bank):
    mapping = isomorphic(denote(bank.load("denotation_process")), bank.load("astar_bstar_gfa"))
    assert mapping == {"C": "q0", "D": "q1", "1": "r0"}


def test_equivalent_automata_of_different_size_are_not_isomorphic(bank):
    assert isomorphic(bank.load("astar_bstar_gfa"), bank.load("astar_bstar_dgfa")) is None


@given(rngs)
@settings(deadline=None, max_examples=200)
def test_bisimilarity_matches_language_equivalence_on_saturated_dgfas(rng):
    g1 = random_saturated_dgfa(rng)
    g2 = unrolled(g1) if rng.random() < 0.3 else random_saturated_dgfa(rng)
    assert bisimilar(g1, g2) == bool(lang_equiv(g1, g2))


def _agrees_at_the_pumping_bound(g1, g2):
    alphabet = g1.alphabet | g2.alphabet
    n = len(determinize(g1, alphabet).states) * len(determinize(g2, alphabet).states)
    return bool(lang_equiv(g1, g2)) == (language_up_to(g1, n + 1) == language_up_to(g2, n + 1))


@given(rngs)
@settings(deadline=None, max_examples=100)
def test_lang_equiv_agrees_with_bounded_languages_on_one_letter(rng):
    g1 = random_gfa(rng, max_states=3, alphabet=("a",))
    g2 = unrolled(g1) if rng.random() < 0.3 else random_gfa(rng, max_states=3, alphabet=("a",))
    assert _agrees_at_the_pumping_bound(g1, g2)


@pytest.mark.advanced
@given(rngs)
@settings(deadline=None, max_examples=20)
def test_lang_equiv_agrees_with_bounded_languages(rng):
    g1 = random_gfa(rng, max_states=2)
    g2 = unrolled(g1) if rng.random() < 0.3 else random_gfa(rng, max_states=2)
    assert _agrees_at_the_pumping_bound(g1, g2)


@given(rngs)
@settings(deadline=None, max_examples=150)
def test_isomorphism_implies_bisimilarity_implies_language_equivalence(rng):
    g1 = reduce(random_gfa(rng))
    if rng.random() < 0.4:
        g2 = _renamed(g1, {q: f"p{q}" for q in g1.states})
        assert isomorphic(g1, g2) is not None
    else:
        g2 = reduce(random_gfa(rng))
    if isomorphic(g1, g2) is not None:
        assert bisimilar(g1, g2)
    if bisimilar(g1, g2):
        assert lang_equiv(g1, g2)
