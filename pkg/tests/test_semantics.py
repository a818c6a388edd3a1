""" Tests for the denotational semantics, representability and open-term languages """

import pytest
from hypothesis import given, settings

from core.errors import EpsilonInVarLanguage, NotReduced, UnguardedBody
from data.generators import random_guarded_term, random_open_term, random_process, random_reduced_gfa
from logic.automata_logic import is_reduced, isomorphic, lang_equiv, language_up_to, validate_gfa
from logic.semantics_logic import denote, gfa_to_term, lfp_language_up_to, open_languages_up_to
from logic.term_logic import substitute
from logic.term_models import ZERO, ConstRef, Prefix, Process, ProcessEnv, Sum
from logic.term_parser import parse_process, parse_term, print_process

from tests.strategies import rngs


def _word(text):
    return tuple(text)


def test_denotation_example(bank):
    g = denote(bank.load("denotation_process"))
    assert g.states == {"C", "D"}
    assert g.final == "1"
    assert g.initial == "C"
    assert g.transitions == {
        ("C", "a", "C"), ("C", "eps", "1"), ("C", "b", "D"), ("D", "b", "D"), ("D", "eps", "1"),
    }


def test_denotation_of_zero():
    g = denote(Process(ZERO))
    assert g.states == {"0"}
    assert g.final is None
    assert not g.transitions
    assert not g.alphabet


def test_denotation_of_epsilon_one():
    g = denote(Process(parse_term("eps.1")))
    assert len(g.states) == 1
    assert g.transitions == {("eps.1", "eps", "1")}
    assert not g.alphabet


def test_states_are_printed_terms():
    g = denote(parse_process("main a.b.1 + c.0;"))
    assert g.initial == "a.b.1 + c.0"
    assert {"b.1", "0"} <= g.states


def test_denotation_rejects_unguarded_bodies():
    p = Process(ConstRef("C"), ProcessEnv({"C": ConstRef("C")}))
    with pytest.raises(UnguardedBody):
        denote(p)


@given(rngs)
@settings(deadline=None, max_examples=200)
def test_denotations_are_reduced(rng):
    g = denote(random_process(rng))
    assert is_reduced(g)


###################################################################################################
# Representability
###################################################################################################

def test_astar_bstar_representation(bank):
    p = gfa_to_term(bank.load("astar_bstar_gfa"))
    assert print_process(p) == "C0 := a.C0 + b.C1 + eps.1;\nC1 := b.C1 + eps.1;\nmain C0;\n"


def test_bstar_b_representation(bank):
    p = gfa_to_term(bank.load("bstar_b_gfa"))
    assert p.env.body("C0") == parse_term("a.C1 + b.C0 + b.1")
    assert p.env.body("C1") == ZERO


def test_deadlocked_single_state():
    p = gfa_to_term(validate_gfa({"states": ["q"], "initial": "q"}))
    assert p.env.body("C0") == ZERO


def test_representation_requires_a_reduced_automaton():
    g = validate_gfa({"states": ["q0", "q1"], "initial": "q0"})
    with pytest.raises(NotReduced):
        gfa_to_term(g)


@pytest.mark.advanced
@given(rngs)
@settings(deadline=None, max_examples=200)
def test_representation_round_trip_is_isomorphic(rng):
    g = random_reduced_gfa(rng, max_states=8, alphabet=("a", "b", "c"))
    assert isomorphic(denote(gfa_to_term(g)), g) is not None


###################################################################################################
# Open terms and the least fixed point
###################################################################################################

def test_open_languages():
    p = parse_term("a.(b.1 + c.x)", variables=["x"])
    langs = open_languages_up_to(p, "x", ProcessEnv(), 4)
    assert langs.l_down == {_word("ab")}
    assert langs.l_var == {_word("ac")}


def test_lfp_of_the_recursion_example():
    words = lfp_language_up_to({_word("ab")}, {_word("ac")}, 6)
    assert words == {_word("ab"), _word("acab"), _word("acacab")}


def test_lfp_without_variable_words_is_the_base_language():
    assert lfp_language_up_to({_word("ab"), _word("b")}, set(), 4) == {_word("ab"), _word("b")}


def test_lfp_refuses_epsilon_in_the_variable_language():
    with pytest.raises(EpsilonInVarLanguage):
        lfp_language_up_to({_word("a")}, {()}, 3)


@given(rngs)
@settings(deadline=None, max_examples=100)
def test_folding_matches_the_least_fixed_point(rng):
    p = random_open_term(rng)
    env = ProcessEnv({"C": substitute(p, {"x": ConstRef("C")})})
    langs = open_languages_up_to(p, "x", ProcessEnv(), 6)
    expected = language_up_to(denote(Process(ConstRef("C"), env)), 6)
    assert lfp_language_up_to(set(langs.l_down), set(langs.l_var), 6) == expected


@given(rngs)
@settings(deadline=None, max_examples=100)
def test_recursion_ignores_a_deadlocked_summand(rng):
    p = random_open_term(rng)
    env = ProcessEnv({
        "C": substitute(p, {"x": ConstRef("C")}),
        "D": Sum(substitute(p, {"x": ConstRef("D")}), ZERO),
    })
    assert lang_equiv(denote(Process(ConstRef("C"), env)), denote(Process(ConstRef("D"), env)))


@given(rngs)
@settings(deadline=None, max_examples=100)
def test_closing_a_solution_gives_the_same_language(rng):
    p = random_open_term(rng)
    unrolled_twice = substitute(p, {"x": substitute(p, {"x": ConstRef("D")})})
    env = ProcessEnv({"C": substitute(p, {"x": ConstRef("C")}), "D": unrolled_twice})
    q = denote(Process(ConstRef("D"), env))
    assert lang_equiv(q, denote(Process(substitute(p, {"x": ConstRef("D")}), env)))
    assert lang_equiv(denote(Process(ConstRef("C"), env)), q)


@given(rngs)
@settings(deadline=None, max_examples=100)
def test_equal_open_languages_give_equal_closures(rng):
    p1 = random_open_term(rng)
    p2 = rng.choice([Sum(p1, p1), Sum(ZERO, p1), random_open_term(rng)])
    l1 = open_languages_up_to(p1, "x", ProcessEnv(), 6)
    l2 = open_languages_up_to(p2, "x", ProcessEnv(), 6)
    if (l1.l_down, l1.l_var) != (l2.l_down, l2.l_var):
        return
    env = ProcessEnv({"C1": substitute(p1, {"x": ConstRef("C1")}), "C2": substitute(p2, {"x": ConstRef("C2")})})
    left, right = (denote(Process(ConstRef(c), env)) for c in ("C1", "C2"))
    assert language_up_to(left, 6) == language_up_to(right, 6)


###################################################################################################
# Laws of the semantics
###################################################################################################

@given(rngs)
@settings(deadline=None, max_examples=100)
def test_constants_denote_their_bodies(rng):
    p = random_process(rng)
    for name in p.env:
        assert lang_equiv(denote(Process(ConstRef(name), p.env)), denote(Process(p.env.body(name), p.env)))


@given(rngs)
@settings(deadline=None, max_examples=100)
def test_prefixing_prepends_the_action(rng):
    p = random_process(rng)
    t = random_guarded_term(rng, 2, sorted(p.env.defs))
    inner = language_up_to(denote(Process(t, p.env)), 5)
    assert language_up_to(denote(Process(Prefix("a", t), p.env)), 6) == {("a",) + w for w in inner}


@given(rngs)
@settings(deadline=None, max_examples=100)
def test_choice_is_union(rng):
    p = random_process(rng)
    t1, t2 = (random_guarded_term(rng, 2, sorted(p.env.defs)) for _ in range(2))
    both = language_up_to(denote(Process(Sum(t1, t2), p.env)), 6)
    assert both == language_up_to(denote(Process(t1, p.env)), 6) | language_up_to(denote(Process(t2, p.env)), 6)
