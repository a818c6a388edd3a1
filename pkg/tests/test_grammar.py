""" Tests for regular grammars and the grammar/automaton correspondence """

import pytest
from hypothesis import given, settings

from core.errors import UnknownNonterminal
from data.generators import random_gfa, random_grammar
from logic.automata_logic import lang_equiv, language_up_to
from logic.automata_models import Empty, Production, Terminal, TerminalNonterminal
from logic.grammar_logic import gfa_to_grammar, grammar_to_gfa, validate_grammar

from tests.strategies import rngs


def test_aplus_bplus_grammar_compiles_to_its_automaton(bank):
    g = grammar_to_gfa(bank.load("aplus_bplus_grammar"))
    assert g == bank.load("aplus_bplus_gfa")
    assert len(g.all_states) == 3
    assert len(g.transitions) == 4


def test_epsilon_production_gives_epsilon_edge():
    gr = validate_grammar({"A"}, "A", [Production("A", Empty())])
    g = grammar_to_gfa(gr)
    assert g.transitions == {("A", "eps", "1")}
    assert g.final == "1"
    assert language_up_to(g, 2) == {()}


def test_grammar_without_final_productions_has_no_final_state():
    gr = validate_grammar({"A"}, "A", [Production("A", TerminalNonterminal("a", "A"))])
    assert grammar_to_gfa(gr).final is None


def test_automaton_back_to_grammar(bank):
    gr = gfa_to_grammar(bank.load("aplus_bplus_gfa"))
    assert gr == bank.load("aplus_bplus_grammar")
    assert Production("B", Terminal("b")) in gr.productions


def test_non_nonterminal_state_ids_are_renamed(bank):
    gr = gfa_to_grammar(bank.load("astar_bstar_gfa"))
    assert gr.start == "N0"
    assert gr.nonterminals == {"N0", "N1"}


@pytest.mark.parametrize("nonterminals, start, productions", [
    ({"A"}, "B", []),
    ({"A"}, "A", [Production("B", Terminal("a"))]),
    ({"A"}, "A", [Production("A", TerminalNonterminal("a", "C"))]),
])
def test_unknown_nonterminals_are_rejected(nonterminals, start, productions):
    with pytest.raises(UnknownNonterminal):
        validate_grammar(nonterminals, start, productions)


@given(rngs)
@settings(deadline=None, max_examples=200)
def test_grammar_roundtrip_preserves_productions(rng):
    gr = random_grammar(rng)
    assert gfa_to_grammar(grammar_to_gfa(gr)) == gr


@given(rngs)
@settings(deadline=None, max_examples=100)
def test_automaton_roundtrip_preserves_language(rng):
    g = random_gfa(rng)
    assert lang_equiv(grammar_to_gfa(gfa_to_grammar(g)), g)
