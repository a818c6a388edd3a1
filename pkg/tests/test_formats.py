""" Tests for the file formats: .gfa records, .rg grammars, .wproof certificates and DOT export """

import json

import pytest

from core.errors import FormatError, SfmSyntaxError, UnknownNonterminal
from data.reference_examples import ReferenceBank
from logic.proof_checker import check_proof
from logic.prover_logic import prove_equiv
from services.dot_export import write_dot
from services.gfa_format import read_gfa, write_gfa
from services.grammar_format import read_grammar, write_grammar
from services.proof_format import read_proof, write_proof


###################################################################################################
# Automata and grammars
###################################################################################################

def test_gfa_record_is_canonical(bank):
    g = bank.load("astar_bstar_dgfa")
    text = write_gfa(g)
    assert read_gfa(text) == g
    assert json.loads(text)["states"] == ["q2", "q3", "q4"]
    assert write_gfa(read_gfa(text)) == text


@pytest.mark.parametrize("text", [
    "not json",
    '{"states": ["q0"]}',
    '{"states": ["q0"], "initial": "q0", "transitions": [["q0", "a"]]}',
])
def test_malformed_gfa_records(text):
    with pytest.raises(FormatError) as info:
        read_gfa(text)
    assert info.value.problems


def test_grammar_text(bank):
    gr = read_grammar(bank.text("aplus_bplus_grammar"))
    assert gr.start == "A"
    assert write_grammar(gr) == "A -> a A | a B ;\nB -> b B | b ;\nstart A ;\n"


def test_grammar_with_epsilon_and_empty_rule():
    gr = read_grammar("S -> eps | a T ;\nT -> ;\nstart S ;\n")
    assert gr.nonterminals == {"S", "T"}
    assert "S -> a T | eps ;" in write_grammar(gr)
    assert "T -> ;" in write_grammar(gr)


@pytest.mark.parametrize("text, error", [
    ("A -> a A ;\n", SfmSyntaxError),
    ("A -> a -> b ;\nstart A ;\n", SfmSyntaxError),
    ("A -> a B ;\nstart A ;\n", UnknownNonterminal),
])
def test_malformed_grammars(text, error):
    with pytest.raises(error):
        read_grammar(text)


def test_dot_output(bank):
    dot = write_dot(bank.load("astar_bstar_gfa"))
    assert dot.startswith("digraph gfa {")
    assert '"q0" [shape=circle style=bold];' in dot
    assert '"r0" [shape=doublecircle];' in dot
    assert '"q0" -> "r0" [label="ε"];' in dot


def test_dot_merges_parallel_edges(bank):
    dot = write_dot(bank.load("astar_saturated"))
    assert '"q0" -> "1" [label="a,ε"];' in dot


###################################################################################################
# Certificates
###################################################################################################

@pytest.mark.parametrize("derivation", [ReferenceBank.sink_is_zero, ReferenceBank.epsilon_is_sink_or_epsilon])
def test_hand_written_certificates_survive_the_file_format(derivation):
    pr = derivation()
    again = read_proof(write_proof(pr))
    assert again == pr
    assert check_proof(again).ok


def test_generated_certificate_survives_the_file_format(bank):
    pr = prove_equiv(bank.load("aplus_process_one"), bank.load("aplus_process_two"))
    again = read_proof(write_proof(pr))
    assert again.goal == pr.goal
    assert len(again.steps) == len(pr.steps)
    assert check_proof(again).ok


def test_certificate_version_is_checked():
    record = json.loads(write_proof(ReferenceBank.sink_is_zero()))
    record["version"] = 99
    with pytest.raises(FormatError):
        read_proof(json.dumps(record))


def test_certificate_forward_references_are_rejected():
    record = json.loads(write_proof(ReferenceBank.sink_is_zero()))
    record["steps"][1]["premises"] = [5]
    with pytest.raises(FormatError) as info:
        read_proof(json.dumps(record))
    assert "does not precede" in str(info.value.problems)


def test_unparsable_terms_are_located():
    record = json.loads(write_proof(ReferenceBank.sink_is_zero()))
    record["steps"][0]["rhs"] = "a.+"
    with pytest.raises(FormatError) as info:
        read_proof(json.dumps(record))
    assert info.value.problems[0][0] == "steps.0.rhs"


def test_unparsable_definitions_are_located():
    record = json.loads(write_proof(ReferenceBank.sink_is_zero()))
    record["env"]["E"] = "a.+"
    with pytest.raises(FormatError) as info:
        read_proof(json.dumps(record))
    assert info.value.problems[0][0] == "env.E"
