""" Tests for the proof certificate checker """

import dataclasses

from data.reference_examples import ReferenceBank
from logic.proof_builder import ProofBuilder
from logic.proof_checker import axioms_used, check_proof
from logic.proof_models import ACTION_META, Axiom, Proof
from logic.term_models import EPS_ONE, ZERO, ConstRef, Prefix, Var
from logic.term_parser import parse_process, parse_term


def _tampered(pr, index, **changes):
    steps = list(pr.steps)
    steps[index] = dataclasses.replace(steps[index], **changes)
    return dataclasses.replace(pr, steps=tuple(steps))


def test_sink_derivation_is_valid():
    pr = ReferenceBank.sink_is_zero()
    verdict = check_proof(pr)
    assert verdict.ok
    assert pr.goal == (ConstRef("E"), ZERO)
    assert axioms_used(pr) == {Axiom.T1, Axiom.R2}


def test_epsilon_derivation_is_valid():
    pr = ReferenceBank.epsilon_is_sink_or_epsilon()
    verdict = check_proof(pr)
    assert verdict.ok, verdict.first_failure
    assert pr.goal == (ConstRef("C"), ConstRef("D"))
    assert {Axiom.T1, Axiom.R1, Axiom.R2, Axiom.A3} <= axioms_used(pr)


def test_wrong_conclusion_is_rejected():
    pr = _tampered(ReferenceBank.sink_is_zero(), 0, rhs=parse_term("a.1"))
    verdict = check_proof(pr)
    assert not verdict.ok
    assert verdict.first_failure.step_id == 1
    assert not verdict.steps[1].ok


def test_premises_must_come_earlier():
    pr = _tampered(ReferenceBank.sink_is_zero(), 1, premises=(3,))
    verdict = check_proof(pr)
    assert not verdict.ok
    assert "not an earlier step" in verdict.steps[1].reason


def test_goal_must_be_the_final_conclusion():
    pr = dataclasses.replace(ReferenceBank.sink_is_zero(), goal=(ConstRef("E"), EPS_ONE))
    verdict = check_proof(pr)
    assert not verdict.ok
    assert not verdict.goal_ok
    assert all(s.ok for s in verdict.steps)


def test_empty_proof_proves_nothing():
    verdict = check_proof(Proof(env=parse_process("main 0;").env, steps=(), goal=(ZERO, ZERO)))
    assert not verdict.ok
    assert not verdict.goal_ok


def _sink_builder():
    b = ProofBuilder(parse_process("E := a.E;\nmain E;\n").env)
    step, _ = b.axiom(ZERO, Axiom.T1, (), "rl", {ACTION_META: "a"})
    return b, step


def test_fold_needs_the_defining_open_term():
    b, step = _sink_builder()
    b.fold("E", Prefix("b", Var("x")), "x", step)
    verdict = check_proof(b.finish(len(b.steps)))
    assert "closed with itself" in verdict.steps[-1].reason


def test_fold_needs_a_guarded_open_term():
    b, step = _sink_builder()
    b.fold("E", Var("x"), "x", step)
    verdict = check_proof(b.finish(len(b.steps)))
    assert "not guarded" in verdict.steps[-1].reason


def test_fold_open_term_may_not_mention_the_constant():
    b = ProofBuilder(parse_process("E := a.E;\nmain E;\n").env)
    unfolded, _ = b.unfold(ConstRef("E"), "E")
    b.fold("E", Prefix("a", ConstRef("E")), "x", unfolded)
    verdict = check_proof(b.finish(len(b.steps)))
    assert not verdict.ok
    assert "depends" in verdict.steps[-1].reason


def test_fold_premise_must_have_the_unfolded_shape():
    b = ProofBuilder(parse_process("E := a.E;\nmain E;\n").env)
    step = b.refl(ZERO)
    b.fold("E", Prefix("a", Var("x")), "x", step)
    verdict = check_proof(b.finish(len(b.steps)))
    assert "q = p{q/x}" in verdict.steps[-1].reason
