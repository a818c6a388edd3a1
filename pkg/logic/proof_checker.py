# In: logic/proof_checker.py
"""
Re-checks a proof certificate step by step, independently of how it was
produced. Bad certificates never raise: every failure becomes a verdict.
"""
import logging
import time
from typing import Dict, Optional, Set, Tuple

from core.errors import SfmError
from .automata_models import EPS
from .axiom_logic import apply_axiom
from .proof_models import (
    AXIOM_SCHEMATA, LEFT_TO_RIGHT, RIGHT_TO_LEFT, Axiom, Proof, ProofStep, ProofVerdict, StepKind, StepVerdict,
)
from .term_logic import aci_key, constants_of, free_vars, is_guarded, is_legal, replace_at, substitute, subterm
from .term_models import ConstRef, Prefix, ProcessEnv, Sum, Term
from .term_parser import print_term

Equation = Tuple[Term, Term]


class StepRejected(Exception):
    """Internal signal carrying the reason a step does not check."""


def _require(condition: bool, reason: str) -> None:
    if not condition:
        raise StepRejected(reason)


def _show(t: Term) -> str:
    return print_term(t)


def _definition(env: ProcessEnv, name: Optional[str]) -> Term:
    _require(name is not None, "no constant given")
    _require(name in env, f"constant '{name}' is not defined in the certificate")
    body = env.body(name)
    _require(is_guarded(body) and not free_vars(body), f"definition of '{name}' is not a closed guarded term")
    return body


class _StepChecker:
    def __init__(self, env: ProcessEnv):
        self.env = env
        self.concluded: Dict[int, Equation] = {}
        self.valid: Set[int] = set()

    def premise(self, step: ProofStep, pid: int) -> Equation:
        _require(pid in self.concluded, f"premise {pid} is not an earlier step")
        _require(pid in self.valid, f"premise {pid} does not check")
        return self.concluded[pid]

    def check(self, step: ProofStep) -> None:
        _require(step.id not in self.concluded, f"duplicate step id {step.id}")
        _require(is_legal(step.lhs), f"left endpoint '{_show(step.lhs)}' is not a legal process term")
        _require(is_legal(step.rhs), f"right endpoint '{_show(step.rhs)}' is not a legal process term")
        handler = getattr(self, f"_check_{step.kind.name.lower()}")
        handler(step)

    # --- Step 1: Axiom instances ---
    def _check_axiom(self, step: ProofStep, direction: str) -> None:
        _require(step.axiom in AXIOM_SCHEMATA, f"{step.axiom} is not an unconditional axiom")
        try:
            result = apply_axiom(step.lhs, step.axiom, step.path, direction, step.binding)
        except SfmError as e:
            raise StepRejected(str(e)) from e
        _require(result == step.rhs, f"{step.axiom.value} yields '{_show(result)}', not '{_show(step.rhs)}'")

    def _check_axiom_lr(self, step: ProofStep) -> None:
        self._check_axiom(step, LEFT_TO_RIGHT)

    def _check_axiom_rl(self, step: ProofStep) -> None:
        self._check_axiom(step, RIGHT_TO_LEFT)

    # --- Step 2: Equational meta-rules ---
    def _check_refl(self, step: ProofStep) -> None:
        _require(step.lhs == step.rhs, "endpoints differ")

    def _check_sym(self, step: ProofStep) -> None:
        _require(len(step.premises) == 1, "Sym takes one premise")
        left, right = self.premise(step, step.premises[0])
        _require((step.lhs, step.rhs) == (right, left), "conclusion is not the premise reversed")

    def _check_trans(self, step: ProofStep) -> None:
        _require(len(step.premises) >= 1, "Trans needs at least one premise")
        chain = [self.premise(step, pid) for pid in step.premises]
        _require(chain[0][0] == step.lhs, "first premise does not start at the left endpoint")
        for (_, mid), (nxt, _) in zip(chain, chain[1:]):
            _require(mid == nxt, f"chain breaks between '{_show(mid)}' and '{_show(nxt)}'")
        _require(chain[-1][1] == step.rhs, "last premise does not end at the right endpoint")

    def _check_cong_prefix(self, step: ProofStep) -> None:
        _require(len(step.premises) == 1, "CongPrefix takes one premise")
        _require(step.action is not None and step.action != EPS, "CongPrefix needs an action other than ε")
        left, right = self.premise(step, step.premises[0])
        _require(step.lhs == Prefix(step.action, left) and step.rhs == Prefix(step.action, right),
                 "conclusion is not the premise under the prefix")

    def _check_cong_choice(self, step: ProofStep) -> None:
        _require(len(step.premises) == 2, "CongChoice takes two premises")
        (l1, r1), (l2, r2) = (self.premise(step, pid) for pid in step.premises)
        _require(step.lhs == Sum(l1, l2) and step.rhs == Sum(r1, r2), "conclusion is not the sum of the premises")

    def _check_aci(self, step: ProofStep) -> None:
        _require(aci_key(step.lhs) == aci_key(step.rhs), "summand multisets differ")

    # --- Step 3: Constants ---
    def _check_unfold(self, step: ProofStep) -> None:
        body = _definition(self.env, step.constant)
        const = ConstRef(step.constant)
        try:
            found = subterm(step.lhs, step.path)
            if step.direction == LEFT_TO_RIGHT:
                _require(found == const, f"no occurrence of '{step.constant}' at the path")
                expected = replace_at(step.lhs, step.path, body)
            elif step.direction == RIGHT_TO_LEFT:
                _require(found == body, f"the body of '{step.constant}' does not occur at the path")
                expected = replace_at(step.lhs, step.path, const)
            else:
                raise StepRejected(f"unknown direction '{step.direction}'")
        except SfmError as e:
            raise StepRejected(str(e)) from e
        _require(expected == step.rhs, f"unfolding yields '{_show(expected)}', not '{_show(step.rhs)}'")

    def _check_fold(self, step: ProofStep) -> None:
        body = _definition(self.env, step.constant)
        p, x = step.open_term, step.var
        _require(p is not None and x is not None, "Fold needs an open term and a variable")
        _require(is_guarded(p), "the open term is not guarded")
        _require(free_vars(p) <= {x}, f"the open term has variables other than '{x}'")
        _require(substitute(p, {x: ConstRef(step.constant)}) == body,
                 f"'{step.constant}' is not defined as the open term closed with itself")
        _require(step.constant not in constants_of(p, self.env), f"the open term depends on '{step.constant}'")
        _require(len(step.premises) == 1, "Fold takes one premise")
        q, unfolded = self.premise(step, step.premises[0])
        _require(unfolded == substitute(p, {x: q}), "the premise is not q = p{q/x}")
        _require(step.lhs == ConstRef(step.constant) and step.rhs == q, "conclusion is not C = q")

    def _check_usys(self, step: ProofStep) -> None:
        system = step.system
        _require(system is not None, "USys needs a system")
        n = len(system.variables)
        _require(n > 0, "the system is empty")
        _require(len(set(system.variables)) == n, "system variables repeat")
        for name, seq in (("bodies", system.bodies), ("left tuple", system.left), ("right tuple", system.right),
                          ("left premises", system.left_premises), ("right premises", system.right_premises)):
            _require(len(seq) == n, f"{name} do not match the number of variables")
        _require(0 <= system.index < n, "index outside the system")
        declared = set(system.variables)
        for i, body in enumerate(system.bodies):
            _require(is_guarded(body), f"body {i + 1} is not guarded")
            _require(free_vars(body) <= declared, f"body {i + 1} uses undeclared variables")
        for side, tuple_, premises in (("left", system.left, system.left_premises),
                                       ("right", system.right, system.right_premises)):
            binding = dict(zip(system.variables, tuple_))
            for i, (pid, body) in enumerate(zip(premises, system.bodies)):
                concluded = self.premise(step, pid)
                expected = (tuple_[i], substitute(body, binding))
                _require(concluded == expected, f"{side} premise {pid} does not prove equation {i + 1}")
        _require(step.lhs == system.left[system.index] and step.rhs == system.right[system.index],
                 "conclusion does not pick the indexed components")

    def record(self, step: ProofStep, ok: bool) -> None:
        self.concluded[step.id] = (step.lhs, step.rhs)
        if ok:
            self.valid.add(step.id)


def check_proof(pr: Proof) -> ProofVerdict:
    """
    Validates every step of pr and that its goal is the conclusion of
    the final step.
    """
    start = time.time()
    logging.debug(f"CHECKER: check_proof | status=starting | steps={len(pr.steps)}")
    checker = _StepChecker(pr.env)
    verdicts = []
    for step in pr.steps:
        try:
            checker.check(step)
            verdict = StepVerdict(step_id=step.id, ok=True)
        except StepRejected as e:
            verdict = StepVerdict(step_id=step.id, ok=False, reason=str(e))
            logging.debug(f"CHECKER: step {step.id} ({step.kind.value}) | status=rejected | reason={e}")
        checker.record(step, verdict.ok)
        verdicts.append(verdict)
    goal_ok = bool(pr.steps) and (pr.steps[-1].lhs, pr.steps[-1].rhs) == tuple(pr.goal)
    ok = goal_ok and all(v.ok for v in verdicts)
    logging.debug(f"CHECKER: check_proof | status={'valid' if ok else 'invalid'} | duration={time.time() - start:.2f}s")
    return ProofVerdict(ok=ok, goal_ok=goal_ok, steps=verdicts)


def axioms_used(pr: Proof) -> Set[Axiom]:
    """
    The axioms a certificate rests on. Derived rules count with their
    foundations: ACI with A1 and A2, USys with R1 and R2.
    """
    used: Set[Axiom] = set()
    for step in pr.steps:
        if step.kind in (StepKind.AXIOM_LR, StepKind.AXIOM_RL) and step.axiom is not None:
            used.add(step.axiom)
        elif step.kind == StepKind.UNFOLD:
            used.add(Axiom.R1)
        elif step.kind == StepKind.FOLD:
            used.add(Axiom.R2)
        elif step.kind == StepKind.ACI:
            used.update({Axiom.A1, Axiom.A2})
        elif step.kind == StepKind.USYS:
            used.update({Axiom.R1, Axiom.R2})
    return used
