# In: logic/proof_builder.py
"""
Incremental construction of proof certificates. A ProofBuilder owns the
growing constant environment and step list; a Chain threads a term
through a sequence of rewrites and closes them with one Trans step.
"""
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from core.errors import ProofConstructionError
from .axiom_logic import apply_axiom_with_binding
from .proof_models import (
    LEFT_TO_RIGHT, RIGHT_TO_LEFT, Axiom, Proof, ProofStep, StepKind, SystemPayload,
)
from .term_logic import BODY, LEFT, RIGHT, Path, aci_key, replace_at, subterm
from .term_models import ConstRef, Prefix, ProcessEnv, Sum, Term, Var, Zero, sum_of, summands
from .term_parser import print_term

Equation = Tuple[Term, Term]


class ProofBuilder:
    def __init__(self, env: ProcessEnv = ProcessEnv()):
        self.defs: Dict[str, Term] = dict(env.defs)
        self.steps: List[ProofStep] = []
        self._conclusions: Dict[int, Equation] = {}
        self._families: Dict[str, int] = {}

    @property
    def env(self) -> ProcessEnv:
        return ProcessEnv(dict(self.defs))

    def conclusion(self, sid: int) -> Equation:
        return self._conclusions[sid]

    # --- Step 1: Generated constants ---
    def namespace(self, family: str) -> str:
        """Prefix for a new batch of generated names; a family reused within one proof gets a counter."""
        while True:
            count = self._families.get(family, 0) + 1
            self._families[family] = count
            prefix = family if count == 1 else f"{family}{count}_"
            if not any(name.startswith(prefix) for name in self.defs):
                return prefix

    def define(self, name: str, body: Term) -> ConstRef:
        existing = self.defs.get(name)
        if existing is not None and existing != body:
            raise ProofConstructionError(f"constant '{name}' is already defined differently")
        self.defs[name] = body
        return ConstRef(name)

    # --- Step 2: Primitive steps ---
    def _add(self, kind: StepKind, lhs: Term, rhs: Term, **payload) -> int:
        sid = len(self.steps) + 1
        self.steps.append(ProofStep(id=sid, kind=kind, lhs=lhs, rhs=rhs, **payload))
        self._conclusions[sid] = (lhs, rhs)
        return sid

    def _is_trivial(self, sid: int) -> bool:
        left, right = self._conclusions[sid]
        return left == right

    def refl(self, t: Term) -> int:
        return self._add(StepKind.REFL, t, t)

    def sym(self, sid: int) -> int:
        if self._is_trivial(sid):
            return sid
        left, right = self._conclusions[sid]
        return self._add(StepKind.SYM, right, left, premises=(sid,))

    def trans(self, *sids: int) -> int:
        if not sids:
            raise ProofConstructionError("Trans needs at least one premise")
        chain = [sid for sid in sids if not self._is_trivial(sid)]
        if not chain:
            return sids[0]
        for first, second in zip(chain, chain[1:]):
            if self._conclusions[first][1] != self._conclusions[second][0]:
                raise ProofConstructionError(
                    f"cannot chain '{print_term(self._conclusions[first][1])}' "
                    f"with '{print_term(self._conclusions[second][0])}'")
        if len(chain) == 1:
            return chain[0]
        return self._add(StepKind.TRANS, self._conclusions[chain[0]][0], self._conclusions[chain[-1]][1],
                         premises=tuple(chain))

    def axiom(self, t: Term, ax: Axiom, path: Path = (), direction: str = LEFT_TO_RIGHT,
              subst: Optional[Mapping[str, Union[Term, str]]] = None) -> Tuple[int, Term]:
        result, binding = apply_axiom_with_binding(t, ax, path, direction, subst)
        kind = StepKind.AXIOM_LR if direction == LEFT_TO_RIGHT else StepKind.AXIOM_RL
        sid = self._add(kind, t, result, axiom=ax, path=tuple(path), subst=tuple(sorted(binding.items())))
        return sid, result

    def unfold(self, t: Term, constant: str, path: Path = (), direction: str = LEFT_TO_RIGHT) -> Tuple[int, Term]:
        body = self.defs[constant]
        if direction == LEFT_TO_RIGHT:
            expected, replacement = ConstRef(constant), body
        else:
            expected, replacement = body, ConstRef(constant)
        if subterm(t, path) != expected:
            raise ProofConstructionError(f"nothing to {'unfold' if direction == LEFT_TO_RIGHT else 'fold'} "
                                         f"for '{constant}' at {'/'.join(path) or 'root'}")
        result = replace_at(t, path, replacement)
        sid = self._add(StepKind.UNFOLD, t, result, constant=constant, path=tuple(path), direction=direction)
        return sid, result

    def cong_prefix(self, action: str, sid: int) -> int:
        left, right = self._conclusions[sid]
        if left == right:
            return self.refl(Prefix(action, left))
        return self._add(StepKind.CONG_PREFIX, Prefix(action, left), Prefix(action, right),
                         premises=(sid,), action=action)

    def cong_choice(self, left_sid: int, right_sid: int) -> int:
        (l1, r1), (l2, r2) = self._conclusions[left_sid], self._conclusions[right_sid]
        if l1 == r1 and l2 == r2:
            return self.refl(Sum(l1, l2))
        return self._add(StepKind.CONG_CHOICE, Sum(l1, l2), Sum(r1, r2), premises=(left_sid, right_sid))

    def aci_to(self, t: Term, target: Term) -> int:
        if t == target:
            return self.refl(t)
        if aci_key(t) != aci_key(target):
            raise ProofConstructionError(f"'{print_term(t)}' and '{print_term(target)}' differ beyond A1/A2")
        return self._add(StepKind.ACI, t, target)

    def fold(self, constant: str, open_term: Term, var: str, sid: int) -> int:
        q, _ = self._conclusions[sid]
        return self._add(StepKind.FOLD, ConstRef(constant), q, premises=(sid,),
                         constant=constant, open_term=open_term, var=var)

    def usys(self, variables: Sequence[str], bodies: Sequence[Term], left: Sequence[Term], right: Sequence[Term],
             left_premises: Sequence[int], right_premises: Sequence[int], index: int) -> int:
        system = SystemPayload(tuple(variables), tuple(bodies), tuple(left), tuple(right),
                               tuple(left_premises), tuple(right_premises), index)
        return self._add(StepKind.USYS, left[index], right[index], system=system)

    # --- Step 3: Derived constructions ---
    def lift(self, t: Term, path: Path, sid: int) -> int:
        """From a proof of s = s' with s at path in t, a proof of t = t[s'/path]."""
        if not path:
            return sid
        step, rest = path[0], tuple(path[1:])
        if step == BODY and isinstance(t, Prefix):
            return self.cong_prefix(t.action, self.lift(t.body, rest, sid))
        if step == LEFT and isinstance(t, Sum):
            return self.cong_choice(self.lift(t.left, rest, sid), self.refl(t.right))
        if step == RIGHT and isinstance(t, Sum):
            return self.cong_choice(self.refl(t.left), self.lift(t.right, rest, sid))
        raise ProofConstructionError(f"cannot lift through '{step}'")

    def cong_subst(self, open_term: Term, var_proofs: Mapping[str, int]) -> int:
        """From proofs of s_x = t_x per variable, a proof of P{s/x} = P{t/x}."""
        if isinstance(open_term, Var):
            return var_proofs[open_term.name]
        if isinstance(open_term, Prefix):
            return self.cong_prefix(open_term.action, self.cong_subst(open_term.body, var_proofs))
        if isinstance(open_term, Sum):
            return self.cong_choice(self.cong_subst(open_term.left, var_proofs),
                                    self.cong_subst(open_term.right, var_proofs))
        return self.refl(open_term)

    def chain(self, start: Term) -> "Chain":
        return Chain(self, start)

    def finish(self, sid: int) -> Proof:
        """Ends the certificate so that its last step concludes sid."""
        if not self.steps or self.steps[-1].id != sid:
            left, right = self._conclusions[sid]
            sid = self._add(StepKind.TRANS, left, right, premises=(sid,))
        return Proof(env=self.env, steps=tuple(self.steps), goal=self._conclusions[sid])


class Chain:
    """A running equation start = term, extended one rewrite at a time."""

    def __init__(self, builder: ProofBuilder, start: Term):
        self.builder = builder
        self.start = start
        self.term = start
        self.ids: List[int] = []

    def _push(self, sid: int, result: Term) -> "Chain":
        self.ids.append(sid)
        self.term = result
        return self

    def axiom(self, ax: Axiom, path: Path = (), direction: str = LEFT_TO_RIGHT,
              subst: Optional[Mapping[str, Union[Term, str]]] = None) -> "Chain":
        return self._push(*self.builder.axiom(self.term, ax, path, direction, subst))

    def unfold(self, constant: str, path: Path = ()) -> "Chain":
        return self._push(*self.builder.unfold(self.term, constant, path, LEFT_TO_RIGHT))

    def refold(self, constant: str, path: Path = ()) -> "Chain":
        return self._push(*self.builder.unfold(self.term, constant, path, RIGHT_TO_LEFT))

    def aci(self, target: Term) -> "Chain":
        if self.term != target:
            self._push(self.builder.aci_to(self.term, target), target)
        return self

    def then(self, sid: int) -> "Chain":
        left, right = self.builder.conclusion(sid)
        if left != self.term:
            raise ProofConstructionError(f"step {sid} does not start at '{print_term(self.term)}'")
        return self._push(sid, right)

    def drop_zeros(self) -> "Chain":
        parts = summands(self.term)
        nonzeros = [s for s in parts if not isinstance(s, Zero)]
        zeros = [s for s in parts if isinstance(s, Zero)]
        if not zeros or len(parts) == 1:
            return self
        self.aci(sum_of(nonzeros + zeros))
        for _ in range(len(zeros) if nonzeros else len(zeros) - 1):
            self.axiom(Axiom.A3)
        return self

    def merge_extra(self, s: Term) -> "Chain":
        """Removes one of two copies of the summand s with A4."""
        rest = summands(self.term)
        for _ in range(2):
            if s not in rest:
                raise ProofConstructionError(f"'{print_term(s)}' does not occur twice")
            rest.remove(s)
        if rest:
            self.aci(Sum(sum_of(rest), Sum(s, s)))
            return self.axiom(Axiom.A4, (RIGHT,))
        self.aci(Sum(s, s))
        return self.axiom(Axiom.A4)

    def dedupe(self) -> "Chain":
        while True:
            parts = summands(self.term)
            duplicate = next((s for i, s in enumerate(parts) if s in parts[i + 1:]), None)
            if duplicate is None:
                return self
            self.merge_extra(duplicate)

    def close(self) -> int:
        if not self.ids:
            return self.builder.refl(self.start)
        return self.builder.trans(*self.ids)
