# In: logic/proof_models.py

from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field

from .automata_models import EPS, Symbol
from .term_models import (
    ZERO, ConstRef, Prefix, PrefixOne, ProcessEnv, Sum, Term, Var, sum_of,
)


# --- The axiom set ---
class Axiom(Enum):
    A1 = "A1"  # associativity
    A2 = "A2"  # commutativity
    A3 = "A3"  # identity
    A4 = "A4"  # idempotence
    T1 = "T1"  # annihilation
    T2 = "T2"  # distributivity
    T3 = "T3"  # ε-absorption
    R1 = "R1"  # unfolding
    R2 = "R2"  # folding

    @property
    def conditional(self) -> bool:
        return self in (Axiom.R1, Axiom.R2)


# Metavariables: x, y, z range over summands. Every prefix action in a schema, and
# every non-ε label of α.1, is the action metavariable a.
ACTION_META = "a"
TERM_METAVARIABLES = ("x", "y", "z")
_x, _y, _z = Var("x"), Var("y"), Var("z")

AXIOM_SCHEMATA: Dict[Axiom, Tuple[Term, Term]] = {
    Axiom.A1: (Sum(_x, Sum(_y, _z)), Sum(Sum(_x, _y), _z)),
    Axiom.A2: (Sum(_x, _y), Sum(_y, _x)),
    Axiom.A3: (Sum(_x, ZERO), _x),
    Axiom.A4: (Sum(_x, _x), _x),
    Axiom.T1: (Prefix(ACTION_META, ZERO), ZERO),
    Axiom.T2: (Prefix(ACTION_META, Sum(_x, _y)), Sum(Prefix(ACTION_META, _x), Prefix(ACTION_META, _y))),
    Axiom.T3: (Prefix(ACTION_META, PrefixOne(EPS)), PrefixOne(ACTION_META)),
}

W: FrozenSet[Axiom] = frozenset(Axiom)
B: FrozenSet[Axiom] = frozenset({Axiom.A1, Axiom.A2, Axiom.A3, Axiom.A4, Axiom.R1, Axiom.R2})


class StepKind(Enum):
    AXIOM_LR = "AxiomLR"
    AXIOM_RL = "AxiomRL"
    REFL = "Refl"
    SYM = "Sym"
    TRANS = "Trans"
    CONG_PREFIX = "CongPrefix"
    CONG_CHOICE = "CongChoice"
    ACI = "ACI"
    UNFOLD = "Unfold"
    FOLD = "Fold"
    USYS = "USys"


META_RULES = frozenset({
    StepKind.REFL, StepKind.SYM, StepKind.TRANS, StepKind.CONG_PREFIX,
    StepKind.CONG_CHOICE, StepKind.ACI, StepKind.USYS,
})

LEFT_TO_RIGHT, RIGHT_TO_LEFT = "lr", "rl"
Binding = Tuple[Tuple[str, Union[Term, str]], ...]


@dataclass(frozen=True)
class SystemPayload:
    """A guarded system X_i = P_i and two tuples claimed to solve it."""
    variables: Tuple[str, ...]
    bodies: Tuple[Term, ...]
    left: Tuple[Term, ...]
    right: Tuple[Term, ...]
    left_premises: Tuple[int, ...]
    right_premises: Tuple[int, ...]
    index: int


@dataclass(frozen=True)
class ProofStep:
    id: int
    kind: StepKind
    lhs: Term
    rhs: Term
    premises: Tuple[int, ...] = ()
    axiom: Optional[Axiom] = None
    path: Tuple[str, ...] = ()
    subst: Binding = ()
    direction: Optional[str] = None
    action: Optional[Symbol] = None
    constant: Optional[str] = None
    open_term: Optional[Term] = None
    var: Optional[str] = None
    system: Optional[SystemPayload] = None

    @property
    def binding(self) -> Dict[str, Union[Term, str]]:
        return dict(self.subst)


@dataclass(frozen=True)
class Proof:
    """A derivation of goal[0] = goal[1]; the goal is the conclusion of the final step."""
    env: ProcessEnv
    steps: Tuple[ProofStep, ...]
    goal: Tuple[Term, Term]


# --- Equation systems ---
@dataclass(frozen=True)
class Summand:
    """a.C_target, or α.1 when target is None."""
    label: Symbol
    target: Optional[int] = None

    @property
    def terminal(self) -> bool:
        return self.target is None

    def sort_key(self) -> Tuple:
        return (0, self.label, -1) if self.target is None else (1, self.label, self.target)


@dataclass(frozen=True)
class EquationSystem:
    """
    Constants C_1..C_n (index 0 is the root) with bodies given as
    summand lists. Bodies are kept in canonical order: terminal before
    non-terminal, then by label, then by target index.
    """
    names: Tuple[str, ...]
    bodies: Tuple[Tuple[Summand, ...], ...]

    def __post_init__(self):
        if len(self.names) != len(self.bodies):
            raise ValueError("every constant needs exactly one body")
        for body in self.bodies:
            for s in body:
                if s.target is not None and not 0 <= s.target < len(self.names):
                    raise ValueError(f"summand {s} refers outside the system")

    @classmethod
    def build(cls, names: Sequence[str], bodies: Sequence[Sequence[Summand]]) -> "EquationSystem":
        return cls(tuple(names), tuple(tuple(sorted(b, key=Summand.sort_key)) for b in bodies))

    def __len__(self) -> int:
        return len(self.names)

    @property
    def alphabet(self) -> FrozenSet[Symbol]:
        return frozenset(s.label for body in self.bodies for s in body if s.label != EPS)

    def terminals(self, i: int) -> FrozenSet[Symbol]:
        return frozenset(s.label for s in self.bodies[i] if s.terminal)

    def successors(self, i: int, label: Symbol) -> List[int]:
        return [s.target for s in self.bodies[i] if not s.terminal and s.label == label]

    def render(self, i: int, targets: Sequence[Term]) -> Term:
        """Body i as a left-nested sum, with targets[j] standing for constant j."""
        parts = [PrefixOne(s.label) if s.terminal else Prefix(s.label, targets[s.target]) for s in self.bodies[i]]
        return sum_of(parts)

    def body_term(self, i: int) -> Term:
        return self.render(i, [ConstRef(n) for n in self.names])

    def definitions(self) -> Dict[str, Term]:
        return {name: self.body_term(i) for i, name in enumerate(self.names)}


# --- Checker reports ---
class StepVerdict(BaseModel):
    """The outcome of re-checking a single step."""
    step_id: int = Field(..., description="Id of the checked step.")
    ok: bool = Field(..., description="Whether the step's claim is justified.")
    reason: Optional[str] = Field(None, description="The first failing condition, when not ok.")


class ProofVerdict(BaseModel):
    """Overall verdict on a certificate."""
    ok: bool = Field(..., description="True iff every step and the goal check out.")
    goal_ok: bool = Field(..., description="Whether the goal equals the conclusion of the final step.")
    steps: List[StepVerdict] = Field(default_factory=list, description="One verdict per step, in order.")

    @property
    def first_failure(self) -> Optional[StepVerdict]:
        return next((s for s in self.steps if not s.ok), None)
