# <-- Certificate Adapter: JSON (de)serialization of proofs
# In: services/proof_format.py

from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, ValidationError, model_validator

from config import PROOF_FORMAT_VERSION
from core.errors import FormatError, SfmError
from logic.proof_models import ACTION_META, Axiom, Proof, ProofStep, StepKind, SystemPayload
from logic.term_models import ProcessEnv, Term
from logic.term_parser import parse_env, parse_term, print_term


# --- Schema ---
class SerializedSystem(BaseModel):
    variables: List[str] = Field(..., description="System variables X1..Xn.")
    bodies: List[str] = Field(..., description="Printed open bodies, one per variable.")
    left: List[str] = Field(..., description="Printed left solution tuple.")
    right: List[str] = Field(..., description="Printed right solution tuple.")
    left_premises: List[int] = Field(..., description="Steps proving the left tuple solves each equation.")
    right_premises: List[int] = Field(..., description="Steps proving the right tuple solves each equation.")
    index: int = Field(..., description="0-based index of the concluded component.")


class SerializedStep(BaseModel):
    id: int = Field(..., description="Unique step id.")
    kind: StepKind = Field(..., description="Rule applied by this step.")
    lhs: str = Field(..., description="Printed left endpoint.")
    rhs: str = Field(..., description="Printed right endpoint.")
    premises: List[int] = Field(default_factory=list, description="Ids of earlier steps used as premises.")
    axiom: Optional[Axiom] = Field(None, description="Axiom name for AxiomLR/AxiomRL.")
    path: List[str] = Field(default_factory=list, description="Selectors (left/right/body) locating the redex.")
    subst: Dict[str, str] = Field(default_factory=dict, description="Metavariable bindings; 'a' maps to an action.")
    direction: Optional[str] = Field(None, description="'lr' or 'rl' for Unfold steps.")
    action: Optional[str] = Field(None, description="Prefix action of a CongPrefix step.")
    constant: Optional[str] = Field(None, description="Constant of an Unfold or Fold step.")
    open_term: Optional[str] = Field(None, description="Printed open term p of a Fold step.")
    var: Optional[str] = Field(None, description="The variable of open_term.")
    system: Optional[SerializedSystem] = Field(None, description="Payload of a USys step.")

    def referenced(self) -> List[int]:
        if self.system is not None:
            return self.system.left_premises + self.system.right_premises
        return self.premises


class SerializedProof(BaseModel):
    """The .wproof record."""
    version: int = Field(..., description="Certificate format version.")
    env: Dict[str, str] = Field(default_factory=dict, description="Constant name to printed body.")
    goal: Tuple[str, str] = Field(..., description="Printed endpoints of the proven equation.")
    steps: List[SerializedStep] = Field(default_factory=list, description="Derivation steps in order.")

    @model_validator(mode="after")
    def check_references(self) -> "SerializedProof":
        if self.version != PROOF_FORMAT_VERSION:
            raise ValueError(f"unsupported version {self.version}; expected {PROOF_FORMAT_VERSION}")
        seen = set()
        for step in self.steps:
            for pid in step.referenced():
                if pid not in seen:
                    raise ValueError(f"step {step.id} references step {pid}, which does not precede it")
            seen.add(step.id)
        return self


# --- Writing ---
def _serialize_step(step: ProofStep) -> SerializedStep:
    system = None
    if step.system is not None:
        s = step.system
        system = SerializedSystem(
            variables=list(s.variables), bodies=[print_term(t) for t in s.bodies],
            left=[print_term(t) for t in s.left], right=[print_term(t) for t in s.right],
            left_premises=list(s.left_premises), right_premises=list(s.right_premises), index=s.index,
        )
    return SerializedStep(
        id=step.id, kind=step.kind, lhs=print_term(step.lhs), rhs=print_term(step.rhs),
        premises=list(step.premises), axiom=step.axiom, path=list(step.path),
        subst={k: v if isinstance(v, str) else print_term(v) for k, v in step.subst},
        direction=step.direction, action=step.action, constant=step.constant,
        open_term=None if step.open_term is None else print_term(step.open_term),
        var=step.var, system=system,
    )


def write_proof(pr: Proof) -> str:
    record = SerializedProof(
        version=PROOF_FORMAT_VERSION,
        env={name: print_term(pr.env.body(name)) for name in pr.env},
        goal=(print_term(pr.goal[0]), print_term(pr.goal[1])),
        steps=[_serialize_step(step) for step in pr.steps],
    )
    return record.model_dump_json(indent=2) + "\n"


# --- Reading ---
class _TermReader:
    """Parses printed terms, collecting every failure with its location."""

    def __init__(self):
        self.problems: List[Tuple[str, str]] = []

    def term(self, text: str, where: str, variables: Sequence[str] = ()) -> Optional[Term]:
        try:
            return parse_term(text, variables=variables, allow_generated=True)
        except SfmError as e:
            self.problems.append((where, str(e)))
            return None

    def definition(self, name: str, body: str) -> Optional[Term]:
        try:
            return parse_env(f"{name} := {body};").body(name)
        except SfmError as e:
            self.problems.append((f"env.{name}", str(e)))
            return None

    def terms(self, texts: Sequence[str], where: str, variables: Sequence[str] = ()) -> Tuple:
        return tuple(self.term(t, f"{where}.{i}", variables) for i, t in enumerate(texts))


def _deserialize_step(step: SerializedStep, reader: _TermReader, i: int) -> ProofStep:
    where = f"steps.{i}"
    system = None
    if step.system is not None:
        s = step.system
        system = SystemPayload(
            variables=tuple(s.variables), bodies=reader.terms(s.bodies, f"{where}.system.bodies", s.variables),
            left=reader.terms(s.left, f"{where}.system.left"), right=reader.terms(s.right, f"{where}.system.right"),
            left_premises=tuple(s.left_premises), right_premises=tuple(s.right_premises), index=s.index,
        )
    subst = tuple(sorted(
        (k, v if k == ACTION_META else reader.term(v, f"{where}.subst.{k}")) for k, v in step.subst.items()))
    open_term = None
    if step.open_term is not None:
        open_term = reader.term(step.open_term, f"{where}.open_term", [step.var] if step.var else [])
    return ProofStep(
        id=step.id, kind=step.kind, lhs=reader.term(step.lhs, f"{where}.lhs"), rhs=reader.term(step.rhs, f"{where}.rhs"),
        premises=tuple(step.premises), axiom=step.axiom, path=tuple(step.path), subst=subst,
        direction=step.direction, action=step.action, constant=step.constant,
        open_term=open_term, var=step.var, system=system,
    )


def read_proof(text: str) -> Proof:
    """
    Raises:
        FormatError: naming every schema violation or unparsable term.
    """
    try:
        record = SerializedProof.model_validate_json(text)
    except ValidationError as e:
        problems = [(".".join(str(p) for p in err["loc"]) or "record", err["msg"]) for err in e.errors()]
        raise FormatError("invalid certificate", problems) from e
    reader = _TermReader()
    env = ProcessEnv({name: reader.definition(name, body) for name, body in record.env.items()})
    goal = (reader.term(record.goal[0], "goal.0"), reader.term(record.goal[1], "goal.1"))
    steps = tuple(_deserialize_step(step, reader, i) for i, step in enumerate(record.steps))
    if reader.problems:
        raise FormatError("invalid certificate", reader.problems)
    return Proof(env=env, steps=steps, goal=goal)
