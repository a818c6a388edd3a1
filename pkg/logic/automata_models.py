# In: logic/automata_models.py

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple
from pydantic import BaseModel, Field

Symbol = str
Word = Tuple[Symbol, ...]
Transition = Tuple[str, Symbol, str]

# The distinguished ε label. It is never a member of an alphabet.
EPS: Symbol = "eps"


@dataclass(frozen=True)
class Gfa:
    """
    A finite automaton (Q, A, T, F, q0) satisfying the GFA clauses:
    at most one final state, which is neither initial nor a source,
    and every ε edge targets it. Build instances through validate_gfa.
    """
    states: FrozenSet[str]
    alphabet: FrozenSet[Symbol]
    transitions: FrozenSet[Transition]
    initial: str
    final: Optional[str] = None

    @property
    def all_states(self) -> FrozenSet[str]:
        """Q ∪ F."""
        if self.final is None:
            return self.states
        return self.states | {self.final}

    def outgoing(self, state: str) -> List[Transition]:
        return sorted(t for t in self.transitions if t[0] == state)

    def successors(self) -> Dict[str, List[Tuple[Symbol, str]]]:
        """Adjacency map from every state in Q ∪ F to its sorted (label, target) pairs."""
        adjacency: Dict[str, List[Tuple[Symbol, str]]] = {q: [] for q in self.all_states}
        for source, label, target in self.transitions:
            adjacency[source].append((label, target))
        for edges in adjacency.values():
            edges.sort()
        return adjacency


class GfaDescription(BaseModel):
    """The raw, unchecked description of an automaton, as found in a .gfa record."""
    states: List[str] = Field(..., description="Non-final state ids (Q).")
    final: Optional[str] = Field(None, description="The final state id, if any (F).")
    initial: str = Field(..., description="The initial state id (q0).")
    alphabet: List[Symbol] = Field(default_factory=list, description="Action symbols (A); never contains 'eps'.")
    transitions: List[Tuple[str, str, str]] = Field(
        default_factory=list, description="Triples [source, label, target]; label 'eps' stands for ε."
    )


@dataclass(frozen=True)
class Dfa:
    """Result of the subset construction: total over `alphabet`."""
    states: FrozenSet[str]
    alphabet: Tuple[Symbol, ...]
    delta: Dict[Tuple[str, Symbol], str] = field(hash=False, compare=True)
    accepting: FrozenSet[str] = frozenset()
    initial: str = "{}"

    def step(self, state: str, symbol: Symbol) -> str:
        return self.delta[(state, symbol)]


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Outcome of a language-equivalence query. Truthy exactly when equivalent."""
    equivalent: bool
    counterexample: Optional[Word] = None

    def __bool__(self) -> bool:
        return self.equivalent


# --- Regular grammars ---
@dataclass(frozen=True, order=True)
class TerminalNonterminal:
    symbol: Symbol
    target: str


@dataclass(frozen=True, order=True)
class Terminal:
    symbol: Symbol


@dataclass(frozen=True, order=True)
class Empty:
    pass


@dataclass(frozen=True)
class Production:
    head: str
    rhs: object  # TerminalNonterminal | Terminal | Empty

    def sort_key(self) -> Tuple:
        if isinstance(self.rhs, TerminalNonterminal):
            return (self.head, 0, self.rhs.symbol, self.rhs.target)
        if isinstance(self.rhs, Terminal):
            return (self.head, 1, self.rhs.symbol, "")
        return (self.head, 2, "", "")


@dataclass(frozen=True)
class Grammar:
    """A regular grammar with productions A→aB, A→a and A→ε."""
    nonterminals: FrozenSet[str]
    start: str
    productions: FrozenSet[Production]

    def productions_of(self, head: str) -> List[Production]:
        return sorted((p for p in self.productions if p.head == head), key=Production.sort_key)
