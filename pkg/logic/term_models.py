# In: logic/term_models.py

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Union

from core.errors import UndefinedConstant
from .automata_models import EPS, Symbol


# --- Abstract syntax ---
@dataclass(frozen=True)
class Zero:
    """The deadlocked process 𝟘."""


@dataclass(frozen=True)
class PrefixOne:
    """α.1, the only place where ε may appear."""
    label: Symbol


@dataclass(frozen=True)
class Prefix:
    """a.p with a ≠ ε."""
    action: Symbol
    body: "Term"


@dataclass(frozen=True)
class Sum:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class ConstRef:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


Term = Union[Zero, PrefixOne, Prefix, Sum, ConstRef, Var]

ZERO = Zero()
EPS_ONE = PrefixOne(EPS)


def sum_of(items: Iterable[Term]) -> Term:
    """Left-nested sum of the items; 𝟘 for none."""
    items = list(items)
    if not items:
        return ZERO
    result = items[0]
    for item in items[1:]:
        result = Sum(result, item)
    return result


def summands(t: Term) -> List[Term]:
    """The leaves of the top-level sum tree, left to right."""
    if isinstance(t, Sum):
        return summands(t.left) + summands(t.right)
    return [t]


# --- Constant definitions ---
@dataclass(frozen=True)
class ProcessEnv:
    """A finite map of constant definitions C ≐ s."""
    defs: Mapping[str, Term] = field(default_factory=dict)

    def __contains__(self, name: str) -> bool:
        return name in self.defs

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.defs))

    def __len__(self) -> int:
        return len(self.defs)

    def body(self, name: str) -> Term:
        if name not in self.defs:
            raise UndefinedConstant(name)
        return self.defs[name]

    def get(self, name: str):
        return self.defs.get(name)

    def extended(self, new_defs: Mapping[str, Term]) -> "ProcessEnv":
        merged: Dict[str, Term] = dict(self.defs)
        merged.update(new_defs)
        return ProcessEnv(merged)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProcessEnv) and dict(self.defs) == dict(other.defs)

    def __hash__(self) -> int:
        return hash(frozenset(self.defs.items()))


@dataclass(frozen=True)
class Process:
    """A root term together with the definitions it may reference."""
    root: Term
    env: ProcessEnv = field(default_factory=ProcessEnv)
