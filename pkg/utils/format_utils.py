# In: utils/format_utils.py
from typing import Iterable, List, Mapping, Optional, Set

from config import EPS_DISPLAY
from logic.automata_models import Word
from logic.proof_models import Axiom, ProofVerdict


def format_word(w: Word) -> str:
    """Concatenated when every symbol is one character, space-separated otherwise."""
    if not w:
        return EPS_DISPLAY
    if all(len(symbol) == 1 for symbol in w):
        return "".join(w)
    return " ".join(w)


def format_language(words: Iterable[Word]) -> List[str]:
    """Shortest words first, then lexicographic on the symbols."""
    return [format_word(w) for w in sorted(set(words), key=lambda w: (len(w), w))]


def format_mapping(mapping: Mapping[str, str]) -> List[str]:
    return [f"{source} -> {target}" for source, target in sorted(mapping.items())]


def format_counterexample(w: Optional[Word]) -> str:
    return f"inequivalent: counterexample {format_word(w)}" if w is not None else "inequivalent"


def format_axioms(axioms: Set[Axiom]) -> str:
    names = sorted(a.value for a in axioms)
    return "axioms: " + (" ".join(names) if names else "none")


def format_verdict(verdict: ProofVerdict) -> List[str]:
    """`valid`, or the first failing step and its reason."""
    if verdict.ok:
        return ["valid"]
    failure = verdict.first_failure
    if failure is not None:
        return [f"invalid: step {failure.step_id}: {failure.reason}"]
    return ["invalid: the last step does not conclude the goal"]
