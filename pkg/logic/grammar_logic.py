# In: logic/grammar_logic.py
"""Regular grammars and their one-to-one correspondence with GFAs."""
import re
from typing import Dict, Iterable

from core.errors import UnknownNonterminal
from .automata_logic import validate_gfa
from .automata_models import (
    EPS, Empty, Gfa, GfaDescription, Grammar, Production, Terminal, TerminalNonterminal,
)

NONTERMINAL_PATTERN = re.compile(r"^[A-Z][A-Za-z0-9_]*$")
FINAL_STATE = "1"


def validate_grammar(nonterminals: Iterable[str], start: str, productions: Iterable[Production]) -> Grammar:
    nonterminals = frozenset(nonterminals)
    productions = frozenset(productions)
    if start not in nonterminals:
        raise UnknownNonterminal(f"start symbol '{start}' is not a nonterminal")
    for production in sorted(productions, key=Production.sort_key):
        if production.head not in nonterminals:
            raise UnknownNonterminal(f"production head '{production.head}' is not a nonterminal")
        rhs = production.rhs
        if isinstance(rhs, TerminalNonterminal) and rhs.target not in nonterminals:
            raise UnknownNonterminal(f"'{production.head} -> {rhs.symbol} {rhs.target}' references unknown '{rhs.target}'")
    return Grammar(nonterminals=nonterminals, start=start, productions=productions)


def grammar_to_gfa(gr: Grammar) -> Gfa:
    """
    A→aB gives (A, a, B), A→a gives (A, a, 1) and A→ε gives (A, ε, 1).
    The final state exists only when some production needs it.
    """
    transitions = []
    alphabet = set()
    needs_final = False
    for production in gr.productions:
        rhs = production.rhs
        if isinstance(rhs, TerminalNonterminal):
            transitions.append((production.head, rhs.symbol, rhs.target))
            alphabet.add(rhs.symbol)
        elif isinstance(rhs, Terminal):
            transitions.append((production.head, rhs.symbol, FINAL_STATE))
            alphabet.add(rhs.symbol)
            needs_final = True
        else:
            transitions.append((production.head, EPS, FINAL_STATE))
            needs_final = True
    return validate_gfa(GfaDescription(
        states=sorted(gr.nonterminals),
        final=FINAL_STATE if needs_final else None,
        initial=gr.start,
        alphabet=sorted(alphabet),
        transitions=sorted(transitions),
    ))


def _nonterminal_names(g: Gfa) -> Dict[str, str]:
    """State ids are kept when they are already valid nonterminals, otherwise renamed N0, N1, ... (initial first)."""
    if all(NONTERMINAL_PATTERN.match(q) for q in g.states):
        return {q: q for q in g.states}
    ordered = [g.initial] + sorted(q for q in g.states if q != g.initial)
    return {q: f"N{i}" for i, q in enumerate(ordered)}


def gfa_to_grammar(g: Gfa) -> Grammar:
    """Inverse of grammar_to_gfa. The final state produces no nonterminal; deadlock states keep an empty production set."""
    names = _nonterminal_names(g)
    productions = set()
    for source, label, target in g.transitions:
        head = names[source]
        if target == g.final:
            productions.add(Production(head, Empty() if label == EPS else Terminal(label)))
        else:
            productions.add(Production(head, TerminalNonterminal(label, names[target])))
    return validate_grammar(names.values(), names[g.initial], productions)
