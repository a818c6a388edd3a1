# In: logic/semantics_logic.py
"""
Denotational semantics (terms to reduced GFAs), the inverse
representability compiler, and bounded languages of open terms.
"""
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, NamedTuple, Set, Tuple

from core.errors import EpsilonInVarLanguage, NotReduced, UnguardedBody
from .automata_logic import is_reduced, language_up_to, words_reaching
from .automata_models import EPS, Gfa, Transition, Word
from .term_logic import constants_of, is_guarded
from .term_models import ConstRef, Prefix, PrefixOne, Process, ProcessEnv, Sum, Term, Zero, sum_of
from .term_parser import print_term

FINAL_STATE = "1"


class _Denotation(NamedTuple):
    states: FrozenSet[str]
    alphabet: FrozenSet[str]
    transitions: FrozenSet[Transition]
    initial: str


@dataclass(frozen=True)
class OpenLanguages:
    """Truncations of the words reaching 1 (l_down) and of the words reaching the variable (l_var)."""
    l_down: FrozenSet[Word]
    l_var: FrozenSet[Word]
    bound: int


def _check_well_formed(p: Process) -> None:
    if not (isinstance(p.root, ConstRef) or is_guarded(p.root)):
        raise UnguardedBody(f"root '{print_term(p.root)}' is neither a constant nor a guarded term")
    for name in sorted(constants_of(p.root, p.env)):
        body = p.env.body(name)
        if not is_guarded(body):
            raise UnguardedBody(f"body of '{name}' is not guarded: {print_term(body)}")


def _prune_initial(d: _Denotation) -> Tuple[FrozenSet[str], FrozenSet[Transition]]:
    """Drops the initial state and its outgoing edges unless some transition targets it."""
    if any(t == d.initial for _, _, t in d.transitions):
        return d.states, d.transitions
    return (d.states - {d.initial},
            frozenset(tr for tr in d.transitions if tr[0] != d.initial))


def denote(p: Process) -> Gfa:
    """
    ⟦p⟧ with I = ∅, computed clause by clause. States are printed
    terms and the final state is '1'.

    Raises:
        UndefinedConstant: if p depends on a constant without definition.
        UnguardedBody: if the root or a reachable body is not guarded.
    """
    _check_well_formed(p)
    cache: Dict[Tuple[Term, FrozenSet[str]], _Denotation] = {}

    def den(t: Term, inspected: FrozenSet[str]) -> _Denotation:
        key = (t, inspected)
        if key in cache:
            return cache[key]
        if isinstance(t, Zero):
            result = _Denotation(frozenset({"0"}), frozenset(), frozenset(), "0")
        elif isinstance(t, PrefixOne):
            name = print_term(t)
            alphabet = frozenset() if t.label == EPS else frozenset({t.label})
            result = _Denotation(frozenset({name}), alphabet, frozenset({(name, t.label, FINAL_STATE)}), name)
        elif isinstance(t, Prefix):
            sub = den(t.body, inspected)
            name = print_term(t)
            result = _Denotation(sub.states | {name}, sub.alphabet | {t.action},
                                 sub.transitions | {(name, t.action, sub.initial)}, name)
        elif isinstance(t, Sum):
            name = print_term(t)
            states, transitions, alphabet = {name}, set(), set()
            for sub in (den(t.left, inspected), den(t.right, inspected)):
                kept_states, kept_transitions = _prune_initial(sub)
                states |= kept_states
                transitions |= kept_transitions
                transitions |= {(name, a, r) for s, a, r in sub.transitions if s == sub.initial}
                alphabet |= sub.alphabet
            result = _Denotation(frozenset(states), frozenset(alphabet), frozenset(transitions), name)
        elif isinstance(t, ConstRef):
            if t.name in inspected:
                result = _Denotation(frozenset({t.name}), frozenset(), frozenset(), t.name)
            else:
                sub = den(p.env.body(t.name), inspected | {t.name})
                kept_states, kept_transitions = _prune_initial(sub)
                relabelled = {(t.name, a, r) for s, a, r in sub.transitions if s == sub.initial}
                result = _Denotation(kept_states | {t.name}, sub.alphabet,
                                     kept_transitions | relabelled, t.name)
        else:
            # open terms: the variable is an inert marker state
            result = _Denotation(frozenset({t.name}), frozenset(), frozenset(), t.name)
        cache[key] = result
        return result

    d = den(p.root, frozenset())
    final = FINAL_STATE if any(t == FINAL_STATE for _, _, t in d.transitions) else None
    logging.debug(f"SEMANTICS: denote | states={len(d.states)} | transitions={len(d.transitions)}")
    return Gfa(states=d.states, alphabet=d.alphabet, transitions=d.transitions, initial=d.initial, final=final)


def gfa_to_term(g: Gfa) -> Process:
    """
    One constant per non-final state (C0 for the initial state, then in
    state-id order). Each body sums the outgoing transitions sorted by
    (label, target id): a.1 into the final state, a.Cj otherwise, 𝟘 for
    a deadlock.
    """
    if not is_reduced(g):
        raise NotReduced("only reduced automata are representable; reduce the automaton first")
    ordered = [g.initial] + sorted(q for q in g.states if q != g.initial)
    names = {q: f"C{i}" for i, q in enumerate(ordered)}
    defs = {}
    for q in ordered:
        parts = []
        for _, label, target in sorted(g.outgoing(q), key=lambda tr: (tr[1], tr[2])):
            if target == g.final:
                parts.append(PrefixOne(label))
            else:
                parts.append(Prefix(label, ConstRef(names[target])))
        defs[names[q]] = sum_of(parts)
    return Process(root=ConstRef(names[g.initial]), env=ProcessEnv(defs))


def open_languages_up_to(p: Term, x: str, env: ProcessEnv, k: int) -> OpenLanguages:
    """L_p^↓ and L_p^x truncated at length k, reading x as an absorbing marker state."""
    g = denote(Process(root=p, env=env))
    l_down = language_up_to(g, k)
    l_var = words_reaching(g, {x}, k) if x in g.states else set()
    return OpenLanguages(frozenset(l_down), frozenset(l_var), k)


def lfp_language_up_to(l_down: Set[Word], l_var: Set[Word], k: int) -> Set[Word]:
    """Iterates W ↦ l_down ∪ l_var·W from ∅ until the ≤k truncation is stable."""
    if () in l_var:
        raise EpsilonInVarLanguage("the variable language contains ε; the iteration would not contract")
    base = {w for w in l_down if len(w) <= k}
    current: Set[Word] = set()
    while True:
        nxt = base | {u + w for u in l_var for w in current if len(u) + len(w) <= k}
        if nxt == current:
            return current
        current = nxt
