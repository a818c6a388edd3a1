# In: data/generators.py
"""
Seeded random instances for property tests and the `sample` command.
Every generator takes a random.Random so a seed reproduces its output.
"""
import random
from typing import List, Optional, Sequence

from logic.automata_logic import reduce, saturate, strip_epsilon, validate_gfa
from logic.automata_models import EPS, Gfa, Grammar
from logic.grammar_logic import gfa_to_grammar
from logic.semantics_logic import denote, gfa_to_term
from logic.term_models import ZERO, ConstRef, Prefix, PrefixOne, Process, ProcessEnv, Sum, Term, Var

DEFAULT_ALPHABET = ("a", "b")
FINAL = "f"


def random_gfa(rng: random.Random, max_states: int = 4, alphabet: Sequence[str] = DEFAULT_ALPHABET,
               density: float = 0.3) -> Gfa:
    """Any GFA: ε edges, nondeterminism, unreachable states and deadlocks all allowed."""
    n = rng.randint(1, max_states)
    states = [f"q{i}" for i in range(n)]
    transitions = set()
    for source in states:
        for label in alphabet:
            for target in states + [FINAL]:
                if rng.random() < density:
                    transitions.add((source, label, target))
        if rng.random() < density:
            transitions.add((source, EPS, FINAL))
    final = FINAL if any(t == FINAL for _, _, t in transitions) or rng.random() < 0.5 else None
    if final is None:
        transitions = {t for t in transitions if t[2] != FINAL}
    return validate_gfa({
        "states": states, "final": final, "initial": "q0",
        "alphabet": list(alphabet), "transitions": sorted(transitions),
    })


def random_reduced_gfa(rng: random.Random, max_states: int = 4, alphabet: Sequence[str] = DEFAULT_ALPHABET) -> Gfa:
    return reduce(random_gfa(rng, max_states, alphabet))


def random_saturated_dgfa(rng: random.Random, max_states: int = 4,
                          alphabet: Sequence[str] = DEFAULT_ALPHABET) -> Gfa:
    """
    A reduced, saturated, ε-free GFA in which every non-final state has
    exactly one non-final successor per symbol. When the empty word is
    accepted, the ε edge leaves a root state that no transition enters.
    """
    n = rng.randint(1, max_states)
    states = [f"q{i}" for i in range(n)]
    transitions = set()
    accepting = {q for q in states if rng.random() < 0.4}
    for source in states:
        for label in alphabet:
            target = rng.choice(states)
            transitions.add((source, label, target))
            if target in accepting:
                transitions.add((source, label, FINAL))
    initial = "q0"
    if rng.random() < 0.3:
        initial = "root"
        transitions |= {(initial, a, t) for s, a, t in list(transitions) if s == "q0"}
        transitions.add((initial, EPS, FINAL))
        states.append(initial)
    final = FINAL if any(t == FINAL for _, _, t in transitions) else None
    g = validate_gfa({
        "states": states, "final": final, "initial": initial,
        "alphabet": list(alphabet), "transitions": sorted(transitions),
    })
    return reduce(g)


def unrolled(g: Gfa) -> Gfa:
    """Two copies of g whose non-final edges alternate between the copies; same language."""
    def copy(q: str, side: int) -> str:
        return q if q == g.final else f"{q}_{side}"

    transitions = []
    for source, label, target in g.transitions:
        for side in (0, 1):
            flipped = side if label == EPS else 1 - side
            transitions.append((copy(source, side), label, copy(target, flipped)))
    return validate_gfa({
        "states": [copy(q, side) for q in g.states for side in (0, 1)], "final": g.final,
        "initial": copy(g.initial, 0), "alphabet": sorted(g.alphabet), "transitions": sorted(transitions),
    })


def random_grammar(rng: random.Random, max_states: int = 4, alphabet: Sequence[str] = DEFAULT_ALPHABET) -> Grammar:
    return gfa_to_grammar(random_gfa(rng, max_states, alphabet))


# --- Terms ---
def random_guarded_term(rng: random.Random, depth: int, constants: Sequence[str],
                        alphabet: Sequence[str] = DEFAULT_ALPHABET, variables: Sequence[str] = ()) -> Term:
    """A guarded term: constants and variables only ever occur under a prefix."""
    roll = rng.random()
    if depth <= 0 or roll < 0.25:
        if roll < 0.05:
            return ZERO
        return PrefixOne(rng.choice(list(alphabet) + [EPS]))
    if roll < 0.7:
        targets: List[Term] = [ConstRef(c) for c in constants] + [Var(v) for v in variables]
        if targets and rng.random() < 0.7:
            body = rng.choice(targets)
        else:
            body = random_guarded_term(rng, depth - 1, constants, alphabet, variables)
        return Prefix(rng.choice(alphabet), body)
    return Sum(random_guarded_term(rng, depth - 1, constants, alphabet, variables),
               random_guarded_term(rng, depth - 1, constants, alphabet, variables))


def random_process(rng: random.Random, max_constants: int = 3, depth: int = 2,
                   alphabet: Sequence[str] = DEFAULT_ALPHABET) -> Process:
    """A closed, guarded process; the root is a constant half of the time."""
    constants = [f"C{i}" for i in range(rng.randint(0, max_constants))]
    defs = {c: random_guarded_term(rng, depth, constants, alphabet) for c in constants}
    if constants and rng.random() < 0.5:
        root: Term = ConstRef(constants[0])
    else:
        root = random_guarded_term(rng, depth, constants, alphabet)
    return Process(root=root, env=ProcessEnv(defs))


def random_open_term(rng: random.Random, var: str = "x", depth: int = 2, env: Optional[ProcessEnv] = None,
                     alphabet: Sequence[str] = DEFAULT_ALPHABET) -> Term:
    constants = sorted(env.defs) if env is not None else []
    return random_guarded_term(rng, depth, constants, alphabet, variables=(var,))


def equivalent_variant(rng: random.Random, p: Process) -> Process:
    """
    A process with the same language as p: either the automaton of p read
    back as a term after saturation and ε-removal, or the unfolded root
    with a duplicated or deadlocked summand.
    """
    choice = rng.randrange(3)
    if choice == 0:
        return gfa_to_term(reduce(strip_epsilon(saturate(denote(p)))))
    root = p.root if not isinstance(p.root, ConstRef) else p.env.body(p.root.name)
    if choice == 1:
        return Process(root=Sum(root, root), env=p.env)
    return Process(root=Sum(ZERO, root), env=p.env)
