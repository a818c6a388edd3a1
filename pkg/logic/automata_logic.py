# In: logic/automata_logic.py
"""
Core automata operations: validation, reachability, saturation,
ε-stripping, and the exact decision procedures (language equivalence,
bisimilarity, isomorphism) that the prover uses as its oracle.
"""
import logging
import re
from collections import deque
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple, Union

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher
from networkx.utils import UnionFind
from pydantic import ValidationError

from core.errors import (
    EpsilonToNonFinal, FinalAmongStates, FinalIsInitial, FormatError,
    NotSaturated, OutgoingFromFinal, UnknownLabel, UnknownState,
)
from .automata_models import EPS, Dfa, EquivalenceVerdict, Gfa, GfaDescription, Symbol, Transition, Word

SYMBOL_PATTERN = re.compile(r"^[a-z][a-z0-9_]*$")


# --- Step 1: Construction and validation ---
def validate_gfa(raw: Union[GfaDescription, Mapping]) -> Gfa:
    """
    Checks a candidate description against the GFA clauses and
    returns the immutable automaton.

    Raises:
        FormatError: if the description itself is malformed.
        GfaValidationError: (a subclass of) naming the violated clause.
    """
    if not isinstance(raw, GfaDescription):
        try:
            raw = GfaDescription.model_validate(raw)
        except ValidationError as e:
            problems = [(".".join(str(p) for p in err["loc"]), err["msg"]) for err in e.errors()]
            raise FormatError("invalid automaton description", problems) from e

    states = frozenset(raw.states)
    alphabet = frozenset(raw.alphabet)
    final = raw.final

    for symbol in sorted(alphabet):
        if symbol == EPS:
            raise UnknownLabel("'eps' cannot be a member of the alphabet", symbol)
        if not SYMBOL_PATTERN.match(symbol):
            raise UnknownLabel(f"'{symbol}' is not a valid action symbol", symbol)

    if final is not None and final == raw.initial:
        raise FinalIsInitial(f"final state '{final}' cannot be initial", final)
    if final is not None and final in states:
        raise FinalAmongStates(f"final state '{final}' must not be listed among the states", final)
    if raw.initial not in states:
        raise UnknownState(f"initial state '{raw.initial}' is not a state", raw.initial)

    targets = states | ({final} if final is not None else set())
    transitions = frozenset(tuple(t) for t in raw.transitions)
    for source, label, target in sorted(transitions):
        if final is not None and source == final:
            raise OutgoingFromFinal(f"transition {(source, label, target)} leaves the final state", (source, label, target))
        if source not in states:
            raise UnknownState(f"transition {(source, label, target)} has unknown source '{source}'", source)
        if target not in targets:
            raise UnknownState(f"transition {(source, label, target)} has unknown target '{target}'", target)
        if label == EPS:
            if target != final:
                raise EpsilonToNonFinal(f"ε transition {(source, label, target)} does not target the final state", (source, label, target))
        elif label not in alphabet:
            raise UnknownLabel(f"label '{label}' of {(source, label, target)} is not in the alphabet", label)

    return Gfa(states=states, alphabet=alphabet, transitions=transitions, initial=raw.initial, final=final)


def describe(g: Gfa) -> GfaDescription:
    """Canonical description of an automaton: every list sorted."""
    return GfaDescription(
        states=sorted(g.states),
        final=g.final,
        initial=g.initial,
        alphabet=sorted(g.alphabet),
        transitions=sorted(g.transitions),
    )


# --- Step 2: Reachability ---
def reach(g: Gfa, r: str) -> Set[str]:
    """Returns every state r' with r ⇒ r', r included."""
    if r not in g.all_states:
        raise UnknownState(f"'{r}' is not a state of the automaton", r)
    return nx.descendants(_as_graph(g), r) | {r}


def is_reduced(g: Gfa) -> bool:
    return reach(g, g.initial) == set(g.all_states)


def reduce(g: Gfa) -> Gfa:
    """Restricts g to the states reachable from its initial state."""
    kept = reach(g, g.initial)
    final = g.final if g.final in kept else None
    return Gfa(
        states=frozenset(q for q in g.states if q in kept),
        alphabet=g.alphabet,
        transitions=frozenset(t for t in g.transitions if t[0] in kept),
        initial=g.initial,
        final=final,
    )


def with_initial(g: Gfa, state: str) -> Gfa:
    """The part of g reachable from `state`, rooted there."""
    if state not in g.states:
        raise UnknownState(f"'{state}' is not a non-final state", state)
    return reduce(Gfa(g.states, g.alphabet, g.transitions, state, g.final))


def disjoint_union(g1: Gfa, g2: Gfa, initial_from: int = 1) -> Gfa:
    """
    Side-by-side union with states tagged '1:' and '2:'. Both final
    states map to the single final '1'; the initial state comes from
    the chosen side.
    """
    final = "1" if (g1.final is not None or g2.final is not None) else None

    def tag(side: int, g: Gfa, q: str) -> str:
        return final if q == g.final else f"{side}:{q}"

    states = {f"1:{q}" for q in g1.states} | {f"2:{q}" for q in g2.states}
    transitions = {(tag(1, g1, s), a, tag(1, g1, t)) for s, a, t in g1.transitions}
    transitions |= {(tag(2, g2, s), a, tag(2, g2, t)) for s, a, t in g2.transitions}
    initial = f"1:{g1.initial}" if initial_from == 1 else f"2:{g2.initial}"
    return Gfa(frozenset(states), g1.alphabet | g2.alphabet, frozenset(transitions), initial, final)


# --- Step 3: Saturation and ε-freeness ---
def _missing_saturation(g: Gfa) -> Set[Transition]:
    if g.final is None:
        return set()
    eps_states = {s for s, a, t in g.transitions if a == EPS}
    return {
        (s, a, g.final)
        for s, a, t in g.transitions
        if a != EPS and t in eps_states and (s, a, g.final) not in g.transitions
    }


def is_saturated(g: Gfa) -> bool:
    return not _missing_saturation(g)


def saturate(g: Gfa) -> Gfa:
    """Adds (q, a, 1) whenever q reaches the final state reading exactly a."""
    missing = _missing_saturation(g)
    if not missing:
        return g
    logging.debug(f"AUTOMATA: saturate | added={len(missing)}")
    return Gfa(g.states, g.alphabet, g.transitions | missing, g.initial, g.final)


def is_epsilon_free(g: Gfa) -> bool:
    return all(not (a == EPS and s != g.initial) for s, a, _ in g.transitions)


def strip_epsilon(g: Gfa) -> Gfa:
    """Removes ε edges leaving non-initial states. Only sound on saturated automata."""
    if not is_saturated(g):
        missing = sorted(_missing_saturation(g))
        raise NotSaturated(f"automaton is not saturated; missing {missing[0]}")
    kept = frozenset(t for t in g.transitions if not (t[1] == EPS and t[0] != g.initial))
    return Gfa(g.states, g.alphabet, kept, g.initial, g.final)


def is_semi_deterministic(g: Gfa, alpha: Iterable[Symbol]) -> bool:
    """Every non-final state has exactly one non-final a-successor for each a in alpha."""
    alpha = set(alpha)
    counts: Dict[Tuple[str, Symbol], int] = {}
    for s, a, t in g.transitions:
        if t != g.final and a in alpha:
            counts[(s, a)] = counts.get((s, a), 0) + 1
    return all(counts.get((q, a), 0) == 1 for q in g.states for a in alpha)


# --- Step 4: Languages ---
def _steps(g: Gfa) -> Dict[Tuple[str, Symbol], Set[str]]:
    table: Dict[Tuple[str, Symbol], Set[str]] = {}
    for s, a, t in g.transitions:
        if a != EPS:
            table.setdefault((s, a), set()).add(t)
    return table


def _accepting(g: Gfa, current: FrozenSet[str]) -> bool:
    if g.final is None:
        return False
    if g.final in current:
        return True
    return any(s in current and a == EPS for s, a, _ in g.transitions)


def accepts(g: Gfa, w: Word) -> bool:
    """True iff q0 ⇒ʷ 1."""
    table = _steps(g)
    current = frozenset({g.initial})
    for symbol in w:
        current = frozenset(t for q in current for t in table.get((q, symbol), ()))
        if not current:
            return False
    return _accepting(g, current)


def _enumerate(g: Gfa, k: int, keep: Callable[[FrozenSet[str]], bool]) -> Set[Word]:
    """Breadth-first walk over words of length ≤ k, tracking the reached state sets."""
    table = _steps(g)
    alphabet = sorted(g.alphabet)
    found: Set[Word] = set()
    frontier: List[Tuple[Word, FrozenSet[str]]] = [((), frozenset({g.initial}))]
    for length in range(k + 1):
        next_frontier = []
        for word, current in frontier:
            if keep(current):
                found.add(word)
            if length == k:
                continue
            for symbol in alphabet:
                nxt = frozenset(t for q in current for t in table.get((q, symbol), ()))
                if nxt:
                    next_frontier.append((word + (symbol,), nxt))
        frontier = next_frontier
    return found


def language_up_to(g: Gfa, k: int) -> Set[Word]:
    """L[g] ∩ A^{≤k}."""
    return _enumerate(g, k, lambda current: _accepting(g, current))


def words_reaching(g: Gfa, targets: Iterable[str], k: int) -> Set[Word]:
    """Words of length ≤ k that lead from q0 into one of `targets` (no trailing ε)."""
    targets = frozenset(targets)
    return _enumerate(g, k, lambda current: bool(current & targets))


# --- Step 5: Determinization and language equivalence ---
def subset_name(members: Iterable[str]) -> str:
    return "{" + ",".join(sorted(members)) + "}"


def determinize(g: Gfa, alphabet: Iterable[Symbol] = ()) -> Dfa:
    """Subset construction over g.alphabet ∪ alphabet; the empty subset is the sink '{}'."""
    symbols = tuple(sorted(set(alphabet) | g.alphabet))
    table = _steps(g)
    start = frozenset({g.initial})
    names = {start: subset_name(start)}
    delta: Dict[Tuple[str, Symbol], str] = {}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for symbol in symbols:
            nxt = frozenset(t for q in current for t in table.get((q, symbol), ()))
            if nxt not in names:
                names[nxt] = subset_name(nxt)
                queue.append(nxt)
            delta[(names[current], symbol)] = names[nxt]
    accepting = frozenset(name for subset, name in names.items() if _accepting(g, subset))
    return Dfa(states=frozenset(names.values()), alphabet=symbols, delta=delta,
               accepting=accepting, initial=names[start])


def _shortest_distinguishing_word(d1: Dfa, d2: Dfa) -> Optional[Word]:
    """Product BFS in shortlex order; the first disagreeing pair yields the least counterexample."""
    start = (d1.initial, d2.initial)
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (s1, s2), word = queue.popleft()
        if (s1 in d1.accepting) != (s2 in d2.accepting):
            return word
        for symbol in d1.alphabet:
            pair = (d1.step(s1, symbol), d2.step(s2, symbol))
            if pair not in seen:
                seen.add(pair)
                queue.append((pair, word + (symbol,)))
    return None


def lang_equiv(g1: Gfa, g2: Gfa) -> EquivalenceVerdict:
    """
    Decides L[g1] = L[g2] by determinizing both over A1 ∪ A2 and
    merging state pairs with union-find. On inequivalence the verdict
    carries the shortest, lexicographically least distinguishing word.
    """
    alphabet = g1.alphabet | g2.alphabet
    d1, d2 = determinize(g1, alphabet), determinize(g2, alphabet)

    classes = UnionFind()
    queue = deque([(("1", d1.initial), ("2", d2.initial))])
    classes.union(*queue[0])
    equivalent = True
    while queue:
        (_, s1), (_, s2) = queue.popleft()
        if (s1 in d1.accepting) != (s2 in d2.accepting):
            equivalent = False
            break
        for symbol in d1.alphabet:
            n1, n2 = ("1", d1.step(s1, symbol)), ("2", d2.step(s2, symbol))
            if classes[n1] != classes[n2]:
                classes.union(n1, n2)
                queue.append((n1, n2))

    if equivalent:
        return EquivalenceVerdict(True)
    word = _shortest_distinguishing_word(d1, d2)
    logging.debug(f"AUTOMATA: lang_equiv | equivalent=False | counterexample={word}")
    return EquivalenceVerdict(False, word)


# --- Step 6: Bisimulation and isomorphism ---
def bisimilar_states(g: Gfa, r1: str, r2: str) -> bool:
    """Partition refinement over Q ∪ F; ε is an ordinary label, finals start in their own block."""
    for r in (r1, r2):
        if r not in g.all_states:
            raise UnknownState(f"'{r}' is not a state of the automaton", r)
    adjacency = g.successors()
    block = {q: int(q == g.final) for q in g.all_states}
    count = len(set(block.values()))
    while True:
        signatures = {
            q: (block[q], tuple(sorted({(a, block[t]) for a, t in adjacency[q]})))
            for q in g.all_states
        }
        numbering = {sig: i for i, sig in enumerate(sorted(set(signatures.values())))}
        block = {q: numbering[sig] for q, sig in signatures.items()}
        if len(numbering) == count:
            break
        count = len(numbering)
    return block[r1] == block[r2]


def bisimilar(g1: Gfa, g2: Gfa) -> bool:
    """Decides q01 ≃ q02 over the disjoint union of the two automata."""
    union = disjoint_union(g1, g2)
    return bisimilar_states(union, f"1:{g1.initial}", f"2:{g2.initial}")


def _as_graph(g: Gfa) -> nx.DiGraph:
    graph = nx.DiGraph()
    outgoing: Dict[str, List[Symbol]] = {q: [] for q in g.all_states}
    incoming: Dict[str, List[Symbol]] = {q: [] for q in g.all_states}
    labels: Dict[Tuple[str, str], Set[Symbol]] = {}
    for s, a, t in g.transitions:
        outgoing[s].append(a)
        incoming[t].append(a)
        labels.setdefault((s, t), set()).add(a)
    for q in g.all_states:
        kind = "final" if q == g.final else ("initial" if q == g.initial else "state")
        signature = (kind, tuple(sorted(outgoing[q])), tuple(sorted(incoming[q])))
        graph.add_node(q, signature=signature)
    for (s, t), symbols in labels.items():
        graph.add_edge(s, t, labels=frozenset(symbols))
    return graph


def isomorphic(g1: Gfa, g2: Gfa) -> Optional[Dict[str, str]]:
    """
    Returns a type-, transition- and initial-preserving bijection from
    the states of g1 to those of g2, or None. Nodes only match when
    their kind and in/out label signatures agree.
    """
    if len(g1.all_states) != len(g2.all_states) or len(g1.transitions) != len(g2.transitions):
        return None
    if (g1.final is None) != (g2.final is None):
        return None
    if sorted(a for _, a, _ in g1.transitions) != sorted(a for _, a, _ in g2.transitions):
        return None
    matcher = DiGraphMatcher(
        _as_graph(g1), _as_graph(g2),
        node_match=lambda n1, n2: n1["signature"] == n2["signature"],
        edge_match=lambda e1, e2: e1["labels"] == e2["labels"],
    )
    if not matcher.is_isomorphic():
        return None
    return dict(matcher.mapping)

