# In: logic/prover_logic.py
"""
The proof-producing completeness pipeline. Each stage rewrites a process
or equation system and records, in a shared ProofBuilder, why the old
root equals the new one:

    normal form -> equation system -> saturation -> semi-determinization
    -> ε-stripping -> merge of two equivalent systems

Every public stage has a builder-level twin (leading underscore) that
prove_equiv chains into a single certificate.
"""
import logging
import time
from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from core.errors import (
    AlphabetMismatch, AlphabetTooSmall, NameClash, PreconditionNotSaturated, ProofConstructionError,
)
from .automata_logic import lang_equiv, validate_gfa, with_initial
from .automata_models import EPS, Gfa, Symbol, Word
from .proof_builder import ProofBuilder
from .proof_models import ACTION_META, RIGHT_TO_LEFT, Axiom, EquationSystem, Proof, Summand
from .semantics_logic import FINAL_STATE, denote
from .term_logic import (
    BODY, LEFT, RIGHT, constants_of, find_summand, free_vars, is_normal_form, rename_constants, substitute,
)
from .term_models import (
    EPS_ONE, ConstRef, Prefix, PrefixOne, Process, ProcessEnv, Sum, Term, Var, Zero, sum_of, summands,
)

SystemStage = Tuple[EquationSystem, int]


def _variables(n: int) -> List[str]:
    return [f"X{i + 1}" for i in range(n)]


def _const_refs(names: Iterable[str]) -> List[Term]:
    return [ConstRef(n) for n in names]


def _subset_label(indices: Iterable[int]) -> str:
    return "{" + ",".join(str(i + 1) for i in sorted(indices)) + "}"


def _close_system(b: ProofBuilder, es: EquationSystem, left: Sequence[Term], left_premises: Sequence[int],
                  names: Sequence[str]) -> List[int]:
    """
    Defines names[i] as body i of es over the new names, then proves
    left[i] = names[i] for every i with one USys step per index. The
    left premises must prove left[i] = body i over the left tuple.
    """
    right = _const_refs(names)
    for i, name in enumerate(names):
        b.define(name, es.render(i, right))
    right_premises = [b.unfold(ConstRef(name), name)[0] for name in names]
    variables = _variables(len(es))
    bodies = [es.render(i, [Var(v) for v in variables]) for i in range(len(es))]
    return [b.usys(variables, bodies, left, right, left_premises, right_premises, k) for k in range(len(es))]


def system_to_gfa(es: EquationSystem) -> Gfa:
    """States are the constant names, α.1 summands lead to the final state '1'."""
    transitions = set()
    for i, name in enumerate(es.names):
        for s in es.bodies[i]:
            transitions.add((name, s.label, FINAL_STATE if s.terminal else es.names[s.target]))
    final = FINAL_STATE if any(t == FINAL_STATE for _, _, t in transitions) else None
    return validate_gfa({
        "states": list(es.names), "final": final, "initial": es.names[0],
        "alphabet": sorted(es.alphabet), "transitions": sorted(transitions),
    })


# --- Step 1: Normal form ---
def _normalize(b: ProofBuilder, p: Process) -> Tuple[Process, int]:
    """
    Abstracts every prefix target into a variable (user constants and
    compound targets alike) and closes the resulting guarded system with
    fresh constants in a single USys step.
    """
    if is_normal_form(p):
        return p, b.refl(p.root)

    order: List[Term] = []
    index: Dict[Term, int] = {}
    variables: List[str] = []

    def entry(target: Term) -> Var:
        if target not in index:
            index[target] = len(order)
            order.append(target)
            variables.append(f"X{len(order)}")
        return Var(variables[index[target]])

    def abstract(t: Term) -> Term:
        if isinstance(t, Prefix):
            return Prefix(t.action, entry(t.body))
        if isinstance(t, Sum):
            return Sum(abstract(t.left), abstract(t.right))
        return t

    root_open = entry(p.root) if isinstance(p.root, ConstRef) else abstract(p.root)
    bodies: List[Term] = []
    while len(bodies) < len(order):
        target = order[len(bodies)]
        bodies.append(abstract(p.env.body(target.name) if isinstance(target, ConstRef) else target))

    const_prefix, term_prefix = b.namespace("_N"), b.namespace("_K")
    names: List[str] = []
    const_count = term_count = 0
    for target in order:
        if isinstance(target, ConstRef):
            const_count += 1
            names.append(f"{const_prefix}{const_count}")
        else:
            term_count += 1
            names.append(f"{term_prefix}{term_count}")
    right = _const_refs(names)
    binding = dict(zip(variables, right))
    new_defs = {name: substitute(body, binding) for name, body in zip(names, bodies)}
    for name, body in new_defs.items():
        b.define(name, body)

    left_premises = [b.unfold(t, t.name)[0] if isinstance(t, ConstRef) else b.refl(t) for t in order]
    right_premises = [b.unfold(ConstRef(name), name)[0] for name in names]
    solved: Dict[str, int] = {}

    def solution(v: str) -> int:
        if v not in solved:
            solved[v] = b.usys(variables, bodies, order, right, left_premises, right_premises, variables.index(v))
        return solved[v]

    if isinstance(root_open, Var):
        sid = solution(root_open.name)
        new_root = ConstRef(names[0])
    else:
        sid = b.cong_subst(root_open, {v: solution(v) for v in sorted(free_vars(root_open))})
        new_root = substitute(root_open, binding)
    logging.debug(f"PROVER: normal form | constants={len(names)}")
    return Process(root=new_root, env=ProcessEnv(new_defs)), sid


def to_normal_form(p: Process) -> Tuple[Process, Proof]:
    """
    An equivalent process in normal form, with a proof of root = new root
    that uses only the axioms of B.
    """
    b = ProofBuilder(p.env)
    result, sid = _normalize(b, p)
    return result, b.finish(sid)


# --- Step 2: Systems of equations ---
def _summand_of(t: Term, index: Dict[str, int]) -> Summand:
    if isinstance(t, PrefixOne):
        return Summand(t.label)
    if isinstance(t, Prefix) and isinstance(t.body, ConstRef):
        return Summand(t.action, index[t.body.name])
    raise ProofConstructionError(f"summand of type {type(t).__name__} is not in normal form")


def _to_system(b: ProofBuilder, p: Process) -> SystemStage:
    if not is_normal_form(p):
        raise ProofConstructionError("equation systems are read off normal forms only")
    env = p.env
    if isinstance(p.root, ConstRef):
        root, sid = p.root.name, b.refl(p.root)
    else:
        root = f"{b.namespace('_W')}1"
        b.define(root, p.root)
        env = env.extended({root: p.root})
        sid = b.sym(b.unfold(ConstRef(root), root)[0])

    order, index = [root], {root: 0}
    queue = deque([root])
    while queue:
        for t in summands(env.body(queue.popleft())):
            if isinstance(t, Prefix) and isinstance(t.body, ConstRef) and t.body.name not in index:
                index[t.body.name] = len(order)
                order.append(t.body.name)
                queue.append(t.body.name)
    bodies = [[_summand_of(t, index) for t in summands(env.body(name)) if not isinstance(t, Zero)]
              for name in order]
    es = EquationSystem.build(order, bodies)
    if all(env.body(name) == es.body_term(i) for i, name in enumerate(order)):
        for name in order:
            b.define(name, env.body(name))
        return es, sid

    # re-canonicalize into fresh constants
    left = _const_refs(order)
    left_premises = []
    for i, name in enumerate(order):
        chain = b.chain(ConstRef(name)).unfold(name).drop_zeros().aci(es.render(i, left))
        left_premises.append(chain.close())
    prefix = b.namespace("_E")
    names = [f"{prefix}{i + 1}" for i in range(len(order))]
    solved = _close_system(b, es, left, left_premises, names)
    return EquationSystem(tuple(names), es.bodies), b.trans(sid, solved[0])


def to_equation_system(p: Process) -> EquationSystem:
    """
    Reads a normal-form process as a system of equations whose first
    constant is the root, wrapping a non-constant root in a fresh one.
    """
    return _to_system(ProofBuilder(p.env), p)[0]


# --- Step 3: Saturation ---
def _saturation_lemma(b: ProofBuilder, es: EquationSystem, action: Symbol, k: int) -> int:
    """a.C_k = a.C_k + a.1 for a constant C_k whose body has ε.1."""
    name = es.names[k]
    body = b.defs[name]
    eps_path = find_summand(body, EPS_ONE)
    if eps_path is None:
        raise ProofConstructionError(f"body of '{name}' has no ε.1 summand")
    chain = (b.chain(Prefix(action, ConstRef(name)))
             .unfold(name, (BODY,))
             .axiom(Axiom.A4, (BODY,) + eps_path, RIGHT_TO_LEFT)
             .aci(Prefix(action, Sum(body, EPS_ONE)))
             .axiom(Axiom.T2)
             .axiom(Axiom.T3, (RIGHT,))
             .refold(name, (LEFT, BODY)))
    return chain.close()


def _added_terminals(es: EquationSystem) -> List[List[Tuple[Symbol, int]]]:
    """Per constant, the (a, k) pairs whose a.1 saturation must add, one witness k per a."""
    added = []
    for h in range(len(es)):
        present = es.terminals(h)
        witnesses: Dict[Symbol, int] = {}
        for s in es.bodies[h]:
            if not s.terminal and s.label not in present and EPS in es.terminals(s.target):
                witnesses.setdefault(s.label, s.target)
        added.append(sorted(witnesses.items()))
    return added


def _saturate(b: ProofBuilder, es: EquationSystem) -> SystemStage:
    added = _added_terminals(es)
    if not any(added):
        return es, b.refl(ConstRef(es.names[0]))

    saturated = EquationSystem.build(
        es.names, [list(body) + [Summand(a) for a, _ in extra] for body, extra in zip(es.bodies, added)])
    left = _const_refs(es.names)
    lemmas: Dict[Tuple[Symbol, int], int] = {}
    left_premises = []
    for h, name in enumerate(es.names):
        chain = b.chain(ConstRef(name)).unfold(name)
        for action, k in added[h]:
            if (action, k) not in lemmas:
                lemmas[(action, k)] = _saturation_lemma(b, es, action, k)
            path = find_summand(chain.term, Prefix(action, ConstRef(es.names[k])))
            chain.then(b.lift(chain.term, path, lemmas[(action, k)]))
        left_premises.append(chain.aci(saturated.render(h, left)).close())

    prefix = b.namespace("_S")
    names = [f"{prefix}{i + 1}" for i in range(len(es))]
    solved = _close_system(b, saturated, left, left_premises, names)
    logging.debug(f"PROVER: saturation | added={sum(len(a) for a in added)}")
    return EquationSystem(tuple(names), saturated.bodies), solved[0]


def saturate_system(es: EquationSystem) -> Tuple[EquationSystem, Proof]:
    """Adds a.1 wherever a.C_k occurs with ε.1 in the body of C_k; the proof ends at the new root."""
    b = ProofBuilder(ProcessEnv(es.definitions()))
    result, sid = _saturate(b, es)
    return result, b.finish(sid)


# --- Step 4: Semi-determinization ---
def _left_nested_paths(m: int) -> List[Tuple[str, ...]]:
    """Paths of the m leaves of a left-nested sum."""
    if m == 1:
        return [()]
    return [(LEFT,) * (m - 1)] + [(LEFT,) * (m - 1 - j) + (RIGHT,) for j in range(1, m)]


def _subset_equation(b: ProofBuilder, es: EquationSystem, subset_names: Dict[FrozenSet[int], str],
                     subset: FrozenSet[int], alpha: Sequence[Symbol], target: Term) -> int:
    """Proves B_I = its semi-deterministic body over the B constants."""
    name = subset_names[subset]
    chain = b.chain(ConstRef(name)).unfold(name).drop_zeros().dedupe()
    for action in alpha:
        successors = sorted({k for i in subset for k in es.successors(i, action)})
        if not successors:
            continue
        group_items = [Prefix(action, ConstRef(es.names[k])) for k in successors]
        rest = [s for s in summands(chain.term) if s not in group_items]
        group = sum_of(group_items)
        base = (RIGHT,) if rest else ()
        chain.aci(Sum(sum_of(rest), group) if rest else group)
        for k, path in zip(successors, _left_nested_paths(len(successors))):
            chain.unfold(es.names[k], base + path + (BODY,))
        for depth in range(len(successors) - 2, -1, -1):
            chain.axiom(Axiom.T2, base + (LEFT,) * depth, RIGHT_TO_LEFT)
        chain.refold(subset_names[frozenset(successors)], base + (BODY,))
    sink = subset_names.get(frozenset())
    for action in alpha:
        if any(es.successors(i, action) for i in subset):
            continue
        (chain.axiom(Axiom.A3, (), RIGHT_TO_LEFT)
              .axiom(Axiom.T1, (RIGHT,), RIGHT_TO_LEFT, {ACTION_META: action})
              .refold(sink, (RIGHT, BODY)))
    return chain.drop_zeros().aci(target).close()


def _semi_determinize(b: ProofBuilder, es: EquationSystem, alpha: Iterable[Symbol]) -> SystemStage:
    alpha = sorted(set(alpha) - {EPS})
    missing = es.alphabet - set(alpha)
    if missing:
        raise AlphabetTooSmall(f"system uses {sorted(missing)} outside the alphabet {alpha}")

    start = frozenset({0})
    subsets, index = [start], {start: 0}
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        for action in alpha:
            successor = frozenset(k for i in subset for k in es.successors(i, action))
            if successor not in index:
                index[successor] = len(subsets)
                subsets.append(successor)
                queue.append(successor)

    bodies = []
    for subset in subsets:
        terminals = sorted({label for i in subset for label in es.terminals(i)})
        successors = [frozenset(k for i in subset for k in es.successors(i, a)) for a in alpha]
        bodies.append([Summand(label) for label in terminals] +
                      [Summand(a, index[s]) for a, s in zip(alpha, successors)])

    b_prefix = b.namespace("_B")
    subset_names = {s: f"{b_prefix}{_subset_label(s)}" for s in subsets}
    for subset in subsets:
        b.define(subset_names[subset], sum_of([es.body_term(i) for i in sorted(subset)]))

    determinized = EquationSystem.build([subset_names[s] for s in subsets], bodies)
    left = _const_refs(determinized.names)
    left_premises = [_subset_equation(b, es, subset_names, s, alpha, determinized.render(j, left))
                     for j, s in enumerate(subsets)]
    d_prefix = b.namespace("_D")
    names = [f"{d_prefix}{_subset_label(s)}" for s in subsets]
    solved = _close_system(b, determinized, left, left_premises, names)

    root, root_subset = es.names[0], subset_names[start]
    entry = b.trans(b.unfold(ConstRef(root), root)[0], b.sym(b.unfold(ConstRef(root_subset), root_subset)[0]))
    logging.debug(f"PROVER: semi-determinization | subsets={len(subsets)}")
    return EquationSystem(tuple(names), determinized.bodies), b.trans(entry, solved[0])


def semi_determinize_system(es: EquationSystem, alpha: Iterable[Symbol]) -> Tuple[EquationSystem, Proof]:
    """
    Subset construction on the equations: one constant per subset of
    constants reachable from the root, with exactly one a-successor per
    letter of alpha.

    Raises:
        AlphabetTooSmall: if the system uses a letter outside alpha.
    """
    b = ProofBuilder(ProcessEnv(es.definitions()))
    result, sid = _semi_determinize(b, es, alpha)
    return result, b.finish(sid)


# --- Step 5: ε-stripping ---
def _check_saturated(es: EquationSystem) -> None:
    for h, body in enumerate(es.bodies):
        for s in body:
            if not s.terminal and EPS in es.terminals(s.target) and s.label not in es.terminals(h):
                raise PreconditionNotSaturated(
                    f"'{es.names[h]}' reaches 1 by '{s.label}' through '{es.names[s.target]}' without a {s.label}.1 summand")


def _strip_lemma(b: ProofBuilder, action: Symbol, name: str, stripped: Term, has_eps: bool) -> int:
    """
    a.C_k = a.t_k, or a.C_k = a.t_k + a.1 when ε.1 was dropped from the
    body of C_k to give t_k.
    """
    prefixed = Prefix(action, ConstRef(name))
    chain = b.chain(prefixed).unfold(name, (BODY,))
    if not has_eps:
        return chain.close()
    body_chain = b.chain(b.defs[name])
    while summands(body_chain.term).count(EPS_ONE) > 1:
        body_chain.merge_extra(EPS_ONE)
    if summands(body_chain.term) == [EPS_ONE]:
        chain.then(b.cong_prefix(action, body_chain.close()))
        return (chain.axiom(Axiom.T3)
                     .axiom(Axiom.A3, (), RIGHT_TO_LEFT)
                     .axiom(Axiom.T1, (RIGHT,), RIGHT_TO_LEFT, {ACTION_META: action})
                     .close())
    body_chain.aci(Sum(stripped, EPS_ONE))
    chain.then(b.cong_prefix(action, body_chain.close()))
    return chain.axiom(Axiom.T2).axiom(Axiom.T3, (RIGHT,)).close()


def _strip_epsilon(b: ProofBuilder, es: EquationSystem) -> SystemStage:
    _check_saturated(es)
    n = len(es)
    root_referenced = any(s.target == 0 for body in es.bodies for s in body)
    root_copy = EPS in es.terminals(0) and root_referenced
    if not root_copy and not any(EPS in es.terminals(h) for h in range(1, n)):
        return es, b.refl(ConstRef(es.names[0]))

    # entries: (source constant, keeps ε)
    entries = ([(0, True)] if root_copy else []) + [(h, h == 0 and not root_copy) for h in range(n)]
    remap = {h: h + 1 if root_copy else h for h in range(n)}
    stripped_bodies = []
    for h, keeps_eps in entries:
        kept = [s for s in es.bodies[h] if keeps_eps or s.label != EPS or not s.terminal]
        stripped_bodies.append(kept)
    left = [sum_of([PrefixOne(s.label) if s.terminal else Prefix(s.label, ConstRef(es.names[s.target]))
                    for s in kept]) for kept in stripped_bodies]
    stripped = EquationSystem.build(
        [str(e) for e in range(len(entries))],
        [[s if s.terminal else Summand(s.label, remap[s.target]) for s in kept] for kept in stripped_bodies])

    def loses_eps(k: int) -> bool:
        return EPS in es.terminals(k) and not entries[remap[k]][1]

    lemmas: Dict[Tuple[Symbol, int], int] = {}

    def rewrite(t: Term) -> int:
        if isinstance(t, Sum):
            return b.cong_choice(rewrite(t.left), rewrite(t.right))
        if isinstance(t, Prefix):
            k = es.names.index(t.body.name)
            if (t.action, k) not in lemmas:
                lemmas[(t.action, k)] = _strip_lemma(b, t.action, t.body.name, left[remap[k]], loses_eps(k))
            return lemmas[(t.action, k)]
        return b.refl(t)

    left_premises = []
    for e, (h, keeps_eps) in enumerate(entries):
        chain = b.chain(left[e]).then(rewrite(left[e]))
        for s in stripped_bodies[e]:
            if not s.terminal and loses_eps(s.target):
                chain.merge_extra(PrefixOne(s.label))
        left_premises.append(chain.aci(stripped.render(e, left)).close())

    prefix = b.namespace("_X")
    names = [f"{prefix}{e + 1}" for e in range(len(entries))]
    solved = _close_system(b, stripped, left, left_premises, names)
    root = es.names[0]
    logging.debug(f"PROVER: ε-stripping | entries={len(entries)} | root_copy={root_copy}")
    return EquationSystem(tuple(names), stripped.bodies), b.trans(b.unfold(ConstRef(root), root)[0], solved[0])


def strip_epsilon_system(es: EquationSystem) -> Tuple[EquationSystem, Proof]:
    """
    Drops ε.1 from every non-root body of a saturated system. When the
    root has ε.1 and is referenced, a root copy keeps it instead.

    Raises:
        PreconditionNotSaturated: if the system is not saturated.
    """
    b = ProofBuilder(ProcessEnv(es.definitions()))
    result, sid = _strip_epsilon(b, es)
    return result, b.finish(sid)


# --- Step 6: Merging two equivalent systems ---
def _unique_successor(es: EquationSystem, h: int, action: Symbol) -> int:
    successors = es.successors(h, action)
    if len(successors) != 1:
        raise ProofConstructionError(f"'{es.names[h]}' has {len(successors)} {action}-successors; expected one")
    return successors[0]


def _merge(b: ProofBuilder, es1: EquationSystem, es2: EquationSystem) -> Optional[int]:
    if es1.alphabet != es2.alphabet:
        raise AlphabetMismatch(f"alphabets differ: {sorted(es1.alphabet)} vs {sorted(es2.alphabet)}")
    clash = set(es1.names) & set(es2.names)
    if clash:
        raise NameClash(f"both systems define {sorted(clash)}")
    alpha = sorted(es1.alphabet)
    g1, g2 = system_to_gfa(es1), system_to_gfa(es2)

    def equivalent(h: int, h2: int) -> bool:
        return lang_equiv(with_initial(g1, es1.names[h]), with_initial(g2, es2.names[h2])).equivalent

    if not equivalent(0, 0):
        return None
    pairs, index = [(0, 0)], {(0, 0): 0}
    queue = deque(pairs)
    while queue:
        h, h2 = queue.popleft()
        if es1.terminals(h) != es2.terminals(h2):
            raise ProofConstructionError(f"paired constants '{es1.names[h]}' and '{es2.names[h2]}' differ in terminals")
        for action in alpha:
            pair = (_unique_successor(es1, h, action), _unique_successor(es2, h2, action))
            if pair not in index:
                if not equivalent(*pair):
                    raise ProofConstructionError(f"successor pair {pair} of ({h}, {h2}) is not equivalent")
                index[pair] = len(pairs)
                pairs.append(pair)
                queue.append(pair)

    merged = EquationSystem.build(
        [str(j) for j in range(len(pairs))],
        [[Summand(label) for label in sorted(es1.terminals(h))] +
         [Summand(a, index[(_unique_successor(es1, h, a), _unique_successor(es2, h2, a))]) for a in alpha]
         for h, h2 in pairs])
    prefix = b.namespace("_M")
    names = [f"{prefix}{{{h + 1},{h2 + 1}}}" for h, h2 in pairs]

    conclusions = []
    for side, es in ((0, es1), (1, es2)):
        left = [ConstRef(es.names[pair[side]]) for pair in pairs]
        premises = []
        for j, pair in enumerate(pairs):
            name = es.names[pair[side]]
            premises.append(b.chain(ConstRef(name)).unfold(name).dedupe().aci(merged.render(j, left)).close())
        conclusions.append(_close_system(b, merged, left, premises, names)[0])
    logging.debug(f"PROVER: merge | pairs={len(pairs)}")
    return b.trans(conclusions[0], b.sym(conclusions[1]))


def merge_equivalent_systems(es1: EquationSystem, es2: EquationSystem) -> Optional[Proof]:
    """
    Pairs the constants of two saturated, semi-deterministic, ε-free
    systems by language equivalence and proves root = root' through a
    common system of paired constants. None if the roots differ.

    Raises:
        AlphabetMismatch: if the systems range over different letters.
        NameClash: if the systems share a constant name.
    """
    b = ProofBuilder(ProcessEnv({**es1.definitions(), **es2.definitions()}))
    sid = _merge(b, es1, es2)
    return None if sid is None else b.finish(sid)


# --- Step 7: The full pipeline ---
def _separate(p: Process, q: Process) -> Process:
    """
    Renames q's constants into the generated namespace unless p defines
    the name with the same body and the same dependencies.
    """
    def shared(name: str) -> bool:
        deps = {name} | constants_of(q.env.body(name), q.env)
        return all(dep in p.env and q.env.body(dep) == p.env.body(dep) for dep in deps)

    clashes = {name for name in q.env if name in p.env and not shared(name)}
    if not clashes:
        return q
    mapping = {name: f"_R{name}" for name in clashes}
    env = ProcessEnv({mapping.get(name, name): rename_constants(body, mapping) for name, body in q.env.defs.items()})
    return Process(root=rename_constants(q.root, mapping), env=env)


def _reduce_to_system(b: ProofBuilder, p: Process, alpha: Sequence[Symbol]) -> SystemStage:
    normal, s1 = _normalize(b, p)
    es, s2 = _to_system(b, normal)
    es, s3 = _saturate(b, es)
    es, s4 = _semi_determinize(b, es, alpha)
    es, s5 = _strip_epsilon(b, es)
    return es, b.trans(s1, s2, s3, s4, s5)


def prove_equiv(p: Process, q: Process) -> Union[Proof, Word]:
    """
    A W-proof of p = q when the two are language equivalent, otherwise
    the shortest distinguishing word. The proof ends at q's root, renamed
    into the generated namespace if q redefines one of p's constants.
    """
    start = time.time()
    logging.info("PROVER: prove_equiv | status=starting")
    gp, gq = denote(p), denote(q)
    verdict = lang_equiv(gp, gq)
    if not verdict:
        logging.info(f"PROVER: prove_equiv | status=inequivalent | counterexample={verdict.counterexample}")
        return verdict.counterexample
    if p == q:
        b = ProofBuilder(p.env)
        return b.finish(b.refl(p.root))

    q = _separate(p, q)
    b = ProofBuilder(p.env.extended(q.env.defs))
    alpha = sorted(gp.alphabet | gq.alphabet)
    es_p, to_p = _reduce_to_system(b, p, alpha)
    es_q, to_q = _reduce_to_system(b, q, alpha)
    merged = _merge(b, es_p, es_q)
    if merged is None:
        raise ProofConstructionError("the merge rejected roots the oracle found equivalent")
    proof = b.finish(b.trans(to_p, merged, b.sym(to_q)))
    logging.info(f"PROVER: prove_equiv | status=success | duration={time.time() - start:.2f}s")
    logging.info(f"METRICS: steps={len(proof.steps)} constants={len(proof.env)} (context: prove_equiv)")
    return proof
