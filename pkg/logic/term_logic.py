# In: logic/term_logic.py
"""Well-formedness, substitution, the constants function δ and the normal-form predicate."""
from typing import Iterable, Mapping, Optional, Set, Tuple

from core.errors import BadPath, UnboundVariable
from .automata_models import EPS
from .term_models import ConstRef, Prefix, PrefixOne, Process, ProcessEnv, Sum, Term, Var, Zero

Path = Tuple[str, ...]
LEFT, RIGHT, BODY = "left", "right", "body"


# --- Step 1: Constants ---
def constants_of(p: Term, env: ProcessEnv) -> Set[str]:
    """
    δ(p, ∅): the constants p depends on. Undefined constants are
    reported in the result rather than raised.
    """
    visited: Set[str] = set()
    found: Set[str] = set()

    def delta(t: Term) -> None:
        if isinstance(t, (Zero, PrefixOne, Var)):
            return
        if isinstance(t, Prefix):
            delta(t.body)
        elif isinstance(t, Sum):
            delta(t.left)
            delta(t.right)
        elif isinstance(t, ConstRef):
            if t.name in visited:
                return
            visited.add(t.name)
            found.add(t.name)
            body = env.get(t.name)
            if body is not None:
                delta(body)

    delta(p)
    return found


def rename_constants(t: Term, mapping: Mapping[str, str]) -> Term:
    if isinstance(t, ConstRef):
        return ConstRef(mapping.get(t.name, t.name))
    if isinstance(t, Prefix):
        return Prefix(t.action, rename_constants(t.body, mapping))
    if isinstance(t, Sum):
        return Sum(rename_constants(t.left, mapping), rename_constants(t.right, mapping))
    return t


# --- Step 2: Syntactic categories ---
def is_guarded(t: Term) -> bool:
    """True iff t belongs to category s. Constants and variables may only occur as prefix targets."""
    if isinstance(t, (Zero, PrefixOne)):
        return True
    if isinstance(t, Prefix):
        if t.action == EPS:
            return False
        return isinstance(t.body, (ConstRef, Var)) or is_guarded(t.body)
    if isinstance(t, Sum):
        return is_guarded(t.left) and is_guarded(t.right)
    return False


def free_vars(t: Term) -> Set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Prefix):
        return free_vars(t.body)
    if isinstance(t, Sum):
        return free_vars(t.left) | free_vars(t.right)
    return set()


def is_legal(t: Term) -> bool:
    """A closed process term: a single constant, or a guarded term without variables."""
    if isinstance(t, ConstRef):
        return True
    return is_guarded(t) and not free_vars(t)


# --- Step 3: Substitution ---
def substitute(t: Term, binding: Mapping[str, Term], strict: bool = False) -> Term:
    """Replaces free variables. There are no binders, so no capture can happen."""
    if isinstance(t, Var):
        if t.name in binding:
            return binding[t.name]
        if strict:
            raise UnboundVariable(t.name)
        return t
    if isinstance(t, Prefix):
        return Prefix(t.action, substitute(t.body, binding, strict))
    if isinstance(t, Sum):
        return Sum(substitute(t.left, binding, strict), substitute(t.right, binding, strict))
    return t


def substitute_env(env: ProcessEnv, binding: Mapping[str, Term], strict: bool = False) -> ProcessEnv:
    """Closes every open body of env with the same binding."""
    return ProcessEnv({name: substitute(body, binding, strict) for name, body in env.defs.items()})


# --- Step 4: Normal forms ---
def is_normal_form(p: Process) -> bool:
    """
    nf(p, ∅): prefixes guard only constants (or 1, via α.1), and the
    same holds for every constant reachable from p. The set I of
    constants under inspection is shared across branches.
    """
    inspected: Set[str] = set()

    def nf(t: Term) -> bool:
        if isinstance(t, (Zero, PrefixOne)):
            return True
        if isinstance(t, ConstRef):
            if t.name in inspected:
                return True
            body = p.env.get(t.name)
            if body is None:
                return False
            inspected.add(t.name)
            return nf(body)
        if isinstance(t, Prefix):
            return isinstance(t.body, ConstRef) and nf(t.body)
        if isinstance(t, Sum):
            return nf(t.left) and nf(t.right)
        return False

    return nf(p.root)


# --- Step 5: AC canonical form ---
def aci_key(t: Term) -> Tuple:
    """
    Deep canonical form modulo associativity and commutativity of +.
    Sums are flattened and their summands sorted; duplicates and 𝟘 stay.
    """
    if isinstance(t, Zero):
        return ("0",)
    if isinstance(t, PrefixOne):
        return ("1", t.label)
    if isinstance(t, Prefix):
        return ("p", t.action, aci_key(t.body))
    if isinstance(t, ConstRef):
        return ("c", t.name)
    if isinstance(t, Var):
        return ("v", t.name)
    leaves = []
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Sum):
            stack.extend((node.left, node.right))
        else:
            leaves.append(aci_key(node))
    return ("+", tuple(sorted(leaves)))


# --- Step 6: Positions ---
def subterm(t: Term, path: Iterable[str]) -> Term:
    for step in path:
        if step == BODY and isinstance(t, Prefix):
            t = t.body
        elif step == LEFT and isinstance(t, Sum):
            t = t.left
        elif step == RIGHT and isinstance(t, Sum):
            t = t.right
        else:
            raise BadPath(f"selector '{step}' does not apply to {type(t).__name__}")
    return t


def replace_at(t: Term, path: Path, new: Term) -> Term:
    if not path:
        return new
    step, rest = path[0], tuple(path[1:])
    if step == BODY and isinstance(t, Prefix):
        return Prefix(t.action, replace_at(t.body, rest, new))
    if step == LEFT and isinstance(t, Sum):
        return Sum(replace_at(t.left, rest, new), t.right)
    if step == RIGHT and isinstance(t, Sum):
        return Sum(t.left, replace_at(t.right, rest, new))
    raise BadPath(f"selector '{step}' does not apply to {type(t).__name__}")


def find_summand(t: Term, target: Term) -> Optional[Path]:
    """Path to the first summand of t's top-level sum tree equal to target."""
    if t == target:
        return ()
    if isinstance(t, Sum):
        for step, child in ((LEFT, t.left), (RIGHT, t.right)):
            found = find_summand(child, target)
            if found is not None:
                return (step,) + found
    return None
