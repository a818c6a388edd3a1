# In: logic/axiom_logic.py
"""Instantiating and applying the unconditional axiom schemata at a position."""
from typing import Dict, Mapping, Optional, Tuple, Union

from core.errors import IllegalInstantiation, NoMatch
from .automata_models import EPS
from .proof_models import ACTION_META, AXIOM_SCHEMATA, LEFT_TO_RIGHT, RIGHT_TO_LEFT, TERM_METAVARIABLES, Axiom
from .term_logic import Path, free_vars, is_guarded, replace_at, subterm
from .term_models import Prefix, PrefixOne, Sum, Term, Var, Zero
from .term_parser import print_term

Assignment = Dict[str, Union[Term, str]]


def _match_action(action: str, binding: Assignment) -> bool:
    if action == EPS:
        return False
    bound = binding.setdefault(ACTION_META, action)
    return bound == action


def match(pattern: Term, t: Term, binding: Assignment) -> bool:
    """Extends binding so that pattern instantiates to t. Leaves binding partially filled on failure."""
    if isinstance(pattern, Var):
        bound = binding.setdefault(pattern.name, t)
        return bound == t
    if isinstance(pattern, Zero):
        return isinstance(t, Zero)
    if isinstance(pattern, PrefixOne):
        if not isinstance(t, PrefixOne):
            return False
        if pattern.label == EPS:
            return t.label == EPS
        return _match_action(t.label, binding)
    if isinstance(pattern, Prefix):
        return isinstance(t, Prefix) and _match_action(t.action, binding) and match(pattern.body, t.body, binding)
    if isinstance(pattern, Sum):
        return isinstance(t, Sum) and match(pattern.left, t.left, binding) and match(pattern.right, t.right, binding)
    return False


def instantiate(pattern: Term, binding: Mapping[str, Union[Term, str]]) -> Term:
    if isinstance(pattern, Var):
        if pattern.name not in binding:
            raise IllegalInstantiation(f"metavariable '{pattern.name}' is not determined; supply it in the substitution")
        return binding[pattern.name]
    if isinstance(pattern, PrefixOne):
        if pattern.label == EPS:
            return pattern
        return PrefixOne(_action(binding))
    if isinstance(pattern, Prefix):
        return Prefix(_action(binding), instantiate(pattern.body, binding))
    if isinstance(pattern, Sum):
        return Sum(instantiate(pattern.left, binding), instantiate(pattern.right, binding))
    return pattern


def _action(binding: Mapping[str, Union[Term, str]]) -> str:
    if ACTION_META not in binding:
        raise IllegalInstantiation("the action metavariable is not determined; supply it in the substitution")
    return binding[ACTION_META]


def _check_binding(binding: Mapping[str, Union[Term, str]]) -> None:
    for name, value in binding.items():
        if name == ACTION_META:
            if not isinstance(value, str) or value == EPS:
                raise IllegalInstantiation(f"'{name}' must be bound to an action other than ε, got {value!r}")
        elif name in TERM_METAVARIABLES:
            if isinstance(value, str) or not is_guarded(value) or free_vars(value):
                shown = value if isinstance(value, str) else print_term(value)
                raise IllegalInstantiation(f"'{name}' must be bound to a closed guarded term, got '{shown}'")
        else:
            raise IllegalInstantiation(f"'{name}' is not a metavariable of any axiom")


def apply_axiom_with_binding(
    t: Term, ax: Axiom, path: Path, direction: str,
    subst: Optional[Mapping[str, Union[Term, str]]] = None,
) -> Tuple[Term, Assignment]:
    """apply_axiom, also returning the complete binding used."""
    if ax not in AXIOM_SCHEMATA:
        raise NoMatch(f"{ax.value} is conditional and has no rewrite schema")
    if direction not in (LEFT_TO_RIGHT, RIGHT_TO_LEFT):
        raise NoMatch(f"unknown direction '{direction}'")
    left, right = AXIOM_SCHEMATA[ax]
    source, target = (left, right) if direction == LEFT_TO_RIGHT else (right, left)
    redex = subterm(t, path)
    binding: Assignment = dict(subst or {})
    if not match(source, redex, binding):
        raise NoMatch(f"{ax.value} ({direction}) does not match '{print_term(redex)}' at {'/'.join(path) or 'root'}")
    _check_binding(binding)
    return replace_at(t, path, instantiate(target, binding)), binding


def apply_axiom(
    t: Term, ax: Axiom, path: Path, direction: str,
    subst: Optional[Mapping[str, Union[Term, str]]] = None,
) -> Term:
    """
    Rewrites the subterm of t at path with one of the seven unconditional
    axioms, read left to right ('lr') or right to left ('rl').

    Raises:
        NoMatch: if the source side does not match, or conflicts with subst.
        IllegalInstantiation: if a metavariable is left undetermined or
            bound outside its category.
        BadPath: if path does not address a subterm of t.
    """
    result, _ = apply_axiom_with_binding(t, ax, path, direction, subst)
    return result
