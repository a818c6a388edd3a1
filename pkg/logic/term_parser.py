# In: logic/term_parser.py
"""Concrete syntax for processes: a lark LALR grammar plus an injective printer."""
from typing import Dict, FrozenSet, Iterable, List, Tuple

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedEOF, UnexpectedInput, VisitError

from config import GENERATED_PREFIX
from core.errors import ConstAsSummand, EpsilonMisuse, SfmSyntaxError, UndefinedConstant
from .automata_models import EPS
from .term_logic import constants_of
from .term_models import ZERO, ConstRef, Prefix, PrefixOne, Process, ProcessEnv, Sum, Term, Var, Zero

SFM_GRAMMAR = r"""
    program: statement*
    term_only: sum

    statement: CONST ":=" sum ";"     -> definition
             | "main" sum ";"          -> main_decl

    sum: summand ("+" summand)*

    summand: ACTION "." target         -> prefix
           | "0"                        -> zero
           | CONST                      -> const
           | "(" sum ")"                -> group

    target: "1"                         -> one
          | ACTION "." target           -> prefix
          | ACTION                      -> var_ref
          | "0"                         -> zero
          | CONST                       -> const
          | "(" sum ")"                 -> group

    CONST: /_?[A-Z][A-Za-z0-9_]*(\{[0-9,]*\})?/
    ACTION: /[a-z][a-z0-9_]*/
    COMMENT: /#[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

_parser = Lark(SFM_GRAMMAR, start=["program", "term_only"], parser="lalr", propagate_positions=True)


class _One:
    """Marker for the bare 1 that only a prefix may take."""


_ONE = _One()


def _position(meta) -> Tuple:
    if getattr(meta, "empty", True):
        return (None, None)
    return (meta.line, meta.column)


@v_args(meta=True)
class SfmTransformer(Transformer):
    """Builds Term values and enforces the category rules the grammar alone cannot express."""

    def __init__(self, variables: FrozenSet[str] = frozenset(), allow_generated: bool = False):
        super().__init__()
        self.variables = variables
        self.allow_generated = allow_generated

    def _check_name(self, token: Token) -> None:
        if token.startswith(GENERATED_PREFIX) and not self.allow_generated:
            raise SfmSyntaxError(f"name '{token}' is reserved for generated constants", token.line, token.column)

    def one(self, meta, children):
        return _ONE

    def zero(self, meta, children):
        return ZERO

    def const(self, meta, children):
        token = children[0]
        if str(token) in self.variables:
            return Var(str(token))
        self._check_name(token)
        return ConstRef(str(token))

    def var_ref(self, meta, children):
        token = children[0]
        if str(token) not in self.variables:
            raise SfmSyntaxError(f"'{token}' is neither a declared variable nor a prefix", token.line, token.column)
        return Var(str(token))

    def group(self, meta, children):
        return children[0]

    def prefix(self, meta, children):
        token, target = children
        if target is _ONE:
            return PrefixOne(str(token))
        if str(token) == EPS:
            raise EpsilonMisuse("'eps' may only prefix 1", token.line, token.column)
        return Prefix(str(token), target)

    def sum(self, meta, children):
        if len(children) == 1:
            return children[0]
        for item in children:
            if isinstance(item, (ConstRef, Var)):
                line, column = _position(meta)
                raise ConstAsSummand(f"'{item.name}' cannot be used as a summand", line, column)
        result = children[0]
        for item in children[1:]:
            result = Sum(result, item)
        return result

    def definition(self, meta, children):
        token, body = children
        self._check_name(token)
        if isinstance(body, (ConstRef, Var)):
            raise ConstAsSummand(f"body of '{token}' must be guarded, found bare '{body.name}'", token.line, token.column)
        return ("def", str(token), body, _position(meta))

    def main_decl(self, meta, children):
        return ("main", None, children[0], _position(meta))

    def program(self, meta, children):
        return children

    def term_only(self, meta, children):
        return children[0]


def _run(text: str, start: str, transformer: SfmTransformer):
    try:
        tree = _parser.parse(text, start=start)
    except UnexpectedEOF as e:
        raise SfmSyntaxError("unexpected end of input") from e
    except UnexpectedInput as e:
        raise SfmSyntaxError(f"unexpected input: {e.__class__.__name__}", e.line, e.column) from e
    try:
        return transformer.transform(tree)
    except VisitError as e:
        raise e.orig_exc from None


def _collect(statements: List[Tuple], allow_main: bool) -> Tuple[Dict[str, Term], List[Tuple]]:
    defs: Dict[str, Term] = {}
    mains = []
    for kind, name, body, (line, column) in statements:
        if kind == "main":
            if not allow_main:
                raise SfmSyntaxError("'main' is not allowed here", line, column)
            mains.append((body, line, column))
        elif name in defs:
            raise SfmSyntaxError(f"constant '{name}' is defined twice", line, column)
        else:
            defs[name] = body
    return defs, mains


def parse_process(text: str, allow_generated: bool = False) -> Process:
    """
    Parses `NAME := term;` definitions followed by a single `main term;`.

    Raises:
        SfmSyntaxError, EpsilonMisuse, ConstAsSummand: with line/column.
        UndefinedConstant: if main depends on a constant that has no definition.
    """
    statements = _run(text, "program", SfmTransformer(allow_generated=allow_generated))
    defs, mains = _collect(statements, allow_main=True)
    if len(mains) != 1:
        raise SfmSyntaxError(f"expected exactly one 'main' declaration, found {len(mains)}")
    if statements[-1][0] != "main":
        _, _, _, (line, column) = statements[-1]
        raise SfmSyntaxError("'main' must be the last statement", line, column)
    env = ProcessEnv(defs)
    root = mains[0][0]
    for name in sorted(constants_of(root, env)):
        if name not in env:
            raise UndefinedConstant(name)
    return Process(root=root, env=env)


def parse_env(text: str, allow_generated: bool = True) -> ProcessEnv:
    """Definitions only, as stored in proof certificates."""
    statements = _run(text, "program", SfmTransformer(allow_generated=allow_generated))
    defs, _ = _collect(statements, allow_main=False)
    return ProcessEnv(defs)


def parse_term(text: str, variables: Iterable[str] = (), allow_generated: bool = True) -> Term:
    """A single term; names listed in `variables` become Var nodes."""
    return _run(text, "term_only", SfmTransformer(frozenset(variables), allow_generated))


# --- Printing ---
def print_term(t: Term) -> str:
    """Injective rendering: + is left-associative, so only right-nested sums and sums under a prefix need parentheses."""
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, PrefixOne):
        return f"{t.label}.1"
    if isinstance(t, Prefix):
        body = print_term(t.body)
        return f"{t.action}.({body})" if isinstance(t.body, Sum) else f"{t.action}.{body}"
    if isinstance(t, Sum):
        right = print_term(t.right)
        if isinstance(t.right, Sum):
            right = f"({right})"
        return f"{print_term(t.left)} + {right}"
    return t.name


def print_definitions(env: ProcessEnv) -> str:
    return "".join(f"{name} := {print_term(env.body(name))};\n" for name in env)


def print_process(p: Process) -> str:
    return f"{print_definitions(p.env)}main {print_term(p.root)};\n"
