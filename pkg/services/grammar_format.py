# <-- Grammar Adapter: the line-oriented .rg text format
# In: services/grammar_format.py
"""
One rule per line, alternatives separated by '|', then a start footer:

    A -> a A | a B ;
    B -> b B | b ;
    start A ;

`eps` stands for an ε-production and `A -> ;` declares a nonterminal
without productions.
"""
from typing import Dict, List, Set

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedEOF, UnexpectedInput, VisitError

from core.errors import SfmSyntaxError
from logic.automata_models import Empty, Grammar, Production, Terminal, TerminalNonterminal
from logic.grammar_logic import validate_grammar

GRAMMAR_GRAMMAR = r"""
    start: rule* start_decl

    rule: NONTERMINAL "->" [alternative ("|" alternative)*] ";"
    start_decl: "start" NONTERMINAL ";"

    alternative: SYMBOL NONTERMINAL   -> step
               | SYMBOL                -> final_symbol
               | "eps"                 -> empty

    NONTERMINAL: /[A-Z][A-Za-z0-9_]*/
    SYMBOL: /[a-z][a-z0-9_]*/
    COMMENT: /#[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

_parser = Lark(GRAMMAR_GRAMMAR, parser="lalr")


@v_args(inline=True)
class _GrammarTransformer(Transformer):
    def step(self, symbol, target):
        return TerminalNonterminal(str(symbol), str(target))

    def final_symbol(self, symbol):
        return Terminal(str(symbol))

    def empty(self):
        return Empty()

    def rule(self, head, *alternatives):
        return str(head), [a for a in alternatives if a is not None]

    def start_decl(self, name):
        return str(name)

    def start(self, *items):
        return list(items)


def read_grammar(text: str) -> Grammar:
    """
    Raises:
        SfmSyntaxError: on malformed text, with line and column.
        UnknownNonterminal: if a production targets an undeclared nonterminal.
    """
    try:
        items = _GrammarTransformer().transform(_parser.parse(text))
    except UnexpectedEOF as e:
        raise SfmSyntaxError("unexpected end of grammar; is the 'start' footer missing?") from e
    except UnexpectedInput as e:
        raise SfmSyntaxError("unexpected input in grammar", e.line, e.column) from e
    except VisitError as e:
        raise e.orig_exc from None
    *rules, start = items
    nonterminals: Set[str] = set()
    productions: List[Production] = []
    for head, alternatives in rules:
        nonterminals.add(head)
        productions.extend(Production(head, rhs) for rhs in alternatives)
    return validate_grammar(nonterminals, start, productions)


def _show(rhs) -> str:
    if isinstance(rhs, TerminalNonterminal):
        return f"{rhs.symbol} {rhs.target}"
    if isinstance(rhs, Terminal):
        return rhs.symbol
    return "eps"


def write_grammar(gr: Grammar) -> str:
    """Start symbol's rule first, then the others in name order."""
    lines: Dict[str, str] = {}
    for head in [gr.start] + sorted(n for n in gr.nonterminals if n != gr.start):
        alternatives = " | ".join(_show(p.rhs) for p in gr.productions_of(head))
        lines[head] = f"{head} -> {alternatives} ;" if alternatives else f"{head} -> ;"
    return "".join(f"{line}\n" for line in lines.values()) + f"start {gr.start} ;\n"
