# In: main.py (Root Folder)
"""
Command-line entry point: `python main.py COMMAND ...`.

Exit codes: 0 when the answer is yes (equivalent, bisimilar, isomorphic,
valid), 1 when it is no, 2 on any input or validation error.
"""
import argparse
import logging
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from config import CERTIFICATE_EXTENSION, DEFAULT_JOBS, DEFAULT_MAX_LEN, EXTENSION_KINDS, OUTPUT_DIR
from core.errors import FormatError, SfmError
from core.logger_config import level_from_verbosity, setup_logger
from data.generators import random_gfa
from logic.automata_logic import bisimilar, is_reduced, isomorphic, lang_equiv, language_up_to, reduce
from logic.automata_models import Gfa, Grammar
from logic.grammar_logic import gfa_to_grammar, grammar_to_gfa
from logic.proof_checker import axioms_used, check_proof
from logic.proof_models import Proof
from logic.prover_logic import prove_equiv
from logic.semantics_logic import denote, gfa_to_term
from logic.term_models import Process
from logic.term_parser import parse_process, print_process
from services.dot_export import write_dot
from services.gfa_format import read_gfa, write_gfa
from services.grammar_format import read_grammar, write_grammar
from services.proof_format import read_proof, write_proof
from utils.format_utils import (
    format_axioms, format_counterexample, format_language, format_mapping, format_verdict,
)

Loaded = Union[Process, Grammar, Gfa]
KINDS = ("term", "grammar", "gfa")


# --- Step 1: Loading inputs ---
def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def infer_kind(path: str, forced: Optional[str] = None) -> str:
    if forced:
        return forced
    kind = EXTENSION_KINDS.get(Path(path).suffix)
    if kind is None:
        raise FormatError(f"cannot tell the input kind of '{path}'; pass --as (term|grammar|gfa)")
    return kind


def load_input(path: str, forced: Optional[str] = None) -> Loaded:
    kind = infer_kind(path, forced)
    text = _read_text(path)
    logging.debug(f"CLI: load | path={path} | kind={kind}")
    if kind == "gfa":
        return read_gfa(text)
    if kind == "grammar":
        return read_grammar(text)
    return parse_process(text)


def as_gfa(obj: Loaded) -> Gfa:
    if isinstance(obj, Process):
        return denote(obj)
    if isinstance(obj, Grammar):
        return grammar_to_gfa(obj)
    return obj


def as_process(obj: Loaded) -> Process:
    if isinstance(obj, Process):
        return obj
    return gfa_to_term(reduce(as_gfa(obj)))


def _expect(obj: Loaded, expected: type, path: str) -> None:
    if not isinstance(obj, expected):
        raise FormatError(f"'{path}' is not a {expected.__name__.lower()} input")


# --- Step 2: Commands ---
def cmd_parse(args) -> int:
    obj = load_input(args.file, args.kind)
    if isinstance(obj, Process):
        print(print_process(obj), end="")
    elif isinstance(obj, Grammar):
        print(write_grammar(obj), end="")
    else:
        print(write_gfa(obj), end="")
    return 0


def cmd_semantics(args) -> int:
    g = as_gfa(load_input(args.file, args.kind))
    print(write_dot(g) if args.dot else write_gfa(g), end="")
    return 0


def cmd_compile(args) -> int:
    if args.direction == "g2a":
        gr = load_input(args.file, args.kind or "grammar")
        _expect(gr, Grammar, args.file)
        print(write_gfa(grammar_to_gfa(gr)), end="")
        return 0
    g = load_input(args.file, args.kind or "gfa")
    _expect(g, Gfa, args.file)
    if args.direction == "a2g":
        print(write_grammar(gfa_to_grammar(g)), end="")
        return 0
    if not is_reduced(g):
        logging.warning("CLI: compile a2t | unreachable states dropped before conversion")
    print(print_process(gfa_to_term(reduce(g))), end="")
    return 0


def _equiv_pair(pair: Tuple[str, str], kind: Optional[str]) -> Tuple[int, str]:
    """One equivalence query; runs in a worker process in batch mode."""
    try:
        verdict = lang_equiv(as_gfa(load_input(pair[0], kind)), as_gfa(load_input(pair[1], kind)))
    except (SfmError, OSError) as e:
        return 2, f"error: {e}"
    if verdict:
        return 0, "equivalent"
    return 1, format_counterexample(verdict.counterexample)


def _batch_pairs(path: str) -> List[Tuple[str, str]]:
    pairs = []
    for number, line in enumerate(_read_text(path).splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError("invalid batch list", [(f"line {number}", "expected two paths")])
        pairs.append((parts[0], parts[1]))
    return pairs


def cmd_equiv(args) -> int:
    if args.batch is None:
        if len(args.files) != 2:
            raise FormatError("equiv needs two files, or --batch LIST")
        g1, g2 = (as_gfa(load_input(path, args.kind)) for path in args.files)
        verdict = lang_equiv(g1, g2)
        print("equivalent" if verdict else format_counterexample(verdict.counterexample))
        return 0 if verdict else 1

    pairs = _batch_pairs(args.batch)
    start = time.time()
    logging.info(f"CLI: equiv batch | status=starting | pairs={len(pairs)} | jobs={args.jobs}")
    kinds = [args.kind] * len(pairs)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_equiv_pair, pairs, kinds))
    else:
        results = list(map(_equiv_pair, pairs, kinds))
    for (first, second), (_, message) in zip(pairs, results):
        print(f"{first} {second}: {message}")
    logging.info(f"CLI: equiv batch | status=success | duration={time.time() - start:.2f}s")
    codes = [code for code, _ in results]
    return 2 if 2 in codes else (1 if 1 in codes else 0)


def cmd_bisim(args) -> int:
    same = bisimilar(as_gfa(load_input(args.first, args.kind)), as_gfa(load_input(args.second, args.kind)))
    print("bisimilar" if same else "not bisimilar")
    return 0 if same else 1


def cmd_iso(args) -> int:
    mapping = isomorphic(as_gfa(load_input(args.first, args.kind)), as_gfa(load_input(args.second, args.kind)))
    if mapping is None:
        print("not isomorphic")
        return 1
    for line in format_mapping(mapping):
        print(line)
    return 0


def cmd_lang(args) -> int:
    if args.max_len < 0:
        raise FormatError("--max-len must not be negative")
    for line in format_language(language_up_to(as_gfa(load_input(args.file, args.kind)), args.max_len)):
        print(line)
    return 0


def _certificate_path(args) -> str:
    if args.output:
        return args.output
    name = f"{Path(args.first).stem}__{Path(args.second).stem}{CERTIFICATE_EXTENSION}"
    return os.path.join(OUTPUT_DIR, name)


def cmd_prove(args) -> int:
    p = as_process(load_input(args.first, args.kind))
    q = as_process(load_input(args.second, args.kind))
    result = prove_equiv(p, q)
    if not isinstance(result, Proof):
        print(format_counterexample(result))
        return 1
    target = _certificate_path(args)
    Path(target).write_text(write_proof(result), encoding="utf-8")
    print(f"proof written to {target} ({len(result.steps)} steps)")
    return 0


def cmd_check(args) -> int:
    pr = read_proof(_read_text(args.certificate))
    verdict = check_proof(pr)
    for line in format_verdict(verdict):
        print(line)
    print(format_axioms(axioms_used(pr)))
    return 0 if verdict.ok else 1


def cmd_sample(args) -> int:
    alphabet = [s.strip() for s in args.alphabet.split(",") if s.strip()]
    rng = random.Random(args.seed)
    print(write_gfa(random_gfa(rng, max_states=args.states, alphabet=alphabet)), end="")
    return 0


# --- Step 3: Argument parsing ---
def create_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="More logging on stderr (-vv for debug)")
    common.add_argument("--seed", type=int, default=None, help="Seed for randomized commands")
    common.add_argument("--as", dest="kind", choices=KINDS, default=None,
                        help="Input kind, overriding the file extension (required for stdin)")

    parser = argparse.ArgumentParser(
        description="SFM processes, regular grammars and GFAs: semantics, equivalence and W-proofs"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("parse", parents=[common], help="Validate an input and echo its canonical form")
    p.add_argument("file")
    p.set_defaults(handler=cmd_parse)

    p = commands.add_parser("semantics", parents=[common], help="Emit the automaton of an input")
    p.add_argument("file")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true", help="Graphviz DOT output")
    fmt.add_argument("--gfa", action="store_true", help=".gfa JSON output (default)")
    p.set_defaults(handler=cmd_semantics)

    p = commands.add_parser("compile", parents=[common], help="Convert between grammars, GFAs and terms")
    p.add_argument("direction", choices=("g2a", "a2g", "a2t"))
    p.add_argument("file")
    p.set_defaults(handler=cmd_compile)

    p = commands.add_parser("equiv", parents=[common], help="Decide language equivalence")
    p.add_argument("files", nargs="*")
    p.add_argument("--batch", default=None, help="File listing one pair of paths per line")
    p.add_argument("--jobs", type=int, default=DEFAULT_JOBS, help="Worker processes for --batch")
    p.set_defaults(handler=cmd_equiv)

    for name, handler, help_text in (("bisim", cmd_bisim, "Decide bisimilarity"),
                                     ("iso", cmd_iso, "Decide isomorphism and print the bijection")):
        p = commands.add_parser(name, parents=[common], help=help_text)
        p.add_argument("first")
        p.add_argument("second")
        p.set_defaults(handler=handler)

    p = commands.add_parser("lang", parents=[common], help="Enumerate the words up to a length")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)
    p.set_defaults(handler=cmd_lang)

    p = commands.add_parser("prove", parents=[common], help="Write a W-proof certificate or a counterexample")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("-o", "--output", default=None, help=f"Certificate path (default: <stem1>__<stem2>{CERTIFICATE_EXTENSION})")
    p.set_defaults(handler=cmd_prove)

    p = commands.add_parser("check", parents=[common], help="Check a W-proof certificate")
    p.add_argument("certificate")
    p.set_defaults(handler=cmd_check)

    p = commands.add_parser("sample", parents=[common], help="Print a random valid GFA")
    p.add_argument("--states", type=int, default=4)
    p.add_argument("--alphabet", default="a,b")
    p.set_defaults(handler=cmd_sample)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = create_parser().parse_args(argv)
    setup_logger(level_from_verbosity(args.verbose))
    try:
        return args.handler(args)
    except (SfmError, OSError) as e:
        logging.debug("CLI: command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
