# In: data/reference_examples.py
"""
Worked examples kept as text in the repository formats, plus the two
hand-written W derivations about the sink constant E ≐ a.E. Tests and
the documentation read them through ReferenceBank.
"""
import logging
from typing import Dict, List, Tuple, Union

from core.errors import SfmError
from logic.automata_models import Gfa, Grammar
from logic.proof_builder import ProofBuilder
from logic.proof_models import ACTION_META, RIGHT_TO_LEFT, Axiom, EquationSystem, Proof
from logic.prover_logic import to_equation_system
from logic.term_logic import LEFT
from logic.term_models import EPS_ONE, ZERO, ConstRef, Prefix, Process, Var
from logic.term_parser import parse_process
from services.gfa_format import read_gfa
from services.grammar_format import read_grammar

logger = logging.getLogger(__name__)


def _gfa(states, final, initial, alphabet, transitions) -> str:
    rows = ",\n    ".join(f'["{s}", "{a}", "{t}"]' for s, a, t in sorted(transitions))
    quoted = lambda items: ", ".join(f'"{x}"' for x in sorted(items))
    final_text = "null" if final is None else f'"{final}"'
    return (f'{{\n  "states": [{quoted(states)}],\n  "final": {final_text},\n  "initial": "{initial}",\n'
            f'  "alphabet": [{quoted(alphabet)}],\n  "transitions": [\n    {rows}\n  ]\n}}\n')


class ReferenceBank:
    """
    Named reference examples. Each entry is (kind, text) with kind one
    of 'grammar', 'gfa', 'term' or 'system'; systems are processes whose
    bodies are already in canonical summand order.
    """

    def __init__(self):
        self._examples: Dict[str, Tuple[str, str]] = {
            # a+b+ from its regular grammar and its automaton
            "aplus_bplus_grammar": ("grammar", "A -> a A | a B ;\nB -> b B | b ;\nstart A ;\n"),
            "aplus_bplus_gfa": ("gfa", _gfa(
                ["A", "B"], "1", "A", ["a", "b"],
                [("A", "a", "A"), ("A", "a", "B"), ("B", "b", "B"), ("B", "b", "1")])),
            # a*b* as a GFA with ε edges and as a saturated DGFA with a sink
            "astar_bstar_gfa": ("gfa", _gfa(
                ["q0", "q1"], "r0", "q0", ["a", "b"],
                [("q0", "a", "q0"), ("q0", "b", "q1"), ("q0", "eps", "r0"), ("q1", "b", "q1"), ("q1", "eps", "r0")])),
            "astar_bstar_dgfa": ("gfa", _gfa(
                ["q2", "q3", "q4"], "r1", "q2", ["a", "b"],
                [("q2", "a", "q2"), ("q2", "b", "q3"), ("q2", "eps", "r1"), ("q3", "a", "q4"), ("q3", "b", "q3"),
                 ("q3", "eps", "r1"), ("q4", "a", "q4"), ("q4", "b", "q4")])),
            # a*, before and after saturation; a+, before and after saturation plus ε-removal
            "astar_dgfa": ("gfa", _gfa(["q0"], "1", "q0", ["a"], [("q0", "a", "q0"), ("q0", "eps", "1")])),
            "astar_saturated": ("gfa", _gfa(
                ["q0"], "1", "q0", ["a"], [("q0", "a", "q0"), ("q0", "a", "1"), ("q0", "eps", "1")])),
            "aplus_dgfa": ("gfa", _gfa(
                ["q1", "q2"], "1", "q1", ["a"], [("q1", "a", "q2"), ("q2", "a", "q2"), ("q2", "eps", "1")])),
            "aplus_epsilon_free": ("gfa", _gfa(
                ["q1", "q2"], "1", "q1", ["a"],
                [("q1", "a", "q2"), ("q1", "a", "1"), ("q2", "a", "q2"), ("q2", "a", "1")])),
            # b*a, and b*b with a deadlocked a-successor
            "bstar_a_gfa": ("gfa", _gfa(["q5"], "r0", "q5", ["a", "b"], [("q5", "a", "r0"), ("q5", "b", "q5")])),
            "bstar_b_gfa": ("gfa", _gfa(
                ["q6", "q7"], "r1", "q6", ["a", "b"], [("q6", "a", "q7"), ("q6", "b", "q6"), ("q6", "b", "r1")])),
            "denotation_process": ("term", "C := a.C + eps.1 + b.D;\nD := b.D + eps.1;\nmain C;\n"),
            "aplus_process_one": ("term", "C := a.C + a.1;\nmain C;\n"),
            "aplus_process_two": ("term", "D := a.E;\nE := a.E + a.1 + eps.1;\nmain D;\n"),
            "sink_process": ("term", "E := a.E;\nmain E;\n"),
            "zero_process": ("term", "main 0;\n"),
            "saturation_system": ("system", "C1 := eps.1 + a.C1 + b.C2;\nC2 := eps.1 + a.C2;\nmain C1;\n"),
            "determinization_system": (
                "system", "C1 := eps.1 + a.C1 + a.C1 + a.C2;\nC2 := eps.1 + a.C2;\nmain C1;\n"),
            "strip_system": ("system", "C1 := a.1 + a.C2;\nC2 := a.1 + eps.1 + a.C2;\nmain C1;\n"),
        }

    def names(self) -> List[str]:
        return sorted(self._examples)

    def kind(self, name: str) -> str:
        return self._examples[name][0]

    def text(self, name: str) -> str:
        if name not in self._examples:
            logger.error(f"Unknown reference example: {name}")
            raise KeyError(name)
        return self._examples[name][1]

    def load(self, name: str) -> Union[Gfa, Grammar, Process, EquationSystem]:
        kind, text = self.kind(name), self.text(name)
        try:
            if kind == "gfa":
                return read_gfa(text)
            if kind == "grammar":
                return read_grammar(text)
            process = parse_process(text)
            return to_equation_system(process) if kind == "system" else process
        except SfmError as e:
            logger.error(f"Reference example '{name}' does not load: {e}")
            raise

    # --- Hand-written derivations ---
    @staticmethod
    def sink_is_zero() -> Proof:
        """E ≐ a.E proves E = 0: T1 gives 0 = a.0, folding with a.x closes it."""
        b = ProofBuilder(parse_process("E := a.E;\nmain E;\n").env)
        step, _ = b.axiom(ZERO, Axiom.T1, (), RIGHT_TO_LEFT, {ACTION_META: "a"})
        return b.finish(b.fold("E", Prefix("a", Var("x")), "x", step))

    @staticmethod
    def epsilon_is_sink_or_epsilon() -> Proof:
        """C ≐ ε.1 and D ≐ a.E + ε.1 are provably equal."""
        b = ProofBuilder(parse_process("E := a.E;\nC := eps.1;\nD := a.E + eps.1;\nmain D;\n").env)
        step, _ = b.axiom(ZERO, Axiom.T1, (), RIGHT_TO_LEFT, {ACTION_META: "a"})
        sink = b.fold("E", Prefix("a", Var("x")), "x", step)
        d_side = b.chain(ConstRef("D")).unfold("D")
        d_side.then(b.cong_choice(b.cong_prefix("a", sink), b.refl(EPS_ONE)))
        d_side.axiom(Axiom.T1, (LEFT,)).axiom(Axiom.A2).axiom(Axiom.A3)
        c_side = b.chain(ConstRef("C")).unfold("C")
        return b.finish(b.trans(c_side.close(), b.sym(d_side.close())))
