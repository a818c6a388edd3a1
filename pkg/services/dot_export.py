# <-- DOT Adapter: Graphviz text for visual inspection
# In: services/dot_export.py

from collections import defaultdict
from typing import Dict, List, Tuple

from logic.automata_models import EPS, Gfa

EPS_GLYPH = "ε"


def _gvquote(s: str) -> str:
    return '"{}"'.format(s.replace('"', r'\"'))


def write_dot(g: Gfa) -> str:
    """
    One node per state in sorted order: the initial state bold, the final
    state a double circle. Parallel edges are merged into one edge whose
    labels are joined by ','.
    """
    lines = ["digraph gfa {", "  rankdir=LR;"]
    for state in sorted(g.all_states):
        shape = "doublecircle" if state == g.final else "circle"
        style = " style=bold" if state == g.initial else ""
        lines.append(f"  {_gvquote(state)} [shape={shape}{style}];")

    labels: Dict[Tuple[str, str], List[str]] = defaultdict(list)
    for source, label, target in sorted(g.transitions):
        labels[(source, target)].append(EPS_GLYPH if label == EPS else label)
    for (source, target), merged in sorted(labels.items()):
        lines.append(f"  {_gvquote(source)} -> {_gvquote(target)} [label={_gvquote(','.join(merged))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
