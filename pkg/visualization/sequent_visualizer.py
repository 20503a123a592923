"""
Drawing labeled sequents and proof trees: Graphviz DOT text for sequent
graphs, and matplotlib renderings of sequent graphs and proof trees.
"""
import logging
from typing import Dict, List, Optional, Tuple

import matplotlib.pyplot as plt
import networkx as nx

from models.labeled_sequent import LabeledSequent, SequentGraph, graph_of
from models.proof_tree import ProofTree

logger = logging.getLogger(__name__)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


class SequentVisualizer:
    """Renders the graph of one labeled sequent."""

    def __init__(self, sequent: LabeledSequent):
        """
        Initialize the visualizer.

        Args:
            sequent: The labeled sequent; its labels become nodes and its
                relational atoms become directed edges
        """
        self.sequent = sequent
        self.graph: SequentGraph = graph_of(sequent)

    def to_dot(self, name: str = "sequent") -> str:
        """
        DOT text with one node per label and one edge per relational atom.

        A node's text is the label followed by its flat payload; a
        relational atom R w w comes out as a self-loop.
        """
        lines = [f"digraph {_quote(name)} {{", "  node [shape=box];"]
        for label in self.graph.nodes:
            payload = self.graph.payload_text(label)
            text = f"{label}: {payload}" if payload != "=>" else label
            lines.append(f"  {_quote(label)} [label={_quote(text)}];")
        for src, dst in self.graph.edges:
            lines.append(f"  {_quote(src)} -> {_quote(dst)};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def plot(self, filename: Optional[str] = None, figsize: Tuple[int, int] = (10, 7)) -> None:
        """
        Draw the sequent graph with matplotlib.

        Args:
            filename: Image file to write; shows the figure when None
            figsize: Figure size (width, height)
        """
        graph = self.graph.to_networkx()
        plt.figure(figsize=figsize)
        pos = nx.spring_layout(graph, seed=0)
        nx.draw_networkx_nodes(graph, pos, node_color="lightblue", node_size=900,
                               edgecolors="black")
        nx.draw_networkx_edges(graph, pos, arrows=True, arrowsize=18, width=2)
        labels = {label: f"{label}\n{self.graph.payload_text(label)}" for label in graph.nodes}
        nx.draw_networkx_labels(graph, pos, labels, font_size=8)
        plt.title(str(self.sequent), fontsize=10)
        plt.axis("off")
        plt.tight_layout()
        _finish(filename)


def sequent_to_dot(sequent: LabeledSequent, name: str = "sequent") -> str:
    return SequentVisualizer(sequent).to_dot(name)


def plot_sequent_graph(sequent: LabeledSequent, filename: Optional[str] = None) -> None:
    SequentVisualizer(sequent).plot(filename)


# --- proof trees --------------------------------------------------------

def _tree_layout(proof: ProofTree) -> Dict[Tuple[int, ...], Tuple[float, float]]:
    """Leaves spaced left to right, each parent centred over its premises,
    the conclusion at the bottom."""
    pos: Dict[Tuple[int, ...], Tuple[float, float]] = {}
    next_x = [0.0]

    def place(node: ProofTree, path: Tuple[int, ...]) -> float:
        if not node.premises:
            x = next_x[0]
            next_x[0] += 1.0
        else:
            xs = [place(p, path + (i,)) for i, p in enumerate(node.premises)]
            x = sum(xs) / len(xs)
        pos[path] = (x, float(len(path)))
        return x

    place(proof, ())
    return pos


def plot_proof_tree(proof: ProofTree, filename: Optional[str] = None,
                    figsize: Tuple[int, int] = (12, 8), show_sequents: bool = True) -> None:
    """
    Draw a proof tree with the conclusion at the bottom.

    Args:
        proof: Display or labeled proof
        filename: Image file to write; shows the figure when None
        figsize: Figure size (width, height)
        show_sequents: Print each node's conclusion under its rule name
    """
    graph = nx.DiGraph()
    texts: Dict[Tuple[int, ...], str] = {}
    for path, node in proof.walk():
        graph.add_node(path)
        texts[path] = f"({node.rule})\n{node.conclusion}" if show_sequents else node.rule
        for index in range(len(node.premises)):
            graph.add_edge(path + (index,), path)
    pos = _tree_layout(proof)
    plt.figure(figsize=figsize)
    open_nodes: List[Tuple[int, ...]] = [path for path, node in proof.walk() if node.is_open()]
    nx.draw_networkx_edges(graph, pos, arrows=False, width=1)
    nx.draw_networkx_nodes(graph, pos, node_color="white", node_size=300, edgecolors="gray")
    if open_nodes:
        nx.draw_networkx_nodes(graph, pos, nodelist=open_nodes, node_color="orange", node_size=300)
    nx.draw_networkx_labels(graph, pos, texts, font_size=7)
    plt.title(f"Proof of {proof.conclusion}", fontsize=10)
    plt.axis("off")
    plt.tight_layout()
    _finish(filename)


def _finish(filename: Optional[str]) -> None:
    if filename:
        plt.savefig(filename, dpi=150, bbox_inches="tight")
        plt.close()
        logger.info("saved figure to %s", filename)
    else:
        plt.show()
