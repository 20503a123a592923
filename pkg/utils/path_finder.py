"""
Label paths through the relational atoms of a labeled sequent.
"""
from typing import List, Optional, Tuple

import networkx as nx

from models.labeled_sequent import LabeledSequent

CHILD = "child"
PARENT = "parent"


def label_graph(s: LabeledSequent) -> nx.Graph:
    """Undirected label graph of s; loops R w w are not edges."""
    graph = nx.Graph()
    graph.add_nodes_from(s.labels())
    graph.add_edges_from((a.src, a.dst) for a in s.rel if a.src != a.dst)
    return graph


class PathFinder:
    """Shortest label paths that remember which way each relational atom points."""

    @staticmethod
    def oriented_path(s: LabeledSequent, start: str, end: str) -> Optional[List[Tuple[str, str, str]]]:
        """
        The shortest path as (from, to, relation) hops, where relation says
        whether "to" is a child or a parent of "from".

        Returns:
            The hops in order, [] when start == end, None if unreachable
        """
        try:
            path = nx.shortest_path(label_graph(s), start, end)
        except (nx.NodeNotFound, nx.NetworkXNoPath):
            return None
        hops = []
        for here, there in zip(path, path[1:]):
            relation = CHILD if any(a.src == here and a.dst == there for a in s.rel) else PARENT
            hops.append((here, there, relation))
        return hops
