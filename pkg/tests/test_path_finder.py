import networkx as nx

from utils.parser import parse_labeled_sequent as ls
from utils.path_finder import CHILD, PARENT, PathFinder, label_graph

TREE = ls("R w0 w1, R w2 w1, R w2 w3, w3: p => w0: q")


def test_label_graph_ignores_direction():
    graph = label_graph(TREE)
    assert set(graph.nodes) == {"w0", "w1", "w2", "w3"}
    assert nx.shortest_path(graph, "w0", "w3") == ["w0", "w1", "w2", "w3"]
    assert nx.single_source_shortest_path_length(graph, "w1") == {"w1": 0, "w0": 1, "w2": 1, "w3": 2}


def test_self_loops_are_not_edges():
    graph = label_graph(ls("R w w, w: p =>"))
    assert list(graph.nodes) == ["w"]
    assert graph.number_of_edges() == 0


def test_oriented_path():
    hops = PathFinder.oriented_path(TREE, "w0", "w3")
    assert hops == [("w0", "w1", CHILD), ("w1", "w2", PARENT), ("w2", "w3", CHILD)]
    assert PathFinder.oriented_path(TREE, "w0", "w0") == []


def test_missing_labels_and_disconnected_parts():
    assert PathFinder.oriented_path(TREE, "w0", "w9") is None
    assert PathFinder.oriented_path(ls("R w u, R v x =>"), "w", "x") is None
