"""
Labeled sequents, their graphs, and the polytree machinery: partitions,
subpolytrees, isomorphism and canonical forms.
"""
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from .errors import PolytreeError, ProofKitError
from .formula import Formula

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class RelAtom:
    """Relational atom R src dst."""
    src: str
    dst: str

    def rename(self, mapping: Dict[str, str]) -> "RelAtom":
        return RelAtom(mapping.get(self.src, self.src), mapping.get(self.dst, self.dst))

    def __str__(self) -> str:
        return f"R {self.src} {self.dst}"


@dataclass(frozen=True)
class LabeledFormula:
    label: str
    formula: Formula

    def sort_key(self) -> Tuple[str, str]:
        return (self.label, str(self.formula))

    def rename(self, mapping: Dict[str, str]) -> "LabeledFormula":
        return LabeledFormula(mapping.get(self.label, self.label), self.formula)

    def __str__(self) -> str:
        return f"{self.label}: {self.formula}"


def _sorted_multiset(items: Iterable[LabeledFormula]) -> Tuple[LabeledFormula, ...]:
    return tuple(sorted(items, key=LabeledFormula.sort_key))


@dataclass(frozen=True)
class LabeledSequent:
    """R, Gamma => Delta with R a set and Gamma, Delta multisets.

    The multisets are stored as sorted tuples so that equality is
    multiset equality.
    """
    rel: FrozenSet[RelAtom] = frozenset()
    ante: Tuple[LabeledFormula, ...] = ()
    succ: Tuple[LabeledFormula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rel", frozenset(self.rel))
        object.__setattr__(self, "ante", _sorted_multiset(self.ante))
        object.__setattr__(self, "succ", _sorted_multiset(self.succ))

    # --- basic queries --------------------------------------------------

    def length(self) -> int:
        return len(self.rel) + len(self.ante) + len(self.succ)

    def is_empty(self) -> bool:
        return self.length() == 0

    def labels(self) -> Set[str]:
        found = {lf.label for lf in self.ante + self.succ}
        for atom in self.rel:
            found.add(atom.src)
            found.add(atom.dst)
        return found

    def formula_labels(self) -> Set[str]:
        return {lf.label for lf in self.ante + self.succ}

    def restrict(self, label: str) -> Tuple[Tuple[Formula, ...], Tuple[Formula, ...]]:
        """Formulas at one label: (Gamma restricted, Delta restricted)."""
        return (tuple(lf.formula for lf in self.ante if lf.label == label),
                tuple(lf.formula for lf in self.succ if lf.label == label))

    # --- algebra --------------------------------------------------------

    def compose(self, other: "LabeledSequent") -> "LabeledSequent":
        return LabeledSequent(self.rel | other.rel, self.ante + other.ante, self.succ + other.succ)

    def contains(self, other: "LabeledSequent") -> bool:
        """True iff other is a sub-(multi)set of self on every component."""
        return (other.rel <= self.rel
                and not (Counter(other.ante) - Counter(self.ante))
                and not (Counter(other.succ) - Counter(self.succ)))

    def minus(self, other: "LabeledSequent", keep_rel: FrozenSet[RelAtom] = frozenset()) -> "LabeledSequent":
        """Multiset difference; relational atoms in keep_rel are not removed."""
        if not self.contains(other):
            raise ProofKitError(f"{other} is not contained in {self}")
        ante = Counter(self.ante) - Counter(other.ante)
        succ = Counter(self.succ) - Counter(other.succ)
        rel = (self.rel - other.rel) | (self.rel & keep_rel)
        return LabeledSequent(rel, ante.elements(), succ.elements())

    def rename(self, mapping: Dict[str, str]) -> "LabeledSequent":
        return LabeledSequent(frozenset(a.rename(mapping) for a in self.rel),
                              tuple(lf.rename(mapping) for lf in self.ante),
                              tuple(lf.rename(mapping) for lf in self.succ))

    def __str__(self) -> str:
        left = [str(a) for a in sorted(self.rel)] + [str(lf) for lf in self.ante]
        right = [str(lf) for lf in self.succ]
        text = ", ".join(left)
        text = (text + " => ") if text else "=> "
        return (text + ", ".join(right)).rstrip()

    def pretty(self) -> str:
        left = [f"R{a.src}{a.dst}" for a in sorted(self.rel)]
        left += [f"{lf.label}:{lf.formula.pretty()}" for lf in self.ante]
        right = [f"{lf.label}:{lf.formula.pretty()}" for lf in self.succ]
        return f"{', '.join(left)} ⇒ {', '.join(right)}".strip()


EMPTY = LabeledSequent()


def flat(label: str, ante: Iterable[Formula] = (), succ: Iterable[Formula] = ()) -> LabeledSequent:
    return LabeledSequent(frozenset(), tuple(LabeledFormula(label, f) for f in ante),
                          tuple(LabeledFormula(label, f) for f in succ))


def relations(*pairs: Tuple[str, str]) -> LabeledSequent:
    return LabeledSequent(frozenset(RelAtom(a, b) for a, b in pairs))


def compose(*parts: LabeledSequent) -> LabeledSequent:
    """Sequent composition; associative and commutative with identity (=>)."""
    result = EMPTY
    for part in parts:
        result = result.compose(part)
    return result


def label_substitute(s: LabeledSequent, replace: str, by: str) -> LabeledSequent:
    """Label substitution (by/replace): every occurrence of replace becomes by."""
    if replace == by:
        return s
    return s.rename({replace: by})


class FreshLabels:
    """Deterministic allocator of labels w0, w1, ... avoiding a given set."""

    def __init__(self, avoid: Iterable[str] = (), prefix: str = "w"):
        self.used = set(avoid)
        self.prefix = prefix
        self.counter = 0

    def reserve(self, labels: Iterable[str]) -> None:
        self.used.update(labels)

    def __call__(self) -> str:
        while True:
            candidate = f"{self.prefix}{self.counter}"
            self.counter += 1
            if candidate not in self.used:
                self.used.add(candidate)
                return candidate


# --- graphs -------------------------------------------------------------

@dataclass
class SequentGraph:
    """Graph of a labeled sequent: one node per label with its flat payload."""
    nodes: Dict[str, Tuple[Tuple[Formula, ...], Tuple[Formula, ...]]] = field(default_factory=dict)
    edges: List[Tuple[str, str]] = field(default_factory=list)

    def payload_text(self, label: str) -> str:
        ante, succ = self.nodes[label]
        return f"{', '.join(str(f) for f in ante)} => {', '.join(str(f) for f in succ)}".strip()

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        for label, (ante, succ) in self.nodes.items():
            graph.add_node(label, payload=_payload_key(ante, succ))
        graph.add_edges_from(self.edges)
        return graph


def _payload_key(ante, succ) -> str:
    return json.dumps([sorted(str(f) for f in ante), sorted(str(f) for f in succ)])


def graph_of(s: LabeledSequent) -> SequentGraph:
    graph = SequentGraph()
    for label in sorted(s.labels()):
        graph.nodes[label] = s.restrict(label)
    graph.edges = [(a.src, a.dst) for a in sorted(s.rel)]
    return graph


def _undirected(s: LabeledSequent) -> nx.MultiGraph:
    graph = nx.MultiGraph()
    graph.add_nodes_from(s.labels())
    graph.add_edges_from((a.src, a.dst) for a in s.rel)
    return graph


@dataclass
class PolytreeVerdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_polytree(s: LabeledSequent) -> PolytreeVerdict:
    """Labeled polytree test with a diagnostic naming the failed clause."""
    if not s.rel:
        if len(s.formula_labels()) > 1:
            return PolytreeVerdict(False, "no relational atoms but more than one label")
        return PolytreeVerdict(True)
    loose = s.formula_labels() - {x for a in s.rel for x in (a.src, a.dst)}
    if loose:
        return PolytreeVerdict(False, f"labels {sorted(loose)} occur in formulas but not in relational atoms")
    graph = _undirected(s)
    # A MultiGraph keeps Ruw next to Rwu and self-loops, both of which are cycles.
    if not nx.is_tree(graph):
        if not nx.is_connected(graph):
            return PolytreeVerdict(False, "label graph is not connected")
        return PolytreeVerdict(False, "label graph contains an (un)directed cycle")
    return PolytreeVerdict(True)


def require_polytree(s: LabeledSequent) -> None:
    verdict = is_polytree(s)
    if not verdict:
        raise PolytreeError(f"{s} is not a labeled polytree sequent: {verdict.reason}")


def w_partition(s: LabeledSequent, w: str,
                second: LabeledSequent = EMPTY) -> Tuple[LabeledSequent, LabeledSequent]:
    """Split s at w into (s minus second, second) and validate the w-partition.

    The assignment is given by listing the items that go to the second
    part; the default puts everything in the first part.
    """
    if w not in s.labels() and not s.is_empty():
        raise ProofKitError(f"label {w} does not occur in {s}")
    if not s.contains(second):
        raise ProofKitError("assignment mentions items not in the sequent")
    first = s.minus(second)
    for name, part in (("first", first), ("second", second)):
        verdict = is_polytree(part)
        if not verdict:
            raise PolytreeError(f"{name} part is not a polytree: {verdict.reason}")
    if not first.is_empty() and not second.is_empty():
        shared = first.labels() & second.labels()
        if shared != {w}:
            raise PolytreeError(f"parts are not {w}-disjoint: they share {sorted(shared)}")
    elif first.is_empty() and second.labels() and w not in second.labels():
        raise PolytreeError(f"{w} does not occur in the non-empty part")
    return first, second


def subpolytree(s: LabeledSequent, u: str, w: str) -> LabeledSequent:
    """The part of s on u's side of the edge between w and u."""
    edge = RelAtom(w, u) if RelAtom(w, u) in s.rel else RelAtom(u, w)
    if edge not in s.rel:
        raise ProofKitError(f"no relational atom between {w} and {u}")
    graph = _undirected(s)
    graph.remove_edge(edge.src, edge.dst)
    side = nx.node_connected_component(graph, u)
    if w in side:
        raise PolytreeError(f"{s} is not a polytree: {w} and {u} stay connected")
    rel = frozenset(a for a in s.rel if a.src in side and a.dst in side)
    return LabeledSequent(rel,
                          tuple(lf for lf in s.ante if lf.label in side),
                          tuple(lf for lf in s.succ if lf.label in side))


def neighbours(s: LabeledSequent, w: str) -> Tuple[List[str], List[str]]:
    """(children u with R w u, parents v with R v w), each sorted."""
    children = sorted(a.dst for a in s.rel if a.src == w)
    parents = sorted(a.src for a in s.rel if a.dst == w)
    return children, parents


# --- isomorphism and canonical forms ------------------------------------

def _adjacency(s: LabeledSequent) -> Dict[str, List[Tuple[str, str]]]:
    adjacency: Dict[str, List[Tuple[str, str]]] = {label: [] for label in s.labels()}
    for a in s.rel:
        adjacency[a.src].append((">", a.dst))
        adjacency[a.dst].append(("<", a.src))
    return adjacency


def rooted_code(s: LabeledSequent, root: str) -> str:
    """AHU code of a polytree sequent rooted at a label.

    Each node contributes its flat payload and the sorted codes of its
    subtrees, each prefixed with the direction of the connecting edge.
    """
    if s.is_empty():
        return "{}"
    adjacency = _adjacency(s)
    if root not in adjacency:
        raise ProofKitError(f"label {root} does not occur in {s}")
    return _code(s, adjacency, root, None)


def _code(s, adjacency, node, parent) -> str:
    ante, succ = s.restrict(node)
    parts = sorted(mark + _code(s, adjacency, child, node)
                   for mark, child in adjacency[node] if child != parent)
    return "{" + _payload_key(ante, succ) + "|" + ",".join(parts) + "}"


def canonical_form(s: LabeledSequent) -> str:
    """Canonical string of a polytree sequent: equal iff isomorphic."""
    require_polytree(s)
    if s.is_empty():
        return "{}"
    labels = s.labels()
    if len(labels) == 1:
        return rooted_code(s, next(iter(labels)))
    centers = nx.center(nx.Graph(_undirected(s)))
    return min(rooted_code(s, c) for c in centers)


def rooted_isomorphism(a: LabeledSequent, root_a: str,
                       b: LabeledSequent, root_b: str) -> Optional[Dict[str, str]]:
    """Bijection between two polytrees mapping root_a to root_b, if any."""
    if a.is_empty() or b.is_empty():
        return {} if a.is_empty() and b.is_empty() else None
    if rooted_code(a, root_a) != rooted_code(b, root_b):
        return None
    adj_a, adj_b = _adjacency(a), _adjacency(b)
    mapping: Dict[str, str] = {}

    def align(x, parent_x, y, parent_y):
        mapping[x] = y
        kids_a = sorted((mark + _code(a, adj_a, c, x), c) for mark, c in adj_a[x] if c != parent_x)
        kids_b = sorted((mark + _code(b, adj_b, c, y), c) for mark, c in adj_b[y] if c != parent_y)
        for (_, cx), (_, cy) in zip(kids_a, kids_b):
            align(cx, x, cy, y)

    align(root_a, None, root_b, None)
    return mapping


def isomorphic(a: LabeledSequent, b: LabeledSequent) -> Optional[Dict[str, str]]:
    """A label bijection witnessing a isomorphic to b, or None."""
    if a.length() != b.length() or len(a.labels()) != len(b.labels()):
        return None
    if a.is_empty():
        return {}
    if is_polytree(a) and is_polytree(b):
        if canonical_form(a) != canonical_form(b):
            return None
        root_a = min(a.labels(), key=lambda x: (rooted_code(a, x), x))
        code = rooted_code(a, root_a)
        for root_b in sorted(b.labels()):
            if rooted_code(b, root_b) == code:
                return rooted_isomorphism(a, root_a, b, root_b)
        return None
    return backtracking_isomorphism(a, b)


def backtracking_isomorphism(a: LabeledSequent, b: LabeledSequent) -> Optional[Dict[str, str]]:
    """General isomorphism via VF2 with payload-matching nodes."""
    if len(a.labels()) != len(b.labels()) or len(a.rel) != len(b.rel):
        return None
    matcher = DiGraphMatcher(graph_of(a).to_networkx(), graph_of(b).to_networkx(),
                             node_match=lambda x, y: x["payload"] == y["payload"])
    if matcher.is_isomorphic():
        return dict(matcher.mapping)
    return None
