import random

import pytest

from models.errors import PolytreeError, ProofKitError
from models.formula import Atom
from models.labeled_sequent import (EMPTY, LabeledFormula, RelAtom,
                                    backtracking_isomorphism, canonical_form, compose, flat,
                                    graph_of, is_polytree, isomorphic, label_substitute,
                                    relations, subpolytree, w_partition)
from utils.generators import random_polytree_sequent
from utils.parser import parse_labeled_sequent as ls

# six labels, five edges
SIX = ("R w1 w0, R w0 w2, R w4 w1, R w5 w1, R w2 w3, "
       "w0: p, w1: q, w4: <F>p, w5: q => w3: [P]p, w1: p")


def test_parse_and_print():
    s = ls("R w u, w: p => u: <F>q")
    assert s.rel == frozenset({RelAtom("w", "u")})
    assert s.ante == (LabeledFormula("w", Atom("p")),)
    assert str(s) == "R w u, w: p => u: <F>q"
    assert str(EMPTY) == "=>"


def test_multisets_compare_regardless_of_order():
    assert ls("w: p, w: q => ") == ls("w: q, w: p =>")
    assert ls("w: p, w: p =>") != ls("w: p =>")
    assert ls("w: p, w: p =>").length() == 2


def test_composition_and_difference():
    s = compose(relations(("w", "u")), flat("w", [Atom("p")]), flat("u", succ=[Atom("q")]))
    assert s == ls("R w u, w: p => u: q")
    assert s.minus(flat("w", [Atom("p")])) == ls("R w u => u: q")
    with pytest.raises(ProofKitError):
        s.minus(flat("w", [Atom("q")]))


def test_label_substitution():
    s = ls("R w u, R w v, u: p => v: q")
    assert label_substitute(s, "v", "u") == ls("R w u, u: p => u: q")


@pytest.mark.parametrize("text", [SIX, "w: p => w: p", "=>", "R w u =>"])
def test_polytrees(text):
    assert is_polytree(ls(text))


@pytest.mark.parametrize("text, reason", [
    ("R w w, w: p => w: <F>p", "cycle"),
    ("w: p, u: q =>", "more than one label"),
    ("R w u, R u w =>", "cycle"),
    ("R w u, R v u, R w v =>", "cycle"),
    ("R w u, v: p =>", "relational atoms"),
    ("R w u, R v x =>", "not connected"),
])
def test_non_polytrees(text, reason):
    verdict = is_polytree(ls(text))
    assert not verdict
    assert reason in verdict.reason


def test_six_node_graph():
    graph = graph_of(ls(SIX))
    assert len(graph.nodes) == 6
    assert len(graph.edges) == 5
    assert graph.payload_text("w1") == "q => p"
    assert graph.payload_text("w2") == "=>"


def test_subpolytree():
    s = ls(SIX)
    assert subpolytree(s, "w1", "w0") == ls("R w4 w1, R w5 w1, w1: q, w4: <F>p, w5: q => w1: p")
    assert subpolytree(s, "w3", "w2") == ls("=> w3: [P]p")
    with pytest.raises(ProofKitError):
        subpolytree(s, "w3", "w0")


def test_w_partition():
    s = ls(SIX)
    second = ls("R w0 w2, R w2 w3 => w3: [P]p")
    first, rest = w_partition(s, "w0", second)
    assert compose(first, rest) == s
    assert w_partition(s, "w0") == (s, EMPTY)
    with pytest.raises(PolytreeError):
        # moving the edge alone cuts w3 off from the first part
        w_partition(s, "w0", ls("R w0 w2 =>"))


def test_isomorphism_of_renamed_polytrees():
    s = ls(SIX)
    mapping = {f"w{i}": f"x{5 - i}" for i in range(6)}
    renamed = s.rename(mapping)
    found = isomorphic(s, renamed)
    assert found is not None
    assert s.rename(found) == renamed
    assert canonical_form(s) == canonical_form(renamed)


def test_direction_and_payload_matter():
    assert isomorphic(ls("R w u, u: p =>"), ls("R u w, u: p =>")) is None
    assert isomorphic(ls("R w u => u: p"), ls("R w u => w: p")) is None
    assert canonical_form(ls("R w u, u: p =>")) != canonical_form(ls("R w u => u: p"))


def test_canonical_form_needs_a_polytree():
    with pytest.raises(PolytreeError):
        canonical_form(ls("R w w =>"))


def test_general_isomorphism_for_cycles():
    a = ls("R w w, w: p =>")
    assert backtracking_isomorphism(a, ls("R v v, v: p =>")) == {"w": "v"}
    assert isomorphic(a, ls("R v v, v: q =>")) is None


def test_canonical_forms_agree_with_the_general_matcher(rounds):
    rng = random.Random(11)
    for _ in range(rounds(60, 500)):
        a = random_polytree_sequent(rng, rng.randint(1, 5), 3, atoms=("p", "q"))
        b = random_polytree_sequent(rng, rng.randint(1, 5), 3, atoms=("p", "q"))
        shuffled = a.rename({x: f"z{x}" for x in a.labels()})
        assert canonical_form(a) == canonical_form(shuffled)
        same = canonical_form(a) == canonical_form(b)
        assert same == (backtracking_isomorphism(a, b) is not None)
