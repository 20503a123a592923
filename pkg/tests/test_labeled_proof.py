import pytest

from models.errors import ProofKitError, SideConditionError
from models.formula import Atom
from models.labeled_proof import (apply_strict_structural, check_labeled_proof, context_of, labeled_metrics,
                                  steps_to_proof, structural_step, zip_children)
from models.labeled_rules import LabeledCalculus
from models.labeled_sequent import flat
from models.proof_tree import ProofTree, open_leaf
from utils.parser import parse_labeled_sequent as ls
from utils.proof_io import read_axioms

p, q = Atom("p"), Atom("q")


@pytest.fixture
def g3kt():
    return LabeledCalculus.for_axioms(())


@pytest.fixture
def g3kt_t():
    return LabeledCalculus.for_axioms(read_axioms("T"))


def boxed_identity() -> ProofTree:
    leaf = ProofTree("id", ls("R w u, w: [F]p, u: p => u: p"), [], {"w": "u", "p": p})
    left = ProofTree("boxf_l", ls("R w u, w: [F]p => u: p"), [leaf], {"w": "w", "u": "u", "A": p})
    return ProofTree("boxf_r", ls("w: [F]p => w: [F]p"), [left], {"w": "w", "u": "u", "A": p})


def test_small_proof_checks(g3kt):
    verdict = check_labeled_proof(boxed_identity(), g3kt, strict=True, polytree=True)
    assert verdict.ok, verdict.message
    assert verdict.notes == ["all sequents polytree"]
    assert verdict.metrics.quantity == 3


def test_labeled_metrics():
    proof = boxed_identity()
    metrics = labeled_metrics(proof)
    assert metrics.quantity == 3
    assert metrics.width == max(n.conclusion.length() for n in proof.nodes())
    assert metrics.size == 3 * metrics.width


def test_premise_mismatch_is_reported(g3kt):
    proof = boxed_identity()
    leaf = proof.premises[0].premises[0]
    leaf.conclusion = ls("R w u, w: [F]p, u: q => u: q")
    leaf.subst = {"w": "u", "p": q}
    verdict = check_labeled_proof(proof, g3kt)
    assert not verdict
    assert verdict.path == [0]
    assert verdict.rule == "boxf_l"


def test_eigenlabel_must_be_fresh(g3kt):
    proof = boxed_identity()
    proof.conclusion = ls("R w u, w: [F]p => w: [F]p")
    verdict = check_labeled_proof(proof, g3kt)
    assert not verdict
    assert verdict.path == []


def test_cut_is_not_a_labeled_rule(g3kt):
    leaf = ProofTree("id", ls("w: p => w: p"), [], {"w": "w", "p": p})
    proof = ProofTree("cut", ls("w: p => w: p"), [leaf, leaf], {"A": p})
    assert "cut" in check_labeled_proof(proof, g3kt).message


def strict_reflexivity() -> ProofTree:
    leaf = ProofTree("id", ls("R w u, w: q, u: q => u: q, w: <F>q"), [], {"w": "u", "p": q})
    diamond = ProofTree("diaf_r", ls("R w u, w: q, u: q => w: <F>q"), [leaf], {"w": "w", "u": "u", "A": q})
    sub = {"w": "w", "u1": "u", "L1": flat("w", [q]), "L2": flat("u", [q])}
    return ProofTree("pt:1", ls("w: q => w: <F>q"), [diamond], sub)


def test_strict_pt_instance(g3kt_t):
    verdict = check_labeled_proof(strict_reflexivity(), g3kt_t, strict=True, polytree=True)
    assert verdict.ok, verdict.message
    assert verdict.notes == ["all sequents polytree", "all pt instances strict"]
    assert context_of(strict_reflexivity(), g3kt_t) == ls("=> w: <F>q")


def test_non_strict_pt_instance_needs_the_flags_off(g3kt_t):
    # the context is not connected, which only P7 rules out
    sub = {"w": "w", "u1": "u", "L1": flat("w", [q]), "L2": flat("u", [q])}
    premise = open_leaf(ls("R v x, R w u, w: q, u: q => w: <F>q"))
    proof = ProofTree("pt:1", ls("R v x, w: q => w: <F>q"), [premise], sub)
    assert check_labeled_proof(proof, g3kt_t, allow_open=True)
    strict = check_labeled_proof(proof, g3kt_t, strict=True, allow_open=True)
    assert strict.message.startswith("not strict: P7")
    shaped = check_labeled_proof(proof, g3kt_t, polytree=True, allow_open=True)
    assert "not a polytree" in shaped.message


def test_label_substitution_rule():
    s = ls("R w u, R w v, u: p => v: q")
    assert apply_strict_structural("ls", s, keep="u", drop="v") == ls("R w u, u: p => u: q")
    with pytest.raises(SideConditionError):
        apply_strict_structural("ls", ls("R w u, R u v =>"), keep="w", drop="v")
    with pytest.raises(SideConditionError):
        apply_strict_structural("ls", s, keep="u", drop="u")


def test_weakening_rule():
    s = ls("w: p =>")
    assert apply_strict_structural("w", s, added=ls("R w u => u: q")) == ls("R w u, w: p => u: q")
    with pytest.raises(SideConditionError):
        apply_strict_structural("w", s, added=ls("u: q =>"))
    with pytest.raises(SideConditionError):
        apply_strict_structural("w", s, added=ls("R w w =>"))


def test_contraction_rules():
    s = ls("w: p, w: p => w: q, w: q")
    assert apply_strict_structural("c_l", s, label="w", formula=p) == ls("w: p => w: q, w: q")
    assert apply_strict_structural("c_r", s, label="w", formula=q) == ls("w: p, w: p => w: q")
    with pytest.raises(SideConditionError):
        apply_strict_structural("c_l", ls("w: p =>"), label="w", formula=p)


def test_zip_isomorphic_children(g3kt):
    s = ls("R w u, R w v, u: p, v: p => w: q")
    steps = zip_children(s, "w", "u", "v")
    assert [step.kind for step in steps] == ["ls", "c_l"]
    assert steps[-1].after == ls("R w u, u: p => w: q")
    proof = steps_to_proof(open_leaf(s), steps)
    assert check_labeled_proof(proof, g3kt, allow_structural=True, allow_open=True)
    assert not check_labeled_proof(proof, g3kt, allow_open=True)


def test_zip_needs_isomorphic_subtrees():
    with pytest.raises(ProofKitError):
        zip_children(ls("R w u, R w v, u: p, v: q =>"), "w", "u", "v")


def test_structural_step_records_parameters():
    step = structural_step("c_l", ls("w: p, w: p =>"), label="w", formula=p)
    node = step.node(open_leaf(step.before))
    assert node.rule == "c_l"
    assert node.subst == {"formula": p, "label": "w"}
    assert node.conclusion == ls("w: p =>")
