import random

import pytest

from models.errors import StructuralEliminationError
from models.formula import Atom
from models.labeled_proof import check_labeled_proof
from models.labeled_rules import STRUCTURAL_RULE_NAMES, LabeledCalculus
from models.labeled_sequent import LabeledFormula, flat
from models.proof_tree import ProofTree, open_leaf
from models.structural_elimination import ANTE, ProofEditor, eliminate_structural, inversion_pieces
from utils.generators import augment_structural, generate_proof
from utils.parser import parse_formula, parse_labeled_sequent as ls
from utils.proof_io import read_axioms

p = Atom("p")


@pytest.fixture
def g3kt():
    return LabeledCalculus.for_axioms(())


def boxed_identity() -> ProofTree:
    leaf = ProofTree("id", ls("R w u, w: [F]p, u: p => u: p"), [], {"w": "u", "p": p})
    left = ProofTree("boxf_l", ls("R w u, w: [F]p => u: p"), [leaf], {"w": "w", "u": "u", "A": p})
    return ProofTree("boxf_r", ls("w: [F]p => w: [F]p"), [left], {"w": "w", "u": "u", "A": p})


def no_structural_nodes(proof: ProofTree) -> bool:
    return not (proof.rules_used() & set(STRUCTURAL_RULE_NAMES))


def test_weakening_is_pushed_to_the_leaves(g3kt):
    proof = ProofTree("w", ls("w: [F]p, w: q => w: [F]p"), [boxed_identity()], {"added": ls("w: q =>")})
    assert check_labeled_proof(proof, g3kt, allow_structural=True)
    result = eliminate_structural(proof, g3kt)
    assert result.conclusion == proof.conclusion
    assert no_structural_nodes(result)
    assert check_labeled_proof(result, g3kt, strict=True, polytree=True)


def test_weakening_renames_eigenlabels_apart(g3kt):
    added = ls("R w u, u: q =>")
    proof = ProofTree("w", ls("R w u, w: [F]p, u: q => w: [F]p"), [boxed_identity()], {"added": added})
    result = eliminate_structural(proof, g3kt)
    assert result.conclusion == proof.conclusion
    assert "u" not in result.premises[0].subst.values()
    assert check_labeled_proof(result, g3kt)


def test_contraction_inverts_the_other_copy(g3kt):
    pq = parse_formula("p & q")
    leaf = ProofTree("id", ls("w: p, w: q, w: p & q => w: p"), [], {"w": "w", "p": p})
    split = ProofTree("and_l", ls("w: p & q, w: p & q => w: p"), [leaf], {"w": "w", "A": p, "B": Atom("q")})
    proof = ProofTree("c_l", ls("w: p & q => w: p"), [split], {"label": "w", "formula": pq})
    assert check_labeled_proof(proof, g3kt, allow_structural=True)
    result = eliminate_structural(proof, g3kt)
    assert result.rule == "and_l"
    assert result.premises[0].conclusion == ls("w: p, w: q => w: p")
    assert check_labeled_proof(result, g3kt)


def test_label_substitution_merges_siblings(g3kt):
    leaf = ProofTree("id", ls("R w u, R w v, u: p => u: p"), [], {"w": "u", "p": p})
    proof = ProofTree("ls", ls("R w u, u: p => u: p"), [leaf], {"keep": "u", "drop": "v"})
    result = eliminate_structural(proof, g3kt)
    assert result.rule == "id"
    assert result.conclusion == ls("R w u, u: p => u: p")


def test_inversion_pieces():
    item = LabeledFormula("w", parse_formula("<F>p"))
    (piece,) = inversion_pieces(ANTE, item, "x")
    assert piece == ls("R w x, x: p =>")
    with pytest.raises(StructuralEliminationError):
        inversion_pieces(ANTE, LabeledFormula("w", parse_formula("[F]p")), "x")


def test_open_leaves_cannot_be_edited(g3kt):
    editor = ProofEditor(g3kt)
    with pytest.raises(StructuralEliminationError):
        editor.weaken(open_leaf(ls("w: p => w: p")), ls("w: q =>"))


@pytest.mark.parametrize("axiom_text", ["", "T", "4"])
def test_random_detours_are_eliminated(axiom_text, rounds):
    calculus = LabeledCalculus.for_axioms(read_axioms(axiom_text))
    rng = random.Random(5)
    for seed in range(rounds(4, 40)):
        proof = generate_proof(seed, 3, "g3kt", calculus.axioms)
        augmented = augment_structural(proof, rng, count=3)
        assert check_labeled_proof(augmented, calculus, allow_structural=True), seed
        result = eliminate_structural(augmented, calculus)
        assert result.conclusion == proof.conclusion
        assert no_structural_nodes(result)
        verdict = check_labeled_proof(result, calculus, strict=True, polytree=True)
        assert verdict.ok, (seed, verdict.message)


def transitive_step() -> ProofTree:
    leaf = ProofTree("id", ls("R w a, R a b, R w c, b: p, c: p => c: p, w: <F>p"), [], {"w": "c", "p": p})
    diamond = ProofTree("diaf_r", ls("R w a, R a b, R w c, b: p, c: p => w: <F>p"), [leaf],
                        {"w": "w", "u": "c", "A": p})
    sub = {"w": "w", "u1": "a", "u2": "b", "u3": "c", "L1": flat("b", [p]), "L2": flat("c", [p])}
    return ProofTree("pt:1", ls("R w a, R a b, b: p => w: <F>p"), [diamond], sub)


def test_weakening_at_an_inner_principal_label(labeled_calculus):
    calculus = labeled_calculus("4")
    assert check_labeled_proof(transitive_step(), calculus, strict=True, polytree=True)
    added = ls("R a x, x: q =>")
    proof = ProofTree("w", ls("R w a, R a b, R a x, b: p, x: q => w: <F>p"), [transitive_step()],
                      {"added": added})
    assert check_labeled_proof(proof, calculus, allow_structural=True)
    result = eliminate_structural(proof, calculus)
    assert result.conclusion == proof.conclusion
    assert no_structural_nodes(result)
    # the instance at b takes the branch at a together with the edge R a b
    assert result.subst["L1"] == ls("R a b, R a x, b: p, x: q =>")
    assert len(result.subst["L2"].rel) == 2
    verdict = check_labeled_proof(result, calculus, strict=True, polytree=True)
    assert verdict.ok, verdict.message


def test_formulas_at_an_inner_principal_label(labeled_calculus):
    calculus = labeled_calculus("4")
    proof = ProofTree("w", ls("R w a, R a b, a: q, b: p => w: <F>p"), [transitive_step()],
                      {"added": ls("a: q =>")})
    result = eliminate_structural(proof, calculus)
    assert result.subst["L1"] == ls("R a b, a: q, b: p =>")
    assert check_labeled_proof(result, calculus, strict=True, polytree=True)
