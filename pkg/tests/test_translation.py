import random

import pytest

from conftest import AXIOM_SETS
from models.display_proof import check_display_proof
from models.display_rules import DisplayCalculus
from models.errors import TranslationError
from models.formula import Atom
from models.kripke_model import find_countermodel, frame_conditions_for
from models.labeled_proof import check_labeled_proof
from models.labeled_rules import LabeledCalculus
from models.labeled_sequent import flat, isomorphic
from models.proof_tree import Metrics, ProofTree, proof_metrics
from models.structure import tau
from translation.display_to_labeled import translate_d2l
from translation.labeled_to_display import translate_l2d
from translation.notation import to_display, to_labeled
from translation.trace import summary
from utils.generators import DisplayProofGenerator
from utils.parser import parse_display_sequent as ds, parse_labeled_sequent as ls
from utils.proof_io import read_axioms

p, q = Atom("p"), Atom("q")


def display_boxed_identity() -> ProofTree:
    leaf = ProofTree("id", ds("p |- p"))
    box = ProofTree("boxf_l", ds("[F]p |- @p"), [leaf])
    return ProofTree("d9", ds("@[F]p |- p"), [box])


def labeled_boxed_identity() -> ProofTree:
    leaf = ProofTree("id", ls("R w u, w: [F]p, u: p => u: p"), [], {"w": "u", "p": p})
    left = ProofTree("boxf_l", ls("R w u, w: [F]p => u: p"), [leaf], {"w": "w", "u": "u", "A": p})
    return ProofTree("boxf_r", ls("w: [F]p => w: [F]p"), [left], {"w": "w", "u": "u", "A": p})


def strict_reflexivity() -> ProofTree:
    leaf = ProofTree("id", ls("R w u, w: q, u: q => u: q, w: <F>q"), [], {"w": "u", "p": q})
    diamond = ProofTree("diaf_r", ls("R w u, w: q, u: q => w: <F>q"), [leaf], {"w": "w", "u": "u", "A": q})
    sub = {"w": "w", "u1": "u", "L1": flat("w", [q]), "L2": flat("u", [q])}
    return ProofTree("pt:1", ls("w: q => w: <F>q"), [diamond], sub)


@pytest.fixture
def dkt():
    return DisplayCalculus.for_axioms(())


def test_display_to_labeled(dkt):
    proof, trace = translate_d2l(display_boxed_identity(), dkt, "w0")
    assert proof.conclusion == ls("R w1 w0, w1: [F]p => w0: p")
    assert check_labeled_proof(proof, LabeledCalculus.for_axioms(()), strict=True, polytree=True)
    assert trace.direction == "d2l"
    assert trace.bound == 3 ** 2 * 3
    assert "" in trace.node_map()
    assert "d2l: quantity 3" in summary(trace)


def test_cut_is_not_translated(dkt):
    leaf = ProofTree("id", ds("p |- p"))
    proof = ProofTree("cut", ds("p |- p"), [leaf, leaf], {"A": p})
    with pytest.raises(TranslationError, match="cut not supported"):
        translate_d2l(proof, dkt)


def test_broken_input_is_not_translated(dkt):
    proof = display_boxed_identity()
    proof.conclusion = ds("@[F]p |- q")
    with pytest.raises(TranslationError, match="does not check"):
        translate_d2l(proof, dkt)


def test_labeled_to_display():
    proof, trace = translate_l2d(labeled_boxed_identity(), LabeledCalculus.for_axioms(()))
    assert trace.root == "w"
    assert proof.conclusion == to_display(ls("w: [F]p => w: [F]p"), "w")
    assert check_display_proof(proof, DisplayCalculus.for_axioms(()))
    assert trace.within_bound


def test_labeled_root_must_occur():
    with pytest.raises(TranslationError, match="does not occur"):
        translate_l2d(labeled_boxed_identity(), LabeledCalculus.for_axioms(()), root="w0")


def test_strict_pt_instance_to_display():
    calculus = LabeledCalculus.for_axioms(read_axioms("T"))
    proof, _ = translate_l2d(strict_reflexivity(), calculus)
    display = DisplayCalculus.for_axioms(calculus.axioms)
    assert check_display_proof(proof, display)
    assert "pt:1" in proof.rules_used()


def test_structural_input_is_cleaned_first():
    calculus = LabeledCalculus.for_axioms(())
    proof = ProofTree("w", ls("w: [F]p, w: q => w: [F]p"), [labeled_boxed_identity()],
                      {"added": ls("w: q =>")})
    result, _ = translate_l2d(proof, calculus)
    assert check_display_proof(result, DisplayCalculus.for_axioms(()))


@pytest.mark.parametrize("name", sorted(AXIOM_SETS))
def test_random_proofs_translate_both_ways(name, rounds):
    display = DisplayCalculus.for_axioms(read_axioms(AXIOM_SETS[name]))
    labeled = LabeledCalculus.for_axioms(display.axioms)
    rng = random.Random(17)
    generator = DisplayProofGenerator(rng, display)
    for _ in range(rounds(5, 50)):
        source = generator.generate(4)
        proof, trace = translate_d2l(source, display, labeled=labeled)
        assert proof.conclusion == to_labeled(source.conclusion)
        assert check_labeled_proof(proof, labeled, strict=True, polytree=True)
        assert trace.metrics_out.quantity <= trace.metrics_in.quantity
        assert trace.within_bound
        back, _ = translate_l2d(proof, labeled, root=trace.root)
        assert check_display_proof(back, display)
        assert isomorphic(to_labeled(back.conclusion), proof.conclusion) is not None


@pytest.mark.parametrize("name", sorted(AXIOM_SETS))
def test_generated_conclusions_are_valid(name, rounds):
    axioms = read_axioms(AXIOM_SETS[name])
    display = DisplayCalculus.for_axioms(axioms)
    rng = random.Random(23)
    generator = DisplayProofGenerator(rng, display)
    conditions = frame_conditions_for(axioms)
    for _ in range(rounds(5, 50)):
        conclusion = generator.generate(3).conclusion
        assert find_countermodel(tau(conclusion), rng, samples=20, conditions=conditions) is None, conclusion


def merged_euclidean_step(calculus: LabeledCalculus) -> ProofTree:
    """pt instance of the euclidean contraction whose principal part is R x w, w: p."""
    rule = next(r for r in calculus.pt_family("pt:1")[1:]
                if r.a_part.rel[0].src != r.a_part.rel[0].dst)
    (a_var,) = rule.a_part.vars
    (b_var,) = rule.b_parts[0].vars
    sub = {rule.root: "w", rule.a_part.rel[0].src: "x", b_var.label: "z",
           a_var.name: flat("w", [p]), b_var.name: flat("z", [p])}
    leaf = ProofTree("id", ls("R x w, R w z, w: p, z: p => z: p, w: <F>p"), [], {"w": "z", "p": p})
    diamond = ProofTree("diaf_r", ls("R x w, R w z, w: p, z: p => w: <F>p"), [leaf],
                        {"w": "w", "u": "z", "A": p})
    return ProofTree(rule.name, ls("R x w, w: p => w: <F>p"), [diamond], sub)


def test_contracted_pt_instance_to_display():
    calculus = LabeledCalculus.for_axioms(read_axioms("5"))
    source = merged_euclidean_step(calculus)
    assert "." in source.rule
    assert check_labeled_proof(source, calculus, strict=True, polytree=True)
    proof, trace = translate_l2d(source, calculus, root="w")
    assert check_display_proof(proof, DisplayCalculus.for_axioms(calculus.axioms))
    assert proof.conclusion == to_display(source.conclusion, "w")
    assert "pt:1" in proof.rules_used()
    rules = trace.node_map()[""]
    assert rules[0] == "pt:1"
    assert {"rho4", "rho5"} & set(rules)


def test_inner_principal_labels_take_weakenings():
    display = DisplayCalculus.for_axioms(read_axioms("4"))
    labeled = LabeledCalculus.for_axioms(display.axioms)
    generator = DisplayProofGenerator(random.Random(7), display)
    for _ in range(10):
        source = generator.generate(4)
        proof, _ = translate_d2l(source, display, labeled=labeled)
        assert check_labeled_proof(proof, labeled, strict=True, polytree=True)


def inflate_output(monkeypatch, grow):
    import translation.display_to_labeled as d2l
    seen = []

    def metrics(proof):
        seen.append(proof_metrics(proof))
        return seen[0] if len(seen) == 1 else grow(seen[0])
    monkeypatch.setattr(d2l, "proof_metrics", metrics)


def test_d2l_rejects_a_larger_quantity(dkt, monkeypatch):
    inflate_output(monkeypatch, lambda m: Metrics(quantity=m.quantity + 1, width=1, size=m.quantity + 1))
    with pytest.raises(TranslationError, match="more than"):
        translate_d2l(display_boxed_identity(), dkt)


def test_d2l_rejects_a_size_past_the_bound(dkt, monkeypatch):
    def grow(m):
        width = m.quantity ** 2 * m.width + 1
        return Metrics(quantity=1, width=width, size=width)
    inflate_output(monkeypatch, grow)
    with pytest.raises(TranslationError, match="exceeds the bound"):
        translate_d2l(display_boxed_identity(), dkt)
