import random

import pytest

from conftest import AXIOM_SETS
from models.display_proof import check_display_proof
from models.display_rules import DisplayCalculus, apply_display_rule
from models.labeled_proof import check_labeled_proof
from models.labeled_rules import STRUCTURAL_RULE_NAMES, LabeledCalculus
from models.labeled_sequent import is_polytree
from models.structure import Fml, positions, structure_at
from utils.generators import (DisplayProofGenerator, augment_structural, generate_proof,
                              random_display_sequent, random_formula, random_polytree_sequent,
                              random_pt_instance)
from utils.proof_io import dump_proof, read_axioms


def test_same_seed_same_formula():
    assert random_formula(random.Random(1), 3) == random_formula(random.Random(1), 3)


def test_display_sequents_use_the_given_atoms():
    rng = random.Random(2)
    for _ in range(20):
        d = random_display_sequent(rng, atoms=("p",))
        assert set().union(*(f.atoms() for f in _formulas(d))) <= {"p"}


def _formulas(d):
    return [structure_at(d, path).formula for path in positions(d) if isinstance(structure_at(d, path), Fml)]


def test_polytree_sequents():
    rng = random.Random(3)
    for size in range(1, 7):
        s = random_polytree_sequent(rng, size, 3)
        assert is_polytree(s)
        assert len(s.labels()) == size
        assert "w0" in s.labels()


@pytest.mark.parametrize("name", sorted(AXIOM_SETS))
def test_generated_display_proofs_check(name, rounds):
    calculus = DisplayCalculus.for_axioms(read_axioms(AXIOM_SETS[name]))
    generator = DisplayProofGenerator(random.Random(4), calculus)
    for depth in range(rounds(4, 8)):
        verdict = check_display_proof(generator.generate(depth), calculus)
        assert verdict.ok, verdict.message


def test_generation_is_deterministic():
    axioms = read_axioms("4")
    first = dump_proof(generate_proof(7, 3, "dkt", axioms), "dkt", axioms)
    second = dump_proof(generate_proof(7, 3, "dkt", axioms), "dkt", axioms)
    assert first == second


@pytest.mark.parametrize("name", ["K", "T"])
def test_generated_labeled_proofs_are_strict(name):
    calculus = LabeledCalculus.for_axioms(read_axioms(AXIOM_SETS[name]))
    proof = generate_proof(11, 3, "g3kt", calculus.axioms)
    verdict = check_labeled_proof(proof, calculus, strict=True, polytree=True)
    assert verdict.ok, verdict.message
    assert all("." not in node.rule for node in proof.nodes())


def test_augmentation_keeps_every_sequent():
    calculus = LabeledCalculus.for_axioms(())
    proof = generate_proof(12, 3, "g3kt")
    augmented = augment_structural(proof, random.Random(13), count=5)
    assert augmented.conclusion == proof.conclusion
    assert check_labeled_proof(augmented, calculus, allow_structural=True)
    kept = sorted(str(n.conclusion) for n in augmented.nodes() if n.rule not in STRUCTURAL_RULE_NAMES)
    assert kept == sorted(str(n.conclusion) for n in proof.nodes())


def test_pt_instances_are_total(display_calculus):
    calculus = display_calculus("<F>p -> <P>(p & <F>p) | q")
    name, sub = random_pt_instance(random.Random(14), calculus)
    premises, conclusion = apply_display_rule(calculus.rule(name), sub)
    assert len(premises) == 2
    assert set(sub) == {"X", "X_p", "X_q"}
