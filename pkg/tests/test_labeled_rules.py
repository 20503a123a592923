import pytest

from models.errors import AxiomError, RuleError, SideConditionError
from models.formula import Atom
from models.labeled_rules import (CONTEXT, G3_RULES, PRIMITIVE, LabeledCalculus, apply_labeled_rule,
                                  check_strict, infer_context, make_labeled_rules, phi, pt_schema)
from models.labeled_sequent import EMPTY, flat, is_polytree, isomorphic
from models.structure import Fml
from translation.display_to_labeled import sigma_l
from utils.parser import parse_formula, parse_labeled_sequent as ls
from utils.proof_io import read_axioms

p, q = Atom("p"), Atom("q")


def test_phi_introduces_labels_and_annotated_variables():
    part = phi(parse_formula("<P><F>p"))
    assert [(a.src, a.dst) for a in part.rel] == [("u1", "w"), ("u1", "u2")]
    (var,) = part.vars
    assert (var.atom, var.label) == ("p", "u2")
    assert phi(parse_formula("top")).rel == ()
    with pytest.raises(AxiomError):
        phi(parse_formula("~p"))


def test_base_calculus_rules():
    names = [rule.name for rule in G3_RULES]
    assert names[:3] == ["id", "bot_l", "top_r"]
    assert {"boxf_l", "diaf_r", "boxp_r", "diap_l"} <= set(names)
    boxf_r = LabeledCalculus.for_axioms(()).rule("boxf_r")
    assert boxf_r.fresh == ("u",)


def test_reflexivity_has_no_contractions():
    rules = make_labeled_rules(read_axioms("T"))
    assert [r.name for r in rules] == ["pt:1"]


def test_transitivity_closes_under_one_contraction():
    rules = make_labeled_rules(read_axioms("4"))
    assert [r.name for r in rules] == ["pt:1", "pt:1.c1"]
    base, contracted = rules
    assert len(base.conclusion.rel) == 2
    assert len(contracted.conclusion.rel) == 1
    assert all(r.kind == PRIMITIVE for r in rules)


def test_euclidean_closure():
    rules = make_labeled_rules(read_axioms("5"))
    assert [r.name for r in rules] == ["pt:1", "pt:1.c1", "pt:1.c2"]
    loops = [r for r in rules[1:] if r.conclusion.rel[0].src == r.conclusion.rel[0].dst]
    assert len(loops) == 1
    (merged,) = [r for r in rules[1:] if r not in loops]
    (atom,) = merged.conclusion.rel
    assert atom.dst == merged.root
    # the premise still adds the edge to the copy of p
    assert all(len(r.premises[0].rel) == 2 for r in rules[1:])


def test_pt_instance_from_a_display_substitution():
    (axiom,) = read_axioms("<F>p -> <P>(p & <F>p)")
    rule = pt_schema(axiom, 1)
    sub = sigma_l(rule, {"X_p": Fml(q), "X": Fml(parse_formula("<P>p | q"))}, "w")
    (premise,), conclusion = apply_labeled_rule(rule, sub)
    expected_premise = ls("R w u, R v w, R v z, u: q, v: q, z: q => w: <P>p | q")
    expected_conclusion = ls("R w u, u: q => w: <P>p | q")
    assert isomorphic(premise, expected_premise) is not None
    assert isomorphic(conclusion, expected_conclusion) is not None
    assert check_strict(rule, sub) is None


def test_annotated_labels_need_not_be_fresh():
    (axiom,) = read_axioms("T")
    rule = pt_schema(axiom, 1)
    assert rule.fresh == ()
    sub = {"w": "w", "u1": "w", CONTEXT: ls("=> w: <F>p")}
    for var in rule.seq_vars():
        if var.annotated:
            sub[var.name] = flat("w", [p])
    # reusing the label is a sound instance, but not a strict one
    premises, _ = apply_labeled_rule(rule, sub)
    assert check_strict(rule, sub).startswith("P4")
    verdict = is_polytree(premises[0])
    assert not verdict and "cycle" in verdict.reason


def test_unannotated_labels_stay_fresh():
    (axiom,) = read_axioms("p -> <F>top")
    rule = pt_schema(axiom, 1)
    assert rule.fresh == ("u1",)
    sub = {"w": "w", "u1": "w", "L1": flat("w", [p]), CONTEXT: EMPTY}
    with pytest.raises(SideConditionError) as error:
        apply_labeled_rule(rule, sub)
    assert error.value.condition == "P1"


def test_isomorphic_copies_are_required_for_repeated_atoms():
    (axiom,) = read_axioms("<F>p -> <P>(p & <F>p)")
    rule = pt_schema(axiom, 1)
    sub = sigma_l(rule, {"X_p": Fml(q), "X": Fml(p)}, "w")
    copies = [v for v in rule.seq_vars() if v.annotated]
    sub[copies[1].name] = flat(sub[copies[1].label], [q, q])
    assert check_strict(rule, sub).startswith("P2")


def test_infer_context():
    rule = LabeledCalculus.for_axioms(()).rule("boxf_l")
    conclusion = ls("R w u, w: [F]p => u: p")
    sub = infer_context(rule, {"w": "w", "u": "u", "A": p}, conclusion)
    assert sub[CONTEXT] == ls("=> u: p")
    with pytest.raises(RuleError):
        infer_context(rule, {"w": "u", "u": "w", "A": p}, conclusion)


def test_freshness_of_eigenlabels():
    rule = LabeledCalculus.for_axioms(()).rule("boxf_r")
    sub = {"w": "w", "u": "u", "A": p, CONTEXT: ls("R w u =>")}
    with pytest.raises(SideConditionError):
        apply_labeled_rule(rule, sub)
    sub[CONTEXT] = EMPTY
    premises, conclusion = apply_labeled_rule(rule, sub)
    assert conclusion == ls("=> w: [F]p")
    assert premises == [ls("R w u => u: p")]


def test_calculus_families(labeled_calculus):
    calculus = labeled_calculus("4", "T")
    assert [r.name for r in calculus.pt_family("pt:1")] == ["pt:1", "pt:1.c1"]
    assert [r.name for r in calculus.pt_family("pt:2")] == ["pt:2"]
    assert calculus.rule("pt:2").fresh == ()
    assert len(calculus.pt_rules()) == 3
