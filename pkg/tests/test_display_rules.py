import pytest

from models.display_rules import (DERIVED_RULES, PRIMITIVE, DisplayCalculus, SVar,
                                  apply_display_rule, infer_substitution, make_display_rules, psi)
from models.errors import AxiomError, RuleError
from models.formula import Atom
from models.proof_tree import UP
from models.structure import I, Bullet, Comp, Fml, Star, star_bullet_star
from utils.parser import parse_display_sequent, parse_formula, parse_structure
from utils.proof_io import read_axioms

p, q = Atom("p"), Atom("q")


@pytest.fixture
def dkt():
    return DisplayCalculus.for_axioms(())


def test_psi_of_primitive_formulas():
    assert psi(parse_formula("top")) == I
    assert psi(parse_formula("p & <F>q")) == Comp(SVar("X_p"), star_bullet_star(SVar("X_q")))
    assert psi(parse_formula("<P>p")) == Bullet(SVar("X_p"))
    with pytest.raises(AxiomError):
        psi(parse_formula("[F]p"))


def test_euclidean_display_rule():
    (rule,) = make_display_rules(read_axioms("5"))
    assert rule.name == "pt:1" and rule.kind == PRIMITIVE
    assert [str(s) for s in rule.premises] == ["*@*X_p |- X"]
    assert str(rule.conclusion) == "@*@*X_p |- X"


def test_rule_with_two_premises():
    (rule,) = make_display_rules(read_axioms("<F>p -> <P>(p & <F>p) | q"))
    assert [str(s) for s in rule.premises] == ["@(X_p o *@*X_p) |- X", "X_q |- X"]
    assert str(rule.conclusion) == "*@*X_p |- X"


def test_calculus_collects_base_derived_and_pt_rules(display_calculus):
    calculus = display_calculus("T", "4")
    assert {"id", "d9", "cut", "rho5", "pt:1", "pt:2"} <= set(calculus.rules)
    assert [r.name for r in calculus.pt_rules()] == ["pt:1", "pt:2"]
    with pytest.raises(RuleError):
        calculus.rule("pt:3")


def test_apply_logical_rule(dkt):
    premises, conclusion = apply_display_rule(dkt.rule("imp_l"), {
        "A": p, "B": q, "X": Fml(p), "Y": Fml(q)})
    assert [str(s) for s in premises] == ["p |- p", "q |- q"]
    assert str(conclusion) == "(p -> q) |- *p o q"


def test_apply_reversible_rule_upwards(dkt):
    sub = {"X": Fml(p), "Y": Fml(q)}
    premises, conclusion = apply_display_rule(dkt.rule("d9"), sub, UP)
    assert premises == [parse_display_sequent("@p |- q")]
    assert conclusion == parse_display_sequent("p |- @q")
    with pytest.raises(RuleError):
        apply_display_rule(dkt.rule("wl"), {"X": I, "Y": I, "Z": I}, UP)


def test_missing_variable_is_reported(dkt):
    with pytest.raises(RuleError, match="misses"):
        apply_display_rule(dkt.rule("d1"), {"X": I, "Y": I})


def test_atomic_variable_needs_an_atom(dkt):
    with pytest.raises(RuleError):
        apply_display_rule(dkt.rule("id"), {"p": parse_formula("p & q")})


def test_infer_substitution_matches_node(dkt):
    conclusion = parse_display_sequent("[F]p |- @q")
    sub = infer_substitution(dkt.rule("boxf_l"), conclusion, [parse_display_sequent("p |- q")])
    assert sub == {"A": p, "Y": Fml(q)}
    assert infer_substitution(dkt.rule("boxf_l"), conclusion, [parse_display_sequent("q |- q")]) is None


def test_contraction_needs_equal_copies(dkt):
    premise = parse_display_sequent("p o q |- r")
    assert infer_substitution(dkt.rule("cl"), parse_display_sequent("p |- r"), [premise]) is None


def test_derived_rules_are_listed():
    assert [r.name for r in DERIVED_RULES] == ["rho1", "rho2", "rho3", "rho4", "rho5"]
    rho4 = DERIVED_RULES[3]
    premises, conclusion = apply_display_rule(rho4, {"X": Fml(p), "Y": Fml(q), "Z": I})
    assert premises[0] == parse_display_sequent("@p o @q |- I")
    assert conclusion.ante == parse_structure("@(p o q)")
