import pytest

from models.display_proof import (DerivationBuilder, check_display_proof, display_at, display_metrics,
                                  expand_derived, expand_rho)
from models.display_rules import DisplayCalculus
from models.errors import RuleError
from models.formula import Atom
from models.proof_tree import UP, ProofTree, open_leaf
from models.structure import Fml, Star
from utils.parser import parse_display_sequent as ds


@pytest.fixture
def dkt():
    return DisplayCalculus.for_axioms(())


def boxed_identity() -> ProofTree:
    leaf = ProofTree("id", ds("p |- p"))
    box = ProofTree("boxf_l", ds("[F]p |- @p"), [leaf])
    return ProofTree("d9", ds("@[F]p |- p"), [box])


def test_small_proof_checks(dkt):
    verdict = check_display_proof(boxed_identity(), dkt)
    assert verdict.ok
    assert verdict.metrics.quantity == 3
    assert verdict.metrics.width == 3


def test_wrong_conclusion_reports_the_node(dkt):
    proof = boxed_identity()
    proof.premises[0].premises[0].conclusion = ds("q |- q")
    verdict = check_display_proof(proof, dkt)
    assert not verdict
    assert verdict.path == [0]
    assert verdict.rule == "boxf_l"


def test_cut_needs_permission(dkt):
    proof = ProofTree("cut", ds("p |- p"), [ProofTree("id", ds("p |- p")), ProofTree("id", ds("p |- p"))],
                      {"A": Atom("p")})
    assert not check_display_proof(proof, dkt)
    assert check_display_proof(proof, dkt, allow_cut=True)


def test_irreversible_rule_cannot_go_up(dkt):
    proof = ProofTree("wl", ds("p |- p"), [ProofTree("id", ds("p |- p"))], direction=UP)
    verdict = check_display_proof(proof, dkt)
    assert "upwards" in verdict.message


def test_open_leaves_need_permission(dkt):
    assert not check_display_proof(open_leaf(ds("p |- q")), dkt)
    assert check_display_proof(open_leaf(ds("p |- q")), dkt, allow_open=True)


def test_display_an_antecedent_part(dkt):
    d = ds("p o *q |- r")
    proof, result = display_at(dkt, d, (0, 1))
    assert result.ante == Star(Fml(Atom("q")))
    assert check_display_proof(proof, dkt, allow_open=True)
    assert proof.open_leaves()[0].conclusion == d


def test_display_a_consequent_part(dkt):
    d = ds("p o *q |- r")
    proof, result = display_at(dkt, d, (0, 1, 0))
    assert result.succ == Fml(Atom("q"))
    assert check_display_proof(proof, dkt, allow_open=True, allowed_rules=[f"d{i}" for i in range(1, 10)]
                               + ["open"])


@pytest.mark.parametrize("rule, start", [
    ("rho1", "*@*p |- q"),
    ("rho2", "r |- @p o @q"),
    ("rho3", "r |- *@*p o *@*q"),
    ("rho4", "@p o @q |- r"),
    ("rho5", "*@*p o *@*q |- r"),
])
def test_derived_rule_expansions_check(dkt, rule, start):
    builder = DerivationBuilder(dkt, ds(start)).apply(rule)
    proof = expand_derived(builder.proof(), dkt)
    assert proof.conclusion == builder.current
    verdict = check_display_proof(proof, dkt, allow_open=True, allow_derived=False)
    assert verdict.ok, verdict.message


def test_expansion_of_an_upward_step(dkt):
    steps = expand_rho(dkt, "rho1", {"X": Fml(Atom("p")), "Y": Fml(Atom("q"))}, UP)
    assert steps[0].before == ds("p |- *@*q")
    assert steps[-1].after == ds("*@*p |- q")


def test_builder_rejects_rules_that_do_not_fit(dkt):
    with pytest.raises(RuleError):
        DerivationBuilder(dkt, ds("p |- q")).apply("d1")


def test_metrics():
    metrics = display_metrics(boxed_identity())
    assert (metrics.quantity, metrics.width, metrics.size) == (3, 3, 9)
