import random

import pytest

from models.display_proof import check_display_proof
from models.display_rules import DisplayCalculus
from models.errors import TranslationError
from translation.equivalence import (derive_equivalence, derive_partition_invariance,
                                     derive_root_relabel, derive_toggle, is_normal, normalize,
                                     readings_isomorphic)
from translation.notation import round_trip, to_display, to_labeled
from utils.generators import random_display_sequent, random_polytree_sequent
from utils.parser import parse_display_sequent as ds, parse_labeled_sequent as ls

MIXED = "@(*p o <P>q) |- *@q"


@pytest.fixture(scope="module")
def dkt():
    return DisplayCalculus.for_axioms(())


def checks(proof, calculus):
    verdict = check_display_proof(proof, calculus, allow_open=True)
    assert verdict.ok, verdict.message
    return verdict


def test_normal_form_has_an_empty_succedent(dkt):
    steps, normal = normalize(ds(MIXED), dkt)
    assert str(normal.succ) == "I"
    assert is_normal(normal.ante)
    assert steps[-1].after == normal


def test_swapping_sides_with_stars(dkt):
    first, second = ds("p |- q"), ds("*q |- *p")
    assert readings_isomorphic(first, second)
    proof = derive_equivalence(first, second, dkt)
    assert proof.conclusion == second
    assert proof.open_leaves()[0].conclusion == first
    checks(proof, dkt)


def test_identical_sequents_need_no_steps(dkt):
    proof = derive_equivalence(ds(MIXED), ds(MIXED), dkt)
    assert proof.is_open()


def test_different_readings_are_rejected(dkt):
    assert not readings_isomorphic(ds("p |- q"), ds("q |- p"))
    with pytest.raises(TranslationError):
        derive_equivalence(ds("p |- q"), ds("q |- p"), dkt)


def test_partition_invariance(dkt):
    s = to_labeled(ds(MIXED), "w0")
    proof = derive_partition_invariance(s, "w0", None, ls("R w2 w0, w2: q =>"), dkt)
    checks(proof, dkt)


def test_reading_at_another_root(dkt):
    s = ls("R w u, w: p => u: q")
    proof = derive_root_relabel(s, "w", "u", calculus=dkt)
    checks(proof, dkt)


@pytest.mark.parametrize("side", ["ante", "succ"])
def test_toggle_between_readings(dkt, side):
    s = ls("R w u, w: p => u: q")
    checks(derive_toggle(s, "w", side, calculus=dkt), dkt)
    checks(derive_toggle(s, "w", side, reverse=True, calculus=dkt), dkt)


def test_random_round_trips_derive(dkt, rounds):
    rng = random.Random(8)
    for _ in range(rounds(40, 400)):
        d = random_display_sequent(rng)
        proof = derive_equivalence(d, round_trip(d), dkt)
        assert proof.conclusion == round_trip(d)
        checks(proof, dkt)


def test_normal_forms_are_canonical(dkt, rounds):
    rng = random.Random(9)
    for _ in range(rounds(40, 400)):
        s = random_polytree_sequent(rng, rng.randint(1, 4), 3)
        roots = sorted(s.labels())
        forms = [normalize(to_display(s, root), dkt)[1] for root in roots]
        assert all(form == forms[0] for form in forms), s
