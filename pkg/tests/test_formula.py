import pytest

from models.errors import ParseError
from models.formula import (BOT, TOP, And, Atom, BoxF, BoxP, DiaF, DiaP, Imp, Not, Or,
                            conjunction, disjunction, formula_length)
from utils.parser import parse_formula

p, q, r = Atom("p"), Atom("q"), Atom("r")


def test_parse_modalities():
    assert parse_formula("<F><F>p -> <F>p") == Imp(DiaF(DiaF(p)), DiaF(p))
    assert parse_formula("[F]p & [P]q | <P>r") == Or(And(BoxF(p), BoxP(q)), DiaP(r))
    assert parse_formula("~top -> bot") == Imp(Not(TOP), BOT)


def test_implication_is_right_associative():
    assert parse_formula("p -> q -> r") == Imp(p, Imp(q, r))
    assert str(Imp(p, Imp(q, r))) == "p -> q -> r"
    assert str(Imp(Imp(p, q), r)) == "(p -> q) -> r"


def test_conjunction_is_left_associative():
    assert parse_formula("p & q & r") == And(And(p, q), r)
    assert str(And(p, And(q, r))) == "p & (q & r)"


@pytest.mark.parametrize("text", [
    "p & q -> r | p",
    "<F>(p | q) -> [P]~r",
    "~(p & q)",
    "<P><F>p -> <F>p",
])
def test_printer_output_parses_back(text):
    f = parse_formula(text)
    assert parse_formula(str(f)) == f


def test_pretty_uses_symbols():
    assert parse_formula("[F]p -> <P>q").pretty() == "□p → ♦q"
    assert parse_formula("<F>top & [P]bot").pretty() == "◊⊤ ∧ ■⊥"


def test_length_and_atoms():
    f = parse_formula("<F>(p & q) -> p")
    assert formula_length(f) == 6
    assert f.atoms() == frozenset({"p", "q"})


def test_conjunction_and_disjunction_of_lists():
    assert conjunction([]) == TOP
    assert disjunction([]) == BOT
    assert conjunction([p, q, r]) == And(And(p, q), r)
    assert disjunction([p]) == p


@pytest.mark.parametrize("text", ["p &", "p -> -> q", "<X>p", "top q"])
def test_syntax_errors_carry_offset(text):
    with pytest.raises(ParseError) as error:
        parse_formula(text)
    assert error.value.offset >= 0


def test_reserved_words_are_not_atoms():
    with pytest.raises(ParseError):
        parse_formula("o & p")
