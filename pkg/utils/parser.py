"""
Text parsers for formulas, structures, display sequents and labeled
sequents. All grammars are Lark grammars; a Transformer turns the parse
tree into the immutable model objects.
"""
import logging
from functools import lru_cache

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from models.errors import ParseError
from models.formula import (BOT, RESERVED_WORDS, TOP, And, Atom, BoxF, BoxP,
                            DiaF, DiaP, Imp, Not, Or)
from models.labeled_sequent import LabeledFormula, LabeledSequent, RelAtom
from models.structure import I, Bullet, Comp, DisplaySequent, Fml, Star

logger = logging.getLogger(__name__)


_FORMULA_RULES = r"""
?imp: disj
    | disj "->" imp                     -> imp

?disj: conj
     | disj "|" conj                    -> or_

?conj: unary
     | conj "&" unary                   -> and_

?unary: "~" unary                       -> not_
      | "[F]" unary                     -> boxf
      | "<F>" unary                     -> diaf
      | "[P]" unary                     -> boxp
      | "<P>" unary                     -> diap
      | fatom

?fatom: "top"                           -> top
      | "bot"                           -> bot
      | NAME                            -> atom
      | "(" imp ")"

NAME: /[a-z][a-zA-Z0-9_]*/

%import common.WS
%ignore WS
"""

FORMULA_GRAMMAR = "start: imp\n" + _FORMULA_RULES

# Formulas sit at the unary level of structures; a binary formula must be
# parenthesized, which is also how structures print them.
STRUCTURE_GRAMMAR = r"""
start: struct
sequent_start: struct "|-" struct       -> sequent

?struct: comp

?comp: sunary
     | comp "o" sunary                  -> comp

?sunary: "*" sunary                     -> star
       | "@" sunary                     -> bullet
       | "I"                            -> istruct
       | "(" struct ")"
       | unary                          -> fml
""" + _FORMULA_RULES

LABELED_GRAMMAR = r"""
start: items "=>" items                 -> labeled

items: (item ("," item)*)?

?item: "R" LABEL LABEL                  -> rel
     | LABEL ":" imp                    -> labeled_formula

LABEL: /[a-z][a-zA-Z0-9_]*/
""" + _FORMULA_RULES


@v_args(inline=True)
class FormulaTransformer(Transformer):
    """Builds formula, structure and labeled-sequent objects from parse trees."""

    def start(self, value):
        return value

    def atom(self, token: Token):
        name = str(token)
        if name in RESERVED_WORDS:
            raise ParseError(f"reserved word {name!r} used as an atom", token.start_pos or 0)
        return Atom(name)

    def top(self):
        return TOP

    def bot(self):
        return BOT

    def not_(self, sub):
        return Not(sub)

    def boxf(self, sub):
        return BoxF(sub)

    def diaf(self, sub):
        return DiaF(sub)

    def boxp(self, sub):
        return BoxP(sub)

    def diap(self, sub):
        return DiaP(sub)

    def and_(self, left, right):
        return And(left, right)

    def or_(self, left, right):
        return Or(left, right)

    def imp(self, left, right):
        return Imp(left, right)

    # structures

    def fml(self, formula):
        return Fml(formula)

    def istruct(self):
        return I

    def star(self, sub):
        return Star(sub)

    def bullet(self, sub):
        return Bullet(sub)

    def comp(self, left, right):
        return Comp(left, right)

    def sequent(self, ante, succ):
        return DisplaySequent(ante, succ)

    # labeled sequents

    def rel(self, src, dst):
        return RelAtom(str(src), str(dst))

    def labeled_formula(self, label, formula):
        return LabeledFormula(str(label), formula)

    def items(self, *found):
        return list(found)

    def labeled(self, left, right):
        for item in right:
            if isinstance(item, RelAtom):
                raise ParseError("relational atoms may only occur left of =>")
        rel = frozenset(x for x in left if isinstance(x, RelAtom))
        ante = tuple(x for x in left if isinstance(x, LabeledFormula))
        return LabeledSequent(rel, ante, tuple(right))


@lru_cache(maxsize=None)
def _parser(kind: str) -> Lark:
    if kind == "formula":
        return Lark(FORMULA_GRAMMAR, parser="lalr")
    if kind == "structure":
        return Lark(STRUCTURE_GRAMMAR, parser="earley", start="start")
    if kind == "display":
        return Lark(STRUCTURE_GRAMMAR, parser="earley", start="sequent_start")
    if kind == "labeled":
        return Lark(LABELED_GRAMMAR, parser="earley")
    raise ValueError(f"unknown grammar {kind}")


def _parse(kind: str, text: str):
    try:
        tree = _parser(kind).parse(text)
        return FormulaTransformer().transform(tree)
    except VisitError as error:
        if isinstance(error.orig_exc, ParseError):
            raise error.orig_exc from None
        raise
    except UnexpectedInput as error:
        raise _convert(error, text) from None


def _convert(error: UnexpectedInput, text: str) -> ParseError:
    offset = getattr(error, "pos_in_stream", None)
    if offset is None or offset < 0:
        offset = len(text)
    expected = set()
    if isinstance(error, UnexpectedToken):
        expected = set(error.expected or ())
    elif isinstance(error, UnexpectedCharacters):
        expected = set(error.allowed or ())
    elif isinstance(error, UnexpectedEOF):
        expected = set(error.expected or ())
    logger.debug("parse failure at %s: %s", offset, error)
    return ParseError("syntax error", offset, [str(e) for e in expected])


def parse_formula(text: str):
    """Parse the ASCII formula syntax, e.g. "<F><F>p -> <F>p"."""
    return _parse("formula", text)


def parse_structure(text: str):
    return _parse("structure", text)


def parse_display_sequent(text: str) -> DisplaySequent:
    """Parse "S |- T"."""
    return _parse("display", text)


def parse_labeled_sequent(text: str) -> LabeledSequent:
    """Parse "R w u, w: p => u: q"."""
    return _parse("labeled", text)


def parse_axiom_lines(text: str):
    """Formulas of an axiom file: one per line, '#' starts a comment."""
    formulas = []
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        try:
            formulas.append(parse_formula(content))
        except ParseError as error:
            raise ParseError(f"line {number}: syntax error", error.offset, error.expected) from None
    return formulas
