"""
Schematic display rules: rule schemas with structure, formula and atomic
variables, substitution instantiation, matching, the rule table of the
base calculus, the derived rules rho1..rho5, and the translation of
simplified primitive tense axioms into structural rules.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .axioms import PrimitiveAxiom
from .errors import AxiomError, RuleError
from .formula import (BOT, TOP, And, Atom, Bot, BoxF, BoxP, DiaF, DiaP,
                      Formula, Imp, Not, Or, Top, _Binary, _Unary)
from .proof_tree import DOWN, UP
from .structure import (I, Bullet, Comp, DisplaySequent, Fml, IStruct, Star,
                        Structure, star_bullet_star)

logger = logging.getLogger(__name__)

LOGICAL = "logical"
DISPLAY = "display"
STRUCTURAL = "structural"
PRIMITIVE = "pt"
DERIVED = "derived"


@dataclass(frozen=True)
class SVar(Structure):
    """Structure variable."""
    name: str

    def length(self) -> int:
        return 1

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class FVar(Atom):
    """Formula variable; printed by name."""


@dataclass(frozen=True)
class PVar(Atom):
    """Atomic variable: only matches atoms."""


Substitution = Dict[str, object]


@dataclass(frozen=True)
class DisplayRuleSchema:
    name: str
    premises: Tuple[DisplaySequent, ...]
    conclusion: DisplaySequent
    reversible: bool = False
    kind: str = LOGICAL
    description: str = ""

    @property
    def initial(self) -> bool:
        return not self.premises

    def variables(self) -> Dict[str, type]:
        found: Dict[str, type] = {}
        for sequent in self.premises + (self.conclusion,):
            _collect(sequent.ante, found)
            _collect(sequent.succ, found)
        return found

    def __str__(self) -> str:
        line = "===" if self.reversible else "---"
        above = "   ".join(str(p) for p in self.premises) or "(initial)"
        return f"{above}\n{line} ({self.name})\n{self.conclusion}"


def _collect(s, found: Dict[str, type]) -> None:
    if isinstance(s, SVar):
        found[s.name] = SVar
    elif isinstance(s, Fml):
        for sub in s.formula.walk():
            if isinstance(sub, (FVar, PVar)):
                found[sub.name] = type(sub)
    else:
        for child in s.children():
            _collect(child, found)


# --- instantiation and matching -----------------------------------------

def instantiate_formula(pattern: Formula, sub: Substitution) -> Formula:
    if isinstance(pattern, (FVar, PVar)):
        if pattern.name not in sub:
            raise RuleError(f"variable {pattern.name} missing from substitution")
        value = sub[pattern.name]
        if isinstance(pattern, PVar) and (type(value) is not Atom):
            raise RuleError(f"atomic variable {pattern.name} needs an atom, got {value}")
        if not isinstance(value, Formula):
            raise RuleError(f"formula variable {pattern.name} needs a formula, got {value!r}")
        return value
    if isinstance(pattern, _Unary):
        return type(pattern)(instantiate_formula(pattern.sub, sub))
    if isinstance(pattern, _Binary):
        return type(pattern)(instantiate_formula(pattern.left, sub), instantiate_formula(pattern.right, sub))
    return pattern


def instantiate(pattern: Structure, sub: Substitution) -> Structure:
    """Capture-free replacement of the variables of a schematic structure."""
    if isinstance(pattern, SVar):
        if pattern.name not in sub:
            raise RuleError(f"variable {pattern.name} missing from substitution")
        value = sub[pattern.name]
        if not isinstance(value, Structure):
            raise RuleError(f"structure variable {pattern.name} needs a structure, got {value!r}")
        return value
    if isinstance(pattern, Fml):
        return Fml(instantiate_formula(pattern.formula, sub))
    if isinstance(pattern, IStruct):
        return I
    return pattern.with_children(tuple(instantiate(c, sub) for c in pattern.children()))


def instantiate_sequent(pattern: DisplaySequent, sub: Substitution) -> DisplaySequent:
    return DisplaySequent(instantiate(pattern.ante, sub), instantiate(pattern.succ, sub))


def _bind(sub: Substitution, name: str, value) -> bool:
    if name in sub:
        return sub[name] == value
    sub[name] = value
    return True


def match_formula(pattern: Formula, f: Formula, sub: Substitution) -> bool:
    if isinstance(pattern, FVar):
        return _bind(sub, pattern.name, f)
    if isinstance(pattern, PVar):
        return type(f) is Atom and _bind(sub, pattern.name, f)
    if type(pattern) is not type(f):
        return False
    if isinstance(pattern, Atom):
        return pattern.name == f.name
    if isinstance(pattern, _Unary):
        return match_formula(pattern.sub, f.sub, sub)
    if isinstance(pattern, _Binary):
        return match_formula(pattern.left, f.left, sub) and match_formula(pattern.right, f.right, sub)
    return True


def match(pattern: Structure, s: Structure, sub: Substitution) -> bool:
    """Extend sub so that pattern instantiates to s; False if impossible.

    sub may be partially extended on failure; callers pass a copy.
    """
    if isinstance(pattern, SVar):
        return _bind(sub, pattern.name, s)
    if type(pattern) is not type(s):
        return False
    if isinstance(pattern, Fml):
        return match_formula(pattern.formula, s.formula, sub)
    return all(match(p, c, sub) for p, c in zip(pattern.children(), s.children()))


def match_sequent(pattern: DisplaySequent, d: DisplaySequent, sub: Substitution) -> bool:
    return match(pattern.ante, d.ante, sub) and match(pattern.succ, d.succ, sub)


def apply_display_rule(schema: DisplayRuleSchema, sub: Substitution,
                       direction: str = DOWN) -> Tuple[List[DisplaySequent], DisplaySequent]:
    """Instantiate a rule; for direction "up" the single premise and the
    conclusion of a reversible rule trade places."""
    missing = sorted(set(schema.variables()) - set(sub))
    if missing:
        raise RuleError(f"({schema.name}) substitution misses {', '.join(missing)}")
    premises = [instantiate_sequent(p, sub) for p in schema.premises]
    conclusion = instantiate_sequent(schema.conclusion, sub)
    if direction == UP:
        if not schema.reversible:
            raise RuleError(f"({schema.name}) is not reversible")
        return [conclusion], premises[0]
    if direction != DOWN:
        raise RuleError(f"unknown direction {direction!r}")
    return premises, conclusion


def infer_substitution(schema: DisplayRuleSchema, conclusion: DisplaySequent,
                       premises: Sequence[DisplaySequent], direction: str = DOWN,
                       given: Optional[Substitution] = None) -> Optional[Substitution]:
    """Structural matcher filling in a substitution from the node's sequents."""
    sub: Substitution = dict(given or {})
    if direction == UP:
        if not schema.reversible or len(premises) != 1:
            return None
        pairs = [(schema.premises[0], conclusion), (schema.conclusion, premises[0])]
    else:
        if len(premises) != len(schema.premises):
            return None
        pairs = [(schema.conclusion, conclusion)] + list(zip(schema.premises, premises))
    for pattern, concrete in pairs:
        if not match_sequent(pattern, concrete, sub):
            return None
    return sub


# --- the rule table -----------------------------------------------------

X, Y, Z, W = SVar("X"), SVar("Y"), SVar("Z"), SVar("W")
_A, _B = FVar("A"), FVar("B")
A, B = Fml(_A), Fml(_B)
_p = PVar("p")


def _seq(ante, succ) -> DisplaySequent:
    return DisplaySequent(ante, succ)


def _rule(name, premises, conclusion, kind, reversible=False):
    return DisplayRuleSchema(name, tuple(premises), conclusion, reversible, kind)


def _sbs(s):
    return star_bullet_star(s)


BASE_RULES: Tuple[DisplayRuleSchema, ...] = (
    # initial and logical rules
    _rule("id", [], _seq(Fml(_p), Fml(_p)), LOGICAL),
    _rule("top_r", [], _seq(I, Fml(TOP)), LOGICAL),
    _rule("bot_l", [], _seq(Fml(BOT), I), LOGICAL),
    _rule("top_l", [_seq(I, Y)], _seq(Fml(TOP), Y), LOGICAL),
    _rule("bot_r", [_seq(X, I)], _seq(X, Fml(BOT)), LOGICAL),
    _rule("neg_l", [_seq(Star(A), Y)], _seq(Fml(Not(_A)), Y), LOGICAL),
    _rule("neg_r", [_seq(X, Star(A))], _seq(X, Fml(Not(_A))), LOGICAL),
    _rule("imp_l", [_seq(X, A), _seq(B, Y)], _seq(Fml(Imp(_A, _B)), Comp(Star(X), Y)), LOGICAL),
    _rule("imp_r", [_seq(Comp(X, A), B)], _seq(X, Fml(Imp(_A, _B))), LOGICAL),
    _rule("or_l", [_seq(A, Y), _seq(B, Y)], _seq(Fml(Or(_A, _B)), Y), LOGICAL),
    _rule("or_r", [_seq(X, Comp(A, B))], _seq(X, Fml(Or(_A, _B))), LOGICAL),
    _rule("and_l", [_seq(Comp(A, B), Y)], _seq(Fml(And(_A, _B)), Y), LOGICAL),
    _rule("and_r", [_seq(X, A), _seq(X, B)], _seq(X, Fml(And(_A, _B))), LOGICAL),
    _rule("boxf_l", [_seq(A, Y)], _seq(Fml(BoxF(_A)), Bullet(Y)), LOGICAL),
    _rule("boxf_r", [_seq(Bullet(X), A)], _seq(X, Fml(BoxF(_A))), LOGICAL),
    _rule("diaf_l", [_seq(A, _sbs(Y))], _seq(Fml(DiaF(_A)), Y), LOGICAL),
    _rule("diaf_r", [_seq(X, A)], _seq(_sbs(X), Fml(DiaF(_A))), LOGICAL),
    _rule("boxp_l", [_seq(A, Y)], _seq(Fml(BoxP(_A)), _sbs(Y)), LOGICAL),
    _rule("boxp_r", [_seq(_sbs(X), A)], _seq(X, Fml(BoxP(_A))), LOGICAL),
    _rule("diap_l", [_seq(A, Bullet(Y))], _seq(Fml(DiaP(_A)), Y), LOGICAL),
    _rule("diap_r", [_seq(X, A)], _seq(Bullet(X), Fml(DiaP(_A))), LOGICAL),
    # display rules, all reversible
    _rule("d1", [_seq(Comp(X, Y), Z)], _seq(X, Comp(Z, Star(Y))), DISPLAY, True),
    _rule("d2", [_seq(Comp(X, Y), Z)], _seq(Y, Comp(Star(X), Z)), DISPLAY, True),
    _rule("d3", [_seq(X, Comp(Y, Z))], _seq(Comp(X, Star(Z)), Y), DISPLAY, True),
    _rule("d4", [_seq(X, Comp(Y, Z))], _seq(Comp(Star(Y), X), Z), DISPLAY, True),
    _rule("d5", [_seq(Star(X), Y)], _seq(Star(Y), X), DISPLAY, True),
    _rule("d6", [_seq(X, Star(Y))], _seq(Y, Star(X)), DISPLAY, True),
    _rule("d7", [_seq(Star(Star(X)), Y)], _seq(X, Y), DISPLAY, True),
    _rule("d8", [_seq(X, Star(Star(Y)))], _seq(X, Y), DISPLAY, True),
    _rule("d9", [_seq(X, Bullet(Y))], _seq(Bullet(X), Y), DISPLAY, True),
    # structural rules
    _rule("Il", [_seq(X, Y)], _seq(Comp(I, X), Y), STRUCTURAL, True),
    _rule("Ir", [_seq(X, Y)], _seq(X, Comp(I, Y)), STRUCTURAL, True),
    _rule("ql", [_seq(I, Y)], _seq(Star(I), Y), STRUCTURAL, True),
    _rule("qr", [_seq(X, I)], _seq(X, Star(I)), STRUCTURAL, True),
    _rule("al", [_seq(Comp(X, Comp(Y, Z)), W)], _seq(Comp(Comp(X, Y), Z), W), STRUCTURAL, True),
    _rule("ar", [_seq(X, Comp(Y, Comp(Z, W)))], _seq(X, Comp(Comp(Y, Z), W)), STRUCTURAL, True),
    # exchange is its own inverse, so it may be read in either direction
    _rule("pl", [_seq(Comp(X, Y), Z)], _seq(Comp(Y, X), Z), STRUCTURAL, True),
    _rule("pr", [_seq(X, Comp(Y, Z))], _seq(X, Comp(Z, Y)), STRUCTURAL, True),
    _rule("wl", [_seq(X, Y)], _seq(Comp(Z, X), Y), STRUCTURAL),
    _rule("wr", [_seq(X, Y)], _seq(X, Comp(Y, Z)), STRUCTURAL),
    _rule("cl", [_seq(Comp(X, X), Y)], _seq(X, Y), STRUCTURAL),
    _rule("cr", [_seq(X, Comp(Y, Y))], _seq(X, Y), STRUCTURAL),
    _rule("ml", [_seq(I, Y)], _seq(Bullet(I), Y), STRUCTURAL),
    _rule("mr", [_seq(X, I)], _seq(X, Bullet(I)), STRUCTURAL),
    _rule("cut", [_seq(X, A), _seq(A, Y)], _seq(X, Y), STRUCTURAL),
)

DERIVED_RULES: Tuple[DisplayRuleSchema, ...] = (
    _rule("rho1", [_seq(_sbs(X), Y)], _seq(X, _sbs(Y)), DERIVED, True),
    _rule("rho2", [_seq(X, Comp(Bullet(Y), Bullet(Z)))], _seq(X, Bullet(Comp(Y, Z))), DERIVED),
    _rule("rho3", [_seq(X, Comp(_sbs(Y), _sbs(Z)))], _seq(X, _sbs(Comp(Y, Z))), DERIVED),
    _rule("rho4", [_seq(Comp(Bullet(X), Bullet(Y)), Z)], _seq(Bullet(Comp(X, Y)), Z), DERIVED),
    _rule("rho5", [_seq(Comp(_sbs(X), _sbs(Y)), Z)], _seq(_sbs(Comp(X, Y)), Z), DERIVED),
)

DISPLAY_RULE_NAMES = tuple(f"d{i}" for i in range(1, 10))
REVERSIBLE_STRUCTURAL_NAMES = ("Il", "Ir", "ql", "qr", "al", "ar", "pl", "pr")


# --- primitive tense structural rules -----------------------------------

CONTEXT_VAR = "X"


def atom_variable(atom: str) -> SVar:
    return SVar(f"X_{atom}")


def psi(f: Formula) -> Structure:
    """Schematic structure of a formula built from atoms, top, &, <F>, <P>."""
    if isinstance(f, Top):
        return I
    if type(f) is Atom:
        return atom_variable(f.name)
    if isinstance(f, And):
        return Comp(psi(f.left), psi(f.right))
    if isinstance(f, DiaF):
        return star_bullet_star(psi(f.sub))
    if isinstance(f, DiaP):
        return Bullet(psi(f.sub))
    raise AxiomError(f"{f} is outside the primitive sublanguage", clause="grammar")


def pt_rule_name(index: int) -> str:
    return f"pt:{index}"


def make_display_rules(axioms: Sequence[PrimitiveAxiom]) -> List[DisplayRuleSchema]:
    """One structural rule per simplified axiom A -> B1 | ... | Bm:
    premises psi(Bj) |- X, conclusion psi(A) |- X."""
    rules = []
    context = SVar(CONTEXT_VAR)
    for index, axiom in enumerate(axioms, start=1):
        premises = tuple(_seq(psi(b), context) for b in axiom.succedents)
        rule = DisplayRuleSchema(pt_rule_name(index), premises, _seq(psi(axiom.antecedent), context),
                                 False, PRIMITIVE, description=str(axiom))
        logger.debug("display rule for %s: %s", axiom, rule.name)
        rules.append(rule)
    return rules


@dataclass
class DisplayCalculus:
    """DK_t extended with the structural rules of a set of axioms."""
    axioms: List[PrimitiveAxiom] = field(default_factory=list)
    rules: Dict[str, DisplayRuleSchema] = field(default_factory=dict)

    @classmethod
    def for_axioms(cls, axioms: Sequence[PrimitiveAxiom] = ()) -> "DisplayCalculus":
        calculus = cls(list(axioms))
        for rule in BASE_RULES + DERIVED_RULES + tuple(make_display_rules(axioms)):
            calculus.rules[rule.name] = rule
        return calculus

    def rule(self, name: str) -> DisplayRuleSchema:
        if name not in self.rules:
            raise RuleError(f"unknown rule {name!r}")
        return self.rules[name]

    def pt_rules(self) -> List[DisplayRuleSchema]:
        return [r for r in self.rules.values() if r.kind == PRIMITIVE]
