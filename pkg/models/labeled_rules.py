"""
Schematic labeled sequents and the rules of the labeled calculus: the
G3-style base rules, the primitive tense structural rules built from
simplified axioms via phi, their contraction closure, rule application
with side conditions, and the strictness test.
"""
import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from .axioms import PrimitiveAxiom
from .display_rules import FVar, PVar, instantiate_formula
from .errors import AxiomError, RuleError, SideConditionError
from .formula import (BOT, TOP, And, Atom, BoxF, BoxP, DiaF, DiaP, Formula,
                      Imp, Not, Or, Top)
from .labeled_sequent import (EMPTY, LabeledFormula, LabeledSequent,
                              RelAtom, compose, is_polytree, isomorphic)

logger = logging.getLogger(__name__)

CONTEXT = "L"

INITIAL = "initial"
LOGICAL = "logical"
MODAL = "modal"
PRIMITIVE = "pt"


@dataclass(frozen=True)
class SeqVar:
    """Labeled-sequent variable; annotated ones carry an atom and a label variable."""
    name: str
    atom: Optional[str] = None
    label: Optional[str] = None

    @property
    def annotated(self) -> bool:
        return self.atom is not None

    def __str__(self) -> str:
        if self.annotated:
            return f"{self.name}[{self.atom}@{self.label}]"
        return self.name


@dataclass(frozen=True)
class SchematicSequent:
    """Schematic relational atoms and labeled formulas over label variables,
    composed with labeled-sequent variables. Tuples keep duplicates, which
    the contraction closure needs to see."""
    rel: Tuple[RelAtom, ...] = ()
    ante: Tuple[LabeledFormula, ...] = ()
    succ: Tuple[LabeledFormula, ...] = ()
    vars: Tuple[SeqVar, ...] = ()

    def compose(self, other: "SchematicSequent") -> "SchematicSequent":
        return SchematicSequent(self.rel + other.rel, self.ante + other.ante,
                                self.succ + other.succ, self.vars + other.vars)

    def label_vars(self) -> List[str]:
        found: List[str] = []
        for atom in self.rel:
            found += [atom.src, atom.dst]
        found += [lf.label for lf in self.ante + self.succ]
        found += [v.label for v in self.vars if v.annotated]
        return list(dict.fromkeys(found))

    def rename_labels(self, mapping: Dict[str, str]) -> "SchematicSequent":
        return SchematicSequent(tuple(a.rename(mapping) for a in self.rel),
                                tuple(lf.rename(mapping) for lf in self.ante),
                                tuple(lf.rename(mapping) for lf in self.succ),
                                tuple(replace(v, label=mapping.get(v.label, v.label)) if v.annotated else v
                                      for v in self.vars))

    def instantiate(self, sub: Dict[str, object]) -> LabeledSequent:
        def label(name):
            if name not in sub:
                raise RuleError(f"label variable {name} missing from substitution")
            return sub[name]

        parts = [LabeledSequent(frozenset(RelAtom(label(a.src), label(a.dst)) for a in self.rel),
                                tuple(LabeledFormula(label(lf.label), instantiate_formula(lf.formula, sub))
                                      for lf in self.ante),
                                tuple(LabeledFormula(label(lf.label), instantiate_formula(lf.formula, sub))
                                      for lf in self.succ))]
        for var in self.vars:
            value = sub.get(var.name)
            if not isinstance(value, LabeledSequent):
                raise RuleError(f"labeled-sequent variable {var.name} missing from substitution")
            parts.append(value)
        return compose(*parts)

    def __str__(self) -> str:
        left = [f"R{a.src}{a.dst}" for a in self.rel] + [str(lf) for lf in self.ante]
        pieces = []
        if left or self.succ:
            pieces.append(f"({', '.join(left)} => {', '.join(str(lf) for lf in self.succ)})".replace("( =>", "(=>"))
        pieces += [str(v) for v in self.vars]
        return " * ".join(pieces) if pieces else "(=>)"


@dataclass(frozen=True)
class LabeledRuleSchema:
    name: str
    premises: Tuple[SchematicSequent, ...]
    conclusion: SchematicSequent
    kind: str = LOGICAL
    fresh: Tuple[str, ...] = ()
    axiom: Optional[PrimitiveAxiom] = None
    a_part: Optional[SchematicSequent] = None
    b_parts: Tuple[SchematicSequent, ...] = ()
    root: str = "w"
    # base label variable -> label variable of this rule, for contractions
    origin: Tuple[Tuple[str, str], ...] = ()

    @property
    def initial(self) -> bool:
        return not self.premises

    def label_vars(self) -> List[str]:
        found: List[str] = []
        for s in self.premises + (self.conclusion,):
            found += s.label_vars()
        return list(dict.fromkeys(found))

    def seq_vars(self) -> List[SeqVar]:
        found: List[SeqVar] = []
        for s in self.premises + (self.conclusion,):
            found += s.vars
        return list(dict.fromkeys(found))

    def formula_vars(self) -> List[str]:
        found = []
        for s in self.premises + (self.conclusion,):
            for lf in s.ante + s.succ:
                found += [x.name for x in lf.formula.walk() if isinstance(x, (FVar, PVar))]
        return list(dict.fromkeys(found))

    def variables(self) -> List[str]:
        return self.label_vars() + [v.name for v in self.seq_vars()] + self.formula_vars()

    def __str__(self) -> str:
        above = "   ".join(str(p) for p in self.premises) or "(initial)"
        return f"{above}\n--- ({self.name})\n{self.conclusion}"


# --- the base calculus --------------------------------------------------

_A, _B, _p = FVar("A"), FVar("B"), PVar("p")
_CTX = SeqVar(CONTEXT)


def _s(rel=(), ante=(), succ=()) -> SchematicSequent:
    return SchematicSequent(tuple(RelAtom(a, b) for a, b in rel),
                            tuple(LabeledFormula(l, f) for l, f in ante),
                            tuple(LabeledFormula(l, f) for l, f in succ), (_CTX,))


def _g3(name, premises, conclusion, kind=LOGICAL, fresh=()):
    return LabeledRuleSchema(name, tuple(premises), conclusion, kind, tuple(fresh))


G3_RULES: Tuple[LabeledRuleSchema, ...] = (
    _g3("id", [], _s(ante=[("w", _p)], succ=[("w", _p)]), INITIAL),
    _g3("bot_l", [], _s(ante=[("w", BOT)]), INITIAL),
    _g3("top_r", [], _s(succ=[("w", TOP)]), INITIAL),
    _g3("neg_l", [_s(succ=[("w", _A)])], _s(ante=[("w", Not(_A))])),
    _g3("neg_r", [_s(ante=[("w", _A)])], _s(succ=[("w", Not(_A))])),
    _g3("and_l", [_s(ante=[("w", _A), ("w", _B)])], _s(ante=[("w", And(_A, _B))])),
    _g3("and_r", [_s(succ=[("w", _A)]), _s(succ=[("w", _B)])], _s(succ=[("w", And(_A, _B))])),
    _g3("or_l", [_s(ante=[("w", _A)]), _s(ante=[("w", _B)])], _s(ante=[("w", Or(_A, _B))])),
    _g3("or_r", [_s(succ=[("w", _A), ("w", _B)])], _s(succ=[("w", Or(_A, _B))])),
    _g3("imp_l", [_s(succ=[("w", _A)]), _s(ante=[("w", _B)])], _s(ante=[("w", Imp(_A, _B))])),
    _g3("imp_r", [_s(ante=[("w", _A)], succ=[("w", _B)])], _s(succ=[("w", Imp(_A, _B))])),
    _g3("diaf_l", [_s(rel=[("w", "u")], ante=[("u", _A)])], _s(ante=[("w", DiaF(_A))]), MODAL, ["u"]),
    _g3("diap_l", [_s(rel=[("u", "w")], ante=[("u", _A)])], _s(ante=[("w", DiaP(_A))]), MODAL, ["u"]),
    _g3("boxf_r", [_s(rel=[("w", "u")], succ=[("u", _A)])], _s(succ=[("w", BoxF(_A))]), MODAL, ["u"]),
    _g3("boxp_r", [_s(rel=[("u", "w")], succ=[("u", _A)])], _s(succ=[("w", BoxP(_A))]), MODAL, ["u"]),
    _g3("boxf_l", [_s(rel=[("w", "u")], ante=[("w", BoxF(_A)), ("u", _A)])],
        _s(rel=[("w", "u")], ante=[("w", BoxF(_A))]), MODAL),
    _g3("boxp_l", [_s(rel=[("u", "w")], ante=[("w", BoxP(_A)), ("u", _A)])],
        _s(rel=[("u", "w")], ante=[("w", BoxP(_A))]), MODAL),
    _g3("diaf_r", [_s(rel=[("w", "u")], succ=[("u", _A), ("w", DiaF(_A))])],
        _s(rel=[("w", "u")], succ=[("w", DiaF(_A))]), MODAL),
    _g3("diap_r", [_s(rel=[("u", "w")], succ=[("u", _A), ("w", DiaP(_A))])],
        _s(rel=[("u", "w")], succ=[("w", DiaP(_A))]), MODAL),
)

STRUCTURAL_RULE_NAMES = ("ls", "w", "c_l", "c_r")


# --- phi and the primitive tense structural rules -----------------------

class _Names:
    """Call-local supply of label-variable and sequent-variable names."""

    def __init__(self):
        self.labels = 0
        self.seqs = 0

    def label(self) -> str:
        self.labels += 1
        return f"u{self.labels}"

    def seq(self, atom: str, label: str) -> SeqVar:
        self.seqs += 1
        return SeqVar(f"L{self.seqs}", atom, label)


def phi(f: Formula, root: str = "w", names: Optional[_Names] = None) -> SchematicSequent:
    """Schematic labeled sequent of a formula built from atoms, top, &, <F>, <P>.

    Every modality introduces a new label variable, every atom occurrence
    a new annotated sequent variable.
    """
    names = names or _Names()
    if isinstance(f, Top):
        return SchematicSequent()
    if type(f) is Atom:
        return SchematicSequent(vars=(names.seq(f.name, root),))
    if isinstance(f, And):
        return phi(f.left, root, names).compose(phi(f.right, root, names))
    if isinstance(f, DiaF):
        child = names.label()
        return SchematicSequent(rel=(RelAtom(root, child),)).compose(phi(f.sub, child, names))
    if isinstance(f, DiaP):
        child = names.label()
        return SchematicSequent(rel=(RelAtom(child, root),)).compose(phi(f.sub, child, names))
    raise AxiomError(f"{f} is outside the primitive sublanguage", clause="grammar")


def _pt_schema(name: str, axiom: PrimitiveAxiom, a_part: SchematicSequent,
               b_parts: Sequence[SchematicSequent], root: str = "w",
               origin: Tuple[Tuple[str, str], ...] = ()) -> LabeledRuleSchema:
    context = SchematicSequent(vars=(_CTX,))
    premises = tuple(a_part.compose(b).compose(context) for b in b_parts)
    conclusion = a_part.compose(context)
    # a B-part label that annotates a sequent variable may be reused
    anchored = set(conclusion.label_vars())
    anchored |= {v.label for part in [a_part, *b_parts] for v in part.vars if v.annotated}
    fresh = tuple(dict.fromkeys(x for b in b_parts for x in b.label_vars() if x not in anchored))
    origin = origin or tuple((x, x) for x in dict.fromkeys([root] + a_part.label_vars()))
    return LabeledRuleSchema(name, premises, conclusion, PRIMITIVE, fresh, axiom, a_part,
                             tuple(b_parts), root, origin)


def pt_schema(axiom: PrimitiveAxiom, index: int) -> LabeledRuleSchema:
    names = _Names()
    a_part = phi(axiom.antecedent, "w", names)
    b_parts = [phi(b, "w", names) for b in axiom.succedents]
    return _pt_schema(f"pt:{index}", axiom, a_part, b_parts)


def _idempotent_maps(variables: List[str]):
    """Every idempotent map on the variables, the identity included: a part
    that still holds a duplicate after an earlier deletion contracts as is."""
    for images in itertools.product(variables, repeat=len(variables)):
        mapping = dict(zip(variables, images))
        if all(mapping[mapping[x]] == mapping[x] for x in variables):
            yield mapping


def _contract_once(part: SchematicSequent) -> Optional[SchematicSequent]:
    """Delete one duplicate relational atom or annotated variable, if any."""
    counts = Counter(part.rel)
    for atom, count in counts.items():
        if count > 1:
            rel = list(part.rel)
            rel.reverse()
            rel.remove(atom)
            rel.reverse()
            return replace(part, rel=tuple(rel))
    seen = {}
    for var in part.vars:
        if not var.annotated:
            continue
        key = (var.atom, var.label)
        if key in seen:
            return replace(part, vars=tuple(v for v in part.vars if v != var))
        seen[key] = var
    return None


def contractions(rule: LabeledRuleSchema) -> List[LabeledRuleSchema]:
    """Rules obtained by identifying label variables of the principal part
    and deleting one of the resulting duplicates."""
    found = []
    a_vars = rule.a_part.label_vars()
    for mapping in _idempotent_maps(a_vars):
        a_part = rule.a_part.rename_labels(mapping)
        contracted = _contract_once(a_part)
        if contracted is None:
            continue
        b_parts = [b.rename_labels(mapping) for b in rule.b_parts]
        root = mapping.get(rule.root, rule.root)
        origin = tuple((base, mapping.get(current, current)) for base, current in rule.origin)
        found.append(_pt_schema(rule.name, rule.axiom, contracted, b_parts, root, origin))
    return found


def contract_schema(base: LabeledRuleSchema, representative: Dict[str, str]) -> LabeledRuleSchema:
    """Identify principal label variables of a base pt rule and delete the
    duplicates this creates, as often as possible."""
    a_part = base.a_part.rename_labels(representative)
    while True:
        contracted = _contract_once(a_part)
        if contracted is None:
            break
        a_part = contracted
    b_parts = [b.rename_labels(representative) for b in base.b_parts]
    return _pt_schema(base.name, base.axiom, a_part, b_parts, representative.get(base.root, base.root))


def _shape(s: SchematicSequent, mapping: Dict[str, str]):
    s = s.rename_labels(mapping)
    return Counter(s.rel), frozenset(s.vars)


def align_rules(source: LabeledRuleSchema, target: LabeledRuleSchema) -> Optional[Dict[str, str]]:
    """Label-variable bijection turning source into target, keeping the
    sequent variables; None when there is none (or too many labels to try)."""
    src, dst = source.label_vars(), target.label_vars()
    if len(src) != len(dst) or len(src) > 7 or len(source.premises) != len(target.premises):
        return None
    wanted = [_shape(s, {}) for s in (target.conclusion,) + target.premises]
    for perm in itertools.permutations(dst):
        mapping = dict(zip(src, perm))
        if mapping.get(source.root, source.root) != target.root:
            continue
        if [_shape(s, mapping) for s in (source.conclusion,) + source.premises] == wanted:
            return mapping
    return None


def schema_key(rule: LabeledRuleSchema) -> str:
    """Serialization of a pt rule that is invariant under variable renaming."""
    labels = rule.label_vars()

    def render(mapping):
        def seq(s: SchematicSequent):
            s = s.rename_labels(mapping)
            items = sorted(f"R{a.src},{a.dst}" for a in s.rel)
            items += sorted(f"L{v.atom}@{v.label}" if v.annotated else "L" for v in s.vars)
            return "[" + ";".join(items) + "]"
        return seq(rule.conclusion) + "<=" + "|".join(sorted(seq(p) for p in rule.premises))

    if len(labels) > 7:
        return render({})
    canonical = [f"#{i}" for i in range(len(labels))]
    return min(render(dict(zip(perm, canonical))) for perm in itertools.permutations(labels))


def contraction_closure(rule: LabeledRuleSchema) -> List[LabeledRuleSchema]:
    """The rule and all (iterated) contractions, deduplicated up to renaming."""
    closure = {schema_key(rule): rule}
    frontier = [rule]
    while frontier:
        current = frontier.pop()
        for candidate in contractions(current):
            key = schema_key(candidate)
            if key not in closure:
                closure[key] = candidate
                frontier.append(candidate)
    ordered = [rule] + sorted((r for k, r in closure.items() if r is not rule),
                              key=lambda r: (len(r.conclusion.rel) + len(r.conclusion.vars), schema_key(r)),
                              reverse=True)
    named = [ordered[0]]
    for index, contraction in enumerate(ordered[1:], start=1):
        named.append(replace(contraction, name=f"{rule.name}.c{index}"))
    logger.debug("closure of %s has %d rule(s)", rule.name, len(named))
    return named


def make_labeled_rules(axioms: Sequence[PrimitiveAxiom]) -> List[LabeledRuleSchema]:
    rules = []
    for index, axiom in enumerate(axioms, start=1):
        rules.extend(contraction_closure(pt_schema(axiom, index)))
    return rules


# --- application and side conditions ------------------------------------

def _annotated_pairs(rule: LabeledRuleSchema):
    annotated = [v for v in rule.seq_vars() if v.annotated]
    return itertools.combinations(annotated, 2)


def _check_p_conditions(rule: LabeledRuleSchema, sub: Dict[str, object], conclusion: LabeledSequent) -> None:
    for label_var in rule.fresh:
        if sub[label_var] in conclusion.labels():
            raise SideConditionError("P1", f"label {sub[label_var]} for {label_var} is not fresh")
    for first, second in _annotated_pairs(rule):
        if first.atom == second.atom and isomorphic(sub[first.name], sub[second.name]) is None:
            raise SideConditionError("P2", f"{first.name} and {second.name} are annotated with "
                                           f"{first.atom} but their instances are not isomorphic")
    for var in rule.seq_vars():
        if var.annotated:
            value = sub[var.name]
            if not value.is_empty() and sub[var.label] not in value.labels():
                raise SideConditionError("P3", f"{var.name} instance {value} does not contain {sub[var.label]}")


def apply_labeled_rule(rule: LabeledRuleSchema, sub: Dict[str, object]) -> Tuple[List[LabeledSequent], LabeledSequent]:
    """Instantiate a rule and enforce its side conditions (freshness, P1-P3)."""
    missing = [v for v in rule.variables() if v not in sub]
    if missing:
        raise RuleError(f"({rule.name}) substitution misses {', '.join(missing)}")
    conclusion = rule.conclusion.instantiate(sub)
    premises = [p.instantiate(sub) for p in rule.premises]
    if rule.kind == PRIMITIVE:
        _check_p_conditions(rule, sub, conclusion)
    else:
        for label_var in rule.fresh:
            if sub[label_var] in conclusion.labels():
                raise SideConditionError("fresh", f"label {sub[label_var]} occurs in the conclusion")
    return premises, conclusion


def infer_context(rule: LabeledRuleSchema, sub: Dict[str, object], conclusion: LabeledSequent) -> Dict[str, object]:
    """Fill in the context variable as the conclusion minus the principal part."""
    if CONTEXT in sub:
        return sub
    principal_sub = dict(sub)
    principal_sub[CONTEXT] = EMPTY
    principal = rule.conclusion.instantiate(principal_sub)
    if not conclusion.contains(principal):
        raise RuleError(f"({rule.name}) principal part {principal} is not in {conclusion}")
    inferred = dict(sub)
    inferred[CONTEXT] = conclusion.minus(principal)
    return inferred


def check_strict(rule: LabeledRuleSchema, sub: Dict[str, object]) -> Optional[str]:
    """First violated condition among P1-P7 for a pt instance, or None."""
    try:
        _, conclusion = apply_labeled_rule(rule, sub)
    except SideConditionError as error:
        return str(error)
    labels = rule.label_vars()
    images = [sub[x] for x in labels]
    if len(set(images)) != len(images):
        return "P4: label variables are not mapped injectively"
    annotated = [v for v in rule.seq_vars() if v.annotated]
    for first, second in itertools.combinations(annotated, 2):
        a, b = sub[first.name], sub[second.name]
        if a.is_empty() or b.is_empty():
            continue
        shared = a.labels() & b.labels()
        same_root = sub[first.label] == sub[second.label]
        if same_root and shared != {sub[first.label]}:
            return f"P5: {first.name} and {second.name} share {sorted(shared)}"
        if not same_root and shared:
            return f"P5: {first.name} and {second.name} share {sorted(shared)}"
    context = sub[CONTEXT]
    root = sub[rule.root]
    for part in (rule.a_part,) + rule.b_parts:
        instance = part.instantiate(sub)
        if instance.is_empty() or context.is_empty():
            continue
        if instance.labels() & context.labels() != {root}:
            return f"P6: {instance} and the context overlap in " \
                   f"{sorted(instance.labels() & context.labels())}, not just {root}"
    for var in rule.seq_vars():
        verdict = is_polytree(sub[var.name])
        if not verdict:
            return f"P7: instance of {var.name} is not a polytree ({verdict.reason})"
    return None


# --- calculus -----------------------------------------------------------

@dataclass
class LabeledCalculus:
    """G3K_t extended with the contraction-closed rules of a set of axioms."""
    axioms: List[PrimitiveAxiom] = field(default_factory=list)
    rules: Dict[str, LabeledRuleSchema] = field(default_factory=dict)

    @classmethod
    def for_axioms(cls, axioms: Sequence[PrimitiveAxiom] = ()) -> "LabeledCalculus":
        calculus = cls(list(axioms))
        for rule in G3_RULES + tuple(make_labeled_rules(axioms)):
            calculus.rules[rule.name] = rule
        return calculus

    def rule(self, name: str) -> LabeledRuleSchema:
        if name not in self.rules:
            raise RuleError(f"unknown rule {name!r}")
        return self.rules[name]

    def pt_rules(self) -> List[LabeledRuleSchema]:
        return [r for r in self.rules.values() if r.kind == PRIMITIVE]

    def pt_family(self, base_name: str) -> List[LabeledRuleSchema]:
        """A pt rule together with its contractions."""
        return [r for r in self.pt_rules() if r.name == base_name or r.name.startswith(base_name + ".")]
