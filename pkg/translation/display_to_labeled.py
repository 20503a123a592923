"""
Display proofs to strict labeled polytree proofs.

Each display node is read against the labeled reading of its conclusion.
Rules that do not change the labeled reading (display rules and the I,
q, a, p rules) disappear. Logical rules map to the labeled rule of the
same name, with a weakening step wherever the labeled premise carries
more than the display premise. Weakening rules become (w) steps,
contractions become a zip of (ls) steps followed by (c_l)/(c_r), and a
primitive tense rule becomes a strict instance of its labeled rule.
The structural steps are then eliminated.
"""
import logging
from typing import Dict, List, Optional, Tuple

from models.display_proof import check_display_proof, expand_derived
from models.display_rules import (DISPLAY_RULE_NAMES, LOGICAL, PRIMITIVE,
                                  REVERSIBLE_STRUCTURAL_NAMES, DisplayCalculus,
                                  SVar, infer_substitution, instantiate_formula)
from models.errors import TranslationError
from models.labeled_proof import check_labeled_proof, structural_step, zip_children
from models.labeled_rules import CONTEXT, G3_RULES, LabeledCalculus, LabeledRuleSchema, apply_labeled_rule
from models.labeled_sequent import (EMPTY, FreshLabels, LabeledFormula,
                                    LabeledSequent, RelAtom, compose, isomorphic,
                                    neighbours, rooted_isomorphism, subpolytree)
from models.proof_tree import ProofTree, proof_metrics
from models.structural_elimination import eliminate_structural
from models.structure import (Bullet, Comp, DisplaySequent, Fml, IStruct,
                              Star, Structure)

from .notation import DEFAULT_ROOT, structure_to_labeled, to_labeled
from .trace import TranslationTrace

logger = logging.getLogger(__name__)

NO_OP_RULES = frozenset(DISPLAY_RULE_NAMES + REVERSIBLE_STRUCTURAL_NAMES + ("rho1",))
WEAKENING_RULES = frozenset({"wl", "wr", "ml", "mr", "top_l", "bot_r"})
CONTRACTION_RULES = frozenset({"cl", "cr"})
G3_NAMES = frozenset(rule.name for rule in G3_RULES)


# --- sigma_L ------------------------------------------------------------

def sigma_l(rule: LabeledRuleSchema, display_sub: Dict[str, object], root: str,
            fresh: Optional[FreshLabels] = None) -> Dict[str, object]:
    """Strict labeled substitution for a base pt rule from a display one.

    Every label variable other than the root gets its own fresh label;
    every annotated variable for atom p at label v is the antecedent
    reading of the structure for X_p at v, with fresh internal labels;
    the context is the succedent reading of the structure for X.
    """
    fresh = fresh or FreshLabels({root})
    fresh.reserve({root})
    sub: Dict[str, object] = {rule.root: root}
    for label in rule.label_vars():
        if label not in sub:
            sub[label] = fresh()
    for var in rule.seq_vars():
        if var.annotated:
            structure = display_sub[f"X_{var.atom}"]
            sub[var.name] = structure_to_labeled(structure, sub[var.label], True, fresh)
    sub[CONTEXT] = structure_to_labeled(display_sub["X"], root, False, fresh)
    return sub


# --- aligned readings ---------------------------------------------------

class _Reading:
    """Labeled reading of one rule instance with every schema variable
    tied to the labels it occupies in the conclusion."""

    def __init__(self, sub: Dict[str, object], fresh: FreshLabels):
        self.sub = sub
        self.fresh = fresh
        self.records: Dict[str, Tuple[str, bool, LabeledSequent]] = {}
        self.bullets: List[str] = []
        self.used: set = set()
        self.eigen: Optional[str] = None

    # conclusion side

    def conclusion(self, d: DisplaySequent, root: str) -> LabeledSequent:
        return compose(self._record(d.ante, root, True), self._record(d.succ, root, False))

    def _record(self, s: Structure, w: str, antecedent: bool) -> LabeledSequent:
        if isinstance(s, SVar):
            seq = structure_to_labeled(self.sub[s.name], w, antecedent, self.fresh)
            self.records.setdefault(s.name, (w, antecedent, seq))
            return seq
        if isinstance(s, Bullet):
            u = self.fresh()
            self.bullets.append(u)
            edge = RelAtom(u, w) if antecedent else RelAtom(w, u)
            return compose(LabeledSequent(frozenset({edge})), self._record(s.sub, u, antecedent))
        return self._generic(s, w, antecedent, self._record)

    def _generic(self, s, w, antecedent, recurse) -> LabeledSequent:
        if isinstance(s, IStruct):
            return EMPTY
        if isinstance(s, Fml):
            item = LabeledFormula(w, instantiate_formula(s.formula, self.sub))
            return LabeledSequent(ante=(item,)) if antecedent else LabeledSequent(succ=(item,))
        if isinstance(s, Star):
            return recurse(s.sub, w, not antecedent)
        if isinstance(s, Comp):
            return compose(recurse(s.left, w, antecedent), recurse(s.right, w, antecedent))
        raise TranslationError(f"unexpected pattern {s!r}")

    def align(self, mapping: Dict[str, str]) -> None:
        """Move the recorded readings into the target's labels."""
        self.records = {name: (mapping.get(w, w), side, seq.rename(mapping))
                        for name, (w, side, seq) in self.records.items()}
        self.bullets = [mapping.get(u, u) for u in self.bullets]

    # premise side

    def _eigen(self) -> str:
        if self.eigen is None:
            self.eigen = self.fresh()
        return self.eigen

    def _anchor(self, s: Structure) -> Optional[str]:
        if isinstance(s, SVar):
            return self.records[s.name][0] if s.name in self.records else None
        if isinstance(s, Star):
            return self._anchor(s.sub)
        if isinstance(s, Comp):
            return self._anchor(s.left) or self._anchor(s.right)
        return None

    def premise(self, d: DisplaySequent) -> Tuple[LabeledSequent, str]:
        self.used = set()
        root = self._anchor(d.ante) or self._anchor(d.succ) or self._eigen()
        return compose(self._read(d.ante, root, True), self._read(d.succ, root, False)), root

    def _read(self, s: Structure, w: str, antecedent: bool) -> LabeledSequent:
        if isinstance(s, SVar):
            if s.name not in self.records:
                return structure_to_labeled(self.sub[s.name], w, antecedent, self.fresh)
            label, side, seq = self.records[s.name]
            if label != w or side != antecedent:
                raise TranslationError(f"{s.name} moves between labels or sides")
            if s.name in self.used:
                return self.copy(seq, w)
            self.used.add(s.name)
            return seq
        if isinstance(s, Bullet):
            u = self._anchor(s.sub) or self._eigen()
            edge = RelAtom(u, w) if antecedent else RelAtom(w, u)
            return compose(LabeledSequent(frozenset({edge})), self._read(s.sub, u, antecedent))
        return self._generic(s, w, antecedent, self._read)

    def copy(self, seq: LabeledSequent, anchor: str) -> LabeledSequent:
        return seq.rename({x: self.fresh() for x in sorted(seq.labels() - {anchor})})


# --- the translator -----------------------------------------------------

class DisplayToLabeled:
    """Translate cut-free display proofs into strict labeled polytree proofs."""

    def __init__(self, display: DisplayCalculus, labeled: Optional[LabeledCalculus] = None,
                 root: str = DEFAULT_ROOT):
        self.display = display
        self.labeled = labeled or LabeledCalculus.for_axioms(display.axioms)
        self.root = root
        self.fresh = FreshLabels({root})
        self.entries: List[Tuple[Tuple[int, ...], List[str], bool]] = []

    def translate(self, proof: ProofTree, source_id: str = "") -> Tuple[ProofTree, TranslationTrace]:
        if any(node.rule == "cut" for node in proof.nodes()):
            raise TranslationError("cut not supported")
        verdict = check_display_proof(proof, self.display)
        if not verdict:
            raise TranslationError(f"input does not check: {verdict.message}")
        self.entries = []
        expanded = expand_derived(proof, self.display)
        target = to_labeled(expanded.conclusion, self.root, self.fresh)
        raw = self._node(expanded, target, self.root, ())
        result = eliminate_structural(raw, self.labeled)
        verdict = check_labeled_proof(result, self.labeled, strict=True, polytree=True)
        if not verdict:
            raise TranslationError(f"translation does not check: {verdict.message} at {verdict.path}")
        metrics_in, metrics_out = proof_metrics(proof), proof_metrics(result)
        trace = TranslationTrace(source_id=source_id, direction="d2l", root=self.root,
                                 metrics_in=metrics_in, metrics_out=metrics_out,
                                 bound=metrics_in.quantity ** 2 * metrics_in.width)
        for path, rules, expansion in self.entries:
            trace.record(path, rules, expansion)
        if metrics_out.quantity > metrics_in.quantity:
            raise TranslationError(f"labeled proof has {metrics_out.quantity} sequents, "
                                   f"more than the {metrics_in.quantity} of its source")
        if not trace.within_bound:
            raise TranslationError(f"labeled proof of size {metrics_out.size} exceeds the bound {trace.bound}")
        logger.info("translated display proof: %d -> %d sequents",
                    metrics_in.quantity, metrics_out.quantity)
        return result, trace

    def _note(self, path, rules, expansion=False):
        self.entries.append((path, list(rules), expansion))

    def _node(self, node: ProofTree, target: LabeledSequent, root: str, path) -> ProofTree:
        """A labeled proof of target, which reads node's conclusion at root."""
        rule = node.rule
        logger.debug("translating (%s) at %s", rule, list(path))
        if rule in NO_OP_RULES:
            premise = node.premises[0]
            start = self.fresh()
            reading = to_labeled(premise.conclusion, start, self.fresh)
            mapping = isomorphic(reading, target)
            if mapping is None:
                raise TranslationError(f"({rule}) changed the labeled reading at {list(path)}")
            self._note(path, [])
            return self._node(premise, target, mapping.get(start, root), path + (0,))

        schema = self.display.rule(rule)
        sub = dict(node.subst)
        if set(schema.variables()) - set(sub):
            sub = infer_substitution(schema, node.conclusion, [p.conclusion for p in node.premises],
                                     node.direction, sub)
            if sub is None:
                raise TranslationError(f"({rule}) does not match its node at {list(path)}")
        reading = _Reading(sub, self.fresh)
        start = self.fresh()
        drawn = reading.conclusion(schema.conclusion, start)
        mapping = rooted_isomorphism(drawn, start, target, root)
        if mapping is None:
            raise TranslationError(f"target {target} does not read ({rule}) at {root}")
        mapping.setdefault(start, root)
        reading.align(mapping)

        if schema.kind == PRIMITIVE:
            return self._primitive(node, schema.name, sub, target, root, path)
        if rule in WEAKENING_RULES:
            premise, premise_root = reading.premise(schema.premises[0])
            added = target.minus(premise)
            child = self._node(node.premises[0], premise, premise_root, path + (0,))
            self._note(path, ["w"], expansion=True)
            return self._weaken(child, premise, added, target)
        if rule in CONTRACTION_RULES:
            return self._contraction(node, schema, reading, target, root, path)
        if schema.kind == LOGICAL and rule in G3_NAMES:
            return self._logical(node, schema, sub, reading, target, root, path)
        raise TranslationError(f"({rule}) cannot be translated")

    @staticmethod
    def _weaken(child: ProofTree, premise: LabeledSequent, added: LabeledSequent,
                target: LabeledSequent) -> ProofTree:
        if added.is_empty():
            return child
        if compose(premise, added) != target:
            raise TranslationError(f"{premise} does not weaken to {target}")
        return structural_step("w", premise, added=added).node(child)

    def _logical(self, node, schema, sub, reading: _Reading, target, root, path) -> ProofTree:
        rule = self.labeled.rule(node.rule)
        lsub: Dict[str, object] = {"w": root}
        for name in rule.formula_vars():
            lsub[name] = sub[name]
        if "u" in rule.label_vars():
            # kept principal rules reuse the label of the conclusion's bullet
            lsub["u"] = reading.bullets[0] if reading.bullets else reading._eigen()
        principal = rule.conclusion.instantiate({**lsub, CONTEXT: EMPTY})
        if not target.contains(principal):
            raise TranslationError(f"({node.rule}) principal part {principal} missing from {target}")
        lsub[CONTEXT] = target.minus(principal)
        premises, conclusion = apply_labeled_rule(rule, lsub)
        if conclusion != target:
            raise TranslationError(f"({node.rule}) gives {conclusion}, not {target}")
        children = []
        for index, (display_premise, labeled_premise) in enumerate(zip(schema.premises, premises)):
            reading_premise, premise_root = reading.premise(display_premise)
            if not labeled_premise.contains(reading_premise):
                raise TranslationError(f"({node.rule}) premise {reading_premise} is not part of "
                                       f"{labeled_premise}")
            added = labeled_premise.minus(reading_premise)
            child = self._node(node.premises[index], reading_premise, premise_root, path + (index,))
            children.append(self._weaken(child, reading_premise, added, labeled_premise))
        self._note(path, [node.rule])
        subst = {k: v for k, v in lsub.items() if k != CONTEXT}
        return ProofTree(node.rule, target, children, subst)

    def _contraction(self, node, schema, reading: _Reading, target, root, path) -> ProofTree:
        premise, premise_root = reading.premise(schema.premises[0])
        name = "X" if node.rule == "cl" else "Y"
        seq = reading.records[name][2]
        current = premise
        steps = []
        # the second occurrence is the copy; its neighbours of root are the drop labels
        copy = premise.minus(target)
        original_children, original_parents = neighbours(seq, root)
        copy_children, copy_parents = neighbours(copy, root)
        for originals, copies in ((original_children, copy_children), (original_parents, copy_parents)):
            pending = list(copies)
            for keep in originals:
                drop = next((d for d in pending if _same_branch(current, root, keep, d)), None)
                if drop is None:
                    raise TranslationError(f"no copy of the branch at {keep}")
                pending.remove(drop)
                for step in zip_children(current, root, keep, drop):
                    steps.append(step)
                    current = step.after
        ante, succ = seq.restrict(root)
        for formula in ante:
            step = structural_step("c_l", current, label=root, formula=formula)
            steps.append(step)
            current = step.after
        for formula in succ:
            step = structural_step("c_r", current, label=root, formula=formula)
            steps.append(step)
            current = step.after
        if current != target:
            raise TranslationError(f"contraction ended in {current}, not {target}")
        proof = self._node(node.premises[0], premise, premise_root, path + (0,))
        for step in steps:
            proof = step.node(proof)
        self._note(path, [s.kind for s in steps], expansion=True)
        return proof

    def _primitive(self, node, name, sub, target, root, path) -> ProofTree:
        rule = self.labeled.rule(name)
        lsub = sigma_l(rule, sub, root, self.fresh)
        _, drawn = apply_labeled_rule(rule, lsub)
        mapping = rooted_isomorphism(drawn, root, target, root)
        if mapping is None:
            raise TranslationError(f"({name}) instance does not read as {target}")
        lsub = {k: _rename(v, mapping) for k, v in lsub.items()}
        premises, conclusion = apply_labeled_rule(rule, lsub)
        a_part = rule.a_part.instantiate(lsub)
        children = []
        for index, labeled_premise in enumerate(premises):
            reading = labeled_premise.minus(a_part)
            child = self._node(node.premises[index], reading, root, path + (index,))
            children.append(self._weaken(child, reading, a_part, labeled_premise))
        self._note(path, [name])
        subst = {k: v for k, v in lsub.items() if k != CONTEXT}
        return ProofTree(name, conclusion, children, subst)


def _rename(value, mapping: Dict[str, str]):
    if isinstance(value, LabeledSequent):
        return value.rename(mapping)
    if isinstance(value, str):
        return mapping.get(value, value)
    return value


def _same_branch(s: LabeledSequent, root: str, keep: str, drop: str) -> bool:
    return rooted_isomorphism(subpolytree(s, keep, root), keep, subpolytree(s, drop, root), drop) is not None


def translate_d2l(proof: ProofTree, calculus: DisplayCalculus, root: str = DEFAULT_ROOT,
                  labeled: Optional[LabeledCalculus] = None,
                  source_id: str = "") -> Tuple[ProofTree, TranslationTrace]:
    """Strict labeled polytree proof of the labeled reading of proof's conclusion."""
    return DisplayToLabeled(calculus, labeled, root).translate(proof, source_id)
