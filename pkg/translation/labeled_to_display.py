"""
Strict labeled polytree proofs to display proofs.

Every labeled node yields a display derivation of some sequent whose
labeled reading is isomorphic to the node's conclusion; premises are
connected to the display rule's premises by reversible derivations from
translation/equivalence.py. Rules that keep their principal formula are
followed by a merge of the duplicated label (rho4/rho5) and a
contraction; pt instances place their principal part in the context and
contract the duplicate it leaves below. A contraction of a pt rule runs
its base display rule and zips the extra copy of the principal part back
onto the original.
"""
import logging
from collections import Counter
from typing import Dict, List, Optional, Tuple

import networkx as nx

from models.display_proof import check_display_proof, expand_derived
from models.display_rules import DisplayCalculus, apply_display_rule, instantiate_formula
from models.errors import TranslationError
from models.formula import BOT, TOP, Formula
from models.labeled_proof import check_labeled_proof
from models.labeled_rules import (CONTEXT, PRIMITIVE, STRUCTURAL_RULE_NAMES,
                                  LabeledCalculus, LabeledRuleSchema, infer_context)
from models.labeled_sequent import (FreshLabels, LabeledFormula, LabeledSequent, RelAtom,
                                    compose, label_substitute, subpolytree)
from models.proof_tree import DOWN, ProofTree, proof_metrics
from models.structural_elimination import eliminate_structural
from models.structure import (I, Bullet, Comp, DisplaySequent, Fml, Star,
                              Structure, star_bullet_star)
from utils.config import L2D_SIZE_FACTOR

from .equivalence import derive_equivalence
from .notation import DEFAULT_ROOT, antecedent_structure, succedent_structure, to_display
from .trace import TranslationTrace

logger = logging.getLogger(__name__)

LEFT_RULES = frozenset({"neg_l", "and_l", "or_l", "diaf_l", "diap_l"})
RIGHT_RULES = frozenset({"neg_r", "and_r", "or_r", "imp_r", "boxf_r", "boxp_r"})
# rule -> (side of the principal formula, rule merging the duplicated label)
KEPT_RULES = {
    "boxf_l": ("ante", "rho4"),
    "boxp_l": ("ante", "rho5"),
    "diaf_r": ("succ", "rho4"),
    "diap_r": ("succ", "rho5"),
}


def _ante(s: LabeledSequent, w: str) -> Structure:
    return I if s.is_empty() else antecedent_structure(s, w)


def _succ(s: LabeledSequent, w: str) -> Structure:
    return I if s.is_empty() else succedent_structure(s, w)


def sigma_d(rule: LabeledRuleSchema, sub: Dict[str, object]) -> Dict[str, object]:
    """Display substitution for the pt rule of a strict labeled instance.

    X_p reads the first instance annotated with p at its label; X reads
    the context on the succedent side at the root.
    """
    display_sub: Dict[str, object] = {}
    for var in rule.seq_vars():
        if var.annotated and f"X_{var.atom}" not in display_sub:
            display_sub[f"X_{var.atom}"] = _ante(sub[var.name], sub[var.label])
    display_sub["X"] = _succ(sub[CONTEXT], sub[rule.root])
    return display_sub


class LabeledToDisplay:
    """Translate strict labeled polytree proofs into display proofs."""

    def __init__(self, labeled: LabeledCalculus, display: Optional[DisplayCalculus] = None,
                 root: Optional[str] = None):
        self.labeled = labeled
        self.display = display or DisplayCalculus.for_axioms(labeled.axioms)
        self.root = root
        self.entries: List[Tuple[Tuple[int, ...], List[str], bool]] = []

    def translate(self, proof: ProofTree, source_id: str = "") -> Tuple[ProofTree, TranslationTrace]:
        if any(node.rule in STRUCTURAL_RULE_NAMES for node in proof.nodes()):
            logger.info("eliminating structural steps before translation")
            proof = eliminate_structural(proof, self.labeled)
        verdict = check_labeled_proof(proof, self.labeled, strict=True, polytree=True)
        if not verdict:
            raise TranslationError(f"input is not a strict labeled polytree proof: {verdict.message}")
        self.entries = []
        root = self._root(proof.conclusion)
        built, reached = self._node(proof, ())
        wanted = to_display(proof.conclusion, root)
        result = expand_derived(derive_equivalence(reached, wanted, self.display, top=built), self.display)
        verdict = check_display_proof(result, self.display)
        if not verdict:
            raise TranslationError(f"translation does not check: {verdict.message} at {verdict.path}")
        metrics_in, metrics_out = proof_metrics(proof), proof_metrics(result)
        trace = TranslationTrace(source_id=source_id, direction="l2d", root=root,
                                 metrics_in=metrics_in, metrics_out=metrics_out,
                                 bound=L2D_SIZE_FACTOR * metrics_in.size ** 3)
        for path, rules, expansion in self.entries:
            trace.record(path, rules, expansion)
        if not trace.within_bound:
            raise TranslationError(f"display proof of size {metrics_out.size} exceeds the budget {trace.bound}")
        logger.info("translated labeled proof: %d -> %d sequents", metrics_in.quantity, metrics_out.quantity)
        return result, trace

    def _root(self, s: LabeledSequent) -> str:
        labels = s.labels()
        if self.root is not None:
            if self.root not in labels:
                raise TranslationError(f"root {self.root} does not occur in {s}")
            return self.root
        return DEFAULT_ROOT if DEFAULT_ROOT in labels else min(labels)

    # --- helpers --------------------------------------------------------

    def _connect(self, proof: ProofTree, reached: DisplaySequent, wanted: DisplaySequent) -> ProofTree:
        return derive_equivalence(reached, wanted, self.display, top=proof)

    def _apply(self, name: str, sub: Dict[str, object],
               kids: List[Tuple[ProofTree, DisplaySequent]]) -> Tuple[ProofTree, DisplaySequent]:
        premises, conclusion = apply_display_rule(self.display.rule(name), sub, DOWN)
        if len(premises) != len(kids):
            raise TranslationError(f"({name}) needs {len(premises)} premise(s), got {len(kids)}")
        connected = [self._connect(proof, reached, wanted)
                     for (proof, reached), wanted in zip(kids, premises)]
        return ProofTree(name, conclusion, connected, dict(sub), DOWN), conclusion

    def _unary(self, name: str, sub: Dict[str, object],
               below: Tuple[ProofTree, DisplaySequent]) -> Tuple[ProofTree, DisplaySequent]:
        return self._apply(name, sub, [below])

    # --- nodes ----------------------------------------------------------

    def _node(self, node: ProofTree, path) -> Tuple[ProofTree, DisplaySequent]:
        rule = self.labeled.rule(node.rule)
        sub = infer_context(rule, dict(node.subst), node.conclusion)
        kids = [self._node(p, path + (i,)) for i, p in enumerate(node.premises)]
        logger.debug("translating (%s) at %s", node.rule, list(path))
        if rule.kind == PRIMITIVE:
            result, used = self._primitive(rule, sub, kids)
            self.entries.append((path, used, False))
            return result
        x = sub["w"]
        context = _ante(sub[CONTEXT], x)
        formulas = {name: sub[name] for name in rule.formula_vars()}
        name = node.rule
        if rule.initial:
            result = self._initial(name, formulas, context, sub[CONTEXT].is_empty())
        elif name in LEFT_RULES:
            result = self._apply(name, {**formulas, "Y": Star(context)}, kids)
        elif name in RIGHT_RULES:
            result = self._apply(name, {**formulas, "X": context}, kids)
        elif name == "imp_l":
            # the display rule splits the context; both halves get all of it
            below = self._apply(name, {**formulas, "X": context, "Y": Star(context)}, kids)
            principal = Fml(instantiate_formula(rule.conclusion.ante[0].formula, sub))
            result = self._unary("cr", {"X": principal, "Y": Star(context)}, below)
        elif name in KEPT_RULES:
            result = self._kept(name, rule, sub, formulas, kids)
        else:
            raise TranslationError(f"({name}) cannot be translated")
        self.entries.append((path, [name], False))
        return result

    def _initial(self, name, formulas, context: Structure, empty: bool):
        if name == "id":
            p = Fml(formulas["p"])
            sub = {"p": formulas["p"]}
            ante, succ = p, p
        elif name == "bot_l":
            sub, ante, succ = {}, Fml(BOT), I
        else:
            sub, ante, succ = {}, I, Fml(TOP)
        leaf = ProofTree(name, DisplaySequent(ante, succ), [], sub, DOWN)
        if empty:
            return leaf, leaf.conclusion
        return self._unary("wl", {"X": ante, "Y": succ, "Z": context}, (leaf, leaf.conclusion))

    def _kept(self, name, rule: LabeledRuleSchema, sub, formulas, kids):
        side, merge = KEPT_RULES[name]
        conclusion: LabeledSequent = rule.conclusion.instantiate(sub)
        x, u = sub["w"], sub["u"]
        items = rule.conclusion.ante if side == "ante" else rule.conclusion.succ
        formula: Formula = instantiate_formula(items[0].formula, sub)
        # the display rule adds a second copy of x holding only the principal formula
        if side == "ante":
            below = self._apply(name, {**formulas, "Y": succedent_structure(conclusion, u)}, kids)
            inner = Fml(formula)
        else:
            below = self._apply(name, {**formulas, "X": antecedent_structure(conclusion, u)}, kids)
            inner = Star(Fml(formula))
        branch = subpolytree(conclusion, x, u)
        edge = RelAtom(x, u) if RelAtom(x, u) in conclusion.rel else RelAtom(u, x)
        rest = conclusion.minus(branch)
        rest = LabeledSequent(rest.rel - {edge}, rest.ante, rest.succ)
        branch_structure = antecedent_structure(branch, x)
        wrap = Bullet if merge == "rho4" else star_bullet_star
        merge_sub = {"X": inner, "Y": branch_structure, "Z": _succ(rest, u)}
        before_merge = DisplaySequent(Comp(wrap(inner), wrap(branch_structure)), merge_sub["Z"])
        merged = self._unary(merge, merge_sub, (self._connect(*below, before_merge), before_merge))
        single = LabeledSequent(ante=(LabeledFormula(x, formula),)) if side == "ante" \
            else LabeledSequent(succ=(LabeledFormula(x, formula),))
        remainder = conclusion.minus(single)
        if side == "ante":
            return self._unary("cl", {"X": Fml(formula), "Y": _succ(remainder, x)}, merged)
        return self._unary("cr", {"X": _ante(remainder, x), "Y": Fml(formula)}, merged)

    def _primitive(self, rule: LabeledRuleSchema, sub, kids):
        if self.display.rules.get(rule.name) is None:
            return self._contracted(rule, sub, kids)
        w = sub[rule.root]
        display_sub = sigma_d(rule, sub)
        principal = rule.a_part.instantiate(sub)
        display_sub["X"] = _succ(compose(principal, sub[CONTEXT]), w)
        below = self._apply(rule.name, display_sub, kids)
        part = below[1].ante
        return self._unary("cl", {"X": part, "Y": _succ(sub[CONTEXT], w)}, below), [rule.name, "cl"]

    def _contracted(self, rule: LabeledRuleSchema, sub, kids):
        """A contraction of a pt rule runs as its base display rule; the second
        copy of the principal part this leaves is zipped onto the first by
        merging labels (rho4/rho5) and its formulas are contracted."""
        base = self.labeled.rule(rule.name.split(".")[0])
        w = sub[rule.root]
        target = compose(rule.a_part.instantiate(sub), sub[CONTEXT])
        display_sub = sigma_d(rule, sub)
        display_sub["X"] = _succ(target, w)
        below = self._apply(base.name, display_sub, kids)
        used = [base.name]
        copy, image = _principal_copy(base, rule, sub, target.labels())
        current = compose(copy, target)
        graph = nx.Graph()
        graph.add_node(w)
        graph.add_edges_from((a.src, a.dst) for a in copy.rel)
        for parent, label in nx.bfs_edges(graph, w):
            below, current, name = self._merge(below, current, image[parent], label, image[label])
            used.append(name)
        for side, name in (("ante", "cl"), ("succ", "cr")):
            surplus = Counter(getattr(current, side)) - Counter(getattr(target, side))
            for item in surplus.elements():
                single = LabeledSequent(**{side: (item,)})
                rest = current.minus(single).minus(single)
                if side == "ante":
                    contract_sub = {"X": Fml(item.formula), "Y": _succ(rest, item.label)}
                else:
                    contract_sub = {"X": _ante(rest, item.label), "Y": Fml(item.formula)}
                below = self._unary(name, contract_sub, below)
                current = current.minus(single)
                used.append(name)
        if current != target:
            raise TranslationError(f"({rule.name}) copy of the principal part does not fold onto {target}")
        return below, used

    def _merge(self, below, current: LabeledSequent, anchor: str, drop: str, keep: str):
        """Identify two children (or two parents) drop and keep of anchor."""
        child = RelAtom(anchor, drop) in current.rel
        dropped = RelAtom(anchor, drop) if child else RelAtom(drop, anchor)
        kept = RelAtom(anchor, keep) if child else RelAtom(keep, anchor)
        if dropped not in current.rel or kept not in current.rel:
            raise TranslationError(f"{drop} and {keep} are not both {'children' if child else 'parents'} "
                                   f"of {anchor}")
        first, second = subpolytree(current, drop, anchor), subpolytree(current, keep, anchor)
        rest = current.minus(first).minus(second)
        rest = LabeledSequent(rest.rel - {dropped, kept}, rest.ante, rest.succ)
        name = "rho5" if child else "rho4"
        merge_sub = {"X": _ante(first, drop), "Y": _ante(second, keep), "Z": _succ(rest, anchor)}
        return self._unary(name, merge_sub, below), label_substitute(current, drop, keep), name


def _principal_copy(base: LabeledRuleSchema, rule: LabeledRuleSchema, sub: Dict[str, object],
                    avoid) -> Tuple[LabeledSequent, Dict[str, str]]:
    """The principal part of the base rule under fresh labels (the root
    excepted), and the label each copy label folds onto."""
    fresh = FreshLabels(avoid, prefix="c")
    w = sub[rule.root]
    labels = {x: w if x == base.root else fresh() for x, _ in rule.origin}
    image = {labels[x]: sub[current] for x, current in rule.origin}
    copy_sub: Dict[str, object] = dict(labels)
    for var in base.a_part.vars:
        instance = sub[var.name]
        mine = next(v for v in rule.a_part.vars if v.name == var.name)
        renaming = {sub[mine.label]: labels[var.label]}
        for label in sorted(instance.labels() - set(renaming)):
            renaming[label] = fresh()
        copy_sub[var.name] = instance.rename(renaming)
        image.update((new, old) for old, new in renaming.items() if old in instance.labels())
    return base.a_part.instantiate(copy_sub), image


def translate_l2d(proof: ProofTree, calculus: LabeledCalculus, root: Optional[str] = None,
                  display: Optional[DisplayCalculus] = None,
                  source_id: str = "") -> Tuple[ProofTree, TranslationTrace]:
    """Display proof of the display reading of proof's conclusion."""
    return LabeledToDisplay(calculus, display, root).translate(proof, source_id)
