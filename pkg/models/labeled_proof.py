"""
Labeled proofs: the strict structural rules (ls, w, c_l, c_r), zipping of
isomorphic subpolytrees, and the proof checker with its strictness and
polytree flags.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .errors import ProofKitError, RuleError, SideConditionError
from .labeled_rules import (CONTEXT, PRIMITIVE, STRUCTURAL_RULE_NAMES,
                            LabeledCalculus, apply_labeled_rule, check_strict,
                            infer_context)
from .labeled_sequent import (LabeledFormula, LabeledSequent, compose,
                              is_polytree, label_substitute, neighbours,
                              rooted_isomorphism, subpolytree)
from .proof_tree import CheckResult, Metrics, ProofTree, proof_metrics

logger = logging.getLogger(__name__)


# --- strict structural rules --------------------------------------------

def apply_strict_structural(kind: str, s: LabeledSequent, **params) -> LabeledSequent:
    """Apply (ls), (w), (c_l) or (c_r) under their polytree-preserving conditions.

    ls: keep, drop -- two children of one parent or two parents of one
    child; drop is renamed to keep.
    w: added -- a polytree sharing exactly one label with s (unless
    either side is empty).
    c_l / c_r: label, formula -- one of two copies is removed.
    """
    if kind == "ls":
        keep, drop = params["keep"], params["drop"]
        if keep == drop:
            raise SideConditionError("ls", "cannot identify a label with itself")
        parents = {a.src for a in s.rel if a.dst == keep} & {a.src for a in s.rel if a.dst == drop}
        children = {a.dst for a in s.rel if a.src == keep} & {a.dst for a in s.rel if a.src == drop}
        if not parents and not children:
            raise SideConditionError("ls", f"{keep} and {drop} share neither a parent nor a child")
        return label_substitute(s, drop, keep)
    if kind == "w":
        added: LabeledSequent = params["added"]
        verdict = is_polytree(added)
        if not verdict:
            raise SideConditionError("w", f"weakened part is not a polytree: {verdict.reason}")
        if not s.is_empty() and not added.is_empty() and len(s.labels() & added.labels()) != 1:
            raise SideConditionError("w", f"weakened part shares {sorted(s.labels() & added.labels())} "
                                          f"with the sequent instead of exactly one label")
        return compose(s, added)
    if kind in ("c_l", "c_r"):
        item = LabeledFormula(params["label"], params["formula"])
        side = s.ante if kind == "c_l" else s.succ
        if side.count(item) < 2:
            raise SideConditionError(kind, f"{item} does not occur twice")
        single = LabeledSequent(ante=(item,)) if kind == "c_l" else LabeledSequent(succ=(item,))
        return s.minus(single, keep_rel=s.rel)
    raise RuleError(f"unknown structural rule {kind!r}")


@dataclass(frozen=True)
class StructuralStep:
    kind: str
    params: Tuple[Tuple[str, object], ...]
    before: LabeledSequent
    after: LabeledSequent

    def node(self, premise: ProofTree) -> ProofTree:
        return ProofTree(self.kind, self.after, [premise], dict(self.params))


def structural_step(kind: str, s: LabeledSequent, **params) -> StructuralStep:
    return StructuralStep(kind, tuple(sorted(params.items())), s, apply_strict_structural(kind, s, **params))


def steps_to_proof(top: ProofTree, steps: List[StructuralStep]) -> ProofTree:
    node = top
    for step in steps:
        node = step.node(node)
    return node


def zip_children(s: LabeledSequent, parent: str, keep: str, drop: str) -> List[StructuralStep]:
    """Merge the subpolytree at drop into the isomorphic one at keep.

    keep and drop are siblings through parent. Repeated (ls) steps make
    the two copies identical; contractions then delete the doubled
    formulas. The result is s without the drop subtree.
    """
    sub_keep, sub_drop = subpolytree(s, keep, parent), subpolytree(s, drop, parent)
    mapping = rooted_isomorphism(sub_keep, keep, sub_drop, drop)
    if mapping is None:
        raise ProofKitError(f"subpolytrees at {keep} and {drop} are not isomorphic")
    steps: List[StructuralStep] = []
    current = s
    queue = [(keep, drop, parent)]
    while queue:
        a, b, via = queue.pop(0)
        step = structural_step("ls", current, keep=a, drop=b)
        steps.append(step)
        current = step.after
        children, parents = neighbours(sub_keep, a)
        for c in children + parents:
            if c != via:
                queue.append((c, mapping[c], a))
    for lf in sub_keep.ante:
        step = structural_step("c_l", current, label=lf.label, formula=lf.formula)
        steps.append(step)
        current = step.after
    for lf in sub_keep.succ:
        step = structural_step("c_r", current, label=lf.label, formula=lf.formula)
        steps.append(step)
        current = step.after
    return steps


# --- checking -----------------------------------------------------------

def check_labeled_proof(proof: ProofTree, calculus: LabeledCalculus, strict: bool = False,
                        polytree: bool = False, allow_structural: bool = False,
                        allow_open: bool = False) -> CheckResult:
    """Check a labeled proof node by node.

    With strict, every pt instance must satisfy P1-P7; with polytree,
    every sequent must be a labeled polytree sequent.
    """
    saw_pt = False
    for path, node in proof.walk():
        failure = _check_node(node, calculus, allow_structural, allow_open)
        if not failure and strict and node.rule in calculus.rules and \
                calculus.rules[node.rule].kind == PRIMITIVE:
            saw_pt = True
            violation = check_strict(calculus.rules[node.rule], _full_sub(node, calculus))
            if violation:
                failure = f"not strict: {violation}"
        if not failure and polytree:
            verdict = is_polytree(node.conclusion)
            if not verdict:
                failure = f"sequent {node.conclusion} is not a polytree: {verdict.reason}"
        if failure:
            logger.info("labeled proof fails at %s (%s): %s", list(path), node.rule, failure)
            return CheckResult(ok=False, message=failure, path=list(path), rule=node.rule)
    notes = []
    if strict and is_polytree(proof.conclusion):
        # a strict proof of a polytree sequent has polytree sequents throughout
        if all(is_polytree(n.conclusion) for n in proof.nodes()):
            notes.append("all sequents polytree")
        else:
            notes.append("strict proof with polytree conclusion has a non-polytree sequent")
    if saw_pt:
        notes.append("all pt instances strict")
    return CheckResult(ok=True, metrics=proof_metrics(proof), notes=notes)


def _full_sub(node: ProofTree, calculus: LabeledCalculus) -> Dict[str, object]:
    return infer_context(calculus.rule(node.rule), dict(node.subst), node.conclusion)


def _check_node(node: ProofTree, calculus: LabeledCalculus, allow_structural: bool, allow_open: bool) -> str:
    if node.is_open():
        return "" if allow_open else "open leaf in a complete proof"
    premise_sequents = [p.conclusion for p in node.premises]
    if node.rule in STRUCTURAL_RULE_NAMES:
        if not allow_structural:
            return f"structural rule ({node.rule}) not allowed"
        if len(premise_sequents) != 1:
            return f"({node.rule}) needs exactly one premise"
        try:
            result = apply_strict_structural(node.rule, premise_sequents[0], **node.subst)
        except (RuleError, KeyError) as error:
            return f"({node.rule}) {error}"
        return "" if result == node.conclusion else f"({node.rule}) yields {result}, not {node.conclusion}"
    if node.rule == "cut":
        return "(cut) is not part of the labeled calculus"
    try:
        schema = calculus.rule(node.rule)
        sub = infer_context(schema, dict(node.subst), node.conclusion)
        premises, conclusion = apply_labeled_rule(schema, sub)
    except RuleError as error:
        return str(error)
    if conclusion != node.conclusion:
        return f"conclusion {node.conclusion} is not the instance {conclusion}"
    if premises != premise_sequents:
        return "premises do not match the instance (" + "; ".join(str(p) for p in premises) + ")"
    return ""


def labeled_metrics(proof: ProofTree) -> Metrics:
    return proof_metrics(proof)


def context_of(node: ProofTree, calculus: LabeledCalculus) -> LabeledSequent:
    """The context instance of a checked rule node."""
    return _full_sub(node, calculus)[CONTEXT]
