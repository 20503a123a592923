"""
Display proofs: checking against a DisplayCalculus, unary derivation
chains, the display property (display_at), the pinned expansions of the
derived rules rho1..rho5, and proof metrics.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import ProofKitError, RuleError
from .proof_tree import (DOWN, OPEN, UP, CheckResult, Metrics, ProofTree,
                         open_leaf, proof_metrics)
from .display_rules import (DERIVED, DISPLAY_RULE_NAMES, DisplayCalculus,
                            Substitution, apply_display_rule,
                            infer_substitution, match_sequent)
from .structure import (Bullet, Comp, DisplaySequent, Path, Star,
                        polarity, structure_at, A_PART)

logger = logging.getLogger(__name__)


# --- checking -----------------------------------------------------------

def check_display_proof(proof: ProofTree, calculus: DisplayCalculus, allow_cut: bool = False,
                        allow_open: bool = False, allow_derived: bool = True,
                        allowed_rules: Optional[Iterable[str]] = None) -> CheckResult:
    """Check every node of a display proof.

    Reversible rules are accepted in either direction; substitutions
    missing from a node are inferred by structural matching.
    """
    allowed = set(allowed_rules) if allowed_rules is not None else None
    for path, node in proof.walk():
        failure = _check_node(node, calculus, allow_cut, allow_open, allow_derived, allowed)
        if failure:
            logger.info("display proof fails at %s (%s): %s", list(path), node.rule, failure)
            return CheckResult(ok=False, message=failure, path=list(path), rule=node.rule)
    return CheckResult(ok=True, metrics=proof_metrics(proof))


def _check_node(node: ProofTree, calculus, allow_cut, allow_open, allow_derived, allowed) -> str:
    if node.is_open():
        return "" if allow_open else "open leaf in a complete proof"
    if allowed is not None and node.rule not in allowed:
        return f"rule ({node.rule}) not permitted here"
    try:
        schema = calculus.rule(node.rule)
    except RuleError as error:
        return str(error)
    if node.rule == "cut" and not allow_cut:
        return "(cut) is not allowed"
    if schema.kind == DERIVED and not allow_derived:
        return f"derived rule ({node.rule}) is not allowed"
    if node.direction == UP and not schema.reversible:
        return f"({node.rule}) cannot be applied upwards"
    premise_sequents = [p.conclusion for p in node.premises]
    sub = dict(node.subst)
    if set(schema.variables()) - set(sub):
        inferred = infer_substitution(schema, node.conclusion, premise_sequents, node.direction, sub)
        if inferred is None:
            return f"({node.rule}) does not match the node's sequents"
        sub = inferred
    try:
        premises, conclusion = apply_display_rule(schema, sub, node.direction)
    except RuleError as error:
        return str(error)
    if conclusion != node.conclusion:
        return f"conclusion {node.conclusion} is not the instance {conclusion}"
    if premises != premise_sequents:
        shown = "; ".join(str(p) for p in premises)
        return f"premises do not match the instance ({shown})"
    return ""


def display_metrics(proof: ProofTree) -> Metrics:
    return proof_metrics(proof)


# --- derivation chains --------------------------------------------------

@dataclass(frozen=True)
class Step:
    rule: str
    direction: str
    subst: Tuple[Tuple[str, object], ...]
    before: DisplaySequent
    after: DisplaySequent

    def sub(self) -> Substitution:
        return dict(self.subst)

    def reversed(self) -> "Step":
        return Step(self.rule, UP if self.direction == DOWN else DOWN, self.subst, self.after, self.before)


def reverse_chain(steps: Sequence[Step]) -> List[Step]:
    """The chain read bottom-up; only meaningful for reversible steps."""
    return [step.reversed() for step in reversed(steps)]


def chain_to_proof(start: DisplaySequent, steps: Sequence[Step],
                   top: Optional[ProofTree] = None) -> ProofTree:
    """Stack unary steps on top of a proof of start (an open leaf by default)."""
    node = top if top is not None else open_leaf(start)
    for step in steps:
        node = ProofTree(step.rule, step.after, [node], step.sub(), step.direction)
    return node


class DerivationBuilder:
    """Builds a unary derivation by applying rules to the current sequent.

    The rule side the current sequent is matched against is the premise
    for "down" and the conclusion for "up"; variables that only occur on
    the other side are passed as keyword arguments.
    """

    def __init__(self, calculus: DisplayCalculus, start: DisplaySequent, expand: bool = False):
        self.calculus = calculus
        self.start = start
        self.current = start
        self.expand = expand
        self.steps: List[Step] = []

    def apply(self, rule: str, direction: str = DOWN, **extra) -> "DerivationBuilder":
        schema = self.calculus.rule(rule)
        if len(schema.premises) != 1:
            raise RuleError(f"({rule}) is not a unary rule")
        pattern = schema.premises[0] if direction == DOWN else schema.conclusion
        sub: Substitution = dict(extra)
        if not match_sequent(pattern, self.current, sub):
            raise RuleError(f"({rule}) {direction} does not apply to {self.current}")
        premises, conclusion = apply_display_rule(schema, sub, direction)
        if premises[0] != self.current:
            raise RuleError(f"({rule}) {direction} instance does not start from {self.current}")
        if self.expand and schema.kind == DERIVED:
            self.steps.extend(expand_rho(self.calculus, rule, sub, direction))
        else:
            self.steps.append(Step(rule, direction, tuple(sorted(sub.items())), self.current, conclusion))
        self.current = conclusion
        return self

    def extend(self, steps: Sequence[Step]) -> "DerivationBuilder":
        for step in steps:
            if step.before != self.current:
                raise ProofKitError(f"chain does not continue from {self.current}")
            if self.expand and self.calculus.rule(step.rule).kind == DERIVED:
                self.steps.extend(expand_rho(self.calculus, step.rule, step.sub(), step.direction))
            else:
                self.steps.append(step)
            self.current = step.after
        return self

    def proof(self, top: Optional[ProofTree] = None) -> ProofTree:
        return chain_to_proof(self.start, self.steps, top)


# --- derived rules ------------------------------------------------------

def _z(var):
    return lambda sub: {"Z": sub[var]}


# Each recipe is a list of (rule, direction, extra-substitution builder)
# taking the derived rule's premise to its conclusion.
RHO_RECIPES: Dict[str, List[Tuple[str, str, Optional[Callable]]]] = {
    "rho1": [("d5", DOWN, None), ("d9", DOWN, None), ("d6", DOWN, None)],
    "rho2": [("d3", DOWN, None), ("d9", DOWN, None), ("wr", DOWN, _z("Z")), ("d9", UP, None),
             ("d3", UP, None), ("d4", DOWN, None), ("d9", DOWN, None), ("wr", DOWN, _z("Y")),
             ("pr", DOWN, None), ("d9", UP, None), ("d4", UP, None), ("cr", DOWN, None)],
    "rho3": [("d3", DOWN, None), ("rho1", UP, None), ("wr", DOWN, _z("Z")), ("rho1", DOWN, None),
             ("d3", UP, None), ("d4", DOWN, None), ("rho1", UP, None), ("wr", DOWN, _z("Y")),
             ("pr", DOWN, None), ("rho1", DOWN, None), ("d4", UP, None), ("cr", DOWN, None)],
    "rho4": [("d1", DOWN, None), ("d9", UP, None), ("wl", DOWN, _z("Y")), ("pl", DOWN, None),
             ("d9", DOWN, None), ("d1", UP, None), ("d2", DOWN, None), ("d9", UP, None),
             ("wl", DOWN, _z("X")), ("d9", DOWN, None), ("d2", UP, None), ("cl", DOWN, None)],
    "rho5": [("d1", DOWN, None), ("rho1", DOWN, None), ("wl", DOWN, _z("Y")), ("pl", DOWN, None),
             ("rho1", UP, None), ("d1", UP, None), ("d2", DOWN, None), ("rho1", DOWN, None),
             ("wl", DOWN, _z("X")), ("rho1", UP, None), ("d2", UP, None), ("cl", DOWN, None)],
}


def expand_rho(calculus: DisplayCalculus, rule: str, sub: Substitution,
               direction: str = DOWN) -> List[Step]:
    """Primitive steps replacing one application of a derived rule."""
    if rule not in RHO_RECIPES:
        raise RuleError(f"({rule}) is not a derived rule")
    premises, conclusion = apply_display_rule(calculus.rule(rule), sub, DOWN)
    builder = DerivationBuilder(calculus, premises[0], expand=True)
    for name, step_direction, extra in RHO_RECIPES[rule]:
        builder.apply(name, step_direction, **(extra(sub) if extra else {}))
    if builder.current != conclusion:
        raise RuleError(f"expansion of ({rule}) ended in {builder.current}, expected {conclusion}")
    if direction == UP:
        return reverse_chain(builder.steps)
    return builder.steps


def expand_derived(proof: ProofTree, calculus: DisplayCalculus) -> ProofTree:
    """Replace every derived-rule node by its primitive expansion."""
    premises = [expand_derived(p, calculus) for p in proof.premises]
    if proof.is_open() or calculus.rule(proof.rule).kind != DERIVED:
        return ProofTree(proof.rule, proof.conclusion, premises, dict(proof.subst), proof.direction)
    schema = calculus.rule(proof.rule)
    sub = dict(proof.subst)
    if set(schema.variables()) - set(sub):
        sub = infer_substitution(schema, proof.conclusion, [p.conclusion for p in proof.premises],
                                 proof.direction, sub)
        if sub is None:
            raise RuleError(f"({proof.rule}) does not match its node")
    steps = expand_rho(calculus, proof.rule, sub, proof.direction)
    return chain_to_proof(premises[0].conclusion, steps, premises[0])


# --- display property ---------------------------------------------------

def _clean_double_star(builder: DerivationBuilder, where: str) -> None:
    """Cancel a ** context left by a peel, by a local three-step redisplay."""
    recipes = {
        "succ-left": ("d3", "d8"),
        "succ-right": ("d4", "d8"),
        "ante-right": ("d2", "d7"),
        "ante-left": ("d1", "d7"),
    }
    outer, cancel = recipes[where]
    builder.apply(outer, DOWN).apply(cancel, DOWN).apply(outer, UP)


def _is_double_star(s) -> bool:
    return isinstance(s, Star) and isinstance(s.sub, Star)


def display_steps(calculus: DisplayCalculus, d: DisplaySequent, path: Path) -> Tuple[List[Step], DisplaySequent]:
    """Display-rule steps that make the structure at path an entire side."""
    target = structure_at(d, path)
    builder = DerivationBuilder(calculus, d)
    side, rest = path[0], list(path[1:])
    while rest:
        here = builder.current.side(side)
        index = rest.pop(0)
        if side == 0:
            if isinstance(here, Comp) and index == 0:
                builder.apply("d1")
                if isinstance(here.right, Star):
                    _clean_double_star(builder, "succ-right")
            elif isinstance(here, Comp):
                builder.apply("d2")
                if isinstance(here.left, Star):
                    _clean_double_star(builder, "succ-left")
            elif isinstance(here, Star):
                builder.apply("d5")
                side = 1
                if _is_double_star(builder.current.ante):
                    builder.apply("d7")
            elif isinstance(here, Bullet):
                builder.apply("d9", UP)
        else:
            if isinstance(here, Comp) and index == 0:
                builder.apply("d3")
                if isinstance(here.right, Star):
                    _clean_double_star(builder, "ante-right")
            elif isinstance(here, Comp):
                builder.apply("d4")
                if isinstance(here.left, Star):
                    _clean_double_star(builder, "ante-left")
            elif isinstance(here, Star):
                builder.apply("d6")
                side = 0
                if _is_double_star(builder.current.succ):
                    builder.apply("d8")
            elif isinstance(here, Bullet):
                builder.apply("d9", DOWN)
    result = builder.current
    if result.side(side) != target:
        raise ProofKitError(f"display of {target} in {d} failed")
    return builder.steps, result


def display_at(calculus: DisplayCalculus, d: DisplaySequent, path: Path) -> Tuple[ProofTree, DisplaySequent]:
    """Derivation (open leaf d on top) displaying the substructure at path.

    An a-part ends up as the entire antecedent, a c-part as the entire
    succedent. Only the display rules d1..d9 are used.
    """
    steps, result = display_steps(calculus, d, path)
    expected_side = 0 if polarity(d, path) == A_PART else 1
    if result.side(expected_side) != structure_at(d, path):
        raise ProofKitError("displayed structure landed on the wrong side")
    logger.debug("displayed %s in %d steps", path, len(steps))
    return chain_to_proof(d, steps), result


DISPLAY_ONLY = frozenset(DISPLAY_RULE_NAMES)
