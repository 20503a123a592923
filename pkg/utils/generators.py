"""
Seeded random generation: formulas, structures, polytree sequents,
display proofs, strict labeled proofs, pt instances, and structural
augmentation of labeled proofs for the elimination suites.

Everything draws from the random.Random passed in, so a seed fixes the
output.
"""
import copy
import logging
import random
from typing import Dict, Optional, Sequence, Tuple

from models.display_proof import DerivationBuilder, chain_to_proof, display_steps
from models.display_rules import DisplayCalculus, apply_display_rule, instantiate
from models.errors import ProofKitError, RuleError
from models.formula import (BOT, TOP, And, Atom, BoxF, BoxP, DiaF, DiaP,
                            Formula, Imp, Not, Or)
from models.labeled_proof import structural_step, zip_children
from models.labeled_rules import LabeledCalculus
from models.labeled_sequent import (FreshLabels, LabeledFormula, LabeledSequent,
                                    RelAtom, compose, neighbours, subpolytree)
from models.proof_tree import ProofTree
from models.structure import (A_PART, I, Bullet, Comp, DisplaySequent, Fml,
                              Star, Structure, polarity, positions,
                              structure_at)
from translation.display_to_labeled import DisplayToLabeled
from utils.config import DEFAULT_ROOT, GENERATOR_WEIGHTS

logger = logging.getLogger(__name__)

ATOMS = ("p", "q", "r")

LOGICAL_UNARY = ("neg_l", "neg_r", "and_l", "or_r", "imp_r", "top_l", "bot_r")
MODAL_UNARY = ("boxf_l", "boxf_r", "diaf_l", "diaf_r", "boxp_l", "boxp_r", "diap_l", "diap_r")
BINARY = ("imp_l", "and_r", "or_l")
REVERSIBLE = ("Il", "Ir", "ql", "qr", "al", "ar", "pl", "pr")

_UNARY_FORMULAS = (Not, BoxF, DiaF, BoxP, DiaP)
_BINARY_FORMULAS = (And, Or, Imp)


# --- formulas, structures, sequents -------------------------------------

def random_formula(rng: random.Random, depth: int = 2, atoms: Sequence[str] = ATOMS) -> Formula:
    if depth <= 0 or rng.random() < 0.3:
        roll = rng.random()
        if roll < 0.05:
            return TOP
        if roll < 0.1:
            return BOT
        return Atom(rng.choice(atoms))
    if rng.random() < 0.5:
        return rng.choice(_UNARY_FORMULAS)(random_formula(rng, depth - 1, atoms))
    return rng.choice(_BINARY_FORMULAS)(random_formula(rng, depth - 1, atoms),
                                        random_formula(rng, depth - 1, atoms))


def random_structure(rng: random.Random, depth: int = 2, atoms: Sequence[str] = ATOMS) -> Structure:
    if depth <= 0 or rng.random() < 0.3:
        return I if rng.random() < 0.1 else Fml(random_formula(rng, 1, atoms))
    roll = rng.random()
    if roll < 0.3:
        return Star(random_structure(rng, depth - 1, atoms))
    if roll < 0.6:
        return Bullet(random_structure(rng, depth - 1, atoms))
    return Comp(random_structure(rng, depth - 1, atoms), random_structure(rng, depth - 1, atoms))


def random_display_sequent(rng: random.Random, depth: int = 3, atoms: Sequence[str] = ATOMS) -> DisplaySequent:
    return DisplaySequent(random_structure(rng, depth, atoms), random_structure(rng, depth, atoms))


def random_polytree_sequent(rng: random.Random, size: int = 4, formulas: int = 4,
                            atoms: Sequence[str] = ATOMS, root: str = DEFAULT_ROOT) -> LabeledSequent:
    """A random polytree sequent over size labels, root among them."""
    fresh = FreshLabels({root})
    labels = [root]
    rel = set()
    for _ in range(size - 1):
        anchor, new = rng.choice(labels), fresh()
        rel.add(RelAtom(anchor, new) if rng.random() < 0.5 else RelAtom(new, anchor))
        labels.append(new)
    ante, succ = [], []
    # a lone label needs a formula to occur at all
    count = formulas if size > 1 else max(formulas, 1)
    for index in range(count):
        label = root if index == 0 else rng.choice(labels)
        item = LabeledFormula(label, random_formula(rng, 2, atoms))
        (ante if rng.random() < 0.5 else succ).append(item)
    return LabeledSequent(frozenset(rel), tuple(ante), tuple(succ))


# --- display proofs -----------------------------------------------------

class DisplayProofGenerator:
    """Forward construction of cut-free display proofs.

    Starting from initial sequents, each level applies a weighted random
    rule that fits the current conclusion, displaying a substructure
    first when the rule needs it.
    """

    def __init__(self, rng: random.Random, calculus: DisplayCalculus,
                 weights: Optional[Dict[str, int]] = None, atoms: Sequence[str] = ATOMS,
                 tries: int = 40):
        self.rng = rng
        self.calculus = calculus
        self.weights = dict(weights or GENERATOR_WEIGHTS)
        if not calculus.pt_rules():
            self.weights.pop("pt", None)
        self.atoms = atoms
        self.tries = tries

    def generate(self, depth: int) -> ProofTree:
        if depth <= 0:
            return self._leaf()
        kind = self._kind()
        if kind == "pt":
            proof = self._pt(depth)
        elif kind == "logical" and self.rng.random() < 0.4:
            proof = self._binary(depth)
        else:
            proof = None
        if proof is not None:
            return proof
        below = self.generate(depth - 1)
        if kind in ("logical", "modal"):
            proof = self._unary(below, LOGICAL_UNARY if kind == "logical" else MODAL_UNARY)
        return proof or self._structural(below)

    def _kind(self) -> str:
        kinds = sorted(self.weights)
        return self.rng.choices(kinds, weights=[self.weights[k] for k in kinds])[0]

    def _leaf(self) -> ProofTree:
        roll = self.rng.random()
        if roll < 0.7:
            p = Atom(self.rng.choice(self.atoms))
            return ProofTree("id", DisplaySequent(Fml(p), Fml(p)), [], {"p": p})
        if roll < 0.85:
            return ProofTree("top_r", DisplaySequent(I, Fml(TOP)))
        return ProofTree("bot_l", DisplaySequent(Fml(BOT), I))

    def _unary(self, proof: ProofTree, names: Sequence[str]) -> Optional[ProofTree]:
        d = proof.conclusion
        candidates = [(name, path) for name in names for path in [None] + list(positions(d))]
        self.rng.shuffle(candidates)
        for name, path in candidates[:self.tries]:
            b = DerivationBuilder(self.calculus, d)
            try:
                if path is not None:
                    b.extend(display_steps(self.calculus, d, path)[0])
                b.apply(name)
            except ProofKitError:
                continue
            return b.proof(top=proof)
        return None

    def _structural(self, proof: ProofTree) -> ProofTree:
        d = proof.conclusion
        b = DerivationBuilder(self.calculus, d)
        options = ["wl", "wr", "cl", "cr", "reversible"]
        if d.ante == I:
            options.append("ml")
        if d.succ == I:
            options.append("mr")
        choice = self.rng.choice(options)
        if choice in ("wl", "wr"):
            b.apply(choice, Z=random_structure(self.rng, 1, self.atoms))
        elif choice == "cl":
            b.apply("wl", Z=d.ante).apply("cl")
        elif choice == "cr":
            b.apply("wr", Z=d.succ).apply("cr")
        elif choice in ("ml", "mr"):
            b.apply(choice)
        else:
            names = list(REVERSIBLE)
            self.rng.shuffle(names)
            options = [(name, direction) for name in names for direction in ("down", "up")]
            for name, direction in options:
                try:
                    b.apply(name, direction)
                    break
                except RuleError:
                    continue
        return b.proof(top=proof)

    def _show(self, proof: ProofTree, antecedent: bool) -> Optional[Tuple[ProofTree, DisplaySequent]]:
        """Display a formula of the given polarity as a whole side."""
        d = proof.conclusion
        wanted = [path for path in positions(d) if isinstance(structure_at(d, path), Fml)
                  and (polarity(d, path) == A_PART) == antecedent]
        if not wanted:
            return None
        steps, result = display_steps(self.calculus, d, self.rng.choice(wanted))
        return chain_to_proof(d, steps, proof), result

    def _binary(self, depth: int) -> Optional[ProofTree]:
        name = self.rng.choice(BINARY)
        left, right = self.generate(depth - 1), self.generate(depth - 1)
        if name == "imp_l":
            shown = self._show(left, False), self._show(right, True)
        elif name == "and_r":
            shown = self._show(left, False), self._show(right, False)
        else:
            shown = self._show(left, True), self._show(right, True)
        if None in shown:
            return None
        (lp, ld), (rp, rd) = shown
        if name == "imp_l":
            sub = {"A": ld.succ.formula, "B": rd.ante.formula, "X": ld.ante, "Y": rd.succ}
        elif name == "and_r":
            # weaken each side by the other's context so the two agree
            lb = DerivationBuilder(self.calculus, ld).apply("wl", Z=rd.ante).apply("pl")
            rb = DerivationBuilder(self.calculus, rd).apply("wl", Z=ld.ante)
            lp, rp = lb.proof(top=lp), rb.proof(top=rp)
            sub = {"A": ld.succ.formula, "B": rd.succ.formula, "X": lb.current.ante}
        else:
            lb = DerivationBuilder(self.calculus, ld).apply("wr", Z=rd.succ)
            rb = DerivationBuilder(self.calculus, rd).apply("wr", Z=ld.succ).apply("pr")
            lp, rp = lb.proof(top=lp), rb.proof(top=rp)
            sub = {"A": ld.ante.formula, "B": rd.ante.formula, "Y": lb.current.succ}
        premises, conclusion = apply_display_rule(self.calculus.rule(name), sub)
        if premises != [lp.conclusion, rp.conclusion]:
            raise ProofKitError(f"({name}) premises do not line up")
        return ProofTree(name, conclusion, [lp, rp], sub)

    def _pt(self, depth: int) -> ProofTree:
        """A pt application over weakened copies of one proof."""
        rule = self.rng.choice(self.calculus.pt_rules())
        base = self.generate(depth - 1)
        sub = {name: random_structure(self.rng, 1, self.atoms)
               for name in rule.variables() if name != "X"}
        premises = []
        for pattern in rule.premises:
            b = DerivationBuilder(self.calculus, base.conclusion)
            b.apply("wl", Z=instantiate(pattern.ante, sub)).apply("d1")
            sub["X"] = b.current.succ
            premises.append(b.proof(top=copy.deepcopy(base)))
        expected, conclusion = apply_display_rule(rule, sub)
        if expected != [p.conclusion for p in premises]:
            raise ProofKitError(f"({rule.name}) premises do not line up")
        return ProofTree(rule.name, conclusion, premises, dict(sub))


# --- labeled proofs -----------------------------------------------------

class LabeledProofGenerator:
    """Strict labeled polytree proofs.

    Display proofs are grown forward and translated; eigenlabels and
    strict pt instances come out of the translation, which checks its
    output.
    """

    def __init__(self, rng: random.Random, calculus: LabeledCalculus,
                 weights: Optional[Dict[str, int]] = None):
        self.calculus = calculus
        self.display = DisplayCalculus.for_axioms(calculus.axioms)
        self.source = DisplayProofGenerator(rng, self.display, weights)
        self.translator = DisplayToLabeled(self.display, calculus)

    def generate(self, depth: int) -> ProofTree:
        proof, _ = self.translator.translate(self.source.generate(depth))
        return proof


def augment_structural(proof: ProofTree, rng: random.Random, count: int = 3) -> ProofTree:
    """Insert count structural detours that leave every sequent unchanged.

    A detour is either (w) of a copy of a formula followed by the
    matching contraction, or (w) of a copy of a child subpolytree zipped
    back by (ls) and contractions.
    """
    proof = copy.deepcopy(proof)
    nodes = [node for _, node in proof.walk()]
    fresh = FreshLabels(set().union(*(n.conclusion.labels() for n in nodes)), prefix="a")
    for _ in range(count):
        target = rng.choice(nodes)
        if not target.premises:
            continue
        index = rng.randrange(len(target.premises))
        premise = target.premises[index]
        steps = _detour(premise.conclusion, rng, fresh)
        node = premise
        for step in steps:
            node = step.node(node)
        target.premises[index] = node
    return proof


def _detour(s: LabeledSequent, rng: random.Random, fresh: FreshLabels):
    children = [(x, u) for x in sorted(s.labels()) for u in neighbours(s, x)[0]]
    if children and rng.random() < 0.5:
        x, u = rng.choice(children)
        branch = subpolytree(s, u, x)
        mapping = {label: fresh() for label in sorted(branch.labels())}
        added = compose(LabeledSequent(frozenset({RelAtom(x, mapping[u])})), branch.rename(mapping))
        widened = structural_step("w", s, added=added)
        return [widened] + zip_children(widened.after, x, u, mapping[u])
    items = [("c_l", lf) for lf in s.ante] + [("c_r", lf) for lf in s.succ]
    if not items:
        return []
    kind, item = rng.choice(items)
    added = LabeledSequent(ante=(item,)) if kind == "c_l" else LabeledSequent(succ=(item,))
    widened = structural_step("w", s, added=added)
    return [widened, structural_step(kind, widened.after, label=item.label, formula=item.formula)]


# --- pt instances -------------------------------------------------------

def random_pt_instance(rng: random.Random, calculus: DisplayCalculus,
                       name: Optional[str] = None) -> Tuple[str, Dict[str, Structure]]:
    """A pt rule name and a total display substitution for it."""
    rule = calculus.rule(name) if name else rng.choice(calculus.pt_rules())
    sub = {var: random_structure(rng, 2) for var in rule.variables()}
    return rule.name, sub


# --- entry point for the CLI --------------------------------------------

def generate_proof(seed: int, depth: int, calculus: str, axioms=()) -> ProofTree:
    """Deterministic proof for a seed: calculus is dkt or g3kt."""
    rng = random.Random(seed)
    if calculus == "dkt":
        return DisplayProofGenerator(rng, DisplayCalculus.for_axioms(axioms)).generate(depth)
    return LabeledProofGenerator(rng, LabeledCalculus.for_axioms(axioms)).generate(depth)


__all__ = ["random_formula", "random_structure", "random_display_sequent",
           "random_polytree_sequent", "DisplayProofGenerator", "LabeledProofGenerator",
           "augment_structural", "random_pt_instance", "generate_proof"]
