"""
Primitive tense axioms: grammar validation and normalization into
simplified axioms A -> B1 | ... | Bm.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .errors import AxiomError
from .formula import (And, Atom, DiaF, DiaP, Formula, Imp, Or, Top,
                      disjunction)

logger = logging.getLogger(__name__)


# Well-known axioms, keyed by their usual names.
STANDARD_AXIOMS: Dict[str, str] = {
    "T": "p -> <F>p",
    "4": "<F><F>p -> <F>p",
    "5": "<P><F>p -> <F>p",
}


@dataclass(frozen=True)
class PrimitiveAxiom:
    """A simplified primitive tense axiom A -> B1 | ... | Bm."""
    antecedent: Formula
    succedents: Tuple[Formula, ...]

    def formula(self) -> Formula:
        return Imp(self.antecedent, disjunction(self.succedents))

    def atoms(self):
        return self.antecedent.atoms()

    def __str__(self) -> str:
        return str(self.formula())


def is_primitive_formula(f: Formula, allow_or: bool = False) -> bool:
    """True iff f is built from atoms, top, &, <F>, <P> (and | if allowed)."""
    return _offending(f, allow_or) is None


def _offending(f: Formula, allow_or: bool):
    for sub in f.walk():
        if isinstance(sub, (Atom, Top, And, DiaF, DiaP)):
            continue
        if allow_or and isinstance(sub, Or):
            continue
        return sub
    return None


def _atom_occurrences(f: Formula) -> Counter:
    return Counter(sub.name for sub in f.walk() if isinstance(sub, Atom))


def _check_linear(antecedent: Formula) -> None:
    repeated = sorted(name for name, count in _atom_occurrences(antecedent).items() if count > 1)
    if repeated:
        raise AxiomError(f"antecedent {antecedent} contains atom(s) {', '.join(repeated)} more than once",
                         clause="atom-linearity")


def _split_disjuncts(f: Formula) -> List[Formula]:
    if isinstance(f, Or):
        return _split_disjuncts(f.left) + _split_disjuncts(f.right)
    return [f]


def check_primitive(f: Formula) -> Tuple[Formula, Formula]:
    """Grammar check for (not necessarily simplified) primitive tense axioms."""
    if not isinstance(f, Imp):
        raise AxiomError(f"{f} is not an implication", clause="implication")
    for side, part in (("antecedent", f.left), ("succedent", f.right)):
        bad = _offending(part, allow_or=True)
        if bad is not None:
            raise AxiomError(f"{side} contains {bad}, which is outside the primitive grammar",
                             clause="grammar")
    _check_linear(f.left)
    return f.left, f.right


def validate_primitive_axiom(f: Formula) -> PrimitiveAxiom:
    """Accept f if it is a simplified primitive tense axiom.

    Raises:
        AxiomError: naming the violated clause; a primitive axiom that
            still contains | below the top-level disjunction is rejected
            with clause "simplified" and must go through normalize_axiom.
    """
    antecedent, succedent = check_primitive(f)
    if not is_primitive_formula(antecedent):
        raise AxiomError(f"antecedent {antecedent} contains a disjunction", clause="simplified")
    disjuncts = _split_disjuncts(succedent)
    for disjunct in disjuncts:
        if not is_primitive_formula(disjunct):
            raise AxiomError(f"succedent disjunct {disjunct} contains a nested disjunction",
                             clause="simplified")
    return PrimitiveAxiom(antecedent, tuple(disjuncts))


def _distribute(f: Formula) -> List[Formula]:
    """Disjuncts of f after pushing | outwards through &, <F> and <P>."""
    if isinstance(f, Or):
        return _distribute(f.left) + _distribute(f.right)
    if isinstance(f, And):
        return [And(a, b) for a in _distribute(f.left) for b in _distribute(f.right)]
    if isinstance(f, DiaF):
        return [DiaF(a) for a in _distribute(f.sub)]
    if isinstance(f, DiaP):
        return [DiaP(a) for a in _distribute(f.sub)]
    return [f]


def _dedupe(items: List[Formula]) -> List[Formula]:
    seen = set()
    result = []
    for item in items:
        if item not in seen:
            seen.add(item)
            result.append(item)
    return result


def normalize_axiom(f: Formula) -> List[PrimitiveAxiom]:
    """Rewrite a primitive tense axiom (or a conjunction of them) into
    simplified axioms whose conjunction is equivalent to f.

    Rewrites used: (A|B)->C splits into A->C and B->C; <F>(A|B) and
    <P>(A|B) distribute; D&(A|B) distributes; | in succedents is
    flattened and duplicate disjuncts dropped.
    """
    if isinstance(f, And):
        return normalize_axiom(f.left) + normalize_axiom(f.right)
    antecedent, succedent = check_primitive(f)
    succedents = tuple(_dedupe(_distribute(succedent)))
    result = []
    for part in _dedupe(_distribute(antecedent)):
        _check_linear(part)
        result.append(PrimitiveAxiom(part, succedents))
    logger.debug("normalized %s into %d simplified axiom(s)", f, len(result))
    return result
