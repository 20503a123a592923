"""
Notational translations between the two sequent languages.

to_labeled reads a display sequent as a labeled polytree sequent rooted
at a given label: antecedent material goes to the left of the arrow,
succedent material to the right, and every bullet opens a new label
connected to the current one. to_display goes the other way, splitting
a polytree sequent at its root into an antecedent part and a succedent
part and reading each part as one structure.
"""
import logging
from typing import Callable, List, Optional

from models.errors import PolytreeError, TranslationError
from models.labeled_sequent import (EMPTY, FreshLabels, LabeledFormula,
                                    LabeledSequent, RelAtom, compose,
                                    neighbours, require_polytree, rooted_code,
                                    subpolytree, w_partition)
from models.structure import (Bullet, Comp, DisplaySequent, Fml, IStruct,
                              Star, Structure, chain, star_bullet_star)

from utils.config import DEFAULT_ROOT

logger = logging.getLogger(__name__)


# --- display -> labeled -------------------------------------------------

def to_labeled(d: DisplaySequent, root: str = DEFAULT_ROOT,
               fresh: Optional[FreshLabels] = None) -> LabeledSequent:
    """The labeled polytree sequent of d rooted at root.

    Fresh labels come from fresh (a new allocator avoiding root when
    omitted), in left-to-right order of the bullets in d.
    """
    fresh = fresh or FreshLabels({root})
    fresh.reserve({root})
    return compose(_antecedent(d.ante, root, fresh), _succedent(d.succ, root, fresh))


def structure_to_labeled(s: Structure, root: str, antecedent: bool = True,
                         fresh: Optional[FreshLabels] = None) -> LabeledSequent:
    """The labeled sequent of one structure read on either side."""
    fresh = fresh or FreshLabels({root})
    fresh.reserve({root})
    return (_antecedent if antecedent else _succedent)(s, root, fresh)


def _antecedent(s: Structure, w: str, fresh: Callable[[], str]) -> LabeledSequent:
    if isinstance(s, IStruct):
        return EMPTY
    if isinstance(s, Fml):
        return LabeledSequent(ante=(LabeledFormula(w, s.formula),))
    if isinstance(s, Star):
        return _succedent(s.sub, w, fresh)
    if isinstance(s, Bullet):
        # the new label is a parent of w
        u = fresh()
        return compose(LabeledSequent(frozenset({RelAtom(u, w)})), _antecedent(s.sub, u, fresh))
    if isinstance(s, Comp):
        return compose(_antecedent(s.left, w, fresh), _antecedent(s.right, w, fresh))
    raise TranslationError(f"not a structure: {s!r}")


def _succedent(s: Structure, w: str, fresh: Callable[[], str]) -> LabeledSequent:
    if isinstance(s, IStruct):
        return EMPTY
    if isinstance(s, Fml):
        return LabeledSequent(succ=(LabeledFormula(w, s.formula),))
    if isinstance(s, Star):
        return _antecedent(s.sub, w, fresh)
    if isinstance(s, Bullet):
        # the new label is a child of w
        v = fresh()
        return compose(LabeledSequent(frozenset({RelAtom(w, v)})), _succedent(s.sub, v, fresh))
    if isinstance(s, Comp):
        return compose(_succedent(s.left, w, fresh), _succedent(s.right, w, fresh))
    raise TranslationError(f"not a structure: {s!r}")


# --- labeled -> display -------------------------------------------------

def to_display(s: LabeledSequent, root: str,
               partition: Optional[LabeledSequent] = None) -> DisplaySequent:
    """The display sequent of a polytree sequent at root.

    partition lists the items of the succedent-side part of the
    root-partition; by default everything goes to the antecedent side.
    """
    require_polytree(s)
    if not s.is_empty() and root not in s.labels():
        raise PolytreeError(f"label {root} does not occur in {s}")
    first, second = w_partition(s, root, partition if partition is not None else EMPTY)
    return DisplaySequent(antecedent_structure(first, root), succedent_structure(second, root))


def _formulas_at(s: LabeledSequent, w: str):
    ante, succ = s.restrict(w)
    return chain(Fml(f) for f in ante), chain(Fml(f) for f in succ)


def _ordered(s: LabeledSequent, labels: List[str], w: str):
    subs = [(u, subpolytree(s, u, w)) for u in labels]
    subs.sort(key=lambda item: (rooted_code(item[1], item[0]), item[0]))
    return subs


def antecedent_structure(s: LabeledSequent, w: str) -> Structure:
    """Read a polytree sequent at w as an antecedent structure."""
    gamma, delta = _formulas_at(s, w)
    parts = [gamma, Star(delta)]
    children, parents = neighbours(s, w)
    for u, sub in _ordered(s, children, w):
        parts.append(star_bullet_star(antecedent_structure(sub, u)))
    for v, sub in _ordered(s, parents, w):
        parts.append(Bullet(antecedent_structure(sub, v)))
    return chain(parts)


def succedent_structure(s: LabeledSequent, w: str) -> Structure:
    """Read a polytree sequent at w as a succedent structure."""
    gamma, delta = _formulas_at(s, w)
    parts = [Star(gamma), delta]
    children, parents = neighbours(s, w)
    for u, sub in _ordered(s, children, w):
        parts.append(Bullet(succedent_structure(sub, u)))
    for v, sub in _ordered(s, parents, w):
        parts.append(star_bullet_star(succedent_structure(sub, v)))
    return chain(parts)


def round_trip(d: DisplaySequent, root: str = DEFAULT_ROOT) -> DisplaySequent:
    """to_display after to_labeled, with the default partition."""
    return to_display(to_labeled(d, root), root)


__all__ = ["DEFAULT_ROOT", "to_labeled", "to_display", "structure_to_labeled",
           "antecedent_structure", "succedent_structure", "round_trip"]
