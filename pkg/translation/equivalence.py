"""
Derivations between display sequents with isomorphic labeled readings.

Every display sequent is taken, by reversible rules only, to a normal
form X |- I in which X is a sorted left-associated list of pieces at one
root label:

    A            an antecedent formula at the root
    *B           a succedent formula at the root
    *@*Y         a child of the root, Y its subtree in normal form
    @Y           a parent of the root, Y its subtree in normal form

with the root moved to the label of least rooted code. Two sequents
with isomorphic labeled readings have the same normal form, so the
derivation from one to the other is one normalization followed by the
reverse of the other.
"""
import logging
from typing import Callable, List, Optional, Tuple

import networkx as nx

from models.display_proof import (DerivationBuilder, Step, chain_to_proof,
                                  display_steps, reverse_chain)
from models.display_rules import DisplayCalculus
from models.errors import TranslationError
from models.labeled_sequent import (LabeledSequent, isomorphic, neighbours,
                                    rooted_code, subpolytree)
from models.proof_tree import DOWN, UP, ProofTree
from models.structure import (I, Bullet, Comp, DisplaySequent, Fml, IStruct,
                              Star, Structure, chain, star_bullet_star)
from utils.path_finder import PathFinder, label_graph

from .notation import (DEFAULT_ROOT, antecedent_structure, succedent_structure,
                       to_display, to_labeled)

logger = logging.getLogger(__name__)

Path = Tuple[int, ...]
Action = Callable[[DerivationBuilder], None]


# --- pieces -------------------------------------------------------------

def _is_sbs(s: Structure) -> bool:
    return isinstance(s, Star) and isinstance(s.sub, Bullet) and isinstance(s.sub.sub, Star)


def _rank(piece: Structure) -> int:
    if isinstance(piece, Fml):
        return 0
    if isinstance(piece, Star) and isinstance(piece.sub, Fml):
        return 1
    if _is_sbs(piece):
        return 2
    return 3


def piece_key(piece: Structure) -> Tuple[int, str]:
    return _rank(piece), str(piece)


def pieces_of(s: Structure) -> Optional[List[Structure]]:
    """The pieces of a left-associated list, or None if s is not one."""
    if isinstance(s, IStruct):
        return []
    pieces = []
    while isinstance(s, Comp):
        if isinstance(s.right, (Comp, IStruct)):
            return None
        pieces.append(s.right)
        s = s.left
    if isinstance(s, IStruct):
        return None
    pieces.append(s)
    return pieces[::-1]


def _normal_piece(piece: Structure) -> bool:
    if isinstance(piece, Fml):
        return True
    if isinstance(piece, Star) and isinstance(piece.sub, Fml):
        return True
    if _is_sbs(piece):
        return is_normal(piece.sub.sub.sub)
    if isinstance(piece, Bullet):
        return is_normal(piece.sub)
    return False


def is_normal(s: Structure) -> bool:
    pieces = pieces_of(s)
    if pieces is None or not all(_normal_piece(p) for p in pieces):
        return False
    keys = [piece_key(p) for p in pieces]
    return keys == sorted(keys)


def normal_structure(s: LabeledSequent, w: str) -> Structure:
    """The normal-form structure of a polytree sequent read at w."""
    return chain(piece for piece, _ in labeled_pieces(s, w))


def labeled_pieces(s: LabeledSequent, w: str) -> List[Tuple[Structure, Optional[str]]]:
    """Sorted pieces at w, each with the neighbour label it stands for."""
    ante, succ = s.restrict(w)
    pieces: List[Tuple[Structure, Optional[str]]] = [(Fml(f), None) for f in ante]
    pieces += [(Star(Fml(f)), None) for f in succ]
    children, parents = neighbours(s, w)
    pieces += [(star_bullet_star(normal_structure(subpolytree(s, u, w), u)), u) for u in children]
    pieces += [(Bullet(normal_structure(subpolytree(s, v, w), v)), v) for v in parents]
    pieces.sort(key=lambda item: piece_key(item[0]))
    return pieces


def piece_path(count: int, index: int) -> Path:
    """Position of piece index in an antecedent list of count pieces."""
    if count == 1:
        return (0,)
    return (0,) + (0,) * (count - 1 - index) + ((1,) if index > 0 else ())


# --- the normalizer -----------------------------------------------------

class Normalizer:
    """Drives a DerivationBuilder to the normal form using reversible rules."""

    def __init__(self, calculus: Optional[DisplayCalculus] = None):
        self.calculus = calculus or DisplayCalculus.for_axioms(())

    def focus(self, b: DerivationBuilder, path: Path, action: Action) -> None:
        """Display the structure at path, run action on it, then undo the display."""
        steps, _ = display_steps(self.calculus, b.current, path)
        b.extend(steps)
        action(b)
        for step in reversed(steps):
            b.apply(step.rule, UP if step.direction == DOWN else DOWN)

    def normalize_antecedent(self, b: DerivationBuilder) -> None:
        s = b.current.ante
        if is_normal(s):
            return
        if isinstance(s, Comp):
            if not is_normal(s.left):
                self.focus(b, (0, 0), self.normalize_antecedent)
            if not is_normal(s.right):
                self.focus(b, (0, 1), self.normalize_antecedent)
            self.merge(b)
        elif isinstance(s, Bullet):
            self.focus(b, (0, 0), self.normalize_antecedent)
        elif isinstance(s, Star):
            self._normalize_star(b, s.sub)

    def _normalize_star(self, b: DerivationBuilder, t: Structure) -> None:
        if isinstance(t, IStruct):
            b.apply("ql", UP)
        elif isinstance(t, Star):
            b.apply("d7")
            self.normalize_antecedent(b)
        elif isinstance(t, Comp):
            # *(X o Y) |- Z  becomes  *Y o *X |- Z
            b.apply("d5").apply("d4").apply("d3", UP).apply("d4")
            self.normalize_antecedent(b)
        elif isinstance(t, Bullet):
            if not isinstance(t.sub, Star):
                self.focus(b, (0, 0, 0), lambda inner: inner.apply("d8", UP))
            self.focus(b, (0, 0, 0, 0), self.normalize_antecedent)

    def merge(self, b: DerivationBuilder) -> None:
        """Merge X o Y, both normal, into one sorted list."""
        s = b.current.ante
        if isinstance(s.right, IStruct):
            b.apply("pl").apply("Il", UP)
        elif isinstance(s.left, IStruct):
            b.apply("Il", UP)
        elif isinstance(s.right, Comp):
            b.apply("al")
            self.focus(b, (0, 0), self.merge)
            self.insert(b)
        else:
            self.insert(b)

    def insert(self, b: DerivationBuilder) -> None:
        """Sink the last piece of a list whose prefix is sorted."""
        s = b.current.ante
        last = piece_key(s.right)
        if not isinstance(s.left, Comp):
            if piece_key(s.left) > last:
                b.apply("pl")
            return
        if piece_key(s.left.right) <= last:
            return
        b.apply("al", UP)
        self.focus(b, (0, 1), lambda inner: inner.apply("pl"))
        b.apply("al")
        self.focus(b, (0, 0), self.insert)

    def reroot(self, b: DerivationBuilder, index: int) -> None:
        """Make the neighbour behind piece index the new root."""
        pieces = pieces_of(b.current.ante)
        steps, _ = display_steps(self.calculus, b.current, piece_path(len(pieces), index))
        b.extend(steps)
        if isinstance(pieces[index], Bullet):
            b.apply("d9", UP).apply("Ir").apply("d3")
        else:
            b.apply("d5").apply("d9").apply("d6").apply("Ir").apply("d1", UP)
        self.normalize_antecedent(b)

    def run(self, d: DisplaySequent) -> DerivationBuilder:
        b = DerivationBuilder(self.calculus, d)
        if d.succ != I:
            b.apply("Ir").apply("d3")
        self.normalize_antecedent(b)
        hops = 0
        while True:
            s = to_labeled(b.current, DEFAULT_ROOT)
            if s.is_empty():
                break
            codes = {x: rooted_code(s, x) for x in s.labels()}
            best = min(codes.values())
            if codes[DEFAULT_ROOT] == best:
                break
            distances = nx.single_source_shortest_path_length(label_graph(s), DEFAULT_ROOT)
            target = min((distances[x], x) for x in codes if codes[x] == best)[1]
            _, hop, _ = PathFinder.oriented_path(s, DEFAULT_ROOT, target)[0]
            pieces = labeled_pieces(s, DEFAULT_ROOT)
            if chain(p for p, _ in pieces) != b.current.ante:
                raise TranslationError(f"{b.current} is not in normal form")
            index = next(i for i, (_, label) in enumerate(pieces) if label == hop)
            self.reroot(b, index)
            hops += 1
        logger.debug("normalized %s in %d steps (%d re-rootings)", d, len(b.steps), hops)
        return b


def normalize(d: DisplaySequent, calculus: Optional[DisplayCalculus] = None) -> Tuple[List[Step], DisplaySequent]:
    """Reversible steps taking d to its normal form, and the normal form."""
    b = Normalizer(calculus).run(d)
    return b.steps, b.current


def equivalence_steps(first: DisplaySequent, second: DisplaySequent,
                      calculus: Optional[DisplayCalculus] = None) -> List[Step]:
    """Reversible steps from first to second; they must read isomorphically."""
    if first == second:
        return []
    down, normal_first = normalize(first, calculus)
    up, normal_second = normalize(second, calculus)
    if normal_first != normal_second:
        raise TranslationError(f"{first} and {second} do not have isomorphic labeled readings")
    return down + reverse_chain(up)


def derive_equivalence(first: DisplaySequent, second: DisplaySequent,
                       calculus: Optional[DisplayCalculus] = None,
                       top: Optional[ProofTree] = None) -> ProofTree:
    """Derivation of second from first (an open leaf unless top is given)."""
    return chain_to_proof(first, equivalence_steps(first, second, calculus), top)


def derive_partition_invariance(s: LabeledSequent, w: str, first: Optional[LabeledSequent],
                                second: Optional[LabeledSequent],
                                calculus: Optional[DisplayCalculus] = None) -> ProofTree:
    """Derivation between the readings of s under two partitions at w."""
    return derive_equivalence(to_display(s, w, first), to_display(s, w, second), calculus)


def derive_toggle(s: LabeledSequent, w: str, side: str = "ante", context: Structure = I,
                  reverse: bool = False, calculus: Optional[DisplayCalculus] = None) -> ProofTree:
    """Trade the antecedent reading of s for the starred succedent one.

    On the antecedent side this derives *D2 |- context from D1 |- context;
    on the succedent side context |- *D1 from context |- D2. reverse
    swaps the two ends.
    """
    d1, d2 = antecedent_structure(s, w), succedent_structure(s, w)
    if side == "ante":
        pair = DisplaySequent(d1, context), DisplaySequent(Star(d2), context)
    elif side == "succ":
        pair = DisplaySequent(context, d2), DisplaySequent(context, Star(d1))
    else:
        raise TranslationError(f"unknown side {side!r}")
    first, second = pair[::-1] if reverse else pair
    return derive_equivalence(first, second, calculus)


def derive_root_relabel(s: LabeledSequent, source: str, target: str,
                        source_partition: Optional[LabeledSequent] = None,
                        target_partition: Optional[LabeledSequent] = None,
                        calculus: Optional[DisplayCalculus] = None) -> ProofTree:
    """Derivation of the reading of s at target from its reading at source."""
    return derive_equivalence(to_display(s, source, source_partition),
                              to_display(s, target, target_partition), calculus)


def readings_isomorphic(first: DisplaySequent, second: DisplaySequent) -> bool:
    return isomorphic(to_labeled(first), to_labeled(second)) is not None
