"""
Display structures and display sequents.

A structure is built from formulas and the empty structure I with the
structural connectives * (negation), @ (bullet) and o (composition).
Positions inside a display sequent are tuples: the first entry selects
the antecedent (0) or the succedent (1), every further entry selects a
child (0 for the operand of * and @, 0/1 for the sides of o).
"""
from dataclasses import dataclass
from typing import Iterator, List, Set, Tuple

from .errors import ProofKitError
from .formula import (BOT, TOP, And, BoxF, DiaP, Formula, Imp, Not, Or,
                      _Binary)


Path = Tuple[int, ...]

A_PART = "a-part"
C_PART = "c-part"


class Structure:
    """Base class of display structures."""

    def length(self) -> int:
        raise NotImplementedError

    def children(self) -> tuple:
        return ()

    def with_children(self, children: tuple) -> "Structure":
        return self

    def walk(self) -> Iterator["Structure"]:
        stack = [self]
        while stack:
            current = stack.pop()
            yield current
            stack.extend(reversed(current.children()))

    def formulas(self) -> List[Formula]:
        return [s.formula for s in self.walk() if isinstance(s, Fml)]


@dataclass(frozen=True)
class Fml(Structure):
    formula: Formula

    def length(self) -> int:
        return 1

    def __str__(self) -> str:
        if isinstance(self.formula, _Binary):
            return f"({self.formula})"
        return str(self.formula)


@dataclass(frozen=True)
class IStruct(Structure):
    """The empty structure I."""

    def length(self) -> int:
        return 1

    def __str__(self) -> str:
        return "I"


@dataclass(frozen=True)
class Star(Structure):
    sub: Structure

    def length(self) -> int:
        return self.sub.length() + 1

    def children(self) -> tuple:
        return (self.sub,)

    def with_children(self, children: tuple) -> Structure:
        return Star(children[0])

    def __str__(self) -> str:
        return "*" + _wrap(self.sub)


@dataclass(frozen=True)
class Bullet(Structure):
    sub: Structure

    def length(self) -> int:
        return self.sub.length() + 1

    def children(self) -> tuple:
        return (self.sub,)

    def with_children(self, children: tuple) -> Structure:
        return Bullet(children[0])

    def __str__(self) -> str:
        return "@" + _wrap(self.sub)


@dataclass(frozen=True)
class Comp(Structure):
    left: Structure
    right: Structure

    def length(self) -> int:
        return self.left.length() + self.right.length() + 1

    def children(self) -> tuple:
        return (self.left, self.right)

    def with_children(self, children: tuple) -> Structure:
        return Comp(children[0], children[1])

    def __str__(self) -> str:
        return f"{self.left} o {_wrap(self.right)}"


I = IStruct()


def _wrap(s: Structure) -> str:
    return f"({s})" if isinstance(s, Comp) else str(s)


@dataclass(frozen=True)
class DisplaySequent:
    """A display sequent X |- Y."""
    ante: Structure
    succ: Structure

    def length(self) -> int:
        return self.ante.length() + self.succ.length()

    def side(self, index: int) -> Structure:
        return self.ante if index == 0 else self.succ

    def __str__(self) -> str:
        return f"{self.ante} |- {self.succ}"

    def pretty(self) -> str:
        return str(self).replace("|-", "⊢").replace("*", "∗").replace("@", "•").replace(" o ", " ∘ ")


def chain(parts) -> Structure:
    """Left-associated composition of the given structures; I when empty."""
    parts = list(parts)
    if not parts:
        return I
    result = parts[0]
    for part in parts[1:]:
        result = Comp(result, part)
    return result


def star_bullet_star(s: Structure) -> Structure:
    return Star(Bullet(Star(s)))


# --- formula translation -------------------------------------------------

def tau1(s: Structure) -> Formula:
    if isinstance(s, Fml):
        return s.formula
    if isinstance(s, IStruct):
        return TOP
    if isinstance(s, Star):
        return Not(tau2(s.sub))
    if isinstance(s, Bullet):
        return DiaP(tau1(s.sub))
    if isinstance(s, Comp):
        return And(tau1(s.left), tau1(s.right))
    raise TypeError(f"not a structure: {s!r}")


def tau2(s: Structure) -> Formula:
    if isinstance(s, Fml):
        return s.formula
    if isinstance(s, IStruct):
        return BOT
    if isinstance(s, Star):
        return Not(tau1(s.sub))
    if isinstance(s, Bullet):
        return BoxF(tau2(s.sub))
    if isinstance(s, Comp):
        return Or(tau2(s.left), tau2(s.right))
    raise TypeError(f"not a structure: {s!r}")


def tau(d: DisplaySequent) -> Formula:
    """Formula interpretation of a display sequent."""
    return Imp(tau1(d.ante), tau2(d.succ))


# --- substructures and positions ----------------------------------------

def substructures(s: Structure) -> Set[Structure]:
    """All substructures of s, including s itself; formulas are not decomposed."""
    return set(s.walk())


def positions(d: DisplaySequent) -> Iterator[Path]:
    """Every position in d, in pre-order, starting with the two sides."""
    for side in (0, 1):
        stack: List[Tuple[Path, Structure]] = [((side,), d.side(side))]
        while stack:
            path, current = stack.pop()
            yield path
            kids = current.children()
            for index in reversed(range(len(kids))):
                stack.append((path + (index,), kids[index]))


def structure_at(d: DisplaySequent, path: Path) -> Structure:
    if not path or path[0] not in (0, 1):
        raise ProofKitError(f"invalid position {path!r}")
    current = d.side(path[0])
    for step in path[1:]:
        kids = current.children()
        if step >= len(kids):
            raise ProofKitError(f"invalid position {path!r} in {d}")
        current = kids[step]
    return current


def replace_at(d: DisplaySequent, path: Path, new: Structure) -> DisplaySequent:
    """Return d with the structure at path replaced by new."""
    structure_at(d, path)

    def rebuild(current: Structure, rest: Path) -> Structure:
        if not rest:
            return new
        kids = list(current.children())
        kids[rest[0]] = rebuild(kids[rest[0]], rest[1:])
        return current.with_children(tuple(kids))

    if path[0] == 0:
        return DisplaySequent(rebuild(d.ante, path[1:]), d.succ)
    return DisplaySequent(d.ante, rebuild(d.succ, path[1:]))


def polarity(d: DisplaySequent, path: Path) -> str:
    """a-part or c-part: antecedent side flipped once per enclosing *."""
    structure_at(d, path)
    stars = 0
    current = d.side(path[0])
    for step in path[1:]:
        if isinstance(current, Star):
            stars += 1
        current = current.children()[step]
    antecedent = (path[0] == 0) == (stars % 2 == 0)
    return A_PART if antecedent else C_PART


def find_position(d: DisplaySequent, target: Structure) -> Path:
    """First position (pre-order) holding the given structure."""
    for path in positions(d):
        if structure_at(d, path) == target:
            return path
    raise ProofKitError(f"{target} does not occur in {d}")
