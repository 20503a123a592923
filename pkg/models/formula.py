"""
Formula model for the tense language: atoms, constants, the classical
connectives and the four tense modalities.
"""
from dataclasses import dataclass
from typing import FrozenSet, Iterator


# Binding strength used by the printer; higher binds tighter.
PREC_IMP = 1
PREC_OR = 2
PREC_AND = 3
PREC_UNARY = 4
PREC_ATOM = 5

RESERVED_WORDS = frozenset({"top", "bot", "I", "o", "R"})


class Formula:
    """Base class of the formula AST. Instances are immutable and hashable."""

    precedence = PREC_ATOM

    def length(self) -> int:
        """Recursive length: 1 per atom or constant, +1 per connective."""
        raise NotImplementedError

    def children(self) -> tuple:
        return ()

    def atoms(self) -> FrozenSet[str]:
        """Names of all atoms occurring in the formula."""
        found = set()
        for sub in self.walk():
            if isinstance(sub, Atom):
                found.add(sub.name)
        return frozenset(found)

    def walk(self) -> Iterator["Formula"]:
        """Pre-order traversal over all subformula occurrences."""
        stack = [self]
        while stack:
            current = stack.pop()
            yield current
            stack.extend(reversed(current.children()))

    def pretty(self) -> str:
        """Render with the usual logical symbols."""
        return _render(self, symbolic=True)

    def __str__(self) -> str:
        return _render(self, symbolic=False)


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def length(self) -> int:
        return 1

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"Atom({self.name!r})"


@dataclass(frozen=True)
class Top(Formula):
    def length(self) -> int:
        return 1

    def __str__(self) -> str:
        return "top"


@dataclass(frozen=True)
class Bot(Formula):
    def length(self) -> int:
        return 1

    def __str__(self) -> str:
        return "bot"


@dataclass(frozen=True)
class _Unary(Formula):
    sub: Formula

    precedence = PREC_UNARY
    ascii_op = ""
    symbol = ""

    def length(self) -> int:
        return self.sub.length() + 1

    def children(self) -> tuple:
        return (self.sub,)

    def __str__(self) -> str:
        return _render(self, symbolic=False)


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    ascii_op = ""
    symbol = ""
    right_assoc = False

    def length(self) -> int:
        return self.left.length() + self.right.length() + 1

    def children(self) -> tuple:
        return (self.left, self.right)

    def __str__(self) -> str:
        return _render(self, symbolic=False)


class Not(_Unary):
    ascii_op = "~"
    symbol = "¬"


class BoxF(_Unary):
    """Future box, written [F]A."""
    ascii_op = "[F]"
    symbol = "□"


class DiaF(_Unary):
    """Future diamond, written <F>A."""
    ascii_op = "<F>"
    symbol = "◊"


class BoxP(_Unary):
    """Past box, written [P]A."""
    ascii_op = "[P]"
    symbol = "■"


class DiaP(_Unary):
    """Past diamond, written <P>A."""
    ascii_op = "<P>"
    symbol = "♦"


class And(_Binary):
    precedence = PREC_AND
    ascii_op = "&"
    symbol = "∧"


class Or(_Binary):
    precedence = PREC_OR
    ascii_op = "|"
    symbol = "∨"


class Imp(_Binary):
    precedence = PREC_IMP
    ascii_op = "->"
    symbol = "→"
    right_assoc = True


TOP = Top()
BOT = Bot()

UNARY_BY_OP = {cls.ascii_op: cls for cls in (Not, BoxF, DiaF, BoxP, DiaP)}
BINARY_BY_OP = {cls.ascii_op: cls for cls in (And, Or, Imp)}


def _render(f: Formula, symbolic: bool) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "⊤" if symbolic else "top"
    if isinstance(f, Bot):
        return "⊥" if symbolic else "bot"
    if isinstance(f, _Unary):
        inner = _render(f.sub, symbolic)
        if f.sub.precedence < PREC_UNARY:
            inner = f"({inner})"
        return (f.symbol if symbolic else f.ascii_op) + inner
    if isinstance(f, _Binary):
        left = _render(f.left, symbolic)
        right = _render(f.right, symbolic)
        # Associativity decides which side of an equal-precedence child needs parens.
        if f.left.precedence < f.precedence or (
                f.left.precedence == f.precedence and f.right_assoc):
            left = f"({left})"
        if f.right.precedence < f.precedence or (
                f.right.precedence == f.precedence and not f.right_assoc):
            right = f"({right})"
        op = f.symbol if symbolic else f.ascii_op
        return f"{left} {op} {right}"
    raise TypeError(f"not a formula: {f!r}")


def formula_length(f: Formula) -> int:
    """Length of a formula: atoms and constants count 1, each connective adds 1."""
    return f.length()


def conjunction(parts) -> Formula:
    """Left-nested conjunction of the given formulas; top when empty."""
    parts = list(parts)
    if not parts:
        return TOP
    result = parts[0]
    for part in parts[1:]:
        result = And(result, part)
    return result


def disjunction(parts) -> Formula:
    """Left-nested disjunction of the given formulas; bot when empty."""
    parts = list(parts)
    if not parts:
        return BOT
    result = parts[0]
    for part in parts[1:]:
        result = Or(result, part)
    return result
