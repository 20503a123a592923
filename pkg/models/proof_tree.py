"""
Proof trees shared by both calculi, plus the quantity/width/size metrics
and the verdict object returned by the checkers.
"""
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

from pydantic import BaseModel

# Rule name of an open leaf in a derivation fragment.
OPEN = "open"

DOWN = "down"
UP = "up"


@dataclass
class ProofTree:
    """A proof node: rule name, substitution, conclusion and premise subtrees.

    The sequent type is either DisplaySequent or LabeledSequent.
    """
    rule: str
    conclusion: Any
    premises: List["ProofTree"] = field(default_factory=list)
    subst: Dict[str, Any] = field(default_factory=dict)
    direction: str = DOWN

    def is_open(self) -> bool:
        return self.rule == OPEN

    def walk(self, path: Tuple[int, ...] = ()) -> Iterator[Tuple[Tuple[int, ...], "ProofTree"]]:
        """Pre-order (path, node) pairs; a path lists premise indices from the root."""
        stack = [(path, self)]
        while stack:
            current_path, node = stack.pop()
            yield current_path, node
            for index in reversed(range(len(node.premises))):
                stack.append((current_path + (index,), node.premises[index]))

    def nodes(self) -> List["ProofTree"]:
        return [node for _, node in self.walk()]

    def open_leaves(self) -> List["ProofTree"]:
        return [node for node in self.nodes() if node.is_open()]

    def rules_used(self) -> set:
        return {node.rule for node in self.nodes() if not node.is_open()}

    def height(self) -> int:
        if not self.premises:
            return 0
        return 1 + max(p.height() for p in self.premises)


def open_leaf(sequent) -> ProofTree:
    return ProofTree(OPEN, sequent)


def graft(proof: ProofTree, leaf_proof: Callable[[Any], Optional[ProofTree]]) -> ProofTree:
    """Replace open leaves by leaf_proof(sequent) where it returns a tree."""
    if proof.is_open():
        replacement = leaf_proof(proof.conclusion)
        return replacement if replacement is not None else proof
    return ProofTree(proof.rule, proof.conclusion,
                     [graft(p, leaf_proof) for p in proof.premises],
                     dict(proof.subst), proof.direction)


class Metrics(BaseModel):
    quantity: int
    width: int
    size: int


def proof_metrics(proof: ProofTree) -> Metrics:
    """quantity = number of sequents, width = longest sequent, size = product."""
    lengths = [node.conclusion.length() for node in proof.nodes()]
    quantity = len(lengths)
    width = max(lengths)
    return Metrics(quantity=quantity, width=width, size=quantity * width)


class CheckResult(BaseModel):
    """Outcome of checking a proof; path is the first failing node."""
    ok: bool
    message: str = ""
    path: List[int] = []
    rule: str = ""
    metrics: Optional[Metrics] = None
    notes: List[str] = []

    def __bool__(self) -> bool:
        return self.ok
