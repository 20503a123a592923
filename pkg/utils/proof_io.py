"""
JSON file formats: proof trees of both calculi, relational models and
axiom files.

A proof file is

    {"calculus": "DKtP" | "G3KtP", "axioms": ["<F><F>p -> <F>p", ...],
     "proof": {"rule": ..., "subst": {var: text}, "conclusion": text,
               "dir": "up" | "down", "premises": [...]}}

and a bare proof node is accepted for display proofs. Substitution
values are written in the same ASCII syntax the parsers read.
"""
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field

from models.axioms import STANDARD_AXIOMS, PrimitiveAxiom, validate_primitive_axiom
from models.display_rules import FVar, PVar, SVar, DisplayCalculus
from models.errors import ParseError, RuleError
from models.kripke_model import RelationalModel
from models.labeled_rules import CONTEXT, LabeledCalculus
from models.proof_tree import DOWN, OPEN, ProofTree
from utils.parser import (parse_axiom_lines, parse_display_sequent, parse_formula,
                          parse_labeled_sequent, parse_structure)

logger = logging.getLogger(__name__)

DISPLAY = "DKtP"
LABELED = "G3KtP"
CALCULUS_NAMES = {"dkt": DISPLAY, "g3kt": LABELED}

# parameters of the labeled structural rules, by value kind
_LABEL_PARAMS = {"keep", "drop", "label"}
_SEQUENT_PARAMS = {"added", CONTEXT}


class ProofNode(BaseModel):
    rule: str
    conclusion: str
    subst: Dict[str, str] = Field(default_factory=dict)
    dir: str = DOWN
    premises: List["ProofNode"] = Field(default_factory=list)


class ProofFile(BaseModel):
    calculus: str = DISPLAY
    axioms: List[str] = Field(default_factory=list)
    proof: ProofNode


# --- encoding -----------------------------------------------------------

def proof_to_node(proof: ProofTree) -> ProofNode:
    return ProofNode(rule=proof.rule, conclusion=str(proof.conclusion),
                     subst={name: str(value) for name, value in sorted(proof.subst.items())},
                     dir=proof.direction,
                     premises=[proof_to_node(p) for p in proof.premises])


def dump_proof(proof: ProofTree, calculus: str, axioms: Sequence[PrimitiveAxiom] = ()) -> str:
    """JSON text of a proof file; calculus is DKtP or G3KtP."""
    document = ProofFile(calculus=calculus, axioms=[str(a) for a in axioms], proof=proof_to_node(proof))
    return document.model_dump_json(indent=2)


def write_proof(path: Union[str, Path], proof: ProofTree, calculus: str,
                axioms: Sequence[PrimitiveAxiom] = ()) -> None:
    Path(path).write_text(dump_proof(proof, calculus, axioms) + "\n", encoding="utf-8")
    logger.info("wrote %s proof to %s", calculus, path)


# --- decoding -----------------------------------------------------------

class _Decoder:
    """Turns substitution text back into values using the rule's variable kinds."""

    def __init__(self, calculus: str, axioms: Sequence[PrimitiveAxiom]):
        self.calculus = calculus
        if calculus == DISPLAY:
            self.rules = DisplayCalculus.for_axioms(axioms)
        elif calculus == LABELED:
            self.rules = LabeledCalculus.for_axioms(axioms)
        else:
            raise ParseError(f"unknown calculus {calculus!r}")

    def sequent(self, text: str):
        if self.calculus == DISPLAY:
            return parse_display_sequent(text)
        return parse_labeled_sequent(text)

    def value(self, rule: str, name: str, text: str):
        if self.calculus == DISPLAY:
            return self._display_value(rule, name, text)
        return self._labeled_value(rule, name, text)

    def _display_value(self, rule: str, name: str, text: str):
        kinds = self.rules.rules[rule].variables() if rule in self.rules.rules else {}
        kind = kinds.get(name)
        if kind in (FVar, PVar):
            return parse_formula(text)
        if kind is SVar:
            return parse_structure(text)
        raise RuleError(f"({rule}) has no variable {name}")

    def _labeled_value(self, rule: str, name: str, text: str):
        if name in _LABEL_PARAMS:
            return text
        if name in _SEQUENT_PARAMS:
            return parse_labeled_sequent(text)
        if name == "formula":
            return parse_formula(text)
        if rule not in self.rules.rules:
            raise RuleError(f"unknown rule {rule!r}")
        schema = self.rules.rules[rule]
        if name in schema.label_vars():
            return text
        if name in {v.name for v in schema.seq_vars()}:
            return parse_labeled_sequent(text)
        if name in schema.formula_vars():
            return parse_formula(text)
        raise RuleError(f"({rule}) has no variable {name}")

    def node(self, node: ProofNode, path: Tuple[int, ...] = ()) -> ProofTree:
        try:
            conclusion = self.sequent(node.conclusion)
            subst = {} if node.rule == OPEN else \
                {name: self.value(node.rule, name, text) for name, text in node.subst.items()}
        except ParseError as error:
            raise ParseError(f"node {list(path)}: {error}", error.offset, error.expected) from None
        premises = [self.node(p, path + (i,)) for i, p in enumerate(node.premises)]
        return ProofTree(node.rule, conclusion, premises, subst, node.dir)


def parse_proof_document(text: str) -> ProofFile:
    data = json.loads(text)
    if "proof" not in data:
        data = {"calculus": DISPLAY, "proof": data}
    return ProofFile.model_validate(data)


def load_proof(path: Union[str, Path],
               axioms: Optional[Sequence[PrimitiveAxiom]] = None) -> Tuple[ProofTree, str, List[PrimitiveAxiom]]:
    """Read a proof file: (proof, calculus name, axioms).

    Axioms given here override those listed in the file.
    """
    document = parse_proof_document(Path(path).read_text(encoding="utf-8"))
    if axioms is None:
        axioms = [validate_primitive_axiom(parse_formula(a)) for a in document.axioms]
    proof = _Decoder(document.calculus, axioms).node(document.proof)
    logger.info("loaded %s proof from %s", document.calculus, path)
    return proof, document.calculus, list(axioms)


# --- models and axioms --------------------------------------------------

def load_model(path: Union[str, Path]) -> RelationalModel:
    return RelationalModel.model_validate_json(Path(path).read_text(encoding="utf-8"))


def read_axioms(text: str) -> List[PrimitiveAxiom]:
    """Axioms of an axiom file; a line may also name a standard axiom (T, 4, 5)."""
    lines = []
    for line in text.splitlines():
        content = line.split("#", 1)[0].strip()
        lines.append(STANDARD_AXIOMS.get(content, content))
    return [validate_primitive_axiom(f) for f in parse_axiom_lines("\n".join(lines))]


def load_axioms(path: Optional[Union[str, Path]]) -> List[PrimitiveAxiom]:
    if path is None:
        return []
    return read_axioms(Path(path).read_text(encoding="utf-8"))
