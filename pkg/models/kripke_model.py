"""
Finite relational (Kripke) models and truth evaluation for the tense
language. Used as an oracle for soundness spot-checks and to verify
axiom rewrites.
"""
import itertools
import logging
import random
from typing import Dict, FrozenSet, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .axioms import PrimitiveAxiom
from .errors import ProofKitError
from .formula import (And, Atom, Bot, BoxF, BoxP, DiaF, DiaP, Formula, Imp,
                      Not, Or, Top)

from utils.config import MODEL_SIZE_CAP

logger = logging.getLogger(__name__)


class RelationalModel(BaseModel):
    """M = (W, R, V). Loaded from JSON as {"worlds", "rel", "val"}."""
    model_config = ConfigDict(frozen=True)

    worlds: List[str] = Field(min_length=1)
    rel: List[Tuple[str, str]] = Field(default_factory=list)
    val: Dict[str, List[str]] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_ranges(self):
        known = set(self.worlds)
        for src, dst in self.rel:
            if src not in known or dst not in known:
                raise ValueError(f"relation pair ({src}, {dst}) mentions an unknown world")
        for atom, worlds in self.val.items():
            missing = set(worlds) - known
            if missing:
                raise ValueError(f"valuation of {atom} mentions unknown worlds {sorted(missing)}")
        return self

    def successors(self, w: str) -> List[str]:
        return [dst for src, dst in self.rel if src == w]

    def predecessors(self, w: str) -> List[str]:
        return [src for src, dst in self.rel if dst == w]

    def holds(self, atom: str, w: str) -> bool:
        return w in self.val.get(atom, ())


def satisfies(m: RelationalModel, w: str, f: Formula) -> bool:
    """M, w |= f."""
    if w not in m.worlds:
        raise ProofKitError(f"unknown world {w!r}")
    return _eval(m, w, f)


def _eval(m: RelationalModel, w: str, f: Formula) -> bool:
    if isinstance(f, Atom):
        return m.holds(f.name, w)
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Not):
        return not _eval(m, w, f.sub)
    if isinstance(f, And):
        return _eval(m, w, f.left) and _eval(m, w, f.right)
    if isinstance(f, Or):
        return _eval(m, w, f.left) or _eval(m, w, f.right)
    if isinstance(f, Imp):
        return not _eval(m, w, f.left) or _eval(m, w, f.right)
    if isinstance(f, BoxF):
        return all(_eval(m, u, f.sub) for u in m.successors(w))
    if isinstance(f, DiaF):
        return any(_eval(m, u, f.sub) for u in m.successors(w))
    if isinstance(f, BoxP):
        return all(_eval(m, u, f.sub) for u in m.predecessors(w))
    if isinstance(f, DiaP):
        return any(_eval(m, u, f.sub) for u in m.predecessors(w))
    raise TypeError(f"not a formula: {f!r}")


def globally_true(m: RelationalModel, f: Formula) -> bool:
    return all(_eval(m, w, f) for w in m.worlds)


# --- frame conditions ---------------------------------------------------

def _reflexive(worlds, pairs):
    return pairs | {(w, w) for w in worlds}


def _transitive(worlds, pairs):
    pairs = set(pairs)
    while True:
        extra = {(a, d) for a, b in pairs for c, d in pairs if b == c} - pairs
        if not extra:
            return pairs
        pairs |= extra


def _euclidean(worlds, pairs):
    pairs = set(pairs)
    while True:
        extra = {(b, d) for a, b in pairs for c, d in pairs if a == c} - pairs
        if not extra:
            return pairs
        pairs |= extra


FRAME_CLOSURES = {
    "reflexive": _reflexive,
    "transitive": _transitive,
    "euclidean": _euclidean,
}

_p = Atom("p")
FRAME_CONDITIONS: Dict[Formula, str] = {
    Imp(_p, DiaF(_p)): "reflexive",
    Imp(DiaF(DiaF(_p)), DiaF(_p)): "transitive",
    Imp(DiaP(DiaF(_p)), DiaF(_p)): "euclidean",
}


def frame_condition(axiom: PrimitiveAxiom) -> Optional[str]:
    """Registered first-order frame condition of an axiom, if any."""
    return FRAME_CONDITIONS.get(axiom.formula())


def frame_conditions_for(axioms) -> FrozenSet[str]:
    """Frame conditions for a set of axioms; raises if one has none registered."""
    found = set()
    for axiom in axioms:
        condition = frame_condition(axiom)
        if condition is None:
            raise ProofKitError(f"no frame condition registered for {axiom}")
        found.add(condition)
    return frozenset(found)


def close_relation(worlds, pairs, conditions) -> set:
    """Smallest superset of pairs satisfying every named condition."""
    pairs = set(pairs)
    while True:
        before = set(pairs)
        for name in sorted(conditions):
            pairs = FRAME_CLOSURES[name](worlds, pairs)
        if pairs == before:
            return pairs


def random_model(rng: random.Random, atoms, max_worlds: int = 5,
                 conditions=frozenset(), density: float = 0.3) -> RelationalModel:
    """A random model whose frame satisfies the given conditions."""
    size = rng.randint(1, max(1, min(max_worlds, MODEL_SIZE_CAP)))
    worlds = [f"m{i}" for i in range(size)]
    pairs = {(a, b) for a in worlds for b in worlds if rng.random() < density}
    pairs = close_relation(worlds, pairs, conditions)
    val = {atom: [w for w in worlds if rng.random() < 0.5] for atom in sorted(atoms)}
    return RelationalModel(worlds=worlds, rel=sorted(pairs), val=val)


def all_models(atoms, max_worlds: int = 3):
    """Every model up to max_worlds worlds over the given atoms (small sizes only)."""
    atoms = sorted(atoms)
    for size in range(1, max_worlds + 1):
        worlds = [f"m{i}" for i in range(size)]
        all_pairs = list(itertools.product(worlds, worlds))
        for mask in range(1 << len(all_pairs)):
            rel = [pair for bit, pair in enumerate(all_pairs) if mask >> bit & 1]
            for bits in itertools.product(range(1 << size), repeat=len(atoms)):
                val = {atom: [w for i, w in enumerate(worlds) if b >> i & 1] for atom, b in zip(atoms, bits)}
                yield RelationalModel(worlds=worlds, rel=rel, val=val)


def find_countermodel(f: Formula, rng: random.Random, samples: int = 100, max_worlds: int = 5,
                      conditions=frozenset()) -> Optional[RelationalModel]:
    """Random search for a model in which f is not globally true."""
    atoms = f.atoms()
    for _ in range(samples):
        model = random_model(rng, atoms, max_worlds, conditions)
        if not globally_true(model, f):
            logger.info("countermodel found for %s", f)
            return model
    return None
