"""
Admissibility of (ls), (w), (c_l) and (c_r) in the labeled calculus.

ProofEditor pushes a label substitution, a weakening or a contraction
up through a structural-rule-free proof. Contraction inverts the rule
that decomposed the other copy. At pt nodes the parts of the instance
are redistributed so the node stays strict, and instances that grow get
matching copies in the premises. eliminate_structural applies the editor
to every structural node of a proof, leaves first.
"""
import logging
from collections import Counter
from typing import Dict, Iterable, List, Optional, Set

import networkx as nx

from .errors import RuleError, StructuralEliminationError
from .formula import And, BoxF, BoxP, DiaF, DiaP, Imp, Not, Or
from .labeled_rules import (CONTEXT, PRIMITIVE, STRUCTURAL_RULE_NAMES,
                            LabeledCalculus, LabeledRuleSchema, SeqVar,
                            align_rules, check_strict, contract_schema,
                            infer_context, schema_key)
from .labeled_sequent import (EMPTY, FreshLabels, LabeledFormula,
                              LabeledSequent, compose, flat, label_substitute,
                              relations, rooted_isomorphism)
from .proof_tree import ProofTree

logger = logging.getLogger(__name__)

ANTE = "ante"
SUCC = "succ"

# (side, connective) -> the rule that decomposes it without repeating it
_INVERTIBLE = {
    (ANTE, Not): "neg_l", (SUCC, Not): "neg_r",
    (ANTE, And): "and_l", (SUCC, And): "and_r",
    (ANTE, Or): "or_l", (SUCC, Or): "or_r",
    (ANTE, Imp): "imp_l", (SUCC, Imp): "imp_r",
    (ANTE, DiaF): "diaf_l", (ANTE, DiaP): "diap_l",
    (SUCC, BoxF): "boxf_r", (SUCC, BoxP): "boxp_r",
}


def proof_labels(proof: ProofTree) -> Set[str]:
    found: Set[str] = set()
    for node in proof.nodes():
        found |= node.conclusion.labels()
    return found


def side_of(rule: str) -> str:
    return ANTE if rule == "c_l" else SUCC


def _count(s: LabeledSequent, side: str, item: LabeledFormula) -> int:
    return getattr(s, side).count(item)


def _single(side: str, item: LabeledFormula) -> LabeledSequent:
    return LabeledSequent(**{side: (item,)})


def _remove(s: LabeledSequent, side: str, item: LabeledFormula) -> LabeledSequent:
    return s.minus(_single(side, item), keep_rel=s.rel)


def _rename_value(value, mapping: Dict[str, str]):
    if isinstance(value, str):
        return mapping.get(value, value)
    if isinstance(value, LabeledSequent):
        return value.rename(mapping)
    return value


def _strip(sub: Dict[str, object]) -> Dict[str, object]:
    return {k: v for k, v in sub.items() if k != CONTEXT}


def inversion_pieces(side: str, item: LabeledFormula, fresh: Optional[str]) -> List[LabeledSequent]:
    """What replaces item in each premise of its invertible rule."""
    f, w = item.formula, item.label
    if side == ANTE:
        table = {
            Not: lambda: [flat(w, succ=[f.sub])],
            And: lambda: [flat(w, ante=[f.left, f.right])],
            Or: lambda: [flat(w, ante=[f.left]), flat(w, ante=[f.right])],
            Imp: lambda: [flat(w, succ=[f.left]), flat(w, ante=[f.right])],
            DiaF: lambda: [compose(relations((w, fresh)), flat(fresh, ante=[f.sub]))],
            DiaP: lambda: [compose(relations((fresh, w)), flat(fresh, ante=[f.sub]))],
        }
    else:
        table = {
            Not: lambda: [flat(w, ante=[f.sub])],
            And: lambda: [flat(w, succ=[f.left]), flat(w, succ=[f.right])],
            Or: lambda: [flat(w, succ=[f.left, f.right])],
            Imp: lambda: [compose(flat(w, ante=[f.left]), flat(w, succ=[f.right]))],
            BoxF: lambda: [compose(relations((w, fresh)), flat(fresh, succ=[f.sub]))],
            BoxP: lambda: [compose(relations((fresh, w)), flat(fresh, succ=[f.sub]))],
        }
    if type(f) not in table:
        raise StructuralEliminationError(f"{item} on the {side} side is not invertible")
    return table[type(f)]()


class ProofEditor:
    """Label substitution, weakening, contraction and inversion on proofs
    without structural nodes. Every method returns a new tree."""

    def __init__(self, calculus: LabeledCalculus, avoid: Iterable[str] = ()):
        self.calculus = calculus
        self.fresh = FreshLabels(avoid, prefix="x")

    def _rule(self, node: ProofTree) -> LabeledRuleSchema:
        if node.is_open():
            raise StructuralEliminationError("cannot edit a proof with open leaves")
        if node.rule in STRUCTURAL_RULE_NAMES:
            raise StructuralEliminationError(f"unexpected structural node ({node.rule})")
        return self.calculus.rule(node.rule)

    def _full(self, node: ProofTree, rule: LabeledRuleSchema) -> Dict[str, object]:
        return infer_context(rule, dict(node.subst), node.conclusion)

    # --- renaming -------------------------------------------------------

    def relabel(self, proof: ProofTree, mapping: Dict[str, str]) -> ProofTree:
        """Injective renaming of labels throughout a proof."""
        return ProofTree(proof.rule, proof.conclusion.rename(mapping),
                         [self.relabel(p, mapping) for p in proof.premises],
                         {k: _rename_value(v, mapping) for k, v in proof.subst.items()},
                         proof.direction)

    def rename_apart(self, proof: ProofTree, avoid: Iterable[str]) -> ProofTree:
        """Rename labels introduced inside the proof that clash with avoid."""
        clash = (proof_labels(proof) - proof.conclusion.labels()) & set(avoid)
        self.fresh.reserve(proof_labels(proof))
        if not clash:
            return proof
        return self.relabel(proof, {x: self.fresh() for x in sorted(clash)})

    # --- label substitution ---------------------------------------------

    def substitute(self, proof: ProofTree, keep: str, drop: str) -> ProofTree:
        """Push (ls) keep/drop up: every occurrence of drop becomes keep."""
        if keep == drop:
            return proof
        rule = self._rule(proof)
        if rule.kind == PRIMITIVE:
            return self._pt_substitute(proof, rule, keep, drop)
        return ProofTree(proof.rule, label_substitute(proof.conclusion, drop, keep),
                         [self.substitute(p, keep, drop) for p in proof.premises],
                         {k: _rename_value(v, {drop: keep}) for k, v in _strip(proof.subst).items()})

    def _pt_substitute(self, node: ProofTree, rule: LabeledRuleSchema, keep: str, drop: str) -> ProofTree:
        sub = self._full(node, rule)
        premises = [self.substitute(p, keep, drop) for p in node.premises]
        for var in _annotated(rule.a_part):
            instance = sub[var.name]
            if not {keep, drop} <= instance.labels():
                continue
            # the copies in the premises must merge the corresponding labels
            for index, copy in _copies(rule, var):
                mapping = _instance_map(instance, sub[var.label], sub[copy.name], sub[copy.label])
                premises[index] = self.substitute(premises[index], mapping[keep], mapping[drop])
                sub[copy.name] = label_substitute(sub[copy.name], mapping[drop], mapping[keep])
        provisional = {k: _rename_value(v, {drop: keep}) for k, v in sub.items()}
        return self._rebuild_pt(rule, provisional, label_substitute(node.conclusion, drop, keep), premises)

    # --- weakening ------------------------------------------------------

    def weaken(self, proof: ProofTree, added: LabeledSequent) -> ProofTree:
        """Push (w) up: add a polytree glued at one label to every sequent."""
        if added.is_empty():
            return proof
        proof = self.rename_apart(proof, added.labels())
        self.fresh.reserve(added.labels())
        return self._weaken(proof, added)

    def _weaken(self, node: ProofTree, added: LabeledSequent) -> ProofTree:
        rule = self._rule(node)
        if rule.kind == PRIMITIVE:
            sub = self._full(node, rule)
            premises = [self._weaken(p, added) for p in node.premises]
            provisional = dict(sub)
            provisional[CONTEXT] = compose(sub[CONTEXT], added)
            return self._rebuild_pt(rule, provisional, compose(node.conclusion, added), premises)
        return ProofTree(node.rule, compose(node.conclusion, added),
                         [self._weaken(p, added) for p in node.premises], _strip(node.subst))

    def _weaken_pieces(self, proof: ProofTree, extra: LabeledSequent, attach: Set[str]) -> ProofTree:
        """Weaken by extra one connected piece at a time, each glued at one attach label."""
        graph = nx.Graph()
        graph.add_nodes_from(extra.labels())
        graph.add_edges_from((a.src, a.dst) for a in extra.rel)
        for component in nx.connected_components(graph):
            anchors = component & attach
            if len(anchors) != 1:
                raise StructuralEliminationError(f"cannot glue {sorted(component)} at exactly one label")
            piece = LabeledSequent(frozenset(a for a in extra.rel if a.src in component),
                                   tuple(lf for lf in extra.ante if lf.label in component),
                                   tuple(lf for lf in extra.succ if lf.label in component))
            proof = self.weaken(proof, piece)
        return proof

    # --- contraction ----------------------------------------------------

    def contract(self, proof: ProofTree, side: str, item: LabeledFormula) -> ProofTree:
        """Push (c_l)/(c_r) up: remove one of two copies of item."""
        if _count(proof.conclusion, side, item) < 2:
            raise StructuralEliminationError(f"{item} does not occur twice in {proof.conclusion}")
        rule = self._rule(proof)
        if rule.kind == PRIMITIVE:
            return self._pt_contract(proof, rule, side, item)
        conclusion = _remove(proof.conclusion, side, item)
        subst = _strip(proof.subst)
        if rule.initial:
            return ProofTree(proof.rule, conclusion, [], subst)
        if all(_count(p.conclusion, side, item) >= 2 for p in proof.premises):
            return ProofTree(proof.rule, conclusion,
                             [self.contract(p, side, item) for p in proof.premises], subst)
        # the other copy is principal here: invert it in each premise
        sub = self._full(proof, rule)
        premises = []
        for index, premise in enumerate(proof.premises):
            target = _remove(premise.conclusion, side, item)
            fresh = self.fresh()
            inverted = self.invert(premise, side, item, fresh)[index]
            if rule.fresh:
                inverted = self.substitute(inverted, sub[rule.fresh[0]], fresh)
            premises.append(self._contract_to(inverted, target))
        return ProofTree(proof.rule, conclusion, premises, subst)

    def _contract_to(self, proof: ProofTree, target: LabeledSequent) -> ProofTree:
        while proof.conclusion != target:
            current = proof.conclusion
            if current.rel != target.rel:
                raise StructuralEliminationError(f"cannot contract {current} to {target}")
            for side in (ANTE, SUCC):
                surplus = Counter(getattr(current, side)) - Counter(getattr(target, side))
                if surplus:
                    proof = self.contract(proof, side, next(iter(surplus)))
                    break
            else:
                raise StructuralEliminationError(f"cannot contract {current} to {target}")
        return proof

    def _pt_contract(self, node: ProofTree, rule: LabeledRuleSchema, side: str,
                     item: LabeledFormula) -> ProofTree:
        sub = self._full(node, rule)
        conclusion = _remove(node.conclusion, side, item)
        if _count(sub[CONTEXT], side, item):
            sub[CONTEXT] = _remove(sub[CONTEXT], side, item)
            premises = [self.contract(p, side, item) for p in node.premises]
            return self._pt_node(rule, sub, conclusion, premises)
        var = next((v for v in _annotated(rule.a_part) if _count(sub[v.name], side, item) >= 2), None)
        if var is None:
            raise StructuralEliminationError(f"the copies of {item} lie in different instances of ({rule.name})")
        premises = [self.contract(p, side, item) for p in node.premises]
        instance = sub[var.name]
        for index, copy in _copies(rule, var):
            mapping = _instance_map(instance, sub[var.label], sub[copy.name], sub[copy.label])
            twin = LabeledFormula(mapping[item.label], item.formula)
            premises[index] = self.contract(premises[index], side, twin)
            sub[copy.name] = _remove(sub[copy.name], side, twin)
        sub[var.name] = _remove(instance, side, item)
        return self._pt_node(rule, sub, conclusion, premises)

    # --- inversion ------------------------------------------------------

    def invert(self, proof: ProofTree, side: str, item: LabeledFormula,
               fresh: Optional[str] = None) -> List[ProofTree]:
        """Proofs of the conclusion with item replaced by each of its pieces.

        fresh names the new label when item is a diamond on the left or a
        box on the right.
        """
        if type(item.formula) in (DiaF, DiaP, BoxF, BoxP) and fresh is None:
            fresh = self.fresh()
        pieces = inversion_pieces(side, item, fresh)
        return self._invert(proof, side, item, pieces, fresh)

    def _invert(self, node: ProofTree, side: str, item: LabeledFormula,
                pieces: List[LabeledSequent], fresh: Optional[str]) -> List[ProofTree]:
        rule = self._rule(node)
        if rule.kind == PRIMITIVE:
            return self._pt_invert(node, rule, side, item, pieces, fresh)
        if node.rule == _INVERTIBLE.get((side, type(item.formula))):
            sub = self._full(node, rule)
            principal = rule.conclusion.instantiate({**sub, CONTEXT: EMPTY})
            if _count(principal, side, item):
                if rule.fresh:
                    return [self.relabel(p, {sub[rule.fresh[0]]: fresh}) for p in node.premises]
                return list(node.premises)
        base = _remove(node.conclusion, side, item)
        branches = [self._invert(p, side, item, pieces, fresh) for p in node.premises]
        return [ProofTree(node.rule, compose(base, piece), [b[k] for b in branches], _strip(node.subst))
                for k, piece in enumerate(pieces)]

    def _pt_invert(self, node: ProofTree, rule: LabeledRuleSchema, side: str, item: LabeledFormula,
                   pieces: List[LabeledSequent], fresh: Optional[str]) -> List[ProofTree]:
        sub = self._full(node, rule)
        base = _remove(node.conclusion, side, item)
        results = []
        if _count(sub[CONTEXT], side, item):
            branches = [self._invert(p, side, item, pieces, fresh) for p in node.premises]
            for k, piece in enumerate(pieces):
                version = dict(sub)
                version[CONTEXT] = compose(_remove(sub[CONTEXT], side, item), piece)
                results.append(self._pt_node(rule, version, compose(base, piece), [b[k] for b in branches]))
            return results
        var = next((v for v in _annotated(rule.a_part) if _count(sub[v.name], side, item)), None)
        if var is None:
            raise StructuralEliminationError(f"{item} is not in a part of ({rule.name})")
        branches = [self._invert(p, side, item, pieces, fresh) for p in node.premises]
        versions = [dict(sub) for _ in pieces]
        for index, copy in _copies(rule, var):
            mapping = _instance_map(sub[var.name], sub[var.label], sub[copy.name], sub[copy.label])
            twin = LabeledFormula(mapping[item.label], item.formula)
            twin_fresh = self.fresh() if fresh is not None else None
            twin_pieces = inversion_pieces(side, twin, twin_fresh)
            branches[index] = [self._invert(branches[index][k], side, twin, twin_pieces, twin_fresh)[k]
                               for k in range(len(pieces))]
            for k, version in enumerate(versions):
                version[copy.name] = compose(_remove(sub[copy.name], side, twin), twin_pieces[k])
        for k, (piece, version) in enumerate(zip(pieces, versions)):
            version[var.name] = compose(_remove(sub[var.name], side, item), piece)
            results.append(self._pt_node(rule, version, compose(base, piece), [b[k] for b in branches]))
        return results

    # --- pt instances ---------------------------------------------------

    def _rebuild_pt(self, rule: LabeledRuleSchema, sub: Dict[str, object], conclusion: LabeledSequent,
                    premises: List[ProofTree]) -> ProofTree:
        rule, sub = self._switch_rule(rule, sub)
        redistributed = _redistribute(rule, sub, conclusion)
        premises = self._extend_copies(rule, sub, redistributed, premises)
        return self._pt_node(rule, redistributed, conclusion, premises)

    def _switch_rule(self, rule: LabeledRuleSchema, sub: Dict[str, object]):
        """Move to a contraction of the rule when principal labels were identified."""
        base = self.calculus.rule(rule.name.split(".")[0])
        images = {x: sub[current] for x, current in rule.origin}
        if len(set(images.values())) == len(images):
            return rule, sub
        representative: Dict[str, str] = {}
        first: Dict[str, str] = {}
        for x, _ in base.origin:
            representative[x] = first.setdefault(images[x], x)
        candidate = contract_schema(base, representative)
        key = schema_key(candidate)
        target = next((r for r in self.calculus.pt_family(base.name) if schema_key(r) == key), None)
        mapping = align_rules(candidate, target) if target is not None else None
        if mapping is None:
            raise StructuralEliminationError(f"identifying labels in ({rule.name}) leaves no strict instance")
        switched: Dict[str, object] = {CONTEXT: sub[CONTEXT]}
        for var in candidate.label_vars():
            switched[mapping[var]] = images[var] if var in images else sub[var]
        for var in candidate.seq_vars():
            if var.name != CONTEXT:
                switched[var.name] = sub[var.name]
        logger.debug("(%s) becomes (%s) after identifying labels", rule.name, target.name)
        return target, switched

    def _extend_copies(self, rule: LabeledRuleSchema, before: Dict[str, object], after: Dict[str, object],
                       premises: List[ProofTree]) -> List[ProofTree]:
        """Grow the premise copies of every instance that grew."""
        premises = list(premises)
        for var in _annotated(rule.a_part):
            old, new = before[var.name], after[var.name]
            if old == new:
                continue
            for index, copy in _copies(rule, var):
                mapping = _instance_map(old, before[var.label], before[copy.name], before[copy.label])
                for label in sorted(new.labels() - set(mapping)):
                    mapping[label] = self.fresh()
                required = new.rename(mapping)
                if not required.contains(before[copy.name]):
                    raise StructuralEliminationError(f"copy of {var.name} cannot follow its instance")
                extra = required.minus(before[copy.name])
                attach = before[copy.name].labels() | {before[copy.label]}
                premises[index] = self._weaken_pieces(premises[index], extra, attach)
                after[copy.name] = required
        return premises

    def _pt_node(self, rule: LabeledRuleSchema, sub: Dict[str, object], conclusion: LabeledSequent,
                 premises: List[ProofTree]) -> ProofTree:
        try:
            expected = rule.conclusion.instantiate(sub)
            wanted = [p.instantiate(sub) for p in rule.premises]
        except RuleError as error:
            raise StructuralEliminationError(f"({rule.name}) {error}") from error
        if expected != conclusion or wanted != [p.conclusion for p in premises]:
            raise StructuralEliminationError(f"({rule.name}) no longer matches {conclusion}")
        violation = check_strict(rule, sub)
        if violation:
            raise StructuralEliminationError(f"({rule.name}) is no longer strict: {violation}")
        return ProofTree(rule.name, conclusion, premises, _strip(sub))

    # --- whole proofs ---------------------------------------------------

    def eliminate(self, node: ProofTree) -> ProofTree:
        premises = [self.eliminate(p) for p in node.premises]
        if node.rule not in STRUCTURAL_RULE_NAMES:
            return ProofTree(node.rule, node.conclusion, premises, dict(node.subst), node.direction)
        premise, params = premises[0], node.subst
        if node.rule == "ls":
            result = self.substitute(premise, params["keep"], params["drop"])
        elif node.rule == "w":
            result = self.weaken(premise, params["added"])
        else:
            result = self.contract(premise, side_of(node.rule),
                                   LabeledFormula(params["label"], params["formula"]))
        if result.conclusion != node.conclusion:
            raise StructuralEliminationError(f"({node.rule}) elimination changed the conclusion "
                                             f"to {result.conclusion}")
        return result


def _annotated(part) -> List[SeqVar]:
    return [v for v in part.vars if v.annotated]


def _copies(rule: LabeledRuleSchema, var: SeqVar):
    """(premise index, variable) for each premise variable with var's atom."""
    for index, part in enumerate(rule.b_parts):
        for copy in _annotated(part):
            if copy.atom == var.atom:
                yield index, copy


def _instance_map(a: LabeledSequent, root_a: str, b: LabeledSequent, root_b: str) -> Dict[str, str]:
    if a.is_empty() and b.is_empty():
        return {root_a: root_b}
    mapping = rooted_isomorphism(a, root_a, b, root_b)
    if mapping is None:
        raise StructuralEliminationError(f"instances {a} and {b} are not isomorphic")
    return dict(mapping)


def _redistribute(rule: LabeledRuleSchema, sub: Dict[str, object],
                  conclusion: LabeledSequent) -> Dict[str, object]:
    """Reassign the non-principal material of a pt conclusion to the
    annotated instances and the context so the instance is strict.

    Material hanging at a principal label goes to the part that already
    holds some of it. Instances whose atom has premise copies never give
    material away; the context only lives at the root.
    """
    root = sub[rule.root]
    a_edges = frozenset(a.rename(sub) for a in rule.a_part.rel)
    anchors = {sub[x] for x in rule.a_part.label_vars()} | {root}
    constrained = {v.atom for part in rule.b_parts for v in _annotated(part)}
    variables = _annotated(rule.a_part)
    parts = {v.name: sub[v.name] for v in variables}
    parts[CONTEXT] = sub[CONTEXT]
    atom_of = {v.name: v.atom for v in variables}
    pieces: Dict[str, List[LabeledSequent]] = {name: [] for name in parts}

    loose = conclusion.rel - a_edges
    graph = nx.Graph()
    graph.add_nodes_from(conclusion.labels() | anchors)
    graph.add_edges_from((a.src, a.dst) for a in loose)
    for component in nx.connected_components(graph):
        here = component & anchors
        if len(here) != 1:
            raise StructuralEliminationError(f"labels {sorted(component)} do not hang at one principal label")
        anchor = next(iter(here))
        holders = [v.name for v in variables if sub[v.label] == anchor] + ([CONTEXT] if anchor == root else [])
        adopted = None
        if not holders:
            adopted = _adopter(variables, sub, a_edges, root, anchor)
            if adopted is not None:
                holders = [adopted[0]]
                given = len(pieces[adopted[0]])
        for branch in nx.connected_components(graph.subgraph(component - {anchor})):
            closed = branch | {anchor}
            material = LabeledSequent(frozenset(a for a in loose if a.src in closed and a.dst in closed),
                                      tuple(lf for lf in conclusion.ante if lf.label in branch),
                                      tuple(lf for lf in conclusion.succ if lf.label in branch))
            claimants = [name for name, part in parts.items() if part.labels() & branch]
            pieces[_owner(claimants, holders, atom_of, constrained, branch)].append(material)
        for side in (ANTE, SUCC):
            available = Counter(lf for lf in getattr(conclusion, side) if lf.label == anchor)
            for name in holders:
                claimed = Counter(lf for lf in getattr(parts[name], side) if lf.label == anchor) & available
                available -= claimed
                if claimed:
                    pieces[name].append(LabeledSequent(**{side: tuple(claimed.elements())}))
            if available:
                default = CONTEXT if anchor == root else (holders[0] if holders else None)
                if default is None:
                    raise StructuralEliminationError(f"formulas at {anchor} have no part to go to")
                pieces[default].append(LabeledSequent(**{side: tuple(available.elements())}))
        if adopted is not None and len(pieces[adopted[0]]) > given:
            pieces[adopted[0]].append(adopted[1])
    redistributed = dict(sub)
    for name, found in pieces.items():
        redistributed[name] = compose(*found)
    return redistributed


def _adopter(variables: List[SeqVar], sub: Dict[str, object], a_edges, root: str, anchor: str):
    """(variable, path) for a principal label nobody holds: the nearest
    annotated instance below the root takes the material together with the
    principal edges leading to it, or None."""
    skeleton = nx.Graph()
    skeleton.add_edges_from((a.src, a.dst, {"atom": a}) for a in a_edges)
    skeleton.remove_nodes_from([root])
    if anchor not in skeleton:
        return None
    reachable = nx.node_connected_component(skeleton, anchor)
    candidates = [v for v in variables if sub[v.label] in reachable]
    if not candidates:
        return None
    paths = {v.name: nx.shortest_path(skeleton, anchor, sub[v.label]) for v in candidates}
    name = min(paths, key=lambda n: len(paths[n]))
    hops = zip(paths[name], paths[name][1:])
    path = LabeledSequent(frozenset(skeleton.edges[a, b]["atom"] for a, b in hops))
    return name, path


def _owner(claimants, holders, atom_of, constrained, branch) -> str:
    strays = [c for c in claimants if c not in holders and atom_of.get(c) in constrained]
    if strays:
        raise StructuralEliminationError(f"instance of {strays[0]} would lose {sorted(branch)}")
    valid = [c for c in claimants if c in holders]
    bound = [c for c in valid if c != CONTEXT and atom_of[c] in constrained]
    if len(bound) > 1:
        raise StructuralEliminationError(f"instances {', '.join(bound)} both claim {sorted(branch)}")
    if bound:
        return bound[0]
    free = [c for c in valid if c != CONTEXT]
    if free:
        return free[0]
    if CONTEXT in holders:
        return CONTEXT
    if holders:
        return holders[0]
    raise StructuralEliminationError(f"labels {sorted(branch)} have no part to go to")


def eliminate_structural(proof: ProofTree, calculus: LabeledCalculus) -> ProofTree:
    """Remove every (ls), (w), (c_l), (c_r) node without changing the conclusion."""
    editor = ProofEditor(calculus, proof_labels(proof))
    result = editor.eliminate(proof)
    logger.info("eliminated structural steps: %d -> %d sequents", len(proof.nodes()), len(result.nodes()))
    return result
