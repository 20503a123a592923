#!/usr/bin/env python3
"""
tpk - proof toolkit for tense logics with primitive tense axioms.
Command-line interface for checking, translating and generating display
and labeled polytree proofs.

Exit codes: 0 success, 1 a failed check or translation, 2 bad input.
"""
import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

# Add the project root to Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from pydantic import ValidationError

from models.axioms import PrimitiveAxiom
from models.display_proof import check_display_proof, display_metrics
from models.display_rules import DisplayCalculus, make_display_rules
from models.errors import AxiomError, ParseError, PolytreeError, ProofKitError, RuleError, TranslationError
from models.kripke_model import satisfies
from models.labeled_proof import check_labeled_proof, labeled_metrics
from models.labeled_rules import LabeledCalculus, make_labeled_rules
from models.labeled_sequent import LabeledSequent, canonical_form
from translation.equivalence import derive_equivalence, readings_isomorphic
from translation.notation import to_labeled
from translation.display_to_labeled import translate_d2l
from translation.labeled_to_display import translate_l2d
from translation.trace import summary
from utils.config import COMMANDS, CALCULI, DEFAULT_ROOT, DIRECTIONS, Job, setup_logging
from utils.generators import generate_proof
from utils.parser import parse_display_sequent, parse_formula, parse_labeled_sequent
from utils.proof_io import (CALCULUS_NAMES, DISPLAY, LABELED, dump_proof, load_axioms,
                            load_model, load_proof)
from visualization.sequent_visualizer import sequent_to_dot

logger = logging.getLogger("tpk")

DEFAULT_DEPTH = 4


def _say(message: str) -> None:
    # human-facing lines go to stderr so stdout stays machine-readable
    print(message, file=sys.stderr)


def read_sequent(source: Path):
    """A display or labeled sequent from a file, or from the argument text itself."""
    text = source.read_text(encoding="utf-8") if source.is_file() else str(source)
    text = text.strip()
    if "=>" in text:
        return parse_labeled_sequent(text)
    return parse_display_sequent(text)


def rule_record(rule) -> Dict[str, Any]:
    return {
        "name": rule.name,
        "premises": [str(p) for p in rule.premises],
        "conclusion": str(rule.conclusion),
        "kind": rule.kind,
    }


class ProofKitCLI:
    """Runs one validated Job."""

    def __init__(self, job: Job):
        self.job = job
        self.axioms: Optional[List[PrimitiveAxiom]] = load_axioms(job.axioms) if job.axioms else None

    @property
    def axiom_list(self) -> List[PrimitiveAxiom]:
        return self.axioms or []

    def run(self) -> int:
        return getattr(self, f"cmd_{self.job.command}")()

    # --- output ---------------------------------------------------------

    def emit(self, text: str, path: Optional[Path] = None) -> None:
        target = path or self.job.out
        if target is None:
            sys.stdout.write(text if text.endswith("\n") else text + "\n")
            return
        target.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
        _say(f"💾 Wrote {target}")

    def emit_json(self, report: Any) -> None:
        self.emit(json.dumps(report, indent=2, sort_keys=True))

    def load(self, path: Path, expected: str):
        proof, calculus, axioms = load_proof(path, self.axioms)
        if calculus != expected:
            raise ValueError(f"{path} holds a {calculus} proof, expected {expected}")
        return proof, axioms

    # --- commands -------------------------------------------------------

    def cmd_check(self) -> int:
        """Check proof files, or evaluate a formula on a model file."""
        if self.job.model is not None:
            return self._check_model()
        reports = []
        for path in self.job.inputs:
            if self.job.calculus == "dkt":
                proof, axioms = self.load(path, DISPLAY)
                verdict = check_display_proof(proof, DisplayCalculus.for_axioms(axioms),
                                              allow_cut=self.job.allow_cut)
            else:
                proof, axioms = self.load(path, LABELED)
                verdict = check_labeled_proof(proof, LabeledCalculus.for_axioms(axioms),
                                              strict=self.job.strict, polytree=self.job.polytree)
            if verdict:
                _say(f"✅ {path}: proof checks ({verdict.metrics.quantity} sequents)")
            else:
                _say(f"❌ {path}: ({verdict.rule}) at node {verdict.path}: {verdict.message}")
            reports.append({"input": str(path), **verdict.model_dump()})
        self.emit_json(reports[0] if len(reports) == 1 else reports)
        return 0 if all(r["ok"] for r in reports) else 1

    def _check_model(self) -> int:
        model = load_model(self.job.model)
        formula = parse_formula(self.job.formula)
        failing = [w for w in model.worlds if not satisfies(model, w, formula)]
        if failing:
            _say(f"❌ {formula} fails at {', '.join(failing)}")
        else:
            _say(f"✅ {formula} is globally true in {self.job.model}")
        self.emit_json({"model": str(self.job.model), "formula": str(formula),
                        "ok": not failing, "failing_worlds": failing})
        return 1 if failing else 0

    def cmd_translate(self) -> int:
        """Translate each input; the trace sidecar sits next to the output."""
        if self.job.out is not None and len(self.job.inputs) > 1:
            raise ValueError("--out needs a single input")
        for path in self.job.inputs:
            if self.job.direction == "d2l":
                proof, axioms = self.load(path, DISPLAY)
                labeled = LabeledCalculus.for_axioms(axioms)
                result, trace = translate_d2l(proof, DisplayCalculus.for_axioms(axioms),
                                              self.job.root or DEFAULT_ROOT, labeled, str(path))
                if self.job.strict or self.job.polytree:
                    verdict = check_labeled_proof(result, labeled, strict=self.job.strict,
                                                  polytree=self.job.polytree)
                    if not verdict:
                        raise TranslationError(f"output fails the requested checks: {verdict.message}")
                    trace.notes.extend(verdict.notes)
                target = LABELED
            else:
                proof, axioms = self.load(path, LABELED)
                result, trace = translate_l2d(proof, LabeledCalculus.for_axioms(axioms),
                                              self.job.root, source_id=str(path))
                target = DISPLAY
            out = self.job.out or path.with_name(f"{path.stem}.{self.job.direction}.json")
            self.emit(dump_proof(result, target, axioms), out)
            sidecar = out.with_name(f"{out.stem}.trace.json")
            sidecar.write_text(trace.model_dump_json(indent=2) + "\n", encoding="utf-8")
            _say(f"✅ {path}: {summary(trace)}")
        return 0

    def cmd_rules(self) -> int:
        """The display and labeled rules generated for the axiom file."""
        axioms = self.axioms
        if axioms is None:
            axioms = load_axioms(self.job.inputs[0]) if self.job.inputs else []
        display, labeled = make_display_rules(axioms), make_labeled_rules(axioms)
        for rule in display + labeled:
            _say(f"{rule}\n")
        _say(f"✅ {len(display)} display rule(s), {len(labeled)} labeled rule(s)")
        self.emit_json({
            "axioms": [str(a) for a in axioms],
            "display": [dict(rule_record(r), axiom=r.description) for r in display],
            "labeled": [dict(rule_record(r), axiom=str(r.axiom)) for r in labeled],
        })
        return 0

    def cmd_gen(self) -> int:
        seed = self.job.seed if self.job.seed is not None else 0
        depth = self.job.depth if self.job.depth is not None else DEFAULT_DEPTH
        proof = generate_proof(seed, depth, self.job.calculus, self.axiom_list)
        self.emit(dump_proof(proof, CALCULUS_NAMES[self.job.calculus], self.axiom_list))
        _say(f"✅ Generated a {CALCULUS_NAMES[self.job.calculus]} proof of {proof.conclusion}")
        return 0

    def cmd_dot(self) -> int:
        sequent = self._labeled_input(self.job.inputs[0])
        self.emit(sequent_to_dot(sequent))
        return 0

    def cmd_metrics(self) -> int:
        reports = []
        for path in self.job.inputs:
            proof, calculus, _ = load_proof(path, self.axioms)
            metrics = display_metrics(proof) if calculus == DISPLAY else labeled_metrics(proof)
            _say(f"📏 {path}: quantity {metrics.quantity}, width {metrics.width}, size {metrics.size}")
            reports.append({"input": str(path), **metrics.model_dump()})
        self.emit_json(reports[0] if len(reports) == 1 else reports)
        return 0

    def cmd_canon(self) -> int:
        """Canonical form of one sequent, or display equivalence of two."""
        if len(self.job.inputs) == 2:
            return self._equivalence(*[read_sequent(p) for p in self.job.inputs])
        sequent = self._labeled_input(self.job.inputs[0])
        self.emit_json({"sequent": str(sequent), "canonical": canonical_form(sequent)})
        return 0

    def _labeled_input(self, source: Path) -> LabeledSequent:
        sequent = read_sequent(source)
        if isinstance(sequent, LabeledSequent):
            return sequent
        return to_labeled(sequent, self.job.root or DEFAULT_ROOT)

    def _equivalence(self, first, second) -> int:
        if isinstance(first, LabeledSequent) or isinstance(second, LabeledSequent):
            raise ValueError("display equivalence takes two display sequents")
        report = {"first": str(first), "second": str(second), "display_equivalent": False}
        if readings_isomorphic(first, second):
            calculus = DisplayCalculus.for_axioms(self.axiom_list)
            derivation = derive_equivalence(first, second, calculus)
            verdict = check_display_proof(derivation, calculus, allow_open=True)
            report["display_equivalent"] = verdict.ok
            report["steps"] = derivation.height()
        if report["display_equivalent"]:
            _say(f"✅ display-equivalent in {report['steps']} step(s)")
        else:
            _say("❌ no display equivalence found")
        self.emit_json(report)
        return 0 if report["display_equivalent"] else 1


# --- argument handling --------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tpk", description=__doc__.strip().splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("inputs", nargs="*", type=Path,
                        help="proof files, or sequent text/files for dot and canon")
    parser.add_argument("--calculus", choices=CALCULI, default="dkt")
    parser.add_argument("--axioms", type=Path, help="axiom file, one axiom or standard name per line")
    parser.add_argument("--root", help=f"root label (default {DEFAULT_ROOT})")
    parser.add_argument("--strict", action="store_true")
    parser.add_argument("--polytree", action="store_true")
    parser.add_argument("--allow-cut", action="store_true")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--depth", type=int)
    parser.add_argument("--out", type=Path)
    parser.add_argument("--direction", choices=DIRECTIONS)
    parser.add_argument("--model", type=Path, help="model file for a semantic check")
    parser.add_argument("--formula", help="formula evaluated on --model")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def job_from_args(args: argparse.Namespace) -> Job:
    return Job(command=args.command, inputs=args.inputs, calculus=args.calculus, axioms=args.axioms,
               root=args.root, strict=args.strict, polytree=args.polytree, allow_cut=args.allow_cut,
               seed=args.seed, depth=args.depth, out=args.out, direction=args.direction,
               model=args.model, formula=args.formula, verbosity=args.verbose)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns the exit code."""
    args = build_parser().parse_args(argv)
    try:
        job = job_from_args(args)
    except ValidationError as e:
        for error in e.errors():
            _say(f"❌ {error['msg']}")
        return 2
    setup_logging(job.verbosity)
    try:
        return ProofKitCLI(job).run()
    except TranslationError as e:
        _say(f"❌ Translation failed: {e}")
        return 1
    except (ParseError, AxiomError, RuleError, PolytreeError, ValueError, OSError) as e:
        _say(f"❌ Bad input: {e}")
        return 2
    except ProofKitError as e:
        _say(f"❌ {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
