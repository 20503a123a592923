"""
Run configuration for the tpk command line: the validated Job model,
logging setup and the default constants shared across packages.
"""
import logging
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

DEFAULT_ROOT = "w0"
MODEL_SIZE_CAP = 6
L2D_SIZE_FACTOR = 64

# Weighted rule choice for random proof generation; modal and pt rules
# are favoured so the translators meet their harder cases often.
GENERATOR_WEIGHTS = {
    "logical": 2,
    "modal": 4,
    "pt": 4,
    "structural": 1,
}

COMMANDS = ("check", "translate", "rules", "gen", "dot", "metrics", "canon")
CALCULI = ("dkt", "g3kt")
DIRECTIONS = ("d2l", "l2d")

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class Job(BaseModel):
    """One CLI invocation."""
    model_config = ConfigDict(frozen=True)

    command: str
    inputs: List[Path] = Field(default_factory=list)
    calculus: str = "dkt"
    axioms: Optional[Path] = None
    root: Optional[str] = None
    strict: bool = False
    polytree: bool = False
    allow_cut: bool = False
    seed: Optional[int] = None
    depth: Optional[int] = Field(default=None, ge=0)
    out: Optional[Path] = None
    direction: Optional[str] = None
    model: Optional[Path] = None
    formula: Optional[str] = None
    verbosity: int = 0

    @model_validator(mode="after")
    def _check_flags(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.calculus not in CALCULI:
            raise ValueError(f"unknown calculus {self.calculus!r}; use one of {', '.join(CALCULI)}")
        if self.command == "translate":
            if self.direction not in DIRECTIONS:
                raise ValueError("translate needs a direction: d2l or l2d")
        elif self.direction is not None:
            raise ValueError("a direction only applies to translate")
        labeled_job = self.command == "translate" or (self.command == "check" and self.calculus == "g3kt")
        if (self.strict or self.polytree) and not labeled_job:
            raise ValueError("--strict/--polytree apply to labeled checks and translation only")
        if self.allow_cut and not (self.command == "check" and self.calculus == "dkt"):
            raise ValueError("--allow-cut applies to display checks only")
        if (self.seed is not None or self.depth is not None) and self.command != "gen":
            raise ValueError("--seed/--depth apply to gen only")
        if (self.model is None) != (self.formula is None):
            raise ValueError("--model and --formula go together")
        if self.model is not None and self.command != "check":
            raise ValueError("--model applies to check only")
        if not self.inputs and self.command not in ("gen", "rules") and self.model is None:
            raise ValueError(f"{self.command} needs an input")
        return self


def setup_logging(verbosity: int = 0) -> None:
    """WARNING by default, INFO with -v, DEBUG with -vv."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)
