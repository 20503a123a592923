"""
Translation traces: which target nodes each source node produced, and
the metric ledger of a translation. Written as a JSON sidecar by the CLI.
"""
from typing import Dict, List

from pydantic import BaseModel, ConfigDict, Field

from models.proof_tree import Metrics

EXPANSION = "expansion"


class NodeEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: str
    rules: List[str]
    expansion: bool = False


class TranslationTrace(BaseModel):
    """Per-translation record; paths are dotted premise indices ("" is the root)."""
    source_id: str = ""
    direction: str
    root: str
    nodes: List[NodeEntry] = Field(default_factory=list)
    metrics_in: Metrics
    metrics_out: Metrics
    bound: int
    notes: List[str] = Field(default_factory=list)

    @property
    def within_bound(self) -> bool:
        return self.metrics_out.size <= self.bound

    def node_map(self) -> Dict[str, List[str]]:
        mapping: Dict[str, List[str]] = {}
        for entry in self.nodes:
            mapping.setdefault(entry.source, []).extend(entry.rules)
        return mapping

    def record(self, path, rules, expansion: bool = False) -> None:
        self.nodes.append(NodeEntry(source=".".join(str(i) for i in path), rules=list(rules),
                                    expansion=expansion))


def summary(trace: TranslationTrace) -> str:
    return (f"{trace.direction}: quantity {trace.metrics_in.quantity} -> {trace.metrics_out.quantity}, "
            f"width {trace.metrics_in.width} -> {trace.metrics_out.width}, "
            f"size {trace.metrics_in.size} -> {trace.metrics_out.size} (bound {trace.bound})")
