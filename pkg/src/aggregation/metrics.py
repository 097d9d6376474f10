"""
Network evaluation metrics: JJ count, logical depth, PND and #(DFFs+INVs).
"""

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List

from ..netlist.cell_library import CellLibrary
from ..netlist.network import GateKind, Network, Origin, compute_levels, logical_depth
from ..postprocess.balancing import pending_balancing_dffs
from ..utils.logger import setup_logger

logger = setup_logger(__name__)

METRIC_KEYS = ('depth', 'jjs', 'pnd', 'dffs_plus_invs', 'splitters', 'balancing_dffs')


@dataclass
class PhaseRecord:
    """Metrics after one pipeline phase, with deltas against the previous phase."""

    phase: str
    depth: int
    jjs: int
    pnd: int
    dffs_plus_invs: int
    splitters: int
    balancing_dffs: int
    deltas: Dict[str, int] = field(default_factory=dict)


@dataclass
class MetricsReport:
    """
    Evaluation quantities of a network; pnd is always jjs * depth.

    Example:
        >>> report = network_metrics(net, CellLibrary())
        >>> report.to_text().splitlines()[0]
        'depth=2'
    """

    depth: int = 0
    jjs: int = 0
    pnd: int = 0
    dffs_plus_invs: int = 0
    splitters: int = 0
    balancing_dffs: int = 0
    user_dffs: int = 0
    gate_counts: Dict[str, int] = field(default_factory=dict)
    per_phase: List[PhaseRecord] = field(default_factory=list)

    def values(self) -> Dict[str, int]:
        return {key: getattr(self, key) for key in METRIC_KEYS}

    def record_phase(self, phase: str, metrics: 'MetricsReport') -> PhaseRecord:
        """Append a phase snapshot and adopt its values as the current ones."""
        previous = self.per_phase[-1] if self.per_phase else None
        values = metrics.values()
        deltas = {
            key: values[key] - getattr(previous, key) for key in METRIC_KEYS
        } if previous else {}
        record = PhaseRecord(phase=phase, deltas=deltas, **values)
        self.per_phase.append(record)

        for key, value in values.items():
            setattr(self, key, value)
        self.user_dffs = metrics.user_dffs
        self.gate_counts = dict(metrics.gate_counts)
        return record

    def to_dict(self) -> Dict[str, Any]:
        return {
            **self.values(),
            'user_dffs': self.user_dffs,
            'gate_counts': dict(self.gate_counts),
            'per_phase': [asdict(record) for record in self.per_phase],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        """Flat ``key=value`` lines; phase entries are prefixed with the phase name."""
        lines = [f"{key}={value}" for key, value in self.values().items()]
        lines.append(f"user_dffs={self.user_dffs}")
        for kind, count in sorted(self.gate_counts.items()):
            lines.append(f"count.{kind}={count}")
        for record in self.per_phase:
            for key in METRIC_KEYS:
                lines.append(f"{record.phase}.{key}={getattr(record, key)}")
            for key, delta in record.deltas.items():
                lines.append(f"{record.phase}.delta_{key}={delta:+d}")
        return '\n'.join(lines) + '\n'


def network_metrics(net: Network, lib: CellLibrary) -> MetricsReport:
    """
    Measure a network.

    jjs sums the library cost of every node (PIs and POs are free), depth is
    the largest internal level and #(DFFs+INVs) counts every DFF and INV
    whatever its origin.

    Raises:
        ConversionError: If a node kind has no library cell
    """
    compute_levels(net)
    jjs = sum(lib.jj(node.kind) for node in net)
    depth = logical_depth(net)

    counts: Dict[str, int] = {}
    for node in net:
        if node.kind not in (GateKind.PI, GateKind.PO):
            counts[node.kind.value] = counts.get(node.kind.value, 0) + 1

    return MetricsReport(
        depth=depth,
        jjs=jjs,
        pnd=jjs * depth,
        dffs_plus_invs=counts.get('DFF', 0) + counts.get('INV', 0),
        splitters=counts.get('SP', 0),
        balancing_dffs=sum(1 for node in net if node.origin is Origin.BALANCING_DFF),
        user_dffs=sum(1 for node in net if node.is_user_dff),
        gate_counts=counts,
    )


def estimate_pnd(net: Network, lib: CellLibrary, levels_current: bool = True) -> int:
    """
    PND the network would have after path balancing, without inserting anything.

    Uses stored levels unless ``levels_current`` is False.
    """
    if not levels_current:
        compute_levels(net)
    jjs = sum(lib.jj(node.kind) for node in net)
    jjs += pending_balancing_dffs(net) * lib.jj(GateKind.DFF)
    return jjs * logical_depth(net)
