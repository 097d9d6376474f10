"""
Benchmark comparison: preprocess-only baseline (B1) against the full flow (F).

Collects one row per circuit with Depth, #JJs, PND and #(DFFs+INVs) for both
flows, appends an ``Avg`` row and improvement percentages.
"""

from typing import Dict, List, Optional

import pandas as pd

from ..utils.logger import setup_logger
from .metrics import MetricsReport

logger = setup_logger(__name__)

COLUMNS: Dict[str, str] = {
    'depth': 'Depth',
    'jjs': '#JJs',
    'pnd': 'PND',
    'dffs_plus_invs': '#(DFFs+INVs)',
}
FLOWS = ('B1', 'F')


def _improvement(baseline: pd.Series, final: pd.Series) -> pd.Series:
    """Percent reduction from baseline to final; NaN where the baseline is zero."""
    baseline = baseline.astype(float)
    return ((baseline - final) / baseline.where(baseline != 0) * 100).round(2)


class BenchmarkComparison:
    """
    Build the B1-vs-F comparison table.

    Example:
        >>> comparison = BenchmarkComparison()
        >>> comparison.add('c17', baseline_report, final_report)
        >>> table = comparison.to_dataframe()
        >>> table.loc['Avg', 'PND impr %']
    """

    def __init__(self):
        self.rows: List[Dict[str, float]] = []
        self.circuits: List[str] = []

    def __len__(self) -> int:
        return len(self.rows)

    def add(self, circuit: str, baseline: MetricsReport, final: MetricsReport) -> None:
        row: Dict[str, float] = {}
        for flow, report in zip(FLOWS, (baseline, final)):
            for key, label in COLUMNS.items():
                row[f"{flow} {label}"] = getattr(report, key)
        self.rows.append(row)
        self.circuits.append(circuit)
        logger.debug(f"Added {circuit}: PND {baseline.pnd} -> {final.pnd}")

    def to_dataframe(self, include_average: bool = True) -> pd.DataFrame:
        """
        Comparison table indexed by circuit name.

        Columns are ``B1 <metric>``, ``F <metric>`` and ``<metric> impr %``
        for every metric.
        """
        columns = [f"{flow} {label}" for flow in FLOWS for label in COLUMNS.values()]
        table = pd.DataFrame(self.rows, index=pd.Index(self.circuits, name='circuit'),
                             columns=columns)

        if include_average and not table.empty:
            table.loc['Avg'] = table.mean(numeric_only=True).round(2)

        for label in COLUMNS.values():
            table[f"{label} impr %"] = _improvement(table[f"B1 {label}"], table[f"F {label}"])

        logger.info(f"Built comparison table for {len(self.rows)} circuit(s)")
        return table

    def export_summary_text(self, table: Optional[pd.DataFrame] = None) -> str:
        """Short text summary of the average improvements."""
        table = self.to_dataframe() if table is None else table
        lines = ['=' * 60, 'BENCHMARK COMPARISON (B1 -> F)', '=' * 60]
        if table.empty:
            lines.append('No circuits.')
        else:
            lines.append(f"Circuits: {len(self.rows)}")
            average = table.loc['Avg'] if 'Avg' in table.index else table.iloc[-1]
            for label in COLUMNS.values():
                value = average[f"{label} impr %"]
                text = 'n/a' if pd.isna(value) else f"{value:+.2f}%"
                lines.append(f"  {label}: {average[f'B1 {label}']:.2f} -> "
                             f"{average[f'F {label}']:.2f} ({text})")
        lines.append('=' * 60)
        return '\n'.join(lines)
