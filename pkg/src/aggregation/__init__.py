"""Network metrics and benchmark comparison."""

from .comparison import BenchmarkComparison
from .metrics import METRIC_KEYS, MetricsReport, PhaseRecord, estimate_pnd, network_metrics

__all__ = [
    'BenchmarkComparison', 'METRIC_KEYS', 'MetricsReport', 'PhaseRecord',
    'estimate_pnd', 'network_metrics',
]
