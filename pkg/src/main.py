"""
Main orchestration module for FluxMap.

Coordinates gate conversion, splitter insertion, PND-driven mapping, path
balancing, merge & replace, metrics and equivalence checking, and runs
benchmark folders through the baseline and full flows.
"""

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from .aggregation import BenchmarkComparison, MetricsReport, network_metrics
from .ingestion import BenchFolderReader
from .mapping import MappingOptions, NetworkMapper
from .mapping.mapper import PassStats
from .netlist import CellLibrary, Network
from .postprocess import balance_paths, merge_and_replace
from .preprocess import convert_gates, insert_splitters
from .reporting import ExcelReportGenerator
from .utils.config_loader import ConfigLoader
from .utils.errors import FluxMapError, VerificationError
from .utils.logger import setup_logger
from .verification import EquivalenceReport, check_equivalence

logger = setup_logger(__name__)


@dataclass
class SynthesisResult:
    """Everything one pipeline run produced."""

    source: Network
    network: Network
    metrics: MetricsReport
    passes: List[PassStats] = field(default_factory=list)
    verification: Optional[EquivalenceReport] = None
    cut_size: Optional[int] = None


class SynthesisPipeline:
    """
    Run the full synthesis flow on one network.

    Steps:
    1. Gate conversion into the cell basis
    2. Splitter insertion
    3. PND-driven mapping (every cut size up to K when ``sweep_k`` is set)
    4. Path balancing
    5. Merge & replace (optional)
    6. Equivalence check against the input (optional)

    Example:
        >>> pipeline = SynthesisPipeline(ConfigLoader('config/config.yaml'))
        >>> result = pipeline.run(parse_bench(text, 'fig5'))
        >>> result.metrics.pnd
        52
    """

    def __init__(
        self,
        config: Optional[ConfigLoader] = None,
        lib: Optional[CellLibrary] = None,
        options: Optional[MappingOptions] = None,
    ):
        self.config = config or ConfigLoader()
        self.lib = lib or CellLibrary.from_mapping(self.config.section('cell_library'))
        self.options = options or MappingOptions.from_config(self.config.section('mapping'))
        self.merge_replace = bool(self.config.get('postprocess.merge_replace', True))
        self.verify = bool(self.config.get('verification.enabled', True))

    def preprocess(self, source: Network) -> Network:
        """Converted copy of ``source`` with splitter trees; the input is untouched."""
        net = source.copy()
        convert_gates(net, self.lib)
        insert_splitters(net)
        return net

    def baseline(self, source: Network) -> MetricsReport:
        """Metrics of the preprocess-only flow: conversion, splitters, balancing."""
        net = balance_paths(self.preprocess(source))
        return network_metrics(net, self.lib)

    def run(self, source: Network) -> SynthesisResult:
        """
        Execute the flow on a copy of ``source``.

        Raises:
            ConversionError: If a gate cannot be expressed in the cell basis
            VerificationError: If the result is not equivalent to ``source``
        """
        logger.info("=" * 60)
        logger.info(f"Synthesizing '{source.name}' ({len(source)} nodes)")
        logger.info("=" * 60)
        report = MetricsReport()

        logger.info("Step 1: Gate conversion")
        net = source.copy()
        convert_gates(net, self.lib)
        self._record(report, 'convert', net)

        logger.info("Step 2: Splitter insertion")
        insert_splitters(net)
        self._record(report, 'splitters', net)

        logger.info("Step 3: Mapping")
        net, passes, cut_size = self.map(net)
        self._record(report, 'map', net)

        logger.info("Step 4: Path balancing")
        balance_paths(net)
        self._record(report, 'balance', net)

        if self.merge_replace:
            logger.info("Step 5: Merge & replace")
            merge_and_replace(net)
            self._record(report, 'merge_replace', net)
        else:
            logger.info("Step 5: Merge & replace skipped")

        verification = None
        if self.verify:
            logger.info("Step 6: Equivalence check")
            verification = self.check(source, net)
        else:
            logger.info("Step 6: Equivalence check skipped")

        logger.info(
            f"Finished '{source.name}': depth {report.depth}, {report.jjs} JJs, "
            f"PND {report.pnd}, {report.dffs_plus_invs} DFFs+INVs")
        return SynthesisResult(source, net, report, passes, verification, cut_size)

    def map(self, net: Network) -> Tuple[Network, List[PassStats], int]:
        """
        Map a preprocessed network.

        With ``sweep_k`` every cut size from 2 to K is tried on its own copy
        and the mapping whose balanced, merged and replaced PND (then #JJs) is
        lowest wins; ties go to the larger cut size. The choice ignores the
        ``merge_replace`` switch, so both settings post-process the same
        mapping.

        Returns:
            Mapped network, the winning mapper's passes and its cut size
        """
        sizes = range(self.options.k, 1, -1) if self.options.sweep_k else [self.options.k]
        best: Optional[Tuple[Tuple[int, int], Network, List[PassStats], int]] = None
        for k in sizes:
            mapper = NetworkMapper(self.lib, replace(self.options, k=k))
            mapped = mapper.run(net.copy())
            if len(sizes) == 1:
                return mapped, list(mapper.passes), k

            finished = network_metrics(merge_and_replace(balance_paths(mapped.copy())), self.lib)
            score = (finished.pnd, finished.jjs)
            logger.info(f"  K={k}: PND {finished.pnd}, {finished.jjs} JJs after post-processing")
            if best is None or score < best[0]:
                best = (score, mapped, list(mapper.passes), k)

        _, mapped, passes, k = best
        logger.info(f"  Keeping the K={k} mapping")
        return mapped, passes, k

    def check(self, source: Network, net: Network) -> EquivalenceReport:
        """
        Raises:
            VerificationError: If the networks differ on some vector
        """
        result = check_equivalence(
            source, net,
            vectors=int(self.config.get('verification.vectors', 10000)),
            seed=int(self.config.get('verification.seed', 2023)),
            exhaustive_limit=int(self.config.get('verification.exhaustive_limit', 12)),
        )
        if not result.equivalent:
            raise VerificationError(
                f"'{net.name}' is not equivalent to its input "
                f"(outputs {', '.join(result.mismatched_outputs[:5])})",
                result.counterexample,
            )
        return result

    def _record(self, report: MetricsReport, phase: str, net: Network) -> None:
        record = report.record_phase(phase, network_metrics(net, self.lib))
        logger.info(
            f"  {phase}: depth {record.depth}, {record.jjs} JJs, PND {record.pnd}, "
            f"{record.splitters} SPs, {record.balancing_dffs} balancing DFFs")


class BenchmarkRunner:
    """
    Compare the baseline (B1) and full (F) flows over a folder of `.bench` files.

    Example:
        >>> runner = BenchmarkRunner(SynthesisPipeline(config))
        >>> table = runner.run('benchmarks/')
        >>> runner.save(table, 'data/output')
    """

    def __init__(self, pipeline: SynthesisPipeline):
        self.pipeline = pipeline
        self.comparison = BenchmarkComparison()
        self.phase_rows: List[Dict[str, Any]] = []
        self.failures: Dict[str, str] = {}

    def run(self, directory: str, pattern: str = '*.bench') -> pd.DataFrame:
        """
        Run every netlist in ``directory``; failing circuits are logged and skipped.

        Raises:
            FluxMapError: If no circuit could be synthesized
        """
        circuits = BenchFolderReader({'path': directory, 'pattern': pattern}).read()
        for name, source in circuits.items():
            try:
                baseline = self.pipeline.baseline(source)
                result = self.pipeline.run(source)
            except FluxMapError as e:
                logger.error(f"Benchmark {name} failed: {str(e)}")
                self.failures[name] = str(e)
                continue

            self.comparison.add(name, baseline, result.metrics)
            for record in result.metrics.per_phase:
                self.phase_rows.append({
                    'circuit': name,
                    'phase': record.phase,
                    'depth': record.depth,
                    'jjs': record.jjs,
                    'pnd': record.pnd,
                    'dffs_plus_invs': record.dffs_plus_invs,
                    'splitters': record.splitters,
                    'balancing_dffs': record.balancing_dffs,
                })

        if not len(self.comparison):
            raise FluxMapError(f"No benchmark in {directory} could be synthesized")

        table = self.comparison.to_dataframe()
        logger.info(self.comparison.export_summary_text(table))
        return table

    def save(self, table: pd.DataFrame, output_dir: str, excel: bool = True) -> List[str]:
        """Write ``benchmarks.csv`` and, optionally, ``benchmarks.xlsx``."""
        directory = Path(output_dir)
        directory.mkdir(parents=True, exist_ok=True)

        csv_path = directory / 'benchmarks.csv'
        table.to_csv(csv_path, float_format='%.2f')
        written = [str(csv_path)]
        logger.info(f"Benchmark table: {csv_path}")

        if excel:
            xlsx_path = directory / 'benchmarks.xlsx'
            ExcelReportGenerator().generate(
                table, str(xlsx_path), phases=pd.DataFrame(self.phase_rows))
            written.append(str(xlsx_path))
        return written
