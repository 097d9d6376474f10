"""
Command-line entry point for FluxMap.

Usage:
    python run.py synth circuit.bench -o mapped.bench     # full flow, verified
    python run.py metrics circuit.bench --preprocess      # metrics of the baseline netlist
    python run.py cuts circuit.bench H --k 3              # inspect the cuts of one node
    python run.py verify a.bench b.bench                  # equivalence check
    python run.py bench benchmarks/                       # B1 vs F table (CSV + workbook)

Exit codes: 0 success, 1 usage, configuration or other toolkit error, 2 netlist
parse error, 3 verification failure.
"""

import argparse
import json
import sys
import traceback
from pathlib import Path
from typing import List, NoReturn, Optional

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from src.aggregation import network_metrics
from src.ingestion import BenchReader, load_cell_library
from src.main import BenchmarkRunner, SynthesisPipeline
from src.mapping import CutEnumerator, MappingOptions, minimize, regenerate_cut
from src.mapping.cuts import cost_original_cut
from src.netlist import CellLibrary, Network
from src.reporting import write_bench, write_bench_json
from src.utils.config_loader import ConfigLoader
from src.utils.errors import BenchParseError, ConfigError, FluxMapError, VerificationError
from src.utils.logger import configure_logging, setup_logger
from src.verification import check_equivalence

logger = setup_logger(__name__)

DEFAULT_CONFIG = 'config/config.yaml'


class CliParser(argparse.ArgumentParser):
    """Usage errors exit with 1; exit code 2 means a netlist parse error here."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(
        prog='run.py',
        description='FluxMap: majority-aware SFQ technology mapping',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python run.py synth c17.bench -o c17.mapped.bench --report c17.txt
  python run.py synth c432.bench --k 3 --no-merge-replace --json
  python run.py bench benchmarks/ -o data/output
        """
    )
    parser.add_argument('--config', default=None,
                        help=f'Path to configuration file (default: {DEFAULT_CONFIG} when present)')
    parser.add_argument('--lib', default=None, help='Cell library file (NAME=JJS lines)')
    parser.add_argument('--log-level', default=None, help='Logging level (default: from config)')

    mapping = argparse.ArgumentParser(add_help=False)
    mapping.add_argument('--k', type=int, default=None, help='Cut size limit, 2 to 4')
    mapping.add_argument('--max-passes', type=int, default=None, help='Mapping pass limit')
    mapping.add_argument('--no-maj', action='store_true', help='Disable majority fusion')
    mapping.add_argument('--no-xor', action='store_true', help='Disable XOR/XNOR fusion')
    mapping.add_argument('--no-k-sweep', action='store_true',
                         help='Map with K only instead of every cut size up to K')
    mapping.add_argument('--no-merge-replace', action='store_true',
                         help='Skip DFF merging and INV replacement')
    mapping.add_argument('--no-verify', action='store_true', help='Skip the equivalence check')

    checking = argparse.ArgumentParser(add_help=False)
    checking.add_argument('--vectors', type=int, default=None,
                          help='Random vectors when exhaustive checking is too large')
    checking.add_argument('--seed', type=int, default=None, help='Random vector seed')

    sub = parser.add_subparsers(dest='command', required=True)

    synth = sub.add_parser('synth', parents=[mapping, checking], help='Synthesize a netlist')
    synth.add_argument('input', help='Input .bench file')
    synth.add_argument('-o', '--output', default=None, help='Mapped .bench path')
    synth.add_argument('--report', default=None, help='Write the metrics report here')
    synth.add_argument('--json', action='store_true',
                       help='JSON report on stdout and a JSON netlist mirror')

    metrics = sub.add_parser('metrics', help='Report metrics of a netlist')
    metrics.add_argument('input', help='Input .bench file')
    metrics.add_argument('--preprocess', action='store_true',
                         help='Convert gates, insert splitters and balance first')
    metrics.add_argument('--json', action='store_true', help='JSON report')

    cuts = sub.add_parser('cuts', parents=[mapping], help='List the cuts of one node')
    cuts.add_argument('input', help='Input .bench file')
    cuts.add_argument('node', help='Node name')

    verify = sub.add_parser('verify', parents=[checking], help='Check two netlists for equivalence')
    verify.add_argument('first', help='First .bench file')
    verify.add_argument('second', help='Second .bench file')
    verify.add_argument('--json', action='store_true', help='JSON result')

    bench = sub.add_parser('bench', parents=[mapping, checking],
                           help='Compare the baseline and full flows over a folder')
    bench.add_argument('directory', help='Folder of .bench files')
    bench.add_argument('-o', '--output', default=None, help='Output folder (default: from config)')
    bench.add_argument('--no-excel', action='store_true', help='Write the CSV only')

    return parser


def load_config(args: argparse.Namespace) -> ConfigLoader:
    """Configuration with command-line flags applied on top."""
    config_path = args.config
    if config_path is None and Path(DEFAULT_CONFIG).exists():
        config_path = DEFAULT_CONFIG
    config = ConfigLoader(config_path)

    overrides = {
        'mapping.k': getattr(args, 'k', None),
        'mapping.max_passes': getattr(args, 'max_passes', None),
        'verification.vectors': getattr(args, 'vectors', None),
        'verification.seed': getattr(args, 'seed', None),
    }
    for key, value in overrides.items():
        if value is not None:
            config.set(key, value)
    if getattr(args, 'no_maj', False):
        config.set('mapping.use_maj', False)
    if getattr(args, 'no_xor', False):
        config.set('mapping.use_xor', False)
    if getattr(args, 'no_k_sweep', False):
        config.set('mapping.sweep_k', False)
    if getattr(args, 'no_merge_replace', False):
        config.set('postprocess.merge_replace', False)
    if getattr(args, 'no_verify', False):
        config.set('verification.enabled', False)
    return config


def load_library(args: argparse.Namespace, config: ConfigLoader) -> CellLibrary:
    if args.lib:
        return load_cell_library(args.lib)
    return CellLibrary.from_mapping(config.section('cell_library'))


def read_netlist(path: str) -> Network:
    return BenchReader({'path': path}).read()


def _emit(text: str, path: Optional[str] = None) -> None:
    sys.stdout.write(text if text.endswith('\n') else text + '\n')
    if path:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text, encoding='utf-8')
        logger.info(f"Report written: {path}")


def cmd_synth(args: argparse.Namespace, config: ConfigLoader, lib: CellLibrary) -> int:
    source = read_netlist(args.input)
    result = SynthesisPipeline(config, lib).run(source)

    output = args.output
    if output is None:
        output = str(Path(config.get('output.directory', 'data/output'))
                     / f"{source.name}.mapped.bench")
    Path(output).parent.mkdir(parents=True, exist_ok=True)
    Path(output).write_text(write_bench(result.network), encoding='utf-8')
    logger.info(f"Mapped netlist: {output}")

    as_json = args.json or bool(config.get('output.json', False))
    if as_json:
        mirror = Path(output).with_suffix('.json')
        mirror.write_text(write_bench_json(result.network), encoding='utf-8')
        logger.info(f"JSON netlist: {mirror}")

    _emit(result.metrics.to_json() if as_json else result.metrics.to_text(), args.report)
    return 0


def cmd_metrics(args: argparse.Namespace, config: ConfigLoader, lib: CellLibrary) -> int:
    net = read_netlist(args.input)
    if args.preprocess:
        pipeline = SynthesisPipeline(config, lib)
        report = pipeline.baseline(net)
    else:
        report = network_metrics(net, lib)
    _emit(report.to_json() if args.json else report.to_text())
    return 0


def _names(net: Network, ids) -> str:
    return ', '.join(net.name_of(i) for i in sorted(ids))


def cmd_cuts(args: argparse.Namespace, config: ConfigLoader, lib: CellLibrary) -> int:
    options = MappingOptions.from_config(config.section('mapping'))
    net = SynthesisPipeline(config, lib, options).preprocess(read_netlist(args.input))
    root = net.find(args.node)

    cuts = CutEnumerator(options.k, options.cut_limit).cuts(net, root)
    lines = [f"node {args.node} (K={options.k}): {len(cuts)} cut(s)"]
    for number, cut in enumerate(cuts, 1):
        cover = minimize(cut.truth, cut.arity, options.use_maj, options.use_xor)
        candidate = regenerate_cut(net, cut, lib, options.use_maj, options.use_xor,
                                   options.complement_covers)
        line = (f"cut {number}: leaves=[{_names(net, cut.leaves)}] "
                f"interior=[{_names(net, cut.interior)}] "
                f"truth={cut.truth:0{1 << cut.arity}b} cover={cover} "
                f"original_pnd={cost_original_cut(net, cut, lib)}")
        if candidate is not None:
            line += (f" jjs={candidate.jjs} depth={candidate.local_depth} "
                     f"pnd={candidate.pnd} improvement={candidate.improvement}")
        lines.append(line)
    _emit('\n'.join(lines))
    return 0


def cmd_verify(args: argparse.Namespace, config: ConfigLoader, lib: CellLibrary) -> int:
    result = check_equivalence(
        read_netlist(args.first), read_netlist(args.second),
        vectors=int(config.get('verification.vectors', 10000)),
        seed=int(config.get('verification.seed', 2023)),
        exhaustive_limit=int(config.get('verification.exhaustive_limit', 12)),
    )
    if args.json:
        _emit(json.dumps({
            'equivalent': result.equivalent,
            'vectors': result.vectors_checked,
            'exhaustive': result.exhaustive,
            'counterexample': result.counterexample,
            'mismatched_outputs': result.mismatched_outputs,
        }, indent=2))
    elif result.equivalent:
        _emit(f"equivalent ({result.vectors_checked} "
              f"{'exhaustive' if result.exhaustive else 'random'} vectors)")
    else:
        assignment = ' '.join(f"{k}={v}" for k, v in result.counterexample.items())
        _emit(f"NOT equivalent: {', '.join(result.mismatched_outputs)}\n"
              f"counterexample: {assignment}")
    return 0 if result.equivalent else 3


def cmd_bench(args: argparse.Namespace, config: ConfigLoader, lib: CellLibrary) -> int:
    runner = BenchmarkRunner(SynthesisPipeline(config, lib))
    table = runner.run(args.directory)
    runner.save(table, args.output or config.get('output.directory', 'data/output'),
                excel=not args.no_excel)
    _emit(runner.comparison.export_summary_text(table))
    return 0


COMMANDS = {
    'synth': cmd_synth,
    'metrics': cmd_metrics,
    'cuts': cmd_cuts,
    'verify': cmd_verify,
    'bench': cmd_bench,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one subcommand and return its exit code."""
    args = build_parser().parse_args(argv)

    try:
        config = load_config(args)
        configure_logging(args.log_level or config.get('logging.level', 'INFO'),
                          config.get('logging.file'))
        lib = load_library(args, config)
        return COMMANDS[args.command](args, config, lib)

    except BenchParseError as e:
        logger.error(f"Parse error: {str(e)}")
        return 2
    except VerificationError as e:
        logger.error(f"Verification failed: {str(e)}; counterexample {e.counterexample}")
        return 3
    except ConfigError as e:
        logger.error(f"Configuration error: {str(e)}")
        return 1
    except (FluxMapError, OSError, ValueError) as e:
        logger.error(f"{type(e).__name__}: {str(e)}")
        logger.debug(traceback.format_exc())
        return 1


if __name__ == '__main__':
    sys.exit(main())
