"""
ISCAS `.bench` netlist parser.

Accepted dialect::

    # comment
    INPUT(a)
    OUTPUT(y)
    y = AND(a, b, c)       # origin=user_logic

Keywords: AND, OR, NAND, NOR, XOR, XNOR, NOT, BUF/BUFF, DFF, MAJ, SP. BUF
lines are absorbed as wires. A trailing ``# origin=<value>`` comment restores
the node origin written by ``write_bench``.
"""

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..netlist.network import GateKind, Network, Origin, default_origin, topological_order
from ..utils.errors import BenchParseError, StructuralError
from ..utils.logger import setup_logger
from .base import NetlistReader

logger = setup_logger(__name__)

_DECL_RE = re.compile(r'^(INPUT|OUTPUT)\s*\(\s*([^\s()]+)\s*\)$', re.IGNORECASE)
_GATE_RE = re.compile(r'^([^\s=()]+)\s*=\s*([A-Za-z][A-Za-z0-9_]*)\s*\((.*)\)$')
_ORIGIN_RE = re.compile(r'origin\s*=\s*([a-z_]+)')

# keyword -> (min arity, max arity); None means unbounded
KEYWORD_ARITY: Dict[str, Tuple[int, Optional[int]]] = {
    'AND': (2, None),
    'OR': (2, None),
    'NAND': (2, None),
    'NOR': (2, None),
    'XOR': (2, None),
    'XNOR': (2, None),
    'NOT': (1, 1),
    'BUF': (1, 1),
    'DFF': (1, 1),
    'MAJ': (3, 3),
    'SP': (1, 1),
}

KEYWORD_ALIASES = {'BUFF': 'BUF', 'INV': 'NOT'}


@dataclass
class BenchLine:
    """One gate definition: ``lhs = op(args)``."""

    lhs: str
    op: str
    args: List[str] = field(default_factory=list)
    origin: Optional[str] = None
    line_number: int = 0


def keyword_kind(op: str, arity: int) -> GateKind:
    """Gate kind for a bench keyword at a given fan-in."""
    if op == 'AND':
        return {2: GateKind.AND2, 3: GateKind.AND3, 4: GateKind.AND4}.get(arity, GateKind.AND)
    if op == 'OR':
        return {2: GateKind.OR2, 3: GateKind.OR3, 4: GateKind.OR4}.get(arity, GateKind.OR)
    if op == 'XOR':
        return GateKind.XOR2 if arity == 2 else GateKind.XOR
    return {
        'NAND': GateKind.NAND,
        'NOR': GateKind.NOR,
        'XNOR': GateKind.XNOR,
        'NOT': GateKind.INV,
        'DFF': GateKind.DFF,
        'MAJ': GateKind.MAJ3,
        'SP': GateKind.SP,
    }[op]


def _split_comment(raw: str) -> Tuple[str, Optional[str]]:
    code, _, comment = raw.partition('#')
    match = _ORIGIN_RE.search(comment)
    return code.strip(), (match.group(1) if match else None)


def _parse_origin(value: str, line_number: int) -> Origin:
    try:
        return Origin(value)
    except ValueError:
        raise BenchParseError(f"unknown origin '{value}'", line_number) from None


def parse_bench(text: str, name: str = 'bench') -> Network:
    """
    Parse `.bench` text into a Network.

    Multi-fan-out signals are left as-is and wide AND/OR/XOR gates keep their
    arity; both are handled by preprocessing. DFF lines become user flip-flops
    unless annotated otherwise, so feedback through them is legal.

    Args:
        text: Netlist text
        name: Name given to the resulting network

    Returns:
        The parsed Network

    Raises:
        BenchParseError: On malformed lines, unknown keywords, arity violations,
            undefined or duplicate signals and combinational cycles
    """
    inputs: List[Tuple[str, int]] = []
    outputs: List[Tuple[str, int]] = []
    gates: List[BenchLine] = []
    defined_at: Dict[str, int] = {}

    for line_number, raw in enumerate(text.splitlines(), start=1):
        code, origin = _split_comment(raw)
        if not code:
            continue

        decl = _DECL_RE.match(code)
        if decl:
            keyword, signal = decl.group(1).upper(), decl.group(2)
            if keyword == 'INPUT':
                if signal in defined_at:
                    raise BenchParseError(
                        f"duplicate definition of '{signal}' (first at line {defined_at[signal]})",
                        line_number)
                defined_at[signal] = line_number
                inputs.append((signal, line_number))
            else:
                if any(signal == out for out, _ in outputs):
                    raise BenchParseError(f"duplicate output '{signal}'", line_number)
                outputs.append((signal, line_number))
            continue

        gate = _GATE_RE.match(code)
        if not gate:
            raise BenchParseError(f"malformed line: {code!r}", line_number)

        lhs, op = gate.group(1), gate.group(2).upper()
        op = KEYWORD_ALIASES.get(op, op)
        if op not in KEYWORD_ARITY:
            raise BenchParseError(f"unknown gate keyword '{gate.group(2)}'", line_number)

        args = [a.strip() for a in gate.group(3).split(',') if a.strip()]
        low, high = KEYWORD_ARITY[op]
        if len(args) < low or (high is not None and len(args) > high):
            expected = str(low) if low == high else f"at least {low}"
            raise BenchParseError(
                f"{op} '{lhs}' has {len(args)} input(s), expected {expected}", line_number)

        if lhs in defined_at:
            raise BenchParseError(
                f"duplicate definition of '{lhs}' (first at line {defined_at[lhs]})", line_number)
        defined_at[lhs] = line_number
        gates.append(BenchLine(lhs, op, args, origin, line_number))

    for line in gates:
        for arg in line.args:
            if arg not in defined_at:
                raise BenchParseError(f"undefined signal '{arg}'", line.line_number)
    for signal, line_number in outputs:
        if signal not in defined_at:
            raise BenchParseError(f"undefined signal '{signal}'", line_number)

    return _build_network(name, inputs, outputs, gates)


def _build_network(
    name: str,
    inputs: List[Tuple[str, int]],
    outputs: List[Tuple[str, int]],
    gates: List[BenchLine],
) -> Network:
    net = Network(name)
    signal_ids: Dict[str, int] = {}
    line_of: Dict[str, int] = {}

    for signal, line_number in inputs:
        signal_ids[signal] = net.add_pi(signal)
        line_of[signal] = line_number

    buffers = {line.lhs: line for line in gates if line.op == 'BUF'}
    logic = [line for line in gates if line.op != 'BUF']

    for line in logic:
        kind = keyword_kind(line.op, len(line.args))
        origin = _parse_origin(line.origin, line.line_number) if line.origin else default_origin(kind)
        signal_ids[line.lhs] = net.add_node(kind, origin=origin, name=line.lhs)
        line_of[line.lhs] = line.line_number

    def resolve(signal: str, line_number: int) -> int:
        seen = set()
        while signal in buffers:
            if signal in seen:
                raise BenchParseError(f"combinational cycle through '{signal}'", line_number)
            seen.add(signal)
            signal = buffers[signal].args[0]
        return signal_ids[signal]

    for line in logic:
        fanins = [resolve(arg, line.line_number) for arg in line.args]
        net.set_fanins(signal_ids[line.lhs], fanins)

    for signal, line_number in outputs:
        net.add_po(resolve(signal, line_number), signal)

    try:
        topological_order(net)
    except StructuralError as e:
        raise BenchParseError(f"combinational cycle through '{e.node}'",
                              line_of.get(e.node or '', 0)) from None

    if buffers:
        logger.debug(f"Absorbed {len(buffers)} BUF line(s) as wires")
    logger.info(
        f"Parsed '{name}': {len(net.pis)} inputs, {len(net.pos)} outputs, "
        f"{len(logic)} gates"
    )
    return net


class BenchReader(NetlistReader):
    """
    Read a single `.bench` file.

    Configuration parameters:
        - path: Path to the `.bench` file (required)
        - encoding: File encoding (default: 'utf-8')

    Example:
        >>> reader = BenchReader({'path': 'benchmarks/c17.bench'})
        >>> net = reader.read()
    """

    label = 'Bench reader'

    def read(self) -> Network:
        """
        Raises:
            FileNotFoundError: If the file doesn't exist
            BenchParseError: If the text is not valid `.bench`
        """
        file_path = self.path
        if not file_path.exists():
            raise FileNotFoundError(f"Bench file not found: {file_path}")

        logger.info(f"Reading bench file: {file_path}")
        return parse_bench(file_path.read_text(encoding=self.encoding), name=file_path.stem)
