"""
`.bench` and JSON netlist writers.
"""

import json
from typing import Dict, List, Set

from ..ingestion.bench_reader import BenchLine
from ..netlist.network import (
    VARIADIC_KINDS,
    GateKind,
    Network,
    Origin,
    default_origin,
    topological_order,
)
from ..utils.errors import ConversionError

KIND_KEYWORDS: Dict[GateKind, str] = {
    GateKind.AND2: 'AND',
    GateKind.AND3: 'AND',
    GateKind.AND4: 'AND',
    GateKind.OR2: 'OR',
    GateKind.OR3: 'OR',
    GateKind.OR4: 'OR',
    GateKind.INV: 'NOT',
    GateKind.XOR2: 'XOR',
    GateKind.MAJ3: 'MAJ',
    GateKind.DFF: 'DFF',
    GateKind.SP: 'SP',
}

KEYWORD_KINDS: Dict[str, GateKind] = {
    'AND': GateKind.AND2, 'OR': GateKind.OR2, 'NOT': GateKind.INV, 'XOR': GateKind.XOR2,
    'MAJ': GateKind.MAJ3, 'DFF': GateKind.DFF, 'SP': GateKind.SP, 'BUF': GateKind.PO,
}


def _signal_names(net: Network) -> Dict[int, str]:
    """Pick a unique signal name for every non-PO node; PO names win for their drivers."""
    signals: Dict[int, str] = {}
    used: Set[str] = set()

    for pi in net.pis:
        signals[pi] = net.name_of(pi)
        used.add(signals[pi])
    po_names = {net.name_of(po) for po in net.pos}
    used |= po_names

    # user flip-flops keep their own names; equivalence checking matches them by name
    for dff in net.user_dffs():
        if net.name_of(dff) not in used:
            signals[dff] = net.name_of(dff)
            used.add(signals[dff])

    for po in net.pos:
        driver = net.nodes[po].fanins[0]
        if driver not in signals:
            signals[driver] = net.name_of(po)

    for node_id in sorted(net.nodes):
        node = net.nodes[node_id]
        if node.kind is GateKind.PO or node_id in signals:
            continue
        candidate = net.names.get(node_id)
        if candidate is None or candidate in used:
            candidate = f"n{node_id}"
            suffix = 1
            while candidate in used:
                candidate = f"n{node_id}_{suffix}"
                suffix += 1
        signals[node_id] = candidate
        used.add(candidate)
    return signals


def bench_lines(net: Network) -> List[BenchLine]:
    """
    Gate lines of a converted network in topological order.

    Raises:
        ConversionError: If a kind outside the cell basis is present
    """
    unconverted = sorted({n.kind.value for n in net.nodes.values() if n.kind in VARIADIC_KINDS})
    if unconverted:
        raise ConversionError(
            f"Network '{net.name}' still contains unconverted gates: {', '.join(unconverted)}")

    signals = _signal_names(net)
    lines: List[BenchLine] = []
    for node_id in topological_order(net):
        node = net.nodes[node_id]
        if node.kind in (GateKind.PI, GateKind.PO):
            continue
        lines.append(BenchLine(
            lhs=signals[node_id],
            op=KIND_KEYWORDS[node.kind],
            args=[signals[f] for f in node.fanins],
            origin=node.origin.value,
        ))

    for po in net.pos:
        driver_signal = signals[net.nodes[po].fanins[0]]
        if driver_signal != net.name_of(po):
            lines.append(BenchLine(lhs=net.name_of(po), op='BUF', args=[driver_signal]))
    return lines


def write_bench(net: Network) -> str:
    """
    Serialize a converted network to `.bench` text.

    Non-default node origins are kept as ``# origin=<value>`` comments so
    ``parse_bench`` can restore them.

    Raises:
        ConversionError: If NAND/NOR/XNOR or wide gates are still present
    """
    lines = bench_lines(net)
    gate_count = sum(1 for line in lines if line.op != 'BUF')
    out = [
        f"# {net.name}",
        f"# {len(net.pis)} inputs, {len(net.pos)} outputs, {gate_count} gates",
    ]
    if net.pis or net.pos:
        out.append('')
    out.extend(f"INPUT({net.name_of(pi)})" for pi in net.pis)
    out.extend(f"OUTPUT({net.name_of(po)})" for po in net.pos)
    if lines:
        out.append('')
    for line in lines:
        text = f"{line.lhs} = {line.op}({', '.join(line.args)})"
        if line.origin and line.origin != default_origin(KEYWORD_KINDS[line.op]).value:
            text += f"  # origin={line.origin}"
        out.append(text)
    return '\n'.join(out) + '\n'


def write_bench_json(net: Network) -> str:
    """JSON mirror of ``write_bench``: ``{name, inputs, outputs, gates}``."""
    document = {
        'name': net.name,
        'inputs': [net.name_of(pi) for pi in net.pis],
        'outputs': [net.name_of(po) for po in net.pos],
        'gates': [
            {
                'name': line.lhs,
                'op': line.op,
                'args': line.args,
                'origin': line.origin or Origin.USER_LOGIC.value,
            }
            for line in bench_lines(net)
        ],
    }
    return json.dumps(document, indent=2)
