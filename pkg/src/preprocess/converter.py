"""
Gate conversion into the SFQ cell basis.

NAND, NOR and XNOR become an AND/OR/XOR gate (or tree) followed by an INV;
AND/OR wider than four inputs and XOR wider than two become trees of library
gates. Dangling gates are dropped first.
"""

from typing import Dict, List

from ..netlist.cell_library import CellLibrary
from ..netlist.network import (
    GateKind,
    Network,
    compute_levels,
    eliminate_dead,
    topological_order,
)
from ..netlist.trees import build_tree
from ..utils.errors import ConversionError
from ..utils.logger import setup_logger

logger = setup_logger(__name__)

# kind -> (tree family, needs output inverter)
CONVERSION_RULES = {
    GateKind.NAND: ('AND', True),
    GateKind.NOR: ('OR', True),
    GateKind.XNOR: ('XOR', True),
    GateKind.AND: ('AND', False),
    GateKind.OR: ('OR', False),
    GateKind.XOR: ('XOR', False),
}


def remove_dangling(net: Network) -> List[str]:
    """Drop gates whose output reaches no PO or flip-flop; returns their names."""
    dangling = [n.id for n in net.nodes.values()
                if not n.fanouts and n.kind not in (GateKind.PI, GateKind.PO) and not n.is_user_dff]
    names = {node_id: net.name_of(node_id) for node_id in net.nodes}
    removed = eliminate_dead(net, dangling)
    return [names[node_id] for node_id in removed]


def _node_level(net: Network, node_id: int, levels: Dict[int, int]) -> int:
    node = net.nodes[node_id]
    if node.kind is GateKind.PI or node.is_user_dff:
        return 0
    if node.kind in (GateKind.SP, GateKind.PO):
        return levels[node.fanins[0]]
    return max(levels[f] for f in node.fanins) + 1


def convert_gates(net: Network, lib: CellLibrary) -> Network:
    """
    Rewrite every gate into library kinds, in place.

    Operands of generated trees are grouped lowest level first. The replaced
    gate's name moves to the node that now produces its signal.

    Args:
        net: Parsed network
        lib: Cell library; every remaining kind must have a cell in it

    Returns:
        The same network, converted and with levels recomputed

    Raises:
        ConversionError: If a gate has no conversion rule or library cell
    """
    dropped = remove_dangling(net)
    if dropped:
        logger.warning(f"Removed {len(dropped)} dangling gate(s): {', '.join(sorted(dropped)[:10])}")

    levels: Dict[int, int] = {}
    converted = 0

    for node_id in topological_order(net):
        node = net.nodes.get(node_id)
        if node is None:
            continue

        if node.kind in CONVERSION_RULES:
            family, invert = CONVERSION_RULES[node.kind]
            root = build_tree(net, family, list(node.fanins), levels, origin=node.origin)
            if invert:
                root_level = levels[root]
                root = net.add_node(GateKind.INV, [root], origin=node.origin)
                levels[root] = root_level + 1
            _take_over(net, node_id, root)
            converted += 1
            continue

        arity = node.kind.arity
        if arity is None or len(node.fanins) != arity:
            raise ConversionError(
                f"No conversion rule for {node.kind.value} '{net.name_of(node_id)}' "
                f"with {len(node.fanins)} input(s)")
        lib.spec(node.kind)
        levels[node_id] = _node_level(net, node_id, levels)

    compute_levels(net)
    logger.info(f"Converted {converted} gate(s) into the cell basis")
    return net


def _take_over(net: Network, old: int, new: int) -> None:
    """Move every consumer and the name of ``old`` onto ``new``, then delete ``old``."""
    for consumer in list(net.nodes[old].fanouts):
        net.redirect_edge(old, consumer, new)
    if old in net.names:
        net.names[new] = net.names[old]
    net.remove_node(old)
