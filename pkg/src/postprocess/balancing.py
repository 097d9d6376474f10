"""
Path-depth balancing.

Every SFQ gate is clocked, so all fan-ins of a multi-input gate must arrive
at the same clock stage. Fan-in i of a gate whose latest fan-in sits at
level l_max gets l_max - l_i balancing flip-flops in series.
"""

from typing import Dict, Tuple

from ..netlist.network import GateKind, Network, Origin, compute_levels, topological_order
from ..utils.logger import setup_logger

logger = setup_logger(__name__)


def _needs_balancing(net: Network, node_id: int) -> bool:
    node = net.nodes[node_id]
    return node.kind.is_clocked and len(node.fanins) > 1


def balancing_requirements(net: Network) -> Dict[Tuple[int, int], int]:
    """Flip-flops still missing per (gate id, fan-in position); uses stored levels."""
    required: Dict[Tuple[int, int], int] = {}
    for node in net.nodes.values():
        if not _needs_balancing(net, node.id):
            continue
        fanin_levels = [net.nodes[f].level for f in node.fanins]
        latest = max(fanin_levels)
        for position, level in enumerate(fanin_levels):
            if level < latest:
                required[(node.id, position)] = latest - level
    return required


def pending_balancing_dffs(net: Network) -> int:
    """Total balancing flip-flops the network would need right now."""
    return sum(balancing_requirements(net).values())


def balance_paths(net: Network) -> Network:
    """
    Insert balancing flip-flops so every clocked gate sees equal fan-in levels.

    Splitters are asynchronous and are never balanced. Running it twice adds
    nothing the second time.

    Args:
        net: Mapped network

    Returns:
        The same network with BalancingDFF chains inserted and levels updated
    """
    compute_levels(net)
    inserted = 0

    for node_id in topological_order(net):
        if not _needs_balancing(net, node_id):
            continue
        node = net.nodes[node_id]
        latest = max(net.nodes[f].level for f in node.fanins)
        for position, fanin in enumerate(list(node.fanins)):
            missing = latest - net.nodes[fanin].level
            if missing <= 0:
                continue
            source = fanin
            level = net.nodes[fanin].level
            for _ in range(missing):
                source = net.add_node(GateKind.DFF, [source], origin=Origin.BALANCING_DFF)
                level += 1
                net.nodes[source].level = level
            net.replace_fanin(node_id, position, source)
            inserted += missing

    compute_levels(net)
    logger.info(f"Inserted {inserted} balancing DFF(s)")
    return net
