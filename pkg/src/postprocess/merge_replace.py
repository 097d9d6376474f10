"""
Merging and replacing of balancing flip-flops.

Merge: when every fan-in of a gate carries at least y balancing DFFs, y of
them are removed from each fan-in and a single chain of y is placed after the
gate. Replace: on a chain of x > 2 balancing DFFs, x - x % 2 of them become
inverters; an even run of inverters is the identity and an INV costs fewer
JJs than a DFF. User flip-flops are never touched.
"""

from dataclasses import dataclass
from typing import List

from ..netlist.network import (
    GateKind,
    Network,
    Origin,
    compute_levels,
    eliminate_dead,
    topological_order,
)
from ..utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass
class MergeReplaceStats:
    merged_gates: int = 0
    dffs_removed: int = 0
    dffs_replaced: int = 0


def _is_balancing(net: Network, node_id: int) -> bool:
    node = net.nodes[node_id]
    return node.kind is GateKind.DFF and node.origin is Origin.BALANCING_DFF


def _chain_length(net: Network, node_id: int) -> int:
    """Balancing DFFs in series directly in front of a fan-in edge."""
    length = 0
    while _is_balancing(net, node_id) and len(net.nodes[node_id].fanouts) == 1:
        length += 1
        node_id = net.nodes[node_id].fanins[0]
    return length


def _mergeable(net: Network, node_id: int) -> bool:
    node = net.nodes[node_id]
    return (node.kind.is_clocked and node.kind is not GateKind.DFF
            and len(node.fanins) > 1)


def _merge_pass(net: Network, stats: MergeReplaceStats) -> bool:
    changed = False
    for node_id in topological_order(net):
        if node_id not in net.nodes or not _mergeable(net, node_id):
            continue
        node = net.nodes[node_id]
        shared = min(_chain_length(net, f) for f in node.fanins)
        if shared == 0:
            continue

        for position, fanin in enumerate(list(node.fanins)):
            source = fanin
            for _ in range(shared):
                source = net.nodes[source].fanins[0]
            net.replace_fanin(node_id, position, source)
            eliminate_dead(net, [fanin])

        consumers = list(node.fanouts)
        tail = node_id
        for _ in range(shared):
            tail = net.add_node(GateKind.DFF, [tail], origin=Origin.BALANCING_DFF)
        for consumer in consumers:
            net.redirect_edge(node_id, consumer, tail)

        stats.merged_gates += 1
        stats.dffs_removed += shared * (len(node.fanins) - 1)
        logger.debug(f"Moved {shared} DFF(s) past {net.name_of(node_id)}")
        changed = True
    return changed


def _chains(net: Network) -> List[List[int]]:
    """Maximal runs of balancing DFFs, listed from source side to sink side."""
    runs = []
    for node_id in sorted(net.nodes):
        if not _is_balancing(net, node_id):
            continue
        if _is_balancing(net, net.nodes[node_id].fanins[0]):
            continue
        run = [node_id]
        current = node_id
        while len(net.nodes[current].fanouts) == 1 and _is_balancing(net, net.nodes[current].fanouts[0]):
            current = net.nodes[current].fanouts[0]
            run.append(current)
        runs.append(run)
    return runs


def merge_and_replace(net: Network) -> Network:
    """
    Merge shared balancing DFFs forward, then replace long runs with INV pairs.

    Merging sweeps from inputs toward outputs until nothing moves; splitters
    are not crossed. Runs of exactly two DFFs are kept as DFFs.

    Args:
        net: Balanced network

    Returns:
        The same network, still balanced, with levels recomputed
    """
    stats = MergeReplaceStats()
    while _merge_pass(net, stats):
        compute_levels(net)

    for run in _chains(net):
        count = len(run)
        if count <= 2:
            continue
        for node_id in run[:count - count % 2]:
            node = net.nodes[node_id]
            node.kind = GateKind.INV
            node.origin = Origin.INSERTED_INV
        stats.dffs_replaced += count - count % 2

    compute_levels(net)
    logger.info(
        f"Merge & replace: {stats.merged_gates} merge(s), {stats.dffs_removed} DFF(s) removed, "
        f"{stats.dffs_replaced} DFF(s) replaced by INVs"
    )
    return net
