"""
Splitter-tree insertion.

SFQ gates drive a single load, so a signal with n consumers is fanned out by
a balanced binary tree of n - 1 splitters.
"""

from typing import List

from ..netlist.network import GateKind, Network, Origin, eliminate_dead
from ..utils.logger import setup_logger

logger = setup_logger(__name__)


def _add_splitter(net: Network, source: int) -> int:
    sp = net.add_node(GateKind.SP, [source], origin=Origin.INSERTED_SPLITTER)
    net.nodes[sp].level = net.nodes[source].level
    return sp


def _distribute(net: Network, driver: int, splitter: int, consumers: List[int]) -> int:
    """Serve ``consumers`` (edges still leaving ``driver``) from ``splitter``; returns SPs added."""
    added = 0
    half = (len(consumers) + 1) // 2
    for group in (consumers[:half], consumers[half:]):
        if len(group) == 1:
            net.redirect_edge(driver, group[0], splitter)
        else:
            child = _add_splitter(net, splitter)
            added += 1 + _distribute(net, driver, child, group)
    return added


def build_splitter_tree(net: Network, driver: int) -> int:
    """Fan out every current consumer of ``driver`` through a balanced splitter tree."""
    consumers = list(net.nodes[driver].fanouts)
    if len(consumers) <= 1:
        return 0
    root = _add_splitter(net, driver)
    return 1 + _distribute(net, driver, root, consumers)


def insert_splitters(net: Network) -> Network:
    """
    Give every multi-fan-out node a splitter tree, in place.

    Splitters are asynchronous, so levels are unaffected. Running it on a
    network that already satisfies the fan-out rule changes nothing.
    """
    inserted = 0
    for node_id in sorted(net.nodes):
        node = net.nodes[node_id]
        if node.kind in (GateKind.SP, GateKind.PO):
            continue
        inserted += build_splitter_tree(net, node_id)

    logger.info(f"Inserted {inserted} splitter(s)")
    return net


def _dismantle(net: Network, driver: int) -> None:
    """Reconnect every consumer in ``driver``'s splitter tree directly to ``driver``."""
    tree = net.splitter_tree(driver)
    for sp in tree:
        for consumer in list(net.nodes[sp].fanouts):
            if net.nodes[consumer].kind is not GateKind.SP:
                net.redirect_edge(sp, consumer, driver)
    # children were listed after their parents
    for sp in reversed(tree):
        net.remove_node(sp)


def normalize_splitters(net: Network) -> Network:
    """
    Restore the splitter invariants after a structural edit, in place.

    Dead splitters are removed, splitters left with one consumer are bypassed,
    and a driver whose fan-out grew gets its whole tree rebuilt.
    """
    dead = [n.id for n in net.nodes.values() if n.kind is GateKind.SP and not n.fanouts]
    eliminate_dead(net, dead)

    collapsed = 0
    for node_id in sorted(net.nodes):
        node = net.nodes.get(node_id)
        if node is None or node.kind is not GateKind.SP or len(node.fanouts) != 1:
            continue
        source = node.fanins[0]
        net.redirect_edge(node_id, node.fanouts[0], source)
        net.remove_node(node_id)
        collapsed += 1

    rebuilt = 0
    for node_id in sorted(net.nodes):
        node = net.nodes.get(node_id)
        if node is None or node.kind in (GateKind.SP, GateKind.PO):
            continue
        tree = net.splitter_tree(node_id)
        if len(node.fanouts) > 1 or any(len(net.nodes[sp].fanouts) > 2 for sp in tree):
            _dismantle(net, node_id)
            build_splitter_tree(net, node_id)
            rebuilt += 1

    if collapsed or rebuilt:
        logger.debug(f"Splitters: {collapsed} collapsed, {rebuilt} tree(s) rebuilt")
    return net
