"""
Cone replacement: splice a regenerated fragment over a node's cone.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Set

from ..preprocess.splitters import normalize_splitters
from ..utils.errors import StructuralError
from ..utils.logger import setup_logger
from .network import GateKind, Network, compute_levels, eliminate_dead, topological_order

logger = setup_logger(__name__)


@dataclass
class ConeRewrite:
    """Outcome of a replace_cone call."""

    network: Network
    new_root: int
    added: List[int] = field(default_factory=list)
    removed: List[int] = field(default_factory=list)


def replace_cone(
    net: Network,
    root: int,
    old_interior: Set[int],
    new_subgraph: Network,
    leaf_binding: Mapping[int, int],
) -> ConeRewrite:
    """
    Replace the logic computing ``root`` with a fragment, in place.

    ``new_subgraph`` is a standalone network whose PIs stand for the cut
    leaves and whose single PO carries the new function. Every consumer of
    ``root`` is moved to the fragment's output, then whatever no longer
    drives anything is removed, splitter trees are repaired and levels are
    recomputed.

    Args:
        net: Host network
        root: Node whose function is being re-implemented
        old_interior: Nodes of the replaced cone (root included)
        new_subgraph: Fragment network
        leaf_binding: Fragment PI id -> host node id

    Returns:
        ConeRewrite with the new root and the ids added and removed

    Raises:
        StructuralError: If a binding is missing, dangling or points into the
            replaced cone, or if the result is cyclic
    """
    if len(new_subgraph.pos) != 1:
        raise StructuralError(
            f"Fragment must have exactly one output, found {len(new_subgraph.pos)}")
    if root not in net.nodes:
        raise StructuralError(f"Rewrite root {root} does not exist", node=str(root))

    id_map: Dict[int, int] = {}
    for pi in new_subgraph.pis:
        if pi not in leaf_binding:
            raise StructuralError(f"Fragment input {new_subgraph.name_of(pi)} is not bound")
        host = leaf_binding[pi]
        if host not in net.nodes:
            raise StructuralError(f"Leaf binding targets missing node {host}", node=str(host))
        if host in old_interior:
            raise StructuralError(
                f"Leaf binding targets {net.name_of(host)}, which is inside the replaced cone",
                node=net.name_of(host))
        id_map[pi] = host

    added: List[int] = []
    for frag_id in topological_order(new_subgraph):
        node = new_subgraph.nodes[frag_id]
        if node.kind in (GateKind.PI, GateKind.PO):
            continue
        host_id = net.add_node(node.kind, [id_map[f] for f in node.fanins], origin=node.origin)
        id_map[frag_id] = host_id
        added.append(host_id)

    new_root = id_map[new_subgraph.nodes[new_subgraph.pos[0]].fanins[0]]
    for consumer in list(net.nodes[root].fanouts):
        net.redirect_edge(root, consumer, new_root)
    if root in net.names and new_root not in net.names:
        net.names[new_root] = net.names[root]

    removed = eliminate_dead(net, [root])
    normalize_splitters(net)
    try:
        compute_levels(net)
    except StructuralError:
        logger.error(f"Rewrite of {net.name_of(new_root)} produced a cycle")
        raise

    logger.debug(
        f"Replaced cone of {net.name_of(new_root)}: +{len(added)} / -{len(removed)} nodes")
    return ConeRewrite(net, new_root, added, removed)
