"""
Level-aware gate-tree builder used by gate conversion and cut regeneration.
"""

import heapq
from typing import Dict, List, Sequence, Tuple

from .network import Network, Origin, max_basis_fanin, sized_kind


def build_tree(
    net: Network,
    family: str,
    operands: Sequence[int],
    levels: Dict[int, int],
    origin: Origin = Origin.USER_LOGIC,
) -> int:
    """
    Combine operands with gates of one family into a single signal.

    Gates are as wide as the basis allows, and each new gate takes the
    operands with the lowest level first, so late operands enter the tree
    near its root. ``levels`` must hold every operand's level; levels of the
    created gates are added to it.

    Args:
        net: Network to create the gates in
        family: 'AND', 'OR' or 'XOR'
        operands: Node ids to combine (at least one)
        levels: Level of each operand, updated in place
        origin: Origin recorded on created gates

    Returns:
        Id of the tree root (the operand itself when only one is given)
    """
    if not operands:
        raise ValueError("build_tree needs at least one operand")

    width = max_basis_fanin(family)
    heap: List[Tuple[int, int, int]] = [
        (levels[op], order, op) for order, op in enumerate(operands)
    ]
    heapq.heapify(heap)
    order = len(operands)

    while len(heap) > 1:
        take = min(width, len(heap))
        group = [heapq.heappop(heap) for _ in range(take)]
        kind = sized_kind(family, take)
        node_id = net.add_node(kind, [op for _, _, op in group], origin=origin)
        level = max(lvl for lvl, _, _ in group) + 1
        levels[node_id] = level
        net.nodes[node_id].level = level
        heapq.heappush(heap, (level, order, node_id))
        order += 1

    return heap[0][2]
