"""
K-feasible cut enumeration.

Leaf sets are built bottom-up: a node's cuts are its trivial cut plus every
union of one cut per fan-in that stays within K leaves. Splitters are
transparent, so a leaf is always the gate (or PI / flip-flop) that produces a
signal. A cut is usable as a rewrite region only if every interior gate other
than the root feeds nothing outside the cut.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from ..netlist.cell_library import CellLibrary
from ..netlist.logic import evaluate_gate
from ..netlist.network import GateKind, Network
from ..utils.errors import ConfigError, StructuralError
from ..utils.logger import setup_logger

logger = setup_logger(__name__)

MIN_K = 2
MAX_K = 4


@dataclass(frozen=True)
class Cut:
    """
    A rewrite region: ``root`` plus the leaves that bound its cone.

    Leaves are sorted by id; bit b of ``truth`` is the root value when leaf i
    carries bit i of b.
    """

    root: int
    leaves: Tuple[int, ...]
    interior: FrozenSet[int]
    truth: Optional[int] = field(default=None, compare=False)

    @property
    def arity(self) -> int:
        return len(self.leaves)


def validate_k(k: int) -> int:
    if not isinstance(k, int) or not MIN_K <= k <= MAX_K:
        raise ConfigError(f"K must be an integer in [{MIN_K}, {MAX_K}], got {k!r}")
    return k


def _rank(leaf_set: FrozenSet[int]) -> Tuple[int, Tuple[int, ...]]:
    return len(leaf_set), tuple(sorted(leaf_set))


class CutEnumerator:
    """
    Cached cut enumeration over a network whose node ids stay stable.

    Raw leaf sets are cached per node; call ``invalidate`` with the nodes whose
    transitive fan-in changed after a rewrite.

    Example:
        >>> enumerator = CutEnumerator(k=3)
        >>> [cut.leaves for cut in enumerator.cuts(net, h)]
    """

    def __init__(self, k: int = 4, cut_limit: int = 64):
        self.k = validate_k(k)
        if cut_limit < 1:
            raise ConfigError(f"cut_limit must be positive, got {cut_limit}")
        self.cut_limit = cut_limit
        self._cache: Dict[int, List[FrozenSet[int]]] = {}

    def invalidate(self, node_ids: Iterable[int]) -> None:
        for node_id in node_ids:
            self._cache.pop(node_id, None)

    def clear(self) -> None:
        self._cache.clear()

    def leaf_sets(self, net: Network, node_id: int) -> List[FrozenSet[int]]:
        """Raw leaf sets of a node, trivial cut first, capped at ``cut_limit``."""
        node_id = net.resolve_driver(node_id)
        if node_id in self._cache:
            return self._cache[node_id]

        # post-order over the fan-in cone without recursion
        stack: List[Tuple[int, bool]] = [(node_id, False)]
        while stack:
            current, expanded = stack.pop()
            if current in self._cache:
                continue
            node = net.nodes[current]
            if net.is_boundary(current) or not node.fanins:
                self._cache[current] = [frozenset([current])]
                continue
            drivers = [net.resolve_driver(f) for f in node.fanins]
            if not expanded:
                stack.append((current, True))
                stack.extend((d, False) for d in drivers if d not in self._cache)
                continue
            self._cache[current] = self._merge(current, drivers)
        return self._cache[node_id]

    def _merge(self, node_id: int, drivers: List[int]) -> List[FrozenSet[int]]:
        partial: List[FrozenSet[int]] = [frozenset()]
        for driver in drivers:
            combined: Set[FrozenSet[int]] = set()
            for left in partial:
                for right in self._cache[driver]:
                    union = left | right
                    if len(union) <= self.k:
                        combined.add(union)
            partial = sorted(combined, key=_rank)[:self.cut_limit]
        trivial = frozenset([node_id])
        merged = [trivial] + [s for s in partial if s != trivial]
        return merged[:self.cut_limit]

    def cuts(self, net: Network, root: int) -> List[Cut]:
        """
        All usable cuts of ``root`` with 2..K leaves, truth tables filled in.

        Primary inputs, outputs, splitters and user flip-flops have none.
        """
        node = net.nodes[root]
        if node.kind in (GateKind.PI, GateKind.PO, GateKind.SP) or net.is_boundary(root):
            return []

        result: List[Cut] = []
        for leaf_set in self.leaf_sets(net, root):
            if len(leaf_set) < MIN_K or root in leaf_set:
                continue
            interior = cone_interior(net, root, leaf_set)
            if not is_isolated(net, root, interior):
                continue
            cut = Cut(root, tuple(sorted(leaf_set)), frozenset(interior))
            result.append(Cut(cut.root, cut.leaves, cut.interior, cut_truth_table(net, cut)))
        return result


def cone_interior(net: Network, root: int, leaves: Iterable[int]) -> Set[int]:
    """Nodes on paths from the leaves to ``root``, root included, leaves excluded."""
    leaf_set = set(leaves)
    interior: Set[int] = set()
    stack = [root]
    while stack:
        current = stack.pop()
        if current in interior or current in leaf_set:
            continue
        if net.is_boundary(current):
            raise StructuralError(
                f"{net.name_of(current)} reaches {net.name_of(root)} without crossing a leaf",
                node=net.name_of(current))
        interior.add(current)
        stack.extend(net.nodes[current].fanins)
    return interior


def is_isolated(net: Network, root: int, interior: Set[int]) -> bool:
    """True when no interior gate other than the root is consumed outside the interior."""
    for node_id in interior:
        if node_id == root or net.nodes[node_id].kind is GateKind.SP:
            continue
        if any(c not in interior for c in net.consumers(node_id)):
            return False
    return True


def enumerate_cuts(net: Network, root: int, k: int, cut_limit: int = 64) -> List[Cut]:
    """One-shot enumeration; see ``CutEnumerator`` for the cached form."""
    return CutEnumerator(k, cut_limit).cuts(net, root)


def cut_truth_table(net: Network, cut: Cut) -> int:
    """
    Truth table of the root over the cut leaves as a bitmask.

    Splitters and flip-flops inside the cut behave as wires.

    Raises:
        StructuralError: If an interior node has no logic function
    """
    width = 1 << len(cut.leaves)
    full = (1 << width) - 1
    values: Dict[int, int] = {}
    for i, leaf in enumerate(cut.leaves):
        values[leaf] = sum(1 << b for b in range(width) if (b >> i) & 1)

    def invert(word: int) -> int:
        return ~word & full

    stack = [cut.root]
    while stack:
        current = stack[-1]
        if current in values:
            stack.pop()
            continue
        node = net.nodes[current]
        if current not in cut.interior:
            raise StructuralError(
                f"{net.name_of(current)} is neither a leaf nor inside the cut",
                node=net.name_of(current))
        pending = [f for f in node.fanins if f not in values]
        if pending:
            stack.extend(pending)
            continue
        stack.pop()
        values[current] = evaluate_gate(node.kind, [values[f] for f in node.fanins], invert)
    return values[cut.root]


def cost_original_cut(net: Network, cut: Cut, lib: CellLibrary) -> int:
    """
    Local PND of the logic a cut would replace.

    Every interior node is charged (splitters and flip-flops included) and the
    depth is the root level minus the shallowest leaf level.
    """
    jjs = sum(lib.jj(net.nodes[n].kind) for n in cut.interior)
    depth = net.nodes[cut.root].level - min(net.nodes[leaf].level for leaf in cut.leaves)
    return jjs * depth
