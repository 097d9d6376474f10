"""
Gate-graph data model shared by every synthesis phase.

A Network is a DAG of Nodes with ordered fan-ins. Edges are stored on both
endpoints: ``v in fanouts(u)`` exactly as many times as ``u`` occurs in
``fanins(v)``. Primary outputs are explicit zero-cost PO nodes. User
flip-flops are sequential boundaries: their output acts as a pseudo primary
input and the edge entering them is not a combinational dependency.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

import networkx as nx

from ..utils.errors import StructuralError
from ..utils.logger import setup_logger

logger = setup_logger(__name__)


class GateKind(str, Enum):
    """Node kinds. NAND/NOR/XNOR and the wide AND/OR/XOR exist only before conversion."""

    PI = 'PI'
    PO = 'PO'
    AND2 = 'AND2'
    AND3 = 'AND3'
    AND4 = 'AND4'
    OR2 = 'OR2'
    OR3 = 'OR3'
    OR4 = 'OR4'
    INV = 'INV'
    XOR2 = 'XOR2'
    MAJ3 = 'MAJ3'
    DFF = 'DFF'
    SP = 'SP'
    NAND = 'NAND'
    NOR = 'NOR'
    XNOR = 'XNOR'
    AND = 'AND'
    OR = 'OR'
    XOR = 'XOR'

    @property
    def arity(self) -> Optional[int]:
        """Exact fan-in count, or None for variadic pre-conversion kinds."""
        return FIXED_ARITY.get(self)

    @property
    def is_clocked(self) -> bool:
        return self not in (GateKind.PI, GateKind.PO, GateKind.SP)

    @property
    def in_basis(self) -> bool:
        return self in FIXED_ARITY

    @property
    def family(self) -> str:
        """Logic family name: AND2/AND3/AND4/AND/NAND all map to 'AND', and so on."""
        return FAMILY.get(self, self.value)


FIXED_ARITY: Dict[GateKind, int] = {
    GateKind.PI: 0,
    GateKind.PO: 1,
    GateKind.INV: 1,
    GateKind.DFF: 1,
    GateKind.SP: 1,
    GateKind.AND2: 2,
    GateKind.OR2: 2,
    GateKind.XOR2: 2,
    GateKind.AND3: 3,
    GateKind.OR3: 3,
    GateKind.MAJ3: 3,
    GateKind.AND4: 4,
    GateKind.OR4: 4,
}

VARIADIC_KINDS = (GateKind.NAND, GateKind.NOR, GateKind.XNOR,
                  GateKind.AND, GateKind.OR, GateKind.XOR)

FAMILY: Dict[GateKind, str] = {
    GateKind.AND2: 'AND', GateKind.AND3: 'AND', GateKind.AND4: 'AND', GateKind.AND: 'AND',
    GateKind.NAND: 'AND',
    GateKind.OR2: 'OR', GateKind.OR3: 'OR', GateKind.OR4: 'OR', GateKind.OR: 'OR',
    GateKind.NOR: 'OR',
    GateKind.XOR2: 'XOR', GateKind.XOR: 'XOR', GateKind.XNOR: 'XOR',
    GateKind.MAJ3: 'MAJ',
}

_SIZED = {
    'AND': {2: GateKind.AND2, 3: GateKind.AND3, 4: GateKind.AND4},
    'OR': {2: GateKind.OR2, 3: GateKind.OR3, 4: GateKind.OR4},
    'XOR': {2: GateKind.XOR2},
    'MAJ': {3: GateKind.MAJ3},
}


def sized_kind(family: str, fanin: int) -> GateKind:
    """Library kind of a family at a given fan-in, e.g. ('AND', 3) -> AND3."""
    try:
        return _SIZED[family][fanin]
    except KeyError:
        raise StructuralError(f"No {fanin}-input {family} cell in the basis") from None


def max_basis_fanin(family: str) -> int:
    return max(_SIZED[family])


class Origin(str, Enum):
    """Why a node exists; post-processing only touches the inserted kinds."""

    USER_LOGIC = 'user_logic'
    USER_DFF = 'user_dff'
    BALANCING_DFF = 'balancing_dff'
    INSERTED_SPLITTER = 'inserted_splitter'
    INSERTED_INV = 'inserted_inv'


def default_origin(kind: GateKind) -> Origin:
    if kind is GateKind.DFF:
        return Origin.USER_DFF
    if kind is GateKind.SP:
        return Origin.INSERTED_SPLITTER
    return Origin.USER_LOGIC


@dataclass
class Node:
    id: int
    kind: GateKind
    fanins: List[int] = field(default_factory=list)
    fanouts: List[int] = field(default_factory=list)
    level: int = 0
    origin: Origin = Origin.USER_LOGIC

    def copy(self) -> 'Node':
        return Node(self.id, self.kind, list(self.fanins), list(self.fanouts),
                    self.level, self.origin)

    @property
    def is_user_dff(self) -> bool:
        return self.kind is GateKind.DFF and self.origin is Origin.USER_DFF


class Network:
    """
    Directed acyclic gate graph with ordered PIs/POs and a name sidecar.

    Node ids are never recycled within one network (copies included), so
    callers may key caches by id.

    Example:
        >>> net = Network('toy')
        >>> a, b = net.add_pi('a'), net.add_pi('b')
        >>> g = net.add_node(GateKind.AND2, [a, b], name='y')
        >>> net.add_po(g, 'y')
    """

    def __init__(self, name: str = 'network'):
        self.name = name
        self.nodes: Dict[int, Node] = {}
        self.pis: List[int] = []
        self.pos: List[int] = []
        self.names: Dict[int, str] = {}
        self._next_id = 0
        self._journal: Optional[Dict[int, Optional[Node]]] = None
        self._saved: Optional[Tuple[Dict[int, str], List[int], List[int], Dict[int, int]]] = None

    # -- construction -----------------------------------------------------

    def add_node(
        self,
        kind: GateKind,
        fanins: Iterable[int] = (),
        origin: Optional[Origin] = None,
        name: Optional[str] = None,
    ) -> int:
        fanins = list(fanins)
        for f in fanins:
            if f not in self.nodes:
                raise StructuralError(f"Fan-in {f} does not exist", node=str(f))
        self._touch(*fanins)

        node_id = self._next_id
        self._next_id += 1
        if self._journal is not None:
            self._journal[node_id] = None
        self.nodes[node_id] = Node(node_id, kind, fanins, [],
                                   origin=origin or default_origin(kind))
        for f in fanins:
            self.nodes[f].fanouts.append(node_id)
        if name is not None:
            self.names[node_id] = name
        return node_id

    def add_pi(self, name: str) -> int:
        node_id = self.add_node(GateKind.PI, name=name)
        self.pis.append(node_id)
        return node_id

    def add_po(self, driver: int, name: str) -> int:
        node_id = self.add_node(GateKind.PO, [driver], name=name)
        self.pos.append(node_id)
        return node_id

    def set_fanins(self, node_id: int, fanins: Iterable[int]) -> None:
        """Replace all fan-ins of a node, keeping both edge endpoints in sync."""
        node = self.nodes[node_id]
        fanins = list(fanins)
        self._touch(node_id, *node.fanins, *fanins)
        for f in node.fanins:
            self.nodes[f].fanouts.remove(node_id)
        node.fanins = list(fanins)
        for f in node.fanins:
            self.nodes[f].fanouts.append(node_id)

    def replace_fanin(self, node_id: int, position: int, new_src: int) -> None:
        node = self.nodes[node_id]
        old_src = node.fanins[position]
        self._touch(node_id, old_src, new_src)
        self.nodes[old_src].fanouts.remove(node_id)
        node.fanins[position] = new_src
        self.nodes[new_src].fanouts.append(node_id)

    def redirect_edge(self, src: int, dst: int, new_src: int) -> None:
        """Move one src->dst edge so that it leaves new_src instead."""
        position = self.nodes[dst].fanins.index(src)
        self.replace_fanin(dst, position, new_src)

    def remove_node(self, node_id: int) -> None:
        node = self.nodes[node_id]
        if node.fanouts:
            raise StructuralError(
                f"Cannot remove {self.name_of(node_id)}: it still drives {len(node.fanouts)} edge(s)",
                node=self.name_of(node_id),
            )
        self._touch(node_id, *node.fanins)
        for f in node.fanins:
            self.nodes[f].fanouts.remove(node_id)
        del self.nodes[node_id]
        self.names.pop(node_id, None)
        if node.kind is GateKind.PI:
            self.pis.remove(node_id)
        elif node.kind is GateKind.PO:
            self.pos.remove(node_id)

    def copy(self) -> 'Network':
        clone = Network(self.name)
        clone.nodes = {nid: node.copy() for nid, node in self.nodes.items()}
        clone.pis = list(self.pis)
        clone.pos = list(self.pos)
        clone.names = dict(self.names)
        clone._next_id = self._next_id
        return clone

    # -- undo -------------------------------------------------------------

    def checkpoint(self) -> None:
        """Start recording edits so that ``rollback`` can undo them."""
        self._journal = {}
        self._saved = (dict(self.names), list(self.pis), list(self.pos),
                       {nid: node.level for nid, node in self.nodes.items()})

    def commit(self) -> None:
        """Keep every edit since ``checkpoint`` and stop recording."""
        self._journal = None
        self._saved = None

    def rollback(self) -> None:
        """
        Restore the state saved by ``checkpoint``.

        Ids handed out in between stay retired.

        Raises:
            StructuralError: If no checkpoint is active
        """
        if self._journal is None or self._saved is None:
            raise StructuralError("rollback() called without an active checkpoint")
        for node_id, snapshot in self._journal.items():
            if snapshot is None:
                self.nodes.pop(node_id, None)
            else:
                self.nodes[node_id] = snapshot
        self.names, self.pis, self.pos, levels = self._saved
        for node_id, level in levels.items():
            self.nodes[node_id].level = level
        self.commit()

    def _touch(self, *node_ids: int) -> None:
        if self._journal is None:
            return
        for node_id in node_ids:
            if node_id not in self._journal:
                self._journal[node_id] = self.nodes[node_id].copy()

    # -- queries ----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, node_id: object) -> bool:
        return node_id in self.nodes

    def __iter__(self) -> Iterator[Node]:
        return iter(self.nodes.values())

    def node(self, node_id: int) -> Node:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise StructuralError(f"Unknown node id {node_id}", node=str(node_id)) from None

    def name_of(self, node_id: int) -> str:
        return self.names.get(node_id, f"n{node_id}")

    def find(self, name: str) -> int:
        """Id of the non-PO node carrying a name (PO ids as fallback)."""
        fallback = None
        for node_id, node_name in self.names.items():
            if node_name == name:
                if self.nodes[node_id].kind is not GateKind.PO:
                    return node_id
                fallback = node_id
        if fallback is None:
            raise StructuralError(f"No node named '{name}'", node=name)
        return fallback

    def is_boundary(self, node_id: int) -> bool:
        """PIs and user flip-flops start combinational paths."""
        node = self.nodes[node_id]
        return node.kind is GateKind.PI or node.is_user_dff

    def user_dffs(self) -> List[int]:
        return [n.id for n in self.nodes.values() if n.is_user_dff]

    def resolve_driver(self, node_id: int) -> int:
        """Follow splitters upstream to the node that actually produces the signal."""
        while self.nodes[node_id].kind is GateKind.SP:
            node_id = self.nodes[node_id].fanins[0]
        return node_id

    def consumers(self, node_id: int) -> List[int]:
        """Non-splitter consumers reached through the node's splitter tree."""
        result: List[int] = []
        stack = list(self.nodes[node_id].fanouts)
        while stack:
            current = stack.pop()
            if self.nodes[current].kind is GateKind.SP:
                stack.extend(self.nodes[current].fanouts)
            else:
                result.append(current)
        return result

    def splitter_tree(self, node_id: int) -> List[int]:
        """Splitter nodes hanging off a node's output."""
        result: List[int] = []
        stack = [f for f in self.nodes[node_id].fanouts if self.nodes[f].kind is GateKind.SP]
        while stack:
            current = stack.pop()
            result.append(current)
            stack.extend(f for f in self.nodes[current].fanouts
                         if self.nodes[f].kind is GateKind.SP)
        return result

    def check_consistency(self) -> None:
        """Assert edge symmetry and fan-in arities; raises StructuralError."""
        for node in self.nodes.values():
            for f in node.fanins:
                if f not in self.nodes:
                    raise StructuralError(
                        f"{self.name_of(node.id)} reads missing node {f}", node=self.name_of(node.id))
                if self.nodes[f].fanouts.count(node.id) != node.fanins.count(f):
                    raise StructuralError(
                        f"Edge {self.name_of(f)}->{self.name_of(node.id)} is not symmetric",
                        node=self.name_of(node.id))
            for g in node.fanouts:
                if g not in self.nodes or self.nodes[g].fanins.count(node.id) != node.fanouts.count(g):
                    raise StructuralError(
                        f"Edge {self.name_of(node.id)}->{g} is not symmetric",
                        node=self.name_of(node.id))
            arity = node.kind.arity
            if arity is not None and len(node.fanins) != arity:
                raise StructuralError(
                    f"{self.name_of(node.id)} ({node.kind.value}) has {len(node.fanins)} fan-ins, expected {arity}",
                    node=self.name_of(node.id))


def _dependency_graph(net: Network) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(net.pis)
    graph.add_nodes_from(sorted(net.nodes))
    for node in net.nodes.values():
        if node.is_user_dff:
            continue
        graph.add_edges_from((f, node.id) for f in node.fanins)
    return graph


def topological_order(net: Network) -> List[int]:
    """
    Order node ids so that every node follows its fan-ins, PIs first.

    Edges entering user flip-flops are sequential and ignored.

    Raises:
        StructuralError: If the combinational graph has a cycle
    """
    graph = _dependency_graph(net)
    try:
        return list(nx.topological_sort(graph))
    except nx.NetworkXUnfeasible:
        cycle = nx.find_cycle(graph)
        name = net.name_of(cycle[0][0])
        raise StructuralError(f"Combinational cycle through '{name}'", node=name) from None


def compute_levels(net: Network, seed_levels: Optional[Mapping[int, int]] = None) -> Dict[int, int]:
    """
    Compute clock-stage levels and store them on the nodes.

    PIs sit at level 0 unless ``seed_levels`` says otherwise (used to place a
    fragment over host leaves). Splitters and POs take their fan-in's level,
    user flip-flops restart at 0, every other clocked node is one stage after
    its latest fan-in.
    """
    seed_levels = seed_levels or {}
    levels: Dict[int, int] = {}
    for node_id in topological_order(net):
        node = net.nodes[node_id]
        if node.kind is GateKind.PI:
            level = seed_levels.get(node_id, 0)
        elif node.is_user_dff:
            level = 0
        elif node.kind in (GateKind.SP, GateKind.PO):
            level = levels[node.fanins[0]]
        elif node.fanins:
            level = max(levels[f] for f in node.fanins) + 1
        else:
            level = 0
        levels[node_id] = level
        node.level = level
    return levels


def logical_depth(net: Network) -> int:
    """Largest level of an internal node (PIs and POs excluded)."""
    return max((n.level for n in net.nodes.values()
                if n.kind not in (GateKind.PI, GateKind.PO)), default=0)


def eliminate_dead(net: Network, start: Iterable[int]) -> List[int]:
    """
    Remove nodes that no longer drive anything, transitively from ``start``.

    PIs, POs and user flip-flops are never removed.
    """
    removed: List[int] = []
    worklist = list(start)
    while worklist:
        node_id = worklist.pop()
        node = net.nodes.get(node_id)
        if node is None or node.fanouts:
            continue
        if node.kind in (GateKind.PI, GateKind.PO) or node.is_user_dff:
            continue
        fanins = list(node.fanins)
        net.remove_node(node_id)
        removed.append(node_id)
        worklist.extend(fanins)
    return removed
