"""Gate-graph model, cell library and tree builder."""

from .cell_library import CellLibrary, CellSpec, DEFAULT_JJ_COUNTS, resolve_cell_name
from .network import (
    GateKind,
    Network,
    Node,
    Origin,
    compute_levels,
    eliminate_dead,
    logical_depth,
    topological_order,
)
from .trees import build_tree

__all__ = [
    'CellLibrary', 'CellSpec', 'DEFAULT_JJ_COUNTS', 'resolve_cell_name',
    'GateKind', 'Network', 'Node', 'Origin',
    'compute_levels', 'eliminate_dead', 'logical_depth', 'topological_order',
    'build_tree',
]
