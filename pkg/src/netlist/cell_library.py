"""
SFQ cell library: Josephson-junction cost, fan-in limit and clocking per gate kind.
"""

from dataclasses import dataclass, replace
from typing import Any, Dict, Mapping, Optional

from ..utils.errors import ConfigError, ConversionError
from .network import FIXED_ARITY, GateKind

DEFAULT_JJ_COUNTS: Dict[GateKind, int] = {
    GateKind.DFF: 8,
    GateKind.AND2: 9,
    GateKind.AND3: 12,
    GateKind.AND4: 15,
    GateKind.OR2: 9,
    GateKind.OR3: 11,
    GateKind.OR4: 13,
    GateKind.INV: 5,
    GateKind.XOR2: 7,
    GateKind.SP: 3,
    GateKind.MAJ3: 12,
    GateKind.PI: 0,
    GateKind.PO: 0,
}

CELL_ALIASES: Dict[str, GateKind] = {
    'MAJ': GateKind.MAJ3,
    'XOR': GateKind.XOR2,
    'SPLITTER': GateKind.SP,
    'NOT': GateKind.INV,
}


@dataclass(frozen=True)
class CellSpec:
    jj_count: int
    max_fanin: int
    clocked: bool


def resolve_cell_name(name: str) -> GateKind:
    """
    Map a user-facing cell name onto a library kind.

    Raises:
        ConfigError: If the name is not a library cell
    """
    key = name.strip().upper()
    if key in CELL_ALIASES:
        return CELL_ALIASES[key]
    try:
        kind = GateKind(key)
    except ValueError:
        raise ConfigError(f"Unknown cell name: {name}") from None
    if kind not in DEFAULT_JJ_COUNTS:
        raise ConfigError(f"Unknown cell name: {name}")
    return kind


class CellLibrary:
    """
    Per-kind cost table; missing entries fall back to the default JJ counts.

    Example:
        >>> lib = CellLibrary.from_mapping({'MAJ': 14})
        >>> lib.jj(GateKind.MAJ3)
        14
    """

    def __init__(self, overrides: Optional[Mapping[GateKind, int]] = None):
        self.cells: Dict[GateKind, CellSpec] = {
            kind: CellSpec(jj, FIXED_ARITY[kind], kind.is_clocked)
            for kind, jj in DEFAULT_JJ_COUNTS.items()
        }
        for kind, jj in (overrides or {}).items():
            if jj < 0:
                raise ConfigError(f"Negative JJ count for {kind.value}: {jj}")
            self.cells[kind] = replace(self.cells[kind], jj_count=int(jj))

    @classmethod
    def default(cls) -> 'CellLibrary':
        return cls()

    @classmethod
    def from_mapping(cls, mapping: Optional[Mapping[str, Any]]) -> 'CellLibrary':
        """Build a library from a name -> JJ mapping such as the ``cell_library`` config section."""
        overrides: Dict[GateKind, int] = {}
        for name, value in (mapping or {}).items():
            kind = resolve_cell_name(str(name))
            try:
                overrides[kind] = int(value)
            except (TypeError, ValueError):
                raise ConfigError(f"JJ count for {name} is not an integer: {value!r}") from None
        return cls(overrides)

    def spec(self, kind: GateKind) -> CellSpec:
        try:
            return self.cells[kind]
        except KeyError:
            raise ConversionError(f"No library cell for gate kind {kind.value}") from None

    def jj(self, kind: GateKind) -> int:
        return self.spec(kind).jj_count

    def as_dict(self) -> Dict[str, int]:
        return {kind.value: spec.jj_count for kind, spec in self.cells.items()}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CellLibrary) and self.cells == other.cells

    def __repr__(self) -> str:
        return f"CellLibrary({self.as_dict()})"
