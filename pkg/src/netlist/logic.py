"""
Functional gate semantics, shared by truth-table computation and simulation.

Operands may be Python ints used as bit-parallel words or numpy bool arrays;
the caller supplies the matching complement operation.
"""

from functools import reduce
from operator import and_, or_, xor
from typing import Callable, Sequence, TypeVar

from ..utils.errors import StructuralError
from .network import GateKind

T = TypeVar('T')

_WIRES = (GateKind.DFF, GateKind.SP, GateKind.PO)
_INVERTED = (GateKind.NAND, GateKind.NOR, GateKind.XNOR)


def evaluate_gate(kind: GateKind, operands: Sequence[T], invert: Callable[[T], T]) -> T:
    """
    Output of one gate. Flip-flops, splitters and POs are wires (latency is abstracted).

    Raises:
        StructuralError: For kinds without a logic function (PI)
    """
    if kind in _WIRES:
        return operands[0]
    if kind is GateKind.INV:
        return invert(operands[0])
    if kind is GateKind.MAJ3:
        a, b, c = operands
        return (a & b) | (a & c) | (b & c)

    family = kind.family
    if family == 'AND':
        result = reduce(and_, operands)
    elif family == 'OR':
        result = reduce(or_, operands)
    elif family == 'XOR':
        result = reduce(xor, operands)
    else:
        raise StructuralError(f"Gate kind {kind.value} has no logic function")
    return invert(result) if kind in _INVERTED else result
