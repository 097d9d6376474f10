"""
Functional simulation and equivalence checking.

Latency is abstracted away: splitters and flip-flops are wires for the
combinational evaluation. User flip-flops are cut points: their outputs are
extra inputs (current state) and their inputs extra outputs (next state), so
sequential circuits are compared one clock frame at a time.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..netlist.logic import evaluate_gate
from ..netlist.network import GateKind, Network, topological_order
from ..utils.errors import InterfaceError
from ..utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass
class EquivalenceReport:
    equivalent: bool
    vectors_checked: int
    exhaustive: bool
    counterexample: Optional[Dict[str, int]] = None
    mismatched_outputs: List[str] = field(default_factory=list)


def _dff_names(net: Network) -> Dict[str, int]:
    return {net.name_of(d): d for d in net.user_dffs()}


def simulate_words(net: Network, inputs: Mapping[int, np.ndarray]) -> Dict[int, np.ndarray]:
    """
    Evaluate every node over many vectors at once.

    Args:
        net: Network to evaluate
        inputs: Bool array per PI id and per user flip-flop id (its current state)

    Returns:
        Bool array per node id
    """
    values: Dict[int, np.ndarray] = {}
    for node_id in topological_order(net):
        node = net.nodes[node_id]
        if node.kind is GateKind.PI or node.is_user_dff:
            values[node_id] = np.asarray(inputs[node_id], dtype=bool)
        else:
            values[node_id] = evaluate_gate(
                node.kind, [values[f] for f in node.fanins], np.logical_not)
    return values


def simulate_frame(
    net: Network,
    vector: Sequence[int],
    state: Optional[Mapping[str, int]] = None,
) -> Tuple[List[int], Dict[str, int]]:
    """
    One clock frame: PO bits in PO order and the next user flip-flop state.

    Missing state entries default to 0.

    Raises:
        InterfaceError: If the vector length differs from the PI count
    """
    if len(vector) != len(net.pis):
        raise InterfaceError(
            f"Input vector has {len(vector)} bit(s), network '{net.name}' has {len(net.pis)} PI(s)")
    state = state or {}
    inputs = {pi: np.array([bool(bit)]) for pi, bit in zip(net.pis, vector)}
    for name, dff in _dff_names(net).items():
        inputs[dff] = np.array([bool(state.get(name, 0))])

    values = simulate_words(net, inputs)
    outputs = [int(values[po][0]) for po in net.pos]
    next_state = {name: int(values[net.nodes[dff].fanins[0]][0])
                  for name, dff in _dff_names(net).items()}
    return outputs, next_state


def simulate(
    net: Network,
    vector: Sequence[int],
    state: Optional[Mapping[str, int]] = None,
) -> List[int]:
    """
    Output bits for one input vector (PI order).

    Example:
        >>> simulate(parse_bench("INPUT(a)\\nOUTPUT(y)\\ny = NOT(a)"), [1])
        [0]
    """
    return simulate_frame(net, vector, state)[0]


def _check_interface(net_a: Network, net_b: Network) -> None:
    for label, names_a, names_b in (
        ('input', {net_a.name_of(i) for i in net_a.pis}, {net_b.name_of(i) for i in net_b.pis}),
        ('output', {net_a.name_of(o) for o in net_a.pos}, {net_b.name_of(o) for o in net_b.pos}),
        ('flip-flop', set(_dff_names(net_a)), set(_dff_names(net_b))),
    ):
        if names_a != names_b:
            only_a = sorted(names_a - names_b)[:5]
            only_b = sorted(names_b - names_a)[:5]
            raise InterfaceError(
                f"{label.capitalize()} names differ between '{net_a.name}' and '{net_b.name}': "
                f"only in first {only_a}, only in second {only_b}")


def _observed(net: Network, values: Dict[int, np.ndarray]) -> Dict[str, np.ndarray]:
    observed = {f"po:{net.name_of(po)}": values[po] for po in net.pos}
    for name, dff in _dff_names(net).items():
        observed[f"dff:{name}"] = values[net.nodes[dff].fanins[0]]
    return observed


def check_equivalence(
    net_a: Network,
    net_b: Network,
    vectors: int = 10000,
    seed: int = 2023,
    exhaustive_limit: int = 12,
) -> EquivalenceReport:
    """
    Compare two networks output by output, matched by name.

    All input combinations are tried when PIs plus user flip-flops number at
    most ``exhaustive_limit``; otherwise ``vectors`` seeded random vectors.

    Raises:
        InterfaceError: If PI, PO or user flip-flop names differ
    """
    _check_interface(net_a, net_b)

    input_names = sorted(net_a.name_of(i) for i in net_a.pis) + sorted(_dff_names(net_a))
    width = len(input_names)
    exhaustive = width <= exhaustive_limit
    if exhaustive:
        patterns = np.arange(1 << width, dtype=np.int64)
        stimulus = np.array([(patterns >> i) & 1 for i in range(width)], dtype=bool)
        count = 1 << width
    else:
        rng = np.random.default_rng(seed)
        stimulus = rng.integers(0, 2, size=(width, vectors), dtype=np.int8).astype(bool)
        count = vectors
    stimulus = stimulus.reshape(width, count)

    by_name = dict(zip(input_names, stimulus))

    def inputs_for(net: Network) -> Dict[int, np.ndarray]:
        inputs = {pi: by_name[net.name_of(pi)] for pi in net.pis}
        inputs.update({dff: by_name[name] for name, dff in _dff_names(net).items()})
        return inputs

    observed_a = _observed(net_a, simulate_words(net_a, inputs_for(net_a)))
    observed_b = _observed(net_b, simulate_words(net_b, inputs_for(net_b)))

    mismatch = np.zeros(count, dtype=bool)
    failing: List[str] = []
    for key in sorted(observed_a):
        diff = np.broadcast_to(observed_a[key] != observed_b[key], (count,))
        if diff.any():
            failing.append(key)
            mismatch |= diff

    if not failing:
        logger.info(
            f"'{net_a.name}' and '{net_b.name}' are equivalent over {count} "
            f"{'exhaustive' if exhaustive else 'random'} vector(s)")
        return EquivalenceReport(True, count, exhaustive)

    column = int(np.flatnonzero(mismatch)[0])
    counterexample = {name: int(stimulus[i, column]) for i, name in enumerate(input_names)}
    logger.warning(f"Mismatch on {', '.join(failing[:5])} for input {counterexample}")
    return EquivalenceReport(False, count, exhaustive, counterexample, failing)
