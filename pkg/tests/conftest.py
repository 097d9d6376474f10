import logging
import random
from pathlib import Path

import pytest

from src.netlist import CellLibrary, GateKind, Network, compute_levels
from src.preprocess import insert_splitters

C17_BENCH = """\
# c17
INPUT(1)
INPUT(2)
INPUT(3)
INPUT(6)
INPUT(7)
OUTPUT(22)
OUTPUT(23)
10 = NAND(1, 3)
11 = NAND(3, 6)
16 = NAND(2, 11)
19 = NAND(11, 7)
22 = NAND(10, 16)
23 = NAND(16, 19)
"""

# S = (ab + bc + ac) & !d
MAJORITY_CONE_BENCH = """\
INPUT(a)
INPUT(b)
INPUT(c)
INPUT(d)
OUTPUT(s)
ab = AND(a, b)
bc = AND(b, c)
ac = AND(a, c)
m = OR(ab, bc, ac)
dn = NOT(d)
s = AND(m, dn)
"""

CUT_EXAMPLE_BENCH = """\
INPUT(P)
INPUT(Q)
INPUT(B)
INPUT(E)
OUTPUT(H)
A = AND(P, Q)
D = AND(B, E)
F = AND(A, D)
G = AND(D, E)
H = AND(F, G)
"""

RANDOM_KINDS = [GateKind.AND, GateKind.OR, GateKind.NAND, GateKind.NOR,
                GateKind.XOR, GateKind.XNOR, GateKind.INV]


@pytest.fixture(autouse=True)
def reset_logging():
    yield
    root = logging.getLogger('fluxmap')
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()


@pytest.fixture
def lib():
    return CellLibrary()


@pytest.fixture
def c17_text():
    return C17_BENCH


@pytest.fixture
def majority_cone_text():
    return MAJORITY_CONE_BENCH


@pytest.fixture
def cut_example_text():
    return CUT_EXAMPLE_BENCH


@pytest.fixture
def cut_example():
    """AND-only example network with splitters on D and E, levels computed."""
    net = Network('cut_example')
    p, q, b, e = (net.add_pi(name) for name in 'PQBE')
    a = net.add_node(GateKind.AND2, [p, q], name='A')
    d = net.add_node(GateKind.AND2, [b, e], name='D')
    f = net.add_node(GateKind.AND2, [a, d], name='F')
    g = net.add_node(GateKind.AND2, [d, e], name='G')
    h = net.add_node(GateKind.AND2, [f, g], name='H')
    net.add_po(h, 'H')
    insert_splitters(net)
    compute_levels(net)
    return net


def build_random_network(seed: int, n_inputs: int = 5, n_gates: int = 20) -> Network:
    rng = random.Random(seed)
    net = Network(f"random_{seed}")
    signals = [net.add_pi(f"i{k}") for k in range(n_inputs)]
    for k in range(n_gates):
        kind = rng.choice(RANDOM_KINDS)
        arity = 1 if kind is GateKind.INV else rng.choice([2, 2, 3])
        fanins = rng.sample(signals, min(arity, len(signals)))
        if kind is not GateKind.INV and len(fanins) < 2:
            kind = GateKind.INV
            fanins = fanins[:1]
        signals.append(net.add_node(kind, fanins, name=f"g{k}"))

    sinks = [s for s in signals[n_inputs:] if not net.nodes[s].fanouts]
    extra = rng.choice(signals[n_inputs:])
    for s in sinks + ([extra] if extra not in sinks else []):
        net.add_po(s, f"o_{net.name_of(s)}")
    return net


@pytest.fixture
def random_network():
    return build_random_network


@pytest.fixture
def write_bench_file(tmp_path):
    def write(name: str, text: str) -> Path:
        path = tmp_path / f"{name}.bench"
        path.write_text(text, encoding='utf-8')
        return path
    return write
