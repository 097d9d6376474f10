from collections import Counter

import pytest

from src.ingestion import parse_bench
from src.netlist import GateKind, Network, Origin
from src.postprocess import balance_paths, merge_and_replace
from src.postprocess.balancing import balancing_requirements, pending_balancing_dffs
from src.preprocess import convert_gates, insert_splitters
from src.verification import check_equivalence


def origins(net):
    return Counter(node.origin for node in net)


def dff_chain(net, source, length):
    for _ in range(length):
        source = net.add_node(GateKind.DFF, [source], origin=Origin.BALANCING_DFF)
    return source


def assert_balanced(net):
    assert pending_balancing_dffs(net) == 0
    for node in net:
        if node.kind.is_clocked and len(node.fanins) > 1:
            assert len({net.nodes[f].level for f in node.fanins}) == 1


def test_balancing_the_majority_cone(majority_cone_text, lib):
    net = insert_splitters(convert_gates(parse_bench(majority_cone_text), lib))
    assert balancing_requirements(net) == {(net.find('s'), 1): 1}

    balance_paths(net)
    assert origins(net)[Origin.BALANCING_DFF] == 1
    assert_balanced(net)

    size = len(net)
    balance_paths(net)
    assert len(net) == size


def test_splitters_are_not_balanced(cut_example):
    net = balance_paths(cut_example)
    assert_balanced(net)
    for node in net:
        if node.kind is GateKind.SP:
            assert len(node.fanins) == 1
            assert net.nodes[node.fanins[0]].kind is not GateKind.DFF


@pytest.mark.parametrize('seed', range(5))
def test_balancing_random_networks(random_network, lib, seed):
    source = random_network(seed)
    net = balance_paths(insert_splitters(convert_gates(source.copy(), lib)))
    assert_balanced(net)
    assert check_equivalence(source, net).equivalent


def shared_chain_network():
    """AND3 whose fan-ins carry 2, 3 and 3 balancing DFFs."""
    net = Network('shared')
    p, q, b, c = (net.add_pi(n) for n in 'pqbc')
    a = net.add_node(GateKind.AND2, [p, q], name='a')
    g = net.add_node(GateKind.AND3, [dff_chain(net, a, 2), dff_chain(net, b, 3),
                                     dff_chain(net, c, 3)], name='g')
    net.add_po(g, 'y')
    return net


def test_merge_moves_shared_dffs_past_the_gate():
    net = shared_chain_network()
    reference = net.copy()
    assert origins(net)[Origin.BALANCING_DFF] == 8

    merge_and_replace(net)
    assert origins(net)[Origin.BALANCING_DFF] == 4
    assert origins(net)[Origin.INSERTED_INV] == 0

    g = net.nodes[net.find('g')]
    assert g.fanins[0] == net.find('a')
    assert [net.nodes[f].kind for f in g.fanins[1:]] == [GateKind.DFF, GateKind.DFF]
    tail = net.nodes[g.fanouts[0]]
    assert tail.kind is GateKind.DFF
    assert net.nodes[tail.fanouts[0]].kind is GateKind.DFF
    assert_balanced(net)
    assert check_equivalence(reference, net).equivalent


@pytest.mark.parametrize('length, invs, dffs', [
    (2, 0, 2),
    (3, 2, 1),
    (4, 4, 0),
    (5, 4, 1),
])
def test_long_runs_become_inverter_pairs(length, invs, dffs):
    net = Network('run')
    a = net.add_pi('a')
    net.add_po(dff_chain(net, a, length), 'y')
    reference = net.copy()

    merge_and_replace(net)
    counts = Counter(node.kind for node in net)
    assert counts[GateKind.INV] == invs
    assert counts[GateKind.DFF] == dffs
    assert origins(net)[Origin.INSERTED_INV] == invs
    assert check_equivalence(reference, net).equivalent


def test_user_flip_flops_are_left_alone():
    net = Network('user')
    a = net.add_pi('a')
    source = a
    for k in range(4):
        source = net.add_node(GateKind.DFF, [source], name=f"q{k}")
    net.add_po(source, 'y')

    merge_and_replace(net)
    assert Counter(node.kind for node in net)[GateKind.DFF] == 4
    assert all(net.nodes[d].is_user_dff for d in net.user_dffs())


def test_merge_replace_keeps_levels(majority_cone_text, lib):
    net = balance_paths(insert_splitters(convert_gates(parse_bench(majority_cone_text), lib)))
    depth = max(node.level for node in net)
    merge_and_replace(net)
    assert max(node.level for node in net) == depth
    assert_balanced(net)


@pytest.mark.parametrize('seed', range(5))
def test_merge_replace_random_networks(random_network, lib, seed):
    source = random_network(seed)
    net = balance_paths(insert_splitters(convert_gates(source.copy(), lib)))
    before = Counter(node.kind for node in net)
    merge_and_replace(net)
    after = Counter(node.kind for node in net)
    assert after[GateKind.DFF] + after[GateKind.INV] <= before[GateKind.DFF] + before[GateKind.INV]
    assert_balanced(net)
    assert check_equivalence(source, net).equivalent
