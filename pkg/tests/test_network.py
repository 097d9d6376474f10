import pytest

from src.netlist import (
    GateKind,
    Network,
    Origin,
    compute_levels,
    eliminate_dead,
    logical_depth,
    topological_order,
)
from src.utils.errors import StructuralError


def small_network():
    net = Network('small')
    a, b = net.add_pi('a'), net.add_pi('b')
    g = net.add_node(GateKind.AND2, [a, b], name='g')
    h = net.add_node(GateKind.INV, [g], name='h')
    net.add_po(h, 'y')
    return net, a, b, g, h


def test_edges_are_symmetric():
    net, a, b, g, h = small_network()
    assert net.nodes[a].fanouts == [g]
    assert net.nodes[g].fanins == [a, b]
    assert net.nodes[g].fanouts == [h]
    net.check_consistency()


def test_default_origins():
    net, a, *_ = small_network()
    dff = net.add_node(GateKind.DFF, [a])
    sp = net.add_node(GateKind.SP, [a])
    assert net.nodes[dff].origin is Origin.USER_DFF
    assert net.nodes[dff].is_user_dff
    assert net.nodes[sp].origin is Origin.INSERTED_SPLITTER
    balancing = net.add_node(GateKind.DFF, [a], origin=Origin.BALANCING_DFF)
    assert not net.nodes[balancing].is_user_dff


def test_unknown_fanin_is_rejected():
    net = Network()
    with pytest.raises(StructuralError):
        net.add_node(GateKind.INV, [42])


def test_remove_node_with_fanouts_fails():
    net, a, b, g, h = small_network()
    with pytest.raises(StructuralError):
        net.remove_node(g)


def test_ids_are_not_recycled():
    net, a, b, g, h = small_network()
    extra = net.add_node(GateKind.INV, [a])
    net.remove_node(extra)
    again = net.add_node(GateKind.INV, [a])
    assert again != extra


def test_redirect_edge_moves_one_edge():
    net, a, b, g, h = small_network()
    net.redirect_edge(a, g, b)
    assert net.nodes[g].fanins == [b, b]
    assert net.nodes[a].fanouts == []
    assert net.nodes[b].fanouts.count(g) == 2
    net.check_consistency()


def test_copy_is_independent():
    net, a, b, g, h = small_network()
    clone = net.copy()
    clone.redirect_edge(a, g, b)
    assert net.nodes[g].fanins == [a, b]
    new = clone.add_node(GateKind.INV, [a])
    assert new not in net.nodes


def test_topological_order_puts_fanins_first():
    net, a, b, g, h = small_network()
    order = topological_order(net)
    assert order.index(a) < order.index(g) < order.index(h)
    assert order.index(b) < order.index(g)


def test_combinational_cycle_is_reported():
    net = Network()
    a = net.add_pi('a')
    g1 = net.add_node(GateKind.AND2, [a, a], name='g1')
    g2 = net.add_node(GateKind.AND2, [g1, a], name='g2')
    net.set_fanins(g1, [a, g2])
    with pytest.raises(StructuralError) as excinfo:
        topological_order(net)
    assert excinfo.value.node in ('g1', 'g2')


def test_feedback_through_user_dff_is_legal():
    net = Network()
    a = net.add_pi('a')
    q = net.add_node(GateKind.DFF, [a], name='q')
    g = net.add_node(GateKind.XOR2, [a, q], name='g')
    net.set_fanins(q, [g])
    net.add_po(g, 'y')
    order = topological_order(net)
    assert order.index(q) < order.index(g)


def test_levels_splitters_and_dffs():
    net = Network()
    a, b = net.add_pi('a'), net.add_pi('b')
    g = net.add_node(GateKind.AND2, [a, b])
    sp = net.add_node(GateKind.SP, [g])
    h = net.add_node(GateKind.INV, [sp])
    q = net.add_node(GateKind.DFF, [h])
    k = net.add_node(GateKind.AND2, [q, sp])
    po = net.add_po(k, 'y')

    levels = compute_levels(net)
    assert levels[g] == 1
    assert levels[sp] == 1
    assert levels[h] == 2
    assert levels[q] == 0
    assert levels[k] == 2
    assert levels[po] == 2
    assert logical_depth(net) == 2


def test_seeded_levels():
    net, a, b, g, h = small_network()
    compute_levels(net, seed_levels={a: 3, b: 1})
    assert net.nodes[g].level == 4
    assert net.nodes[h].level == 5


def test_eliminate_dead_keeps_interface():
    net, a, b, g, h = small_network()
    spare = net.add_node(GateKind.INV, [a])
    removed = eliminate_dead(net, [spare])
    assert removed == [spare]
    assert a in net.nodes


def test_consumers_see_through_splitters(cut_example):
    net = cut_example
    d = net.find('D')
    assert sorted(net.name_of(c) for c in net.consumers(d)) == ['F', 'G']
    assert len(net.splitter_tree(d)) == 1
    assert all(net.resolve_driver(sp) == d for sp in net.splitter_tree(d))


def test_find_prefers_gate_over_output():
    net, a, b, g, h = small_network()
    net.names[h] = 'y'
    assert net.find('y') == h
    with pytest.raises(StructuralError):
        net.find('missing')
