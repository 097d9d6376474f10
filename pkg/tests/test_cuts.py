from itertools import combinations

import pytest

from src.ingestion import parse_bench
from src.mapping import Cut, CutEnumerator, cost_original_cut, cut_truth_table, enumerate_cuts
from src.mapping.cuts import cone_interior
from src.netlist import GateKind, Network
from src.netlist.logic import evaluate_gate
from src.preprocess import convert_gates, insert_splitters
from src.utils.errors import ConfigError


def leaf_names(net, cut):
    return frozenset(net.name_of(leaf) for leaf in cut.leaves)


def test_cut_example_has_five_isolated_cuts(cut_example):
    net = cut_example
    cuts = enumerate_cuts(net, net.find('H'), k=3)
    assert {leaf_names(net, cut) for cut in cuts} == {
        frozenset('FG'), frozenset('ADG'), frozenset('DEF'),
        frozenset('ADE'), frozenset('ABE'),
    }


def test_non_isolated_cut_is_dropped(cut_example):
    # {B, E, F} would swallow D, which F still needs
    net = cut_example
    cuts = enumerate_cuts(net, net.find('H'), k=3)
    assert frozenset('BEF') not in {leaf_names(net, cut) for cut in cuts}


def test_interior_includes_splitters(cut_example):
    net = cut_example
    cut = next(c for c in enumerate_cuts(net, net.find('H'), k=3)
               if leaf_names(net, c) == frozenset('ADG'))
    interior_kinds = sorted(net.nodes[n].kind.value for n in cut.interior)
    assert interior_kinds == ['AND2', 'AND2', 'SP']
    assert net.find('F') in cut.interior


def test_single_and_truth_table():
    net = Network()
    a, b = net.add_pi('a'), net.add_pi('b')
    g = net.add_node(GateKind.AND2, [a, b])
    net.add_po(g, 'y')
    (cut,) = enumerate_cuts(net, g, k=2)
    assert cut.leaves == (a, b)
    assert cut.truth == 0b1000


def test_majority_truth_table():
    net = Network()
    a, b, c = (net.add_pi(n) for n in 'abc')
    m = net.add_node(GateKind.MAJ3, [a, b, c])
    net.add_po(m, 'y')
    (cut,) = enumerate_cuts(net, m, k=3)
    assert cut.truth == 0b11101000


def test_cut_example_truth_table(cut_example):
    net = cut_example
    cut = next(c for c in enumerate_cuts(net, net.find('H'), k=3)
               if leaf_names(net, c) == frozenset('ADG'))
    # H = A & D & G
    assert cut.truth == 0b10000000


def reference_truth(net, cut):
    """Minterm-by-minterm interpreter over the cut cone."""
    table = 0
    for minterm in range(1 << cut.arity):
        values = {leaf: (minterm >> i) & 1 for i, leaf in enumerate(cut.leaves)}
        pending = [cut.root]
        while pending:
            current = pending[-1]
            missing = [f for f in net.nodes[current].fanins if f not in values]
            if missing:
                pending.extend(missing)
                continue
            pending.pop()
            if current not in values:
                node = net.nodes[current]
                values[current] = evaluate_gate(
                    node.kind, [values[f] for f in node.fanins], lambda v: 1 - v)
        table |= values[cut.root] << minterm
    return table


@pytest.mark.parametrize('seed', range(5))
def test_truth_tables_match_interpreter(random_network, lib, seed):
    net = insert_splitters(convert_gates(random_network(seed), lib))
    enumerator = CutEnumerator(k=4)
    checked = 0
    for node in list(net):
        for cut in enumerator.cuts(net, node.id):
            assert cut.truth == reference_truth(net, cut)
            assert cut_truth_table(net, cut) == cut.truth
            checked += 1
    assert checked > 0


@pytest.mark.parametrize('seed', range(5))
def test_cuts_grow_with_k(random_network, lib, seed):
    net = insert_splitters(convert_gates(random_network(seed), lib))
    for node in list(net):
        for k in (2, 3):
            small = {c.leaves for c in CutEnumerator(k, cut_limit=10000).cuts(net, node.id)}
            large = {c.leaves for c in CutEnumerator(k + 1, cut_limit=10000).cuts(net, node.id)}
            assert small <= large
            assert all(len(leaves) <= k for leaves in small)


@pytest.mark.parametrize('seed', range(3))
def test_every_cut_separates_root_from_inputs(random_network, lib, seed):
    net = insert_splitters(convert_gates(random_network(seed), lib))
    for node in list(net):
        for cut in enumerate_cuts(net, node.id, k=4):
            assert 2 <= cut.arity <= 4
            assert cut.root in cut.interior
            assert not set(cut.leaves) & cut.interior
            assert cone_interior(net, cut.root, cut.leaves) == set(cut.interior)


def merged_leaf_sets(net, node_id, allowed, memo):
    """Every leaf set drawn from ``allowed`` that fan-in cut merging can build for a node."""
    if node_id in memo:
        return memo[node_id]
    sets = {frozenset([node_id])} if node_id in allowed else set()
    node = net.nodes[node_id]
    if node.fanins and not net.is_boundary(node_id):
        partial = {frozenset()}
        for fanin in node.fanins:
            options = merged_leaf_sets(net, net.resolve_driver(fanin), allowed, memo)
            partial = {p | o for p in partial for o in options}
        sets |= partial
    memo[node_id] = sets
    return sets


def subset_search(net, root, k):
    """Leaf sets of ``root`` found by trying every 2..k subset of signal producers."""
    producers = [n.id for n in net if n.kind not in (GateKind.SP, GateKind.PO) and n.id != root]
    found = set()
    for size in range(2, k + 1):
        for leaves in combinations(producers, size):
            allowed = frozenset(leaves)
            if allowed not in merged_leaf_sets(net, root, allowed, {}):
                continue
            interior = cone_interior(net, root, allowed)
            if all(set(net.consumers(n)) <= interior for n in interior
                   if n != root and net.nodes[n].kind is not GateKind.SP):
                found.add(allowed)
    return found


@pytest.mark.parametrize('seed', range(6))
def test_enumeration_matches_subset_search(random_network, lib, seed):
    net = insert_splitters(convert_gates(random_network(seed, n_inputs=4, n_gates=8), lib))
    enumerator = CutEnumerator(3, cut_limit=10000)
    roots = [n.id for n in net
             if n.kind not in (GateKind.PI, GateKind.PO, GateKind.SP) and not net.is_boundary(n.id)]
    assert roots
    for root in roots:
        enumerated = {frozenset(cut.leaves) for cut in enumerator.cuts(net, root)}
        assert enumerated == subset_search(net, root, 3), net.name_of(root)


def test_no_cuts_for_boundaries(cut_example):
    net = cut_example
    enumerator = CutEnumerator(k=4)
    for node in net:
        if node.kind in (GateKind.PI, GateKind.PO, GateKind.SP):
            assert enumerator.cuts(net, node.id) == []


def test_user_dff_is_a_leaf():
    net = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\nq = DFF(x)\nx = AND(a, b)\n"
                      "y = OR(q, a)\n")
    y = net.find('y')
    cuts = enumerate_cuts(net, y, k=4)
    assert [tuple(net.name_of(l) for l in c.leaves) for c in cuts] == [('a', 'q')]
    assert enumerate_cuts(net, net.find('q'), k=4) == []


@pytest.mark.parametrize('k', [0, 1, 5])
def test_k_is_validated(k):
    with pytest.raises(ConfigError):
        CutEnumerator(k)


def test_original_cut_cost(cut_example, lib):
    net = cut_example
    cut = next(c for c in enumerate_cuts(net, net.find('H'), k=3)
               if leaf_names(net, c) == frozenset('ADG'))
    assert cost_original_cut(net, cut, lib) == 42


def test_cache_invalidation(cut_example):
    net = cut_example
    enumerator = CutEnumerator(k=3)
    h = net.find('H')
    assert len(enumerator.cuts(net, h)) == 5
    enumerator.invalidate([h])
    assert len(enumerator.cuts(net, h)) == 5
    assert isinstance(enumerator.cuts(net, h)[0], Cut)
