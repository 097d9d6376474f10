from collections import Counter

import numpy as np
import pytest

from src.ingestion import parse_bench
from src.mapping import (
    Cover,
    Implicant,
    build_candidate,
    cost_original_cut,
    cover_alternatives,
    enumerate_cuts,
    regenerate_cut,
)
from src.mapping.regen import build_fragment
from src.netlist import GateKind
from src.preprocess import convert_gates, insert_splitters
from src.utils.errors import StructuralError
from src.verification import simulate_words


def cover(*cells, arity=None, inverted=False):
    implicants = tuple(sorted(Implicant(c) for c in cells))
    width = arity if arity is not None else len(cells[0])
    return Cover(implicants, width, inverted)


def fragment_truth(frag):
    arity = len(frag.pis)
    patterns = np.arange(1 << arity)
    inputs = {pi: ((patterns >> i) & 1).astype(bool) for i, pi in enumerate(frag.pis)}
    values = simulate_words(frag, inputs)[frag.pos[0]]
    return sum(1 << m for m, bit in enumerate(values) if bit)


def gate_counts(frag):
    return Counter(node.kind for node in frag if node.kind not in (GateKind.PI, GateKind.PO))


def test_and2_candidate(lib):
    cand = build_candidate(cover('11'), [0, 0], lib)
    assert (cand.jjs, cand.local_depth, cand.pnd) == (9, 1, 9)
    assert cand.balancing_dffs == 0


def test_shared_leaf_is_charged_a_splitter(lib):
    cand = build_candidate(cover('11-', '1-1'), [0, 0, 0], lib)
    assert gate_counts(cand.fragment) == {GateKind.AND2: 2, GateKind.OR2: 1, GateKind.SP: 1}
    assert cand.splitters == 1
    assert (cand.jjs, cand.local_depth, cand.pnd) == (30, 2, 60)


def test_majority_group_becomes_one_gate(lib):
    cand = build_candidate(cover('★★★'), [0, 0, 0], lib)
    assert gate_counts(cand.fragment) == {GateKind.MAJ3: 1}
    assert (cand.jjs, cand.local_depth, cand.pnd) == (12, 1, 12)


def test_xnor_pair_and_inverted_cover(lib):
    frag = build_fragment(cover('⊖⊖'), [0, 0])
    assert gate_counts(frag) == {GateKind.XOR2: 1, GateKind.INV: 1}
    frag = build_fragment(cover('11', inverted=True), [0, 0])
    assert gate_counts(frag) == {GateKind.AND2: 1, GateKind.INV: 1}
    assert fragment_truth(frag) == 0b0111


def test_complemented_literal_is_shared(lib):
    frag = build_fragment(cover('0-1', '01-'), [0, 0, 0])
    counts = gate_counts(frag)
    assert counts[GateKind.INV] == 1
    assert counts[GateKind.SP] == 1


def test_unequal_leaf_levels_need_balancing(lib):
    cand = build_candidate(cover('111'), [1, 1, 2], lib)
    assert cand.balancing_dffs == 2
    assert cand.jjs == 12 + 2 * 8
    assert cand.local_depth == 2
    assert cand.pnd == 56


def test_constant_cover_has_no_candidate(lib):
    assert build_candidate(Cover((), 2), [0, 0], lib) is None
    assert build_candidate(cover('--'), [0, 0], lib) is None


def test_leaf_count_must_match(lib):
    with pytest.raises(StructuralError):
        build_candidate(cover('11'), [0, 0, 0], lib)


@pytest.mark.parametrize('arity', [2, 3])
def test_fragments_realize_their_cover(arity):
    for truth in range(1, (1 << (1 << arity)) - 1):
        for alternative in cover_alternatives(truth, arity, complement=True):
            frag = build_fragment(alternative, [0] * arity)
            assert fragment_truth(frag) == truth, str(alternative)


def test_regenerating_the_example_cut_costs_more(cut_example, lib):
    net = cut_example
    cut = next(c for c in enumerate_cuts(net, net.find('H'), k=3)
               if {net.name_of(l) for l in c.leaves} == {'A', 'D', 'G'})
    assert cost_original_cut(net, cut, lib) == 42

    cand = regenerate_cut(net, cut, lib)
    assert str(cand.cover) == '111'
    assert cand.jjs == 28
    assert cand.pnd == 56
    assert cand.improvement == -14
    assert cand.cut is cut


def test_regenerated_majority_cone(majority_cone_text, lib):
    net = insert_splitters(convert_gates(parse_bench(majority_cone_text), lib))
    m = net.find('m')
    cut = next(c for c in enumerate_cuts(net, m, k=3)
               if {net.name_of(l) for l in c.leaves} == {'a', 'b', 'c'})
    cand = regenerate_cut(net, cut, lib)
    assert str(cand.cover) == '★★★'
    assert cost_original_cut(net, cut, lib) == 94
    assert cand.improvement == 82
