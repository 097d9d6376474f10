from collections import Counter

import pytest

from src.aggregation import estimate_pnd, network_metrics
from src.ingestion import parse_bench
from src.mapping import MappingOptions, NetworkMapper, map_network, representative_cut
from src.netlist import GateKind
from src.preprocess import convert_gates, insert_splitters
from src.utils.errors import ConfigError, StructuralError
from src.verification import check_equivalence


def preprocessed(text, lib, name='bench'):
    return insert_splitters(convert_gates(parse_bench(text, name), lib))


def test_preprocessed_majority_cone(majority_cone_text, lib):
    net = preprocessed(majority_cone_text, lib)
    report = network_metrics(net, lib)
    assert (report.jjs, report.depth, report.pnd, report.splitters) == (61, 3, 183, 3)
    assert estimate_pnd(net, lib) == 207


def test_representative_cut_of_or_gate_is_majority(majority_cone_text, lib):
    net = preprocessed(majority_cone_text, lib)
    candidate = representative_cut(net, net.find('m'), lib)
    assert sorted(net.name_of(l) for l in candidate.cut.leaves) == ['a', 'b', 'c']
    assert str(candidate.cover) == '★★★'
    assert candidate.improvement == 82


def test_boundaries_have_no_representative(majority_cone_text, lib):
    net = preprocessed(majority_cone_text, lib)
    assert representative_cut(net, net.find('a'), lib) is None
    assert representative_cut(net, net.pos[0], lib) is None
    assert representative_cut(net, 10_000, lib) is None


def test_majority_cone_is_mapped_to_maj3(majority_cone_text, lib):
    source = parse_bench(majority_cone_text, 'maj')
    net = preprocessed(majority_cone_text, lib, 'maj')
    mapper = NetworkMapper(lib)
    mapped = mapper.run(net)

    counts = Counter(node.kind for node in mapped)
    assert counts[GateKind.MAJ3] == 1
    assert counts[GateKind.SP] == 0
    report = network_metrics(mapped, lib)
    assert (report.jjs, report.depth, report.pnd) == (26, 2, 52)
    assert mapper.accepted >= 1
    assert mapper.passes[-1].accepted == 0
    assert check_equivalence(source, mapped).equivalent


def test_disabling_majority_keeps_and_or_logic(majority_cone_text, lib):
    net = preprocessed(majority_cone_text, lib)
    mapped = map_network(net, lib, use_maj=False)
    assert not any(node.kind is GateKind.MAJ3 for node in mapped)
    assert estimate_pnd(mapped, lib) <= 207


def test_guard_never_raises_the_estimate(c17_text, lib):
    net = preprocessed(c17_text, lib, 'c17')
    before = estimate_pnd(net, lib)
    mapper = NetworkMapper(lib, MappingOptions(k=4))
    mapped = mapper.run(net)
    assert estimate_pnd(mapped, lib) <= before
    pnds = [p.estimated_pnd for p in mapper.passes]
    assert pnds == sorted(pnds, reverse=True)


@pytest.mark.parametrize('k', [2, 3, 4])
def test_mapping_c17_preserves_function(c17_text, lib, k):
    source = parse_bench(c17_text, 'c17')
    mapped = map_network(preprocessed(c17_text, lib, 'c17'), lib, k=k)
    assert check_equivalence(source, mapped).equivalent
    mapped.check_consistency()


@pytest.mark.parametrize('seed', range(8))
def test_mapping_random_networks_preserves_function(random_network, lib, seed):
    source = random_network(seed)
    net = insert_splitters(convert_gates(source.copy(), lib))
    before = estimate_pnd(net, lib)
    mapped = map_network(net, lib, complement_covers=True)
    assert check_equivalence(source, mapped).equivalent
    assert estimate_pnd(mapped, lib) <= before
    for node in mapped:
        if node.kind not in (GateKind.SP, GateKind.PO):
            assert len(node.fanouts) <= 1


def test_mapping_keeps_user_flip_flops(lib):
    text = ("INPUT(a)\nINPUT(b)\nINPUT(c)\nOUTPUT(y)\nq = DFF(m)\n"
            "ab = AND(a, b)\nbc = AND(b, c)\nac = AND(a, c)\nm = OR(ab, bc, ac)\n"
            "y = XOR(q, a)\n")
    source = parse_bench(text, 'seq')
    mapped = map_network(preprocessed(text, lib, 'seq'), lib)
    assert [mapped.name_of(d) for d in mapped.user_dffs()] == ['q']
    assert check_equivalence(source, mapped).equivalent


@pytest.mark.parametrize('kwargs', [
    {'k': 5},
    {'k': 1},
    {'max_passes': 0},
    {'cut_limit': 0},
])
def test_invalid_options(kwargs):
    with pytest.raises(ConfigError):
        MappingOptions(**kwargs)


def test_options_from_config():
    options = MappingOptions.from_config({'k': 3, 'use_xor': False})
    assert (options.k, options.use_xor, options.use_maj) == (3, False, True)
    assert MappingOptions.from_config(None) == MappingOptions()
    with pytest.raises(ConfigError):
        MappingOptions.from_config({'kk': 3})


@pytest.mark.parametrize('seed', range(8))
def test_rejected_rewrites_leave_no_trace(random_network, lib, seed):
    source = random_network(seed)
    net = insert_splitters(convert_gates(source.copy(), lib))
    mapper = NetworkMapper(lib, MappingOptions(k=4))
    mapped = mapper.run(net)
    assert mapped is net
    mapped.check_consistency()
    assert check_equivalence(source, mapped).equivalent
    # the journal is closed once the mapper returns
    with pytest.raises(StructuralError):
        mapped.rollback()
