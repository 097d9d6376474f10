"""
Cut regeneration: rebuild a cut's function from a cover and cost the result.

The fragment is a small Network whose PIs stand for the cut leaves. Its
levels are seeded with the real leaf levels so the cost reflects the
balancing flip-flops the host would need. Splitters for leaves shared inside
the fragment are charged immediately.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..netlist.cell_library import CellLibrary
from ..netlist.network import GateKind, Network, compute_levels
from ..netlist.trees import build_tree
from ..postprocess.balancing import pending_balancing_dffs
from ..preprocess.splitters import build_splitter_tree
from ..utils.errors import StructuralError
from .boolmin import MAJ_MARK, XNOR_MARK, Cover, cover_alternatives
from .cuts import Cut, cost_original_cut, cut_truth_table


@dataclass
class Candidate:
    """A costed replacement circuit for one cut."""

    fragment: Network
    cover: Cover
    jjs: int
    local_depth: int
    pnd: int
    balancing_dffs: int
    splitters: int
    cut: Optional[Cut] = None
    improvement: int = 0

    @property
    def rank(self) -> Tuple[int, int, int, int]:
        return (self.pnd, self.jjs, self.local_depth, self.balancing_dffs)


def _add_gate(frag: Network, kind: GateKind, fanins: List[int], levels: Dict[int, int]) -> int:
    node_id = frag.add_node(kind, fanins)
    levels[node_id] = max(levels[f] for f in fanins) + 1
    return node_id


def build_fragment(cover: Cover, leaf_levels: Sequence[int]) -> Optional[Network]:
    """
    Gate-level circuit for a cover over leaves at the given levels.

    ★ groups become MAJ3, ⊕ pairs XOR2, ⊖ pairs XOR2 + INV and complemented
    literals share one INV per leaf. Product terms and the final sum are
    level-aware AND/OR trees. Returns None for constant covers.
    """
    if len(leaf_levels) != cover.arity:
        raise StructuralError(
            f"Cover over {cover.arity} variables does not match {len(leaf_levels)} leaves")
    if cover.is_constant:
        return None

    frag = Network('candidate')
    leaves = [frag.add_pi(f"x{i}") for i in range(cover.arity)]
    levels: Dict[int, int] = {pi: level for pi, level in zip(leaves, leaf_levels)}
    complements: Dict[int, int] = {}

    def literal(position: int, positive: bool) -> int:
        if positive:
            return leaves[position]
        if position not in complements:
            complements[position] = _add_gate(frag, GateKind.INV, [leaves[position]], levels)
        return complements[position]

    terms = []
    for implicant in cover.implicants:
        operands = [literal(i, c == '1') for i, c in enumerate(implicant.cells) if c in '01']
        for mark, positions in implicant.groups:
            inputs = [leaves[p] for p in positions]
            if mark == MAJ_MARK:
                operands.append(_add_gate(frag, GateKind.MAJ3, inputs, levels))
            else:
                parity = _add_gate(frag, GateKind.XOR2, inputs, levels)
                if mark == XNOR_MARK:
                    parity = _add_gate(frag, GateKind.INV, [parity], levels)
                operands.append(parity)
        terms.append(build_tree(frag, 'AND', operands, levels))

    root = build_tree(frag, 'OR', terms, levels)
    if cover.inverted:
        root = _add_gate(frag, GateKind.INV, [root], levels)
    frag.add_po(root, 'out')

    for node_id in sorted(frag.nodes):
        if frag.nodes[node_id].kind not in (GateKind.SP, GateKind.PO):
            build_splitter_tree(frag, node_id)
    compute_levels(frag, seed_levels={pi: level for pi, level in zip(leaves, leaf_levels)})
    return frag


def build_candidate(cover: Cover, leaf_levels: Sequence[int], lib: CellLibrary) -> Optional[Candidate]:
    """
    Build and cost the fragment for a cover.

    jjs counts every cell plus the balancing DFFs the fragment needs;
    local_depth is the output level minus the shallowest leaf level.

    Example:
        >>> cand = build_candidate(Cover((Implicant('11'),), 2), [0, 0], lib)
        >>> cand.jjs, cand.local_depth, cand.pnd
        (9, 1, 9)
    """
    frag = build_fragment(cover, leaf_levels)
    if frag is None:
        return None

    dffs = pending_balancing_dffs(frag)
    jjs = sum(lib.jj(node.kind) for node in frag) + dffs * lib.jj(GateKind.DFF)
    depth = frag.nodes[frag.pos[0]].level - min(leaf_levels)
    splitters = sum(1 for node in frag if node.kind is GateKind.SP)
    return Candidate(frag, cover, jjs, depth, jjs * depth, dffs, splitters)


def regenerate_cut(
    net: Network,
    cut: Cut,
    lib: CellLibrary,
    use_maj: bool = True,
    use_xor: bool = True,
    complement: bool = False,
) -> Optional[Candidate]:
    """
    Cheapest regeneration of a cut over all cover alternatives.

    Ties go to lower PND, then fewer JJs, lower depth and fewer DFFs.
    Returns None when the cut computes a constant.
    """
    truth = cut.truth if cut.truth is not None else cut_truth_table(net, cut)
    leaf_levels = [net.nodes[leaf].level for leaf in cut.leaves]

    best: Optional[Candidate] = None
    for cover in cover_alternatives(truth, cut.arity, use_maj, use_xor, complement):
        candidate = build_candidate(cover, leaf_levels, lib)
        if candidate is not None and (best is None or candidate.rank < best.rank):
            best = candidate

    if best is not None:
        best.cut = cut
        best.improvement = improvement(net, cut, best, lib)
    return best


def improvement(net: Network, cut: Cut, candidate: Candidate, lib: CellLibrary) -> int:
    """Local PND saved by replacing the cut with the candidate (negative when worse)."""
    return cost_original_cut(net, cut, lib) - candidate.pnd
