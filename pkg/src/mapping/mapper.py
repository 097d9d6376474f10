"""
Greedy PND-driven mapping.

Nodes are visited in topological order. For each node the representative
cut is the regenerated cut with the largest positive local PND improvement;
it is spliced in with replace_cone. Passes repeat until one makes no change
or the pass limit is reached.
"""

from dataclasses import dataclass, fields
from typing import Any, Dict, Iterable, List, Mapping, Optional, Set

from ..aggregation.metrics import estimate_pnd
from ..netlist.cell_library import CellLibrary
from ..netlist.network import GateKind, Network, compute_levels, topological_order
from ..netlist.rewrite import replace_cone
from ..utils.errors import ConfigError
from ..utils.logger import setup_logger
from .cuts import CutEnumerator, validate_k
from .regen import Candidate, regenerate_cut

logger = setup_logger(__name__)


@dataclass
class MappingOptions:
    """
    Mapping knobs, normally built from the ``mapping`` config section.

    Example:
        >>> options = MappingOptions.from_config({'k': 3, 'use_xor': False})
    """

    k: int = 4
    max_passes: int = 8
    cut_limit: int = 64
    use_maj: bool = True
    use_xor: bool = True
    complement_covers: bool = False
    global_guard: bool = True
    sweep_k: bool = True

    def __post_init__(self) -> None:
        validate_k(self.k)
        if not isinstance(self.max_passes, int) or self.max_passes < 1:
            raise ConfigError(f"max_passes must be a positive integer, got {self.max_passes!r}")
        if not isinstance(self.cut_limit, int) or self.cut_limit < 1:
            raise ConfigError(f"cut_limit must be a positive integer, got {self.cut_limit!r}")

    @classmethod
    def from_config(cls, section: Optional[Mapping[str, Any]]) -> 'MappingOptions':
        known = {f.name for f in fields(cls)}
        section = dict(section or {})
        unknown = sorted(set(section) - known)
        if unknown:
            raise ConfigError(f"Unknown mapping option(s): {', '.join(unknown)}")
        return cls(**section)


@dataclass
class PassStats:
    number: int
    accepted: int = 0
    rejected: int = 0
    estimated_pnd: int = 0


def _rewritable(net: Network, node_id: int) -> bool:
    node = net.nodes[node_id]
    return node.kind not in (GateKind.PI, GateKind.PO, GateKind.SP) and not node.is_user_dff


def representative_cut(
    net: Network,
    node_id: int,
    lib: CellLibrary,
    options: Optional[MappingOptions] = None,
    enumerator: Optional[CutEnumerator] = None,
) -> Optional[Candidate]:
    """
    Best improving regeneration of any cut of ``node_id``, or None.

    Ties on improvement go to fewer JJs, lower depth, fewer DFFs, then the
    leaf ids.
    """
    options = options or MappingOptions()
    if node_id not in net.nodes or not _rewritable(net, node_id):
        return None
    enumerator = enumerator or CutEnumerator(options.k, options.cut_limit)

    best: Optional[Candidate] = None
    for cut in enumerator.cuts(net, node_id):
        candidate = regenerate_cut(net, cut, lib, options.use_maj, options.use_xor,
                                   options.complement_covers)
        if candidate is None or candidate.improvement <= 0:
            continue
        key = (-candidate.improvement, candidate.jjs, candidate.local_depth,
               candidate.balancing_dffs, cut.leaves)
        if best is None or key < (-best.improvement, best.jjs, best.local_depth,
                                  best.balancing_dffs, best.cut.leaves):
            best = candidate
    return best


def _fanout_cone(net: Network, start: Iterable[int]) -> Set[int]:
    seen: Set[int] = set()
    stack = list(start)
    while stack:
        current = stack.pop()
        if current in seen or current not in net.nodes:
            continue
        seen.add(current)
        stack.extend(net.nodes[current].fanouts)
    return seen


class NetworkMapper:
    """
    Runs mapping passes over a preprocessed network.

    With ``global_guard`` each rewrite is applied under a checkpoint and rolled
    back unless the network's estimated PND (balancing DFFs included) strictly
    drops.

    Example:
        >>> mapper = NetworkMapper(CellLibrary(), MappingOptions(k=3))
        >>> mapped = mapper.run(net)
        >>> mapper.passes[-1].accepted
        0
    """

    def __init__(self, lib: CellLibrary, options: Optional[MappingOptions] = None):
        self.lib = lib
        self.options = options or MappingOptions()
        self.enumerator = CutEnumerator(self.options.k, self.options.cut_limit)
        self.passes: List[PassStats] = []

    @property
    def accepted(self) -> int:
        return sum(p.accepted for p in self.passes)

    def run(self, net: Network) -> Network:
        """
        Map until a pass changes nothing or ``max_passes`` is reached.

        Returns:
            ``net``, mapped in place
        """
        compute_levels(net)
        self.enumerator.clear()
        self.passes = []
        current_pnd = estimate_pnd(net, self.lib)
        logger.info(
            f"Mapping '{net.name}' with K={self.options.k}, "
            f"max {self.options.max_passes} pass(es), estimated PND {current_pnd}")

        for number in range(1, self.options.max_passes + 1):
            stats = PassStats(number)
            self.passes.append(stats)
            current_pnd = self._run_pass(net, stats, current_pnd)
            stats.estimated_pnd = current_pnd
            logger.info(
                f"Pass {number}: {stats.accepted} rewrite(s) accepted, "
                f"{stats.rejected} rejected, estimated PND {current_pnd}")
            if stats.accepted == 0:
                break

        return net

    def _run_pass(self, net: Network, stats: PassStats, current_pnd: int) -> int:
        for node_id in topological_order(net):
            if node_id not in net.nodes:
                continue
            candidate = representative_cut(net, node_id, self.lib, self.options, self.enumerator)
            if candidate is None:
                continue

            name = net.name_of(node_id)
            guarded = self.options.global_guard
            if guarded:
                net.checkpoint()
            binding = dict(zip(candidate.fragment.pis, candidate.cut.leaves))
            rewrite = replace_cone(net, node_id, set(candidate.cut.interior),
                                   candidate.fragment, binding)

            new_pnd = estimate_pnd(net, self.lib)
            if guarded and new_pnd >= current_pnd:
                net.rollback()
                stats.rejected += 1
                logger.debug(
                    f"Rejected rewrite of {name}: estimated PND "
                    f"{current_pnd} -> {new_pnd}")
                continue

            logger.debug(
                f"Rewrote {name} ({len(candidate.cut.leaves)} leaves, "
                f"local gain {candidate.improvement}): estimated PND {current_pnd} -> {new_pnd}")
            if guarded:
                net.commit()
            current_pnd = new_pnd
            stats.accepted += 1
            self.enumerator.invalidate(set(rewrite.removed) | _fanout_cone(net, [rewrite.new_root]))
        return current_pnd


def map_network(
    net: Network,
    lib: CellLibrary,
    options: Optional[MappingOptions] = None,
    **overrides: Any,
) -> Network:
    """
    Functional entry point around ``NetworkMapper``.

    Keyword overrides (``k``, ``max_passes``, ...) replace fields of ``options``.
    """
    base: Dict[str, Any] = {}
    if options is not None:
        base = {f.name: getattr(options, f.name) for f in fields(MappingOptions)}
    base.update(overrides)
    return NetworkMapper(lib, MappingOptions(**base)).run(net)
