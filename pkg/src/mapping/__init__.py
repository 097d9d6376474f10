"""Cut enumeration, Boolean minimization, regeneration and the mapper."""

from .boolmin import (
    Cover,
    Implicant,
    cover_alternatives,
    fuse_cover,
    fuse_maj,
    fuse_xor_xnor,
    minimize,
    qm_prime_implicants,
    select_cover,
)
from .cuts import Cut, CutEnumerator, cost_original_cut, cut_truth_table, enumerate_cuts
from .mapper import MappingOptions, NetworkMapper, map_network, representative_cut
from .regen import Candidate, build_candidate, improvement, regenerate_cut

__all__ = [
    'Cover', 'Implicant', 'cover_alternatives', 'fuse_cover', 'fuse_maj', 'fuse_xor_xnor',
    'minimize', 'qm_prime_implicants', 'select_cover',
    'Cut', 'CutEnumerator', 'cost_original_cut', 'cut_truth_table', 'enumerate_cuts',
    'MappingOptions', 'NetworkMapper', 'map_network', 'representative_cut',
    'Candidate', 'build_candidate', 'improvement', 'regenerate_cut',
]
