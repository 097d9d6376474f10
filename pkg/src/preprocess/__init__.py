"""Gate conversion and splitter insertion."""

from .converter import convert_gates, remove_dangling
from .splitters import build_splitter_tree, insert_splitters, normalize_splitters

__all__ = [
    'convert_gates', 'remove_dangling',
    'insert_splitters', 'normalize_splitters', 'build_splitter_tree',
]
