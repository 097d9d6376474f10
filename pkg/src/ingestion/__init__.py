"""Netlist and cell-library readers."""

from .base import NetlistReader
from .bench_reader import BenchLine, BenchReader, parse_bench
from .folder_reader import BenchFolderReader
from .library_reader import load_cell_library, parse_cell_library

__all__ = [
    'NetlistReader', 'BenchLine', 'BenchReader', 'BenchFolderReader', 'parse_bench',
    'parse_cell_library', 'load_cell_library',
]
