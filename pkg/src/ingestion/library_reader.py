"""
Cell-library configuration parser.

One ``NAME=VALUE`` or ``NAME: VALUE`` entry per line, ``#`` comments allowed.
Unlisted cells keep their default JJ count.
"""

from pathlib import Path
from typing import Dict

from ..netlist.cell_library import CellLibrary
from ..utils.errors import ConfigError
from ..utils.logger import setup_logger

logger = setup_logger(__name__)


def parse_cell_library(text: str) -> CellLibrary:
    """
    Parse cell-library text.

    Example:
        >>> parse_cell_library("MAJ=14").jj(GateKind.MAJ3)
        14

    Raises:
        ConfigError: On malformed lines, unknown cells or negative costs
    """
    entries: Dict[str, str] = {}
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        for separator in ('=', ':'):
            if separator in line:
                name, value = (part.strip() for part in line.split(separator, 1))
                break
        else:
            raise ConfigError(f"Cell library line {line_number}: expected NAME=VALUE, got {line!r}")
        if not name or not value:
            raise ConfigError(f"Cell library line {line_number}: expected NAME=VALUE, got {line!r}")
        entries[name] = value

    library = CellLibrary.from_mapping(entries)
    if entries:
        logger.info(f"Cell library overrides: {', '.join(sorted(entries))}")
    return library


def load_cell_library(path: str) -> CellLibrary:
    file_path = Path(path)
    if not file_path.exists():
        raise ConfigError(f"Cell library file not found: {path}")
    return parse_cell_library(file_path.read_text(encoding='utf-8'))
