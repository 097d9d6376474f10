"""
Folder reader: parses every `.bench` file in a benchmark directory.
"""

from typing import Dict

from ..netlist.network import Network
from ..utils.errors import FluxMapError
from ..utils.logger import setup_logger
from .base import NetlistReader
from .bench_reader import BenchReader

logger = setup_logger(__name__)


class BenchFolderReader(NetlistReader):
    """
    Read all matching netlists from a folder.

    Configuration parameters:
        - path: Path to folder (required)
        - pattern: File pattern (default: '*.bench')
        - recursive: Search subdirectories (default: False)
        - encoding: File encoding (default: 'utf-8')

    Files that fail to parse are logged and skipped.

    Example:
        >>> reader = BenchFolderReader({'path': 'benchmarks/'})
        >>> circuits = reader.read()
        >>> sorted(circuits)
        ['c17', 'c432']
    """

    label = 'Folder reader'

    def read(self) -> Dict[str, Network]:
        """
        Parse every matching file, keyed by file stem in sorted order.

        Raises:
            FileNotFoundError: If folder doesn't exist
            ValueError: If no matching files are found or none parses
        """
        folder_path = self.path

        if not folder_path.exists():
            raise FileNotFoundError(f"Folder not found: {folder_path}")

        if not folder_path.is_dir():
            raise ValueError(f"Path is not a directory: {folder_path}")

        pattern = self.source_config.get('pattern', '*.bench')
        if self.source_config.get('recursive', False):
            files = list(folder_path.rglob(pattern))
        else:
            files = list(folder_path.glob(pattern))

        if not files:
            raise ValueError(f"No files matching pattern '{pattern}' found in {folder_path}")

        logger.info(f"Found {len(files)} files matching pattern '{pattern}' in {folder_path}")

        circuits: Dict[str, Network] = {}
        for file_path in sorted(files):
            try:
                reader = BenchReader({
                    'path': str(file_path),
                    'encoding': self.encoding,
                })
                circuits[file_path.stem] = reader.read()
            except (FluxMapError, OSError) as e:
                logger.warning(f"Failed to read netlist {file_path}: {str(e)}")
                continue

        if not circuits:
            raise ValueError("Failed to read any netlists from the folder")

        logger.info(f"Successfully parsed {len(circuits)} netlists")
        return circuits
