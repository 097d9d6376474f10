"""
Common interface of the netlist readers.

A reader is built from a small config dict (``path`` plus reader-specific
keys such as ``pattern`` or ``encoding``) and returns parsed networks.
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict


class NetlistReader(ABC):
    """
    Base class for `.bench` readers.

    Attributes:
        source_config: Reader parameters; ``path`` is always required
    """

    label = 'Netlist reader'

    def __init__(self, source_config: Dict[str, Any]):
        self.source_config = source_config
        self.validate_config()

    def validate_config(self) -> None:
        """
        Raises:
            ValueError: If ``path`` is missing
        """
        if 'path' not in self.source_config:
            raise ValueError(f"{self.label} requires 'path' in configuration")

    @property
    def path(self) -> Path:
        return Path(self.source_config['path'])

    @property
    def encoding(self) -> str:
        return self.source_config.get('encoding', 'utf-8')

    @abstractmethod
    def read(self) -> Any:
        """Parse the source into one network or a name -> network mapping."""
