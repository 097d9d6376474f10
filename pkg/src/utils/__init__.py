"""Utility modules for configuration, logging and errors."""

from .config_loader import ConfigLoader
from .errors import (
    BenchParseError,
    ConfigError,
    ConversionError,
    FluxMapError,
    InterfaceError,
    StructuralError,
    VerificationError,
)
from .logger import configure_logging, setup_logger

__all__ = [
    'ConfigLoader', 'setup_logger', 'configure_logging',
    'FluxMapError', 'StructuralError', 'BenchParseError', 'ConfigError',
    'ConversionError', 'InterfaceError', 'VerificationError',
]
