"""
Exception hierarchy for the FluxMap synthesis toolkit.

Every error raised on purpose by the toolkit derives from FluxMapError so the
command-line driver can map it to an exit code.
"""

from typing import Dict, Optional


class FluxMapError(Exception):
    """Base class for all toolkit errors."""


class StructuralError(FluxMapError):
    """A network violates a structural invariant (cycle, broken edge, bad rewrite)."""

    def __init__(self, message: str, node: Optional[str] = None):
        super().__init__(message)
        self.node = node


class BenchParseError(FluxMapError):
    """A `.bench` text could not be parsed; carries the 1-based line number."""

    def __init__(self, message: str, line_number: int = 0):
        self.line_number = line_number
        prefix = f"line {line_number}: " if line_number else ""
        super().__init__(f"{prefix}{message}")


class ConfigError(FluxMapError):
    """Invalid configuration value, flag or cell library entry."""


class ConversionError(FluxMapError):
    """A gate cannot be expressed in (or written from) the SFQ cell basis."""


class InterfaceError(FluxMapError):
    """Two networks do not expose the same inputs, outputs or user flip-flops."""


class VerificationError(FluxMapError):
    """A synthesized network is not functionally equivalent to its input."""

    def __init__(self, message: str, counterexample: Optional[Dict[str, int]] = None):
        super().__init__(message)
        self.counterexample = counterexample or {}
