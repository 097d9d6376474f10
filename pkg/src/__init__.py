"""FluxMap: majority-aware SFQ technology mapping."""

__version__ = '1.0.0'
__author__ = 'FluxMap'
