"""Path-depth balancing and merge & replace."""

from .balancing import balance_paths, balancing_requirements, pending_balancing_dffs
from .merge_replace import merge_and_replace

__all__ = ['balance_paths', 'balancing_requirements', 'pending_balancing_dffs', 'merge_and_replace']
