"""Undirected repetition thresholds and undirected pattern avoidance."""

from .words import ExtExponent, Word, exponent, factors, max_reversible_factor_length, reverse, word
from .repetitions import (
    PowerOccurrence,
    find_ordinary_power,
    find_reverse_power,
    find_undirected_power,
    is_undirected_free,
)
from .morphic import Morphism, MorphicWord, apply, find_cuts, fixed_point_prefix, saturated_factor_set
from .pansiot import decode, encode
from .patterns import Pattern, PatternInstance, avoids, classify_binary_pattern, find_instance_undirected
from .search import SearchResult, longest_pattern_free, longest_power_free

__all__ = [
    "ExtExponent", "Word", "exponent", "factors", "max_reversible_factor_length", "reverse", "word",
    "PowerOccurrence", "find_ordinary_power", "find_reverse_power", "find_undirected_power",
    "is_undirected_free", "Morphism", "MorphicWord", "apply", "find_cuts", "fixed_point_prefix",
    "saturated_factor_set", "decode", "encode", "Pattern", "PatternInstance", "avoids",
    "classify_binary_pattern", "find_instance_undirected", "SearchResult", "longest_pattern_free",
    "longest_power_free",
]

__version__ = "0.1.0"
