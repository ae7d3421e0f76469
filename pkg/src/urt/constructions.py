"""The shipped morphisms, read from ``data/*.txt``."""

from __future__ import annotations

import hashlib
from functools import lru_cache
from importlib import resources

from .morphic import Morphism, MorphicWord, parse_morphism

K_RANGE = range(4, 22)

# patterns whose avoiding word is a pure binary fixed point
PURE_PATTERNS = ("xxxyyx", "xxxyyy", "xxyxyy", "xxyyyx", "xyxyyx")
# patterns whose avoiding word is g_p applied to the fixed point of thue
THUE_PATTERNS = ("xxxyxy", "xxyxxy", "xyxxxy", "xyxxyx")
# patterns with their own f_p and g_p
PAIRED_PATTERNS = ("xyxy", "xxyyx", "xyxyx")
CONSTRUCTED_PATTERNS = PURE_PATTERNS + THUE_PATTERNS + PAIRED_PATTERNS
# the set P of binary patterns with undirected avoidability index 2
INDEX_TWO_PATTERNS = (
    "xxyyx", "xyxyx", "xxxyxy", "xxxyyx", "xxxyyy", "xxyxxy",
    "xxyxyy", "xxyyyx", "xyxxxy", "xyxxyx", "xyxyyx",
)

# w_p = f_p^omega(0) in the listings, but every image lives over {1, 2, ...};
# the fixed points are taken from letter 1.
PATTERN_SEED = 1


def _data_text(name: str) -> str:
    return resources.files("urt").joinpath("data").joinpath(f"{name}.txt").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load(name: str) -> Morphism:
    return parse_morphism(_data_text(name), "digits", name=name)


def checksum(name: str) -> str:
    return hashlib.sha256(_data_text(name).encode()).hexdigest()


def _check_k(k: int):
    if k not in K_RANGE:
        raise ValueError(f"no construction for k = {k}; available for 4..21")


def f_k(k: int) -> Morphism:
    _check_k(k)
    return load(f"f_{k}")


def g_k(k: int) -> Morphism:
    _check_k(k)
    return load(f"g_{k}")


def urt3_morphism() -> Morphism:
    return load("urt3_f")


def thue_morphism() -> Morphism:
    return load("thue")


def tape_word(k: int) -> MorphicWord:
    """g_k(f_k^omega(1)), the Pansiot encoding of w_k."""
    return MorphicWord(f_k(k), 1, g_k(k))


def pattern_word(p: str) -> MorphicWord:
    if p in PURE_PATTERNS:
        return MorphicWord(load(f"f_{p}"), PATTERN_SEED)
    if p in THUE_PATTERNS:
        return MorphicWord(thue_morphism(), PATTERN_SEED, load(f"g_{p}"))
    if p in PAIRED_PATTERNS:
        return MorphicWord(load(f"f_{p}"), PATTERN_SEED, load(f"g_{p}"))
    raise ValueError(f"no construction for pattern {p!r}")


def threshold_names(k: int) -> list[str]:
    return [f"f_{k}", f"g_{k}"]


def pattern_names(p: str) -> list[str]:
    if p in PURE_PATTERNS:
        return [f"f_{p}"]
    if p in THUE_PATTERNS:
        return ["thue", f"g_{p}"]
    return [f"f_{p}", f"g_{p}"]
