"""Ordinary, reverse and undirected fractional powers.

An undirected r-power is xyx' with x nonempty, x' in {x, reverse(x)} and
|xyx'| / |xy| = r.  Powers are only defined for 1 < r <= 2; a cube is
reported through the square it contains.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .words import ExtExponent, WordLike, as_bytes


@dataclass(frozen=True)
class PowerOccurrence:
    start: int
    x_len: int
    y_len: int
    kind: str  # "ordinary" or "reverse"

    @property
    def length(self) -> int:
        return 2 * self.x_len + self.y_len

    @property
    def ratio(self) -> Fraction:
        return Fraction(2 * self.x_len + self.y_len, self.x_len + self.y_len)

    def factor(self, w: WordLike) -> bytes:
        return as_bytes(w)[self.start:self.start + self.length]

    def parts(self, w: WordLike) -> tuple[bytes, bytes, bytes]:
        f = self.factor(w)
        m = self.x_len
        return f[:m], f[m:m + self.y_len], f[m + self.y_len:]

    def is_valid_in(self, w: WordLike) -> bool:
        b = as_bytes(w)
        if self.x_len < 1 or self.y_len < 0 or self.start + self.length > len(b):
            return False
        x, _, x2 = self.parts(b)
        return x2 == (x if self.kind == "ordinary" else x[::-1])

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "x_len": self.x_len,
            "y_len": self.y_len,
            "kind": self.kind,
            "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
        }


def _check_threshold(threshold: ExtExponent) -> ExtExponent:
    if isinstance(threshold, str):
        threshold = ExtExponent.parse(threshold)
    elif not isinstance(threshold, ExtExponent):
        threshold = ExtExponent(Fraction(threshold))
    if threshold.value > 2:
        raise ValueError("undirected powers are only defined up to exponent 2")
    return threshold


def _scan(w: WordLike, threshold, ordinary: bool, reverse: bool) -> PowerOccurrence | None:
    t = _check_threshold(threshold)
    arr = _kernels.as_array(as_bytes(w))
    start, m, g, kind = _kernels.first_power(
        arr, len(arr), t.num, t.den, t.strict, ordinary, reverse
    )
    if start < 0:
        return None
    return PowerOccurrence(int(start), int(m), int(g), "ordinary" if kind == 0 else "reverse")


def find_undirected_power(w: WordLike, threshold) -> PowerOccurrence | None:
    """Canonical undirected power reaching ``threshold``, or None if w is free.

    A non-strict threshold forbids ratios >= alpha, a strict one ratios > alpha.
    Among occurrences the least start wins, then the shortest, then ordinary
    over reverse; |x| is the least one clearing the threshold.
    """
    return _scan(w, threshold, True, True)


def find_ordinary_power(w: WordLike, threshold) -> PowerOccurrence | None:
    return _scan(w, threshold, True, False)


def find_reverse_power(w: WordLike, threshold) -> PowerOccurrence | None:
    return _scan(w, threshold, False, True)


def is_undirected_free(w: WordLike, threshold) -> bool:
    return find_undirected_power(w, threshold) is None


def is_undirected_free_batch(words: np.ndarray, lengths: np.ndarray, threshold) -> np.ndarray:
    """Vectorised :func:`is_undirected_free` over the rows of a uint8 matrix."""
    t = _check_threshold(threshold)
    return _kernels.batch_free(
        np.ascontiguousarray(words, dtype=np.uint8),
        np.ascontiguousarray(lengths, dtype=np.int64),
        t.num, t.den, t.strict,
    )


def suffix_has_power(w: WordLike, threshold) -> bool:
    """Does some forbidden power end at the last letter of w?"""
    t = _check_threshold(threshold)
    arr = _kernels.as_array(as_bytes(w))
    return bool(_kernels.suffix_has_power(arr, len(arr), t.num, t.den, t.strict))
