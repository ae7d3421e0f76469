"""Finite words over small integer alphabets.

Letters are stored as byte values, so a word is a ``bytes`` object at heart.
Every function here accepts either a :class:`Word` or plain ``bytes``; plain
bytes make it easy to run the same code on ``b"edited"`` style examples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

WordLike = Union["Word", bytes, bytearray]

FORMATS = ("digits", "ints")


def as_bytes(w: WordLike) -> bytes:
    if isinstance(w, Word):
        return w.letters
    return bytes(w)


@dataclass(frozen=True)
class Word:
    """A word over Sigma_k = {1, ..., k}."""

    letters: bytes
    alphabet_size: int

    def __post_init__(self):
        if not isinstance(self.letters, bytes):
            object.__setattr__(self, "letters", bytes(self.letters))
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be positive")
        for i, a in enumerate(self.letters):
            if not 1 <= a <= self.alphabet_size:
                raise ValueError(
                    f"letter {a} at position {i + 1} outside Sigma_{self.alphabet_size}"
                )

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item], self.alphabet_size)
        return self.letters[item]

    def __add__(self, other):
        return Word(self.letters + as_bytes(other), self.alphabet_size)

    def __str__(self):
        return format_word(self.letters, "digits" if self.alphabet_size <= 9 else "ints")

    @classmethod
    def parse(cls, text: str, alphabet_size: int, fmt: str | None = None) -> "Word":
        if fmt is None:
            fmt = default_format(alphabet_size)
        return cls(parse_word(text, fmt), alphabet_size)

    def format(self, fmt: str | None = None) -> str:
        return format_word(self.letters, fmt or default_format(self.alphabet_size))


def default_format(alphabet_size: int) -> str:
    """The only format allowed without an explicit flag."""
    if alphabet_size >= 10:
        raise ValueError("alphabets of size >= 10 need an explicit format ('ints')")
    return "digits"


def parse_word(text: str, fmt: str) -> bytes:
    """Parse the word text format. ``fmt`` is ``digits`` or ``ints``; no guessing."""
    if fmt == "digits":
        text = text.strip()
        if not all(c.isdigit() for c in text):
            raise ValueError(f"not a digit string: {text!r}")
        return bytes(int(c) for c in text)
    if fmt == "ints":
        try:
            values = [int(tok) for tok in text.split()]
        except ValueError:
            raise ValueError(f"not whitespace-separated integers: {text!r}") from None
        if any(not 0 <= v < 256 for v in values):
            raise ValueError("letters must lie in 0..255")
        return bytes(values)
    raise ValueError(f"unknown word format {fmt!r}; expected one of {FORMATS}")


def format_word(w: WordLike, fmt: str = "digits") -> str:
    b = as_bytes(w)
    if fmt == "digits":
        if any(a > 9 for a in b):
            raise ValueError("letters above 9 cannot be written in digits format")
        return "".join(str(a) for a in b)
    if fmt == "ints":
        return " ".join(str(a) for a in b)
    raise ValueError(f"unknown word format {fmt!r}")


def word(text: str) -> bytes:
    """Shorthand for digit strings: ``word("1231") == b"\\x01\\x02\\x03\\x01"``."""
    return parse_word(text, "digits")


@dataclass(frozen=True, order=True)
class ExtExponent:
    """An extended rational: ``alpha`` or ``alpha+``.

    ``y < alpha+`` iff ``y <= alpha``; a strict exponent therefore only
    forbids ratios strictly above the value.
    """

    value: Fraction
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.value <= 1:
            raise ValueError("exponent must exceed 1")

    @property
    def num(self) -> int:
        return self.value.numerator

    @property
    def den(self) -> int:
        return self.value.denominator

    def forbids(self, ratio: Fraction) -> bool:
        return ratio > self.value if self.strict else ratio >= self.value

    @classmethod
    def parse(cls, text: str, strict: bool | None = None) -> "ExtExponent":
        """``"7/4"`` or ``"7/4+"``; an explicit ``strict`` overrides the suffix."""
        text = text.strip()
        plus = text.endswith("+")
        if plus:
            text = text[:-1]
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad exponent {text!r}") from None
        if "." in text:
            raise ValueError("exponents are exact rationals p/q, not decimals")
        return cls(value, plus if strict is None else strict)

    def __str__(self):
        return f"{self.num}/{self.den}" + ("+" if self.strict else "")


def reverse(w):
    """Mirror image; returns the same kind of object it was given."""
    if isinstance(w, Word):
        return Word(w.letters[::-1], w.alphabet_size)
    return bytes(w)[::-1]


def border_table(w: WordLike) -> list[int]:
    b = as_bytes(w)
    fail = [0] * len(b)
    k = 0
    for i in range(1, len(b)):
        while k and b[i] != b[k]:
            k = fail[k - 1]
        if b[i] == b[k]:
            k += 1
        fail[i] = k
    return fail


def minimal_period(w: WordLike) -> int:
    b = as_bytes(w)
    if not b:
        raise ValueError("the empty word has no period")
    return len(b) - border_table(b)[-1]


def exponent(w: WordLike) -> Fraction:
    """|w| divided by the minimal period of w."""
    b = as_bytes(w)
    return Fraction(len(b), minimal_period(b))


def factors(w: WordLike, length: int) -> set[bytes]:
    b = as_bytes(w)
    if length < 0:
        raise ValueError("negative factor length")
    return {b[i:i + length] for i in range(len(b) - length + 1)}


def has_reversible_factor(factor_set: set[bytes]) -> bool:
    return any(u[::-1] in factor_set for u in factor_set)


def max_reversible_factor_length(w: WordLike) -> int:
    """Longest u such that u and its reversal both occur in w (palindromes count)."""
    b = as_bytes(w)
    if not b:
        return 0
    # reversibility is inherited by factors, so scan lengths upward
    L = 1
    while L < len(b) and has_reversible_factor(factors(b, L + 1)):
        L += 1
    return L


def distinct_letters(w: WordLike) -> int:
    return len(set(as_bytes(w)))
