"""Pattern instances up to reversal, and what is known about binary patterns.

An instance of p = p_1...p_n in w is a factor X_1...X_n with every X_i
nonempty and X_i equal to X_j or its reversal whenever p_i = p_j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import _kernels
from . import constructions as C
from .morphic import MorphicWord, direct_product, saturated_max_reversible
from .words import Word, WordLike, as_bytes, max_reversible_factor_length

UNAVOIDABLE = ("x", "y", "xy", "yx", "xyx", "yxy")


@dataclass(frozen=True)
class Pattern:
    symbols: str

    def __post_init__(self):
        s = str(self.symbols)
        if not s:
            raise ValueError("a pattern must be nonempty")
        if not all("a" <= c <= "z" for c in s):
            raise ValueError(f"pattern {s!r} must use lowercase variable letters")
        object.__setattr__(self, "symbols", s)

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        return self.symbols

    @property
    def variables(self) -> tuple[str, ...]:
        """Variables in order of first occurrence."""
        return tuple(dict.fromkeys(self.symbols))

    @property
    def codes(self) -> tuple[int, ...]:
        index = {v: i for i, v in enumerate(self.variables)}
        return tuple(index[c] for c in self.symbols)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(self.symbols.count(v) for v in self.variables)

    def reversed(self) -> "Pattern":
        return Pattern(self.symbols[::-1])

    def swapped(self) -> "Pattern":
        """Exchange x and y."""
        return Pattern(self.symbols.translate(str.maketrans("xy", "yx")))

    def equivalents(self) -> set[str]:
        return {q.symbols for q in (self, self.swapped(), self.reversed(), self.swapped().reversed())}

    def canonical(self) -> str:
        return min(self.equivalents())

    def factors(self) -> set[str]:
        s = self.symbols
        return {s[i:j] for i in range(len(s)) for j in range(i + 1, len(s) + 1)}


def as_pattern(p: Pattern | str) -> Pattern:
    return p if isinstance(p, Pattern) else Pattern(p)


@dataclass(frozen=True)
class PatternInstance:
    start: int
    lengths: tuple[int, ...]
    orientation: tuple[str, ...]  # "same" or "reversed" against the first occurrence

    @property
    def length(self) -> int:
        return sum(self.lengths)

    def blocks(self, w: WordLike) -> list[bytes]:
        b = as_bytes(w)
        out, pos = [], self.start
        for L in self.lengths:
            out.append(b[pos:pos + L])
            pos += L
        return out

    def is_valid_in(self, w: WordLike, p: Pattern | str) -> bool:
        p = as_pattern(p)
        if len(self.lengths) != len(p) or min(self.lengths) < 1:
            return False
        if self.start + self.length > len(as_bytes(w)):
            return False
        first: dict[str, bytes] = {}
        for v, X in zip(p.symbols, self.blocks(w)):
            if v in first and X != first[v] and X != first[v][::-1]:
                return False
            first.setdefault(v, X)
        return True

    def to_dict(self) -> dict:
        return {"start": self.start, "lengths": list(self.lengths), "orientation": list(self.orientation)}


def _instance(b: bytes, p: Pattern, start: int, var_len: tuple[int, ...]) -> PatternInstance:
    lengths = tuple(var_len[c] for c in p.codes)
    first: dict[int, bytes] = {}
    orient = []
    pos = start
    for c, L in zip(p.codes, lengths):
        X = b[pos:pos + L]
        orient.append("same" if first.setdefault(c, X) == X else "reversed")
        pos += L
    return PatternInstance(start, lengths, tuple(orient))


def _kernel_args(p: Pattern):
    counts = p.counts
    return np.array(p.codes, dtype=np.int8), counts[0], (counts[1] if len(counts) > 1 else 0)


# ---- more than two variables: exponential fallback -------------------------

def _length_vectors(counts: tuple[int, ...], total: int):
    """Length vectors (each >= 1) with sum counts[i] * l[i] == total, in lex order."""
    if len(counts) == 1:
        if total % counts[0] == 0 and total // counts[0] >= 1:
            yield (total // counts[0],)
        return
    rest_min = sum(counts[1:])
    L = 1
    while counts[0] * L + rest_min <= total:
        for tail in _length_vectors(counts[1:], total - counts[0] * L):
            yield (L,) + tail
        L += 1


def _matches(b: bytes, p: Pattern, start: int, var_len: tuple[int, ...]) -> bool:
    first: dict[int, bytes] = {}
    pos = start
    for c in p.codes:
        L = var_len[c]
        X = b[pos:pos + L]
        seen = first.setdefault(c, X)
        if seen != X and seen != X[::-1]:
            return False
        pos += L
    return True


def _general_first(b: bytes, p: Pattern) -> PatternInstance | None:
    counts = p.counts
    for s in range(len(b)):
        for T in range(len(p), len(b) - s + 1):
            for vec in _length_vectors(counts, T):
                if _matches(b, p, s, vec):
                    return _instance(b, p, s, vec)
    return None


def general_suffix_has_instance(b: bytes, p: Pattern) -> bool:
    counts = p.counts
    for T in range(len(p), len(b) + 1):
        for vec in _length_vectors(counts, T):
            if _matches(b, p, len(b) - T, vec):
                return True
    return False


# ---- public API -------------------------------------------------------------

def find_instance_undirected(w: WordLike, p: Pattern | str) -> PatternInstance | None:
    """First instance in (start, total length, length vector) order, or None."""
    p = as_pattern(p)
    b = as_bytes(w)
    if len(p.variables) > 2:
        return _general_first(b, p)
    pat, na, nb = _kernel_args(p)
    s, la, lb = _kernels.first_instance(_kernels.as_array(b), len(b), pat, na, nb)
    if s < 0:
        return None
    return _instance(b, p, int(s), (int(la), int(lb)))


def avoids(w: WordLike, p: Pattern | str) -> bool:
    return find_instance_undirected(w, p) is None


def suffix_has_instance(w: WordLike, p: Pattern | str) -> bool:
    """Is there an instance ending at the last letter of w?"""
    p = as_pattern(p)
    b = as_bytes(w)
    if len(p.variables) > 2:
        return general_suffix_has_instance(b, p)
    pat, na, nb = _kernel_args(p)
    return bool(_kernels.suffix_has_instance(_kernels.as_array(b), len(b), pat, na, nb))


def product_with_123(u: Word | WordLike) -> Word:
    """u (x) (123)^omega; pairs (a, c) become (a - 1) * 3 + c."""
    if not isinstance(u, Word):
        b = as_bytes(u)
        u = Word(b, max(b, default=1))
    periodic = Word(bytes(i % 3 + 1 for i in range(len(u))), 3)
    return direct_product(u, periodic)


def build_wp(p: Pattern | str) -> MorphicWord:
    """The morphic word avoiding p; ``.prefix(n)`` yields arbitrarily long prefixes."""
    return C.pattern_word(as_pattern(p).symbols)


def wp_prefix(p: Pattern | str, n: int) -> bytes:
    return build_wp(p).prefix(n)


@dataclass
class AvoidanceReport:
    pattern: str
    prefix_len: int
    instance: PatternInstance | None
    reversible_by_prefix: dict[int, int]
    saturated_reversible: int | None
    notes: list[str] = field(default_factory=list)

    @property
    def avoids(self) -> bool:
        return self.instance is None

    @property
    def stabilized(self) -> bool:
        """The prefix already shows the longest reversible factor of the whole word."""
        vals = list(self.reversible_by_prefix.values())
        return self.saturated_reversible is not None and vals[-1] == self.saturated_reversible

    @property
    def passed(self) -> bool:
        return self.avoids

    def to_dict(self) -> dict:
        return {
            "pattern": self.pattern,
            "prefix_len": self.prefix_len,
            "avoids": self.avoids,
            "instance": self.instance.to_dict() if self.instance else None,
            "reversible_by_prefix": {str(n): v for n, v in self.reversible_by_prefix.items()},
            "saturated_reversible": self.saturated_reversible,
            "stabilized": self.stabilized,
            "notes": self.notes,
        }


def verify_lemma3_bounded(p: Pattern | str, prefix_len: int = 500,
                          word: bytes | None = None, reversible_cap: int = 100) -> AvoidanceReport:
    """Scan a prefix of w_p for instances of p and report reversible factors.

    ``word`` overrides the generated prefix (used to test that planted
    instances are caught).
    """
    p = as_pattern(p)
    mw = build_wp(p)
    b = mw.prefix(prefix_len) if word is None else as_bytes(word)
    inst = find_instance_undirected(b, p)
    checkpoints = sorted({max(1, len(b) // 4), max(1, len(b) // 2), len(b)})
    rev = {n: max_reversible_factor_length(b[:n]) for n in checkpoints}
    sat = saturated_max_reversible(mw, cap=reversible_cap)
    notes = []
    if len(set(mw.h.blocks)) < mw.h.domain_size:
        notes.append("the morphism maps two letters to the same image, so its fixed point is periodic")
    if sat is None:
        notes.append(f"reversible factors longer than {reversible_cap}: the word has infinitely many")
    return AvoidanceReport(p.symbols, len(b), inst, rev, sat, notes)


def classify_binary_pattern(p: Pattern | str) -> float | int:
    """Avoidability index up to reversal of a pattern over {x, y}: 2, 3 or inf."""
    p = as_pattern(p)
    if not set(p.symbols) <= {"x", "y"}:
        raise ValueError("the classifier handles patterns over x and y only")
    if p.symbols in UNAVOIDABLE:
        # exactly the factors of xyx up to equivalence
        return math.inf
    index_two = {Pattern(q).canonical() for q in C.INDEX_TWO_PATTERNS} | {"xxxx"}
    for f in p.factors():
        if Pattern(f).canonical() in index_two:
            return 2
    return 3


def binary_patterns(max_len: int, min_len: int = 1):
    for n in range(min_len, max_len + 1):
        for t in product("xy", repeat=n):
            yield "".join(t)


def unary_index(k: int) -> int:
    """Avoidability index of x^k up to reversal."""
    if k < 1:
        raise ValueError("exponent must be positive")
    if k == 1:
        return math.inf
    return 3 if k in (2, 3) else 2


def unary_index_table(max_k: int = 8) -> dict[int, int | float]:
    return {k: unary_index(k) for k in range(1, max_k + 1)}


def squarefree_ternary_prefix(n: int) -> bytes:
    """Prefix of the square-free fixed point of 1 -> 123, 2 -> 13, 3 -> 2."""
    return MorphicWord(C.thue_morphism(), 1).prefix(n)
