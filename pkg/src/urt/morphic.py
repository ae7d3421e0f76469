"""Morphisms, their fixed points, and finite facts about morphic words."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable

from .words import Word, WordLike, as_bytes, factors, format_word, has_reversible_factor, parse_word


@dataclass(frozen=True)
class Morphism:
    """A map letter -> nonempty word, letters 1..domain_size."""

    images: dict[int, bytes]
    name: str = ""
    _blocks: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        imgs = {int(a): as_bytes(v) for a, v in self.images.items()}
        if not imgs:
            raise ValueError("a morphism needs at least one rule")
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"domain must be 1..n, got letters {sorted(imgs)}")
        for a, v in imgs.items():
            if not v:
                raise ValueError(f"image of {a} is empty")
        object.__setattr__(self, "images", imgs)
        object.__setattr__(self, "_blocks", tuple(imgs[a] for a in sorted(imgs)))

    def __hash__(self):
        return hash(self._blocks)

    @property
    def domain_size(self) -> int:
        return len(self.images)

    @property
    def blocks(self) -> tuple[bytes, ...]:
        return self._blocks

    @property
    def uniform_length(self) -> int | None:
        lengths = {len(v) for v in self._blocks}
        return lengths.pop() if len(lengths) == 1 else None

    @property
    def lcp(self) -> bytes:
        """Longest common prefix of all images (chi)."""
        first = self._blocks[0]
        n = 0
        while n < len(first) and all(len(v) > n and v[n] == first[n] for v in self._blocks):
            n += 1
        return first[:n]

    @property
    def codomain_size(self) -> int:
        return max(max(v) for v in self._blocks)

    def __call__(self, w: WordLike) -> bytes:
        return apply(self, w)

    def is_prolongable(self, seed: int) -> bool:
        img = self.images.get(seed)
        return img is not None and len(img) >= 2 and img[0] == seed

    def compose(self, inner: "Morphism") -> "Morphism":
        """self after inner: a -> self(inner(a))."""
        return Morphism({a: apply(self, v) for a, v in inner.images.items()})

    def power(self, n: int) -> "Morphism":
        h = self
        for _ in range(n - 1):
            h = self.compose(h)
        return h

    def growing_power(self, letters: Iterable[int] | None = None) -> int | None:
        """Least j with |h^j(a)| >= 2 for every letter a considered, or None."""
        letters = set(self.images) if letters is None else set(letters)
        lengths = {a: 1 for a in self.images}
        for j in range(1, self.domain_size + 2):
            lengths = {a: sum(lengths[c] for c in self.images[a]) for a in self.images}
            if all(lengths[a] >= 2 for a in letters):
                return j
        return None


def apply(h: Morphism, w: WordLike) -> bytes:
    imgs = h.images
    try:
        return b"".join(imgs[a] for a in as_bytes(w))
    except KeyError as e:
        raise ValueError(f"letter {e.args[0]} outside the domain of the morphism") from None


def iterate(h: Morphism, w: WordLike, n: int) -> bytes:
    out = as_bytes(w)
    for _ in range(n):
        out = apply(h, out)
    return out


def fixed_point_prefix(h: Morphism, seed: int, min_len: int) -> bytes:
    """The length-``min_len`` prefix of h^omega(seed)."""
    if not h.is_prolongable(seed):
        raise ValueError(f"morphism is not prolongable on {seed}")
    w = bytes([seed])
    while len(w) < min_len:
        w = apply(h, w)
    return w[:min_len]


def reachable_letters(h: Morphism, seed: int) -> set[int]:
    seen = {seed}
    todo = [seed]
    while todo:
        for c in h.images[todo.pop()]:
            if c in h.images and c not in seen:
                seen.add(c)
                todo.append(c)
    return seen


def closure_under(h: Morphism, start: set[bytes], length: int) -> set[bytes]:
    """Smallest superset of ``start`` closed under v -> length-L factors of h(v)."""
    found = set(start)
    todo = list(found)
    while todo:
        v = todo.pop()
        for u in factors(apply(h, v), length):
            if u not in found:
                found.add(u)
                todo.append(u)
    return found


def saturated_factor_set(h: Morphism, seed: int, length: int) -> set[bytes]:
    """All length-L factors of h^omega(seed).

    Every length-L factor of h^{n+1}(seed) sits inside h(v) for a length-L
    factor v of h^n(seed), so closing the factors of a long enough prefix
    under that step gives exactly the factor set of the infinite word.
    """
    if not h.is_prolongable(seed):
        raise ValueError(f"morphism is not prolongable on {seed}")
    if h.growing_power(reachable_letters(h, seed)) is None:
        raise ValueError("morphism has no growing power; saturation is not sound")
    if length == 0:
        return {b""}
    return closure_under(h, factors(fixed_point_prefix(h, seed, length), length), length)


@dataclass(frozen=True)
class MorphicWord:
    """outer(h^omega(seed)), or the pure fixed point when outer is None."""

    h: Morphism
    seed: int = 1
    outer: Morphism | None = None

    def __post_init__(self):
        if not self.h.is_prolongable(self.seed):
            raise ValueError(f"morphism is not prolongable on {self.seed}")

    @property
    def alphabet_size(self) -> int:
        return (self.outer or self.h).codomain_size

    def prefix(self, n: int) -> bytes:
        if self.outer is None:
            return fixed_point_prefix(self.h, self.seed, n)
        shortest = min(len(v) for v in self.outer.blocks)
        m = n // shortest + 1
        return apply(self.outer, fixed_point_prefix(self.h, self.seed, m))[:n]

    def factor_set(self, length: int) -> set[bytes]:
        if self.outer is None:
            return saturated_factor_set(self.h, self.seed, length)
        if length == 0:
            return {b""}
        # a window of L letters meets at most L // shortest + 2 outer blocks
        shortest = min(len(v) for v in self.outer.blocks)
        inner = saturated_factor_set(self.h, self.seed, length // shortest + 2)
        out: set[bytes] = set()
        for v in inner:
            out |= factors(apply(self.outer, v), length)
        return out


def saturated_max_reversible(word: MorphicWord, cap: int = 200) -> int | None:
    """Longest reversible factor of the infinite word; None if it exceeds ``cap``."""
    L = 0
    while L < cap:
        if not has_reversible_factor(word.factor_set(L + 1)):
            return L
        L += 1
    return None


def _parse_from(v: bytes, pos: int, blocks: tuple[bytes, ...], bounds: list[int]):
    """Finish the (unique, by the prefix-code property) parse of v from a boundary."""
    bounds = bounds + [pos]
    while pos < len(v):
        rest = v[pos:]
        for b in blocks:
            if rest.startswith(b):
                pos += len(b)
                bounds.append(pos)
                break
            if len(b) > len(rest) and b.startswith(rest):
                return bounds
        else:
            return None
    return bounds


def _parse_table(v: bytes, code: Iterable[WordLike]) -> set[tuple[int, frozenset[int]]]:
    """(start offset inside its block, boundary positions) for every parse of p.v.s.

    p ranges over suffixes of blocks and s over proper prefixes, so a parse
    may begin and end strictly inside a block.
    """
    blocks = tuple(sorted({as_bytes(b) for b in code}))
    for b1 in blocks:
        for b2 in blocks:
            if b1 != b2 and b2.startswith(b1):
                raise ValueError("not a prefix code")
    found = set()
    for b in blocks:
        for o in range(len(b)):
            rest = b[o:]
            if o == 0:
                bounds = _parse_from(v, 0, blocks, [])
            elif len(rest) <= len(v):
                bounds = _parse_from(v, len(rest), blocks, []) if v.startswith(rest) else None
            else:
                bounds = [] if rest.startswith(v) else None
            if bounds is not None:
                found.add((o, frozenset(bounds)))
    return found


def parses(v: WordLike, code: Iterable[WordLike]) -> list[frozenset[int]]:
    """Distinct boundary-position sets over all parses of v in context."""
    return sorted({b for _, b in _parse_table(as_bytes(v), code)}, key=sorted)


def start_offsets(v: WordLike, code: Iterable[WordLike]) -> set[int]:
    """Offsets inside a block at which v can begin; one offset pins the parse."""
    return {o for o, _ in _parse_table(as_bytes(v), code)}


def find_cuts(v: WordLike, code: Iterable[WordLike]) -> list[int]:
    """Offsets c with v = v[:c] | v[c:] forced to be a block boundary.

    Raises ValueError when v is not a factor of any concatenation of blocks.
    """
    v = as_bytes(v)
    if not v:
        return [0]
    all_parses = parses(v, code)
    if not all_parses:
        raise ValueError("word is not a factor of the code's concatenations")
    common = frozenset.intersection(*all_parses)
    return sorted(common)


def has_cut(v: WordLike, code: Iterable[WordLike]) -> bool:
    return bool(find_cuts(v, code))


def every_length_L_factor_has_cut(word: MorphicWord | Morphism, seed: int = 1,
                                  length: int | None = None,
                                  code: Iterable[WordLike] | None = None) -> bool:
    """Whether every length-L factor of the word contains a cut over the code.

    With a bare morphism the word is its fixed point and the code its blocks;
    for a composite word the default code is the outer morphism's blocks.
    """
    return not uncut_factors(word, seed, length, code)


def uncut_factors(word: MorphicWord | Morphism, seed: int = 1, length: int | None = None,
                  code: Iterable[WordLike] | None = None) -> list[bytes]:
    if isinstance(word, Morphism):
        word = MorphicWord(word, seed)
    top = word.outer or word.h
    if code is None:
        code = top.blocks
    if length is None:
        length = top.uniform_length
        if length is None:
            raise ValueError("length is required for a non-uniform morphism")
    code = tuple(code)
    return sorted(v for v in word.factor_set(length) if not has_cut(v, code))


def blocks_end_distinct(h: Morphism) -> bool:
    ends = [v[-1] for v in h.blocks]
    return len(set(ends)) == len(ends)


def pairs(u, v) -> list[tuple]:
    """Letterwise pairing of two equal-length sequences."""
    if len(u) != len(v):
        raise ValueError("direct product needs words of equal length")
    return list(zip(u, v))


def direct_product(u: Word, v: Word) -> Word:
    """u (x) v, with the pair (a, b) written as the letter (a - 1) * |B| + b."""
    if len(u) != len(v):
        raise ValueError("direct product needs words of equal length")
    kb = v.alphabet_size
    letters = bytes((a - 1) * kb + b for a, b in zip(u.letters, v.letters))
    return Word(letters, u.alphabet_size * kb)


# ---- morphism text files ----------------------------------------------------

def parse_morphism(text: str, fmt: str = "digits", name: str = "") -> Morphism:
    """Parse ``letter -> image`` rules; ``#`` starts a comment."""
    images: dict[int, bytes] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise ValueError(f"line {lineno}: expected 'letter -> image'")
        lhs, rhs = (s.strip() for s in line.split("->", 1))
        letter = parse_word(lhs, fmt)
        if len(letter) != 1:
            raise ValueError(f"line {lineno}: left side must be a single letter")
        if letter[0] in images:
            raise ValueError(f"line {lineno}: duplicate rule for {letter[0]}")
        images[letter[0]] = parse_word(rhs, fmt)
    return Morphism(images, name=name)


def format_morphism(h: Morphism, fmt: str = "digits") -> str:
    return "".join(
        f"{format_word(bytes([a]), fmt)} -> {format_word(v, fmt)}\n"
        for a, v in sorted(h.images.items())
    )


def load_morphism(path: str | os.PathLike, fmt: str = "digits") -> Morphism:
    with open(path, encoding="utf-8") as fh:
        return parse_morphism(fh.read(), fmt, name=os.path.basename(str(path)))
