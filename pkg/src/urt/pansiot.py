"""Ternary encoding of words over Sigma_k and its image in the symmetric group.

A word whose (k-2)-windows have distinct letters is determined by its
shortest prefix with k-1 distinct letters plus a tape over {1, 2, 3}: tape
symbol j says the next letter is the one currently ranked j-th by final
appearance.  Appending a letter updates the ranking by a fixed permutation
sigma(j); the ranking after a tape t is r_0 composed with sigma(t), which is
the convention every function below follows:

    sigma(t_1 ... t_n) = sigma(t_1) o sigma(t_2) o ... o sigma(t_n)

(as maps, sigma(t_n) applied first).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate

from .morphic import Morphism, apply
from .words import WordLike, as_bytes


class EncodingError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} (position {position})")
        self.position = position


@dataclass(frozen=True)
class Perm:
    """A permutation of {1..k}; ``mapping[j - 1]`` is the image of j."""

    mapping: bytes

    def __post_init__(self):
        m = bytes(self.mapping)
        object.__setattr__(self, "mapping", m)
        if sorted(m) != list(range(1, len(m) + 1)):
            raise ValueError(f"not a permutation: {list(m)}")

    @classmethod
    def identity(cls, k: int) -> "Perm":
        return cls(bytes(range(1, k + 1)))

    @property
    def k(self) -> int:
        return len(self.mapping)

    def __call__(self, j: int) -> int:
        return self.mapping[j - 1]

    def __matmul__(self, other: "Perm") -> "Perm":
        """Composition: (self @ other)(j) = self(other(j))."""
        return Perm(compose(self.mapping, other.mapping))

    def inverse(self) -> "Perm":
        inv = bytearray(self.k)
        for j, v in enumerate(self.mapping, 1):
            inv[v - 1] = j
        return Perm(bytes(inv))

    def is_identity(self) -> bool:
        return self.mapping == bytes(range(1, self.k + 1))

    def cycle_type(self) -> tuple[int, ...]:
        seen = set()
        lengths = []
        for start in range(1, self.k + 1):
            if start in seen:
                continue
            n, j = 0, start
            while j not in seen:
                seen.add(j)
                j = self(j)
                n += 1
            lengths.append(n)
        return tuple(sorted(lengths, reverse=True))

    def __str__(self):
        return "[" + ",".join(str(v) for v in self.mapping) + "]"


def compose(a: bytes, b: bytes) -> bytes:
    """Bytes-level a o b."""
    table = b"\x00" + a + bytes(255 - len(a))
    return b.translate(table)


def sigma_generator(t: int, k: int) -> Perm:
    if t not in (1, 2, 3):
        raise EncodingError(f"tape symbol {t} is not in {{1, 2, 3}}")
    if k < 3:
        raise ValueError("k must be at least 3")
    # t-th column moves to the end; the columns after it shift left
    m = list(range(1, t)) + list(range(t + 1, k + 1)) + [t]
    return Perm(bytes(m))


@dataclass(frozen=True)
class Ranking:
    """``order[j - 1]`` is the letter of rank j (rank k = most recent)."""

    order: bytes

    def __post_init__(self):
        o = bytes(self.order)
        object.__setattr__(self, "order", o)
        if sorted(o) != list(range(1, len(o) + 1)):
            raise ValueError(f"not a ranking of Sigma_{len(o)}: {list(o)}")

    @property
    def k(self) -> int:
        return len(self.order)

    def __getitem__(self, rank: int) -> int:
        return self.order[rank - 1]

    def __str__(self):
        return "[" + ",".join(str(v) for v in self.order) + "]"


@dataclass(frozen=True)
class Encoding:
    prefix: bytes
    tape: bytes
    k: int


def shortest_spanning_prefix(w: WordLike, k: int) -> bytes:
    """Shortest prefix of w with k - 1 distinct letters."""
    b = as_bytes(w)
    seen = set()
    for i, a in enumerate(b):
        seen.add(a)
        if len(seen) == k - 1:
            return b[:i + 1]
    raise EncodingError(f"word has fewer than {k - 1} distinct letters")


def initial_ranking(u: WordLike, k: int) -> Ranking:
    u = as_bytes(u)
    if any(not 1 <= a <= k for a in u):
        raise EncodingError(f"letters must lie in 1..{k}")
    if len(set(u)) != k - 1:
        raise EncodingError(f"prefix must contain exactly {k - 1} distinct letters")
    if len(set(u[:-1])) != k - 2:
        raise EncodingError("prefix is not the shortest one with k - 1 distinct letters")
    check_encodable(u, k)
    tail = u[len(u) - (k - 2):]
    last = {a: i for i, a in enumerate(u)}
    rest = sorted(set(range(1, k + 1)) - set(tail), key=lambda a: last.get(a, -1))
    return Ranking(bytes(rest) + tail)


def step_ranking(r: Ranking, t: int) -> Ranking:
    """Ranking after appending the letter of rank t: r'(j) = r(sigma(t)(j))."""
    return Ranking(compose(r.order, sigma_generator(t, r.k).mapping))


def check_encodable(w: WordLike, k: int):
    """Raise EncodingError at the first letter breaking the window conditions."""
    b = as_bytes(w)
    for i, a in enumerate(b):
        if not 1 <= a <= k:
            raise EncodingError(f"letter {a} outside Sigma_{k}", i + 1)
        if a in b[max(0, i - (k - 3)):i]:
            raise EncodingError(f"a window of length {k - 2} repeats a letter", i + 1)
        if i >= k - 1 and len(set(b[i - k + 1:i + 1])) < k - 1:
            raise EncodingError(f"a window of length {k} has fewer than {k - 1} letters", i + 1)


def encode(w: WordLike, k: int) -> Encoding:
    b = as_bytes(w)
    check_encodable(b, k)
    u = shortest_spanning_prefix(b, k)
    r = initial_ranking(u, k).order
    gens = [sigma_generator(t, k).mapping for t in (1, 2, 3)]
    tape = bytearray()
    for i in range(len(u), len(b)):
        t = r.find(b[i]) + 1
        if not 1 <= t <= 3:
            raise EncodingError("letter is not among the three lowest ranked", i + 1)
        tape.append(t)
        r = compose(r, gens[t - 1])
    return Encoding(u, bytes(tape), k)


def decode(e: Encoding | WordLike, tape: WordLike | None = None, k: int | None = None) -> bytes:
    """Inverse of :func:`encode`: ``decode(enc)`` or ``decode(prefix, tape, k)``."""
    if isinstance(e, Encoding):
        prefix, tape, k = e.prefix, e.tape, e.k
    else:
        prefix = as_bytes(e)
        if tape is None or k is None:
            raise TypeError("decode(prefix, tape, k) needs all three arguments")
    tape = as_bytes(tape)
    r = initial_ranking(prefix, k).order
    gens = [sigma_generator(t, k).mapping for t in (1, 2, 3)]
    out = bytearray(prefix)
    for i, t in enumerate(tape):
        if t not in (1, 2, 3):
            raise EncodingError(f"tape symbol {t} is not in {{1, 2, 3}}", i + 1)
        out.append(r[t - 1])
        r = compose(r, gens[t - 1])
    return bytes(out)


def sigma_image(t: WordLike, k: int) -> Perm:
    gens = [sigma_generator(s, k).mapping for s in (1, 2, 3)]
    p = bytes(range(1, k + 1))
    for s in as_bytes(t):
        if s not in (1, 2, 3):
            raise EncodingError(f"tape symbol {s} is not in {{1, 2, 3}}")
        p = compose(p, gens[s - 1])
    return Perm(p)


def prefix_products(t: WordLike, images: dict[int, bytes], k: int) -> list[bytes]:
    """P_0 = id, P_{i+1} = P_i o images[t_i]; t[i:j] maps to id iff P_i == P_j."""
    ident = bytes(range(1, k + 1))
    return list(accumulate((images[s] for s in as_bytes(t)), compose, initial=ident))


def is_kernel_repetition(w: WordLike, q: int, k: int) -> bool:
    """Does the period-q prefix of the tape of w map to the identity?"""
    b = as_bytes(w)
    if not 0 < q < len(b):
        raise ValueError("period must satisfy 0 < q < |w|")
    if any(b[i] != b[i + q] for i in range(len(b) - q)):
        raise ValueError(f"word does not have period {q}")
    if len(set(b[q:])) < k - 1:
        raise ValueError(f"excess has fewer than {k - 1} distinct letters")
    return sigma_image(encode(b, k).tape[:q], k).is_identity()


def tau_image(t: WordLike, g: Morphism, k: int) -> Perm:
    return sigma_image(apply(g, t), k)


def tau_generators(g: Morphism, k: int) -> dict[int, bytes]:
    return {a: sigma_image(v, k).mapping for a, v in g.images.items()}


def find_conjugator(src: dict[int, Perm], dst: dict[int, Perm]) -> Perm | None:
    """phi with phi o src[a] o phi^-1 == dst[a] for every a, or None."""
    if not src:
        return None
    k = next(iter(src.values())).k
    keys = sorted(src)
    if any(src[a].cycle_type() != dst[a].cycle_type() for a in keys):
        return None
    # phi(src[a](x)) = dst[a](phi(x)), and the same for inverses
    moves = [(src[a], dst[a]) for a in keys] + [(src[a].inverse(), dst[a].inverse()) for a in keys]

    def extend(phi: dict[int, int], x: int, y: int) -> dict[int, int] | None:
        phi = dict(phi)
        used = set(phi.values())
        if y in used:
            return None
        phi[x] = y
        used.add(y)
        todo = [x]
        while todo:
            u = todo.pop()
            for s, d in moves:
                su, du = s(u), d(phi[u])
                if su in phi:
                    if phi[su] != du:
                        return None
                elif du in used:
                    return None
                else:
                    phi[su] = du
                    used.add(du)
                    todo.append(su)
        return phi

    def solve(phi: dict[int, int]) -> dict[int, int] | None:
        free = [x for x in range(1, k + 1) if x not in phi]
        if not free:
            return phi
        x = free[0]
        for y in range(1, k + 1):
            nxt = extend(phi, x, y)
            if nxt is not None:
                done = solve(nxt)
                if done is not None:
                    return done
        return None

    phi = solve({})
    if phi is None:
        return None
    return Perm(bytes(phi[j] for j in range(1, k + 1)))


def check_algebraic_property(f: Morphism, g: Morphism, k: int) -> Perm | None:
    """phi in S_k with phi tau(f(a)) phi^-1 = tau(a) for each letter a."""
    src = {a: tau_image(f.images[a], g, k) for a in f.images}
    dst = {a: tau_image(bytes([a]), g, k) for a in f.images}
    phi = find_conjugator(src, dst)
    if phi is not None:
        assert all(phi @ src[a] @ phi.inverse() == dst[a] for a in src)
    return phi
