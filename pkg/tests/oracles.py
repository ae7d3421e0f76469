"""Slow, obviously-correct reference implementations.

Nothing here reuses library logic; the one library import is the compiled
power kernel, so the comparison loops can run inside numba.
"""

from fractions import Fraction
from itertools import product

import numba
import numpy as np

from urt._kernels import first_power


# ---- undirected powers: O(n^3) by definition ---------------------------------

@numba.njit(cache=True)
def _clears(T, m, a, b, strict):
    # ratio T / (T - m) against a / b without division
    lhs = T * b
    rhs = a * (T - m)
    return lhs > rhs if strict else lhs >= rhs


@numba.njit(cache=True)
def oracle_first_power(w, n, a, b, strict):
    """(start, total length, kind) of the first power: least start, least length,
    ordinary before reverse; (-1, 0, -1) when the word is free."""
    for i in range(n):
        for T in range(2, n - i + 1):
            for kind in range(2):
                for m in range(1, T // 2 + 1):
                    if not _clears(T, m, a, b, strict):
                        continue
                    ok = True
                    for t in range(m):
                        other = w[i + T - m + t] if kind == 0 else w[i + T - 1 - t]
                        if w[i + t] != other:
                            ok = False
                            break
                    if ok:
                        return i, T, kind
    return -1, 0, -1


def oracle_first_power_py(w: bytes, threshold: Fraction, strict: bool):
    """The same definition in plain Python, straight from the ratio."""
    n = len(w)
    for i in range(n):
        for T in range(2, n - i + 1):
            for kind in ("ordinary", "reverse"):
                for m in range(1, T // 2 + 1):
                    r = Fraction(T, T - m)
                    if (r > threshold) if strict else (r >= threshold):
                        x = w[i:i + m]
                        tail = w[i + T - m:i + T]
                        if tail == (x if kind == "ordinary" else x[::-1]):
                            return i, T, kind
    return None


@numba.njit(cache=True)
def _digits(index, k, n, out):
    for j in range(n - 1, -1, -1):
        out[j] = index % k + 1
        index //= k


# The comparison loops call the compiled library kernel directly so that
# millions of words can be checked without leaving machine code.

@numba.njit(cache=True)
def _agree(w, n, a, b, strict):
    s, m, g, kind = first_power(w, n, a, b, strict, True, True)
    os_, oT, okind = oracle_first_power(w, n, a, b, strict)
    if s != os_:
        return False
    return s < 0 or (2 * m + g == oT and kind == okind)


@numba.njit(cache=True)
def compare_exhaustive(k, n, a, b, strict):
    """(mismatches, index of the first) over all words of length n on Sigma_k."""
    w = np.zeros(max(n, 1), dtype=np.uint8)
    bad = 0
    first_bad = -1
    for idx in range(k ** n):
        _digits(idx, k, n, w)
        if not _agree(w, n, a, b, strict):
            bad += 1
            if first_bad < 0:
                first_bad = idx
    return bad, first_bad


@numba.njit(cache=True)
def compare_random(words, lengths, a_arr, b_arr, strict_arr):
    bad = 0
    first_bad = -1
    for r in range(words.shape[0]):
        if not _agree(words[r], lengths[r], a_arr[r], b_arr[r], strict_arr[r]):
            bad += 1
            if first_bad < 0:
                first_bad = r
    return bad, first_bad


# ---- patterns -----------------------------------------------------------------

def compositions(total: int, parts: int):
    """All ways to write total as an ordered sum of ``parts`` positive integers."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _consistent(blocks, p: str, undirected: bool) -> bool:
    seen = {}
    for v, X in zip(p, blocks):
        if v not in seen:
            seen[v] = X
        elif X != seen[v] and not (undirected and X == seen[v][::-1]):
            return False
    return True


def oracle_pattern_instances(w: bytes, p: str, undirected: bool = True):
    """Every (start, block lengths) factorization that is an instance, by brute force."""
    out = []
    n = len(w)
    for s in range(n):
        for e in range(s + len(p), n + 1):
            for comp in compositions(e - s, len(p)):
                blocks, pos = [], s
                for L in comp:
                    blocks.append(w[pos:pos + L])
                    pos += L
                if _consistent(blocks, p, undirected):
                    out.append((s, comp))
    return out


def oracle_has_instance(w: bytes, p: str, undirected: bool = True) -> bool:
    n = len(w)
    for s in range(n):
        for e in range(s + len(p), n + 1):
            for comp in compositions(e - s, len(p)):
                blocks, pos = [], s
                for L in comp:
                    blocks.append(w[pos:pos + L])
                    pos += L
                if _consistent(blocks, p, undirected):
                    return True
    return False


def oracle_first_instance(w: bytes, p: str):
    """First instance in order (start, total length, lexicographic length vector)."""
    found = oracle_pattern_instances(w, p)
    if not found:
        return None
    return min(found, key=lambda t: (t[0], sum(t[1]), t[1]))


# ---- misc ---------------------------------------------------------------------

def all_words(k: int, n: int):
    for t in product(range(1, k + 1), repeat=n):
        yield bytes(t)


def oracle_max_reversible(w: bytes) -> int:
    facs = {w[i:j] for i in range(len(w)) for j in range(i + 1, len(w) + 1)}
    return max((len(u) for u in facs if u[::-1] in facs), default=0)


def oracle_compose(a, b):
    """Permutations as dicts on 1..k: (a o b)(j) = a(b(j))."""
    return {j: a[b[j]] for j in b}


def oracle_rank_after(prefix: bytes, k: int) -> list[int]:
    """Letters ordered by last occurrence; letters never seen come first by value."""
    last = {a: -1 for a in range(1, k + 1)}
    for i, a in enumerate(prefix):
        last[a] = i
    return sorted(range(1, k + 1), key=lambda a: (last[a], a))


def oracle_tape(w: bytes, k: int, start: int) -> bytes:
    """Tape of w from position ``start`` on: rank of each letter among the lowest three."""
    out = []
    for i in range(start, len(w)):
        order = oracle_rank_after(w[:i], k)
        out.append(order.index(w[i]) + 1)
    return bytes(out)
