"""Compiled inner loops for power detection.

Thresholds arrive as an integer pair (a, b) meaning a/b plus a strict flag.
Every comparison stays in integers, so no rounding enters anywhere.
"""

import numba
import numpy as np

ORDINARY = 0
REVERSE = 1


@numba.njit(cache=True, inline="always")
def min_x_ordinary(q, a, b, strict):
    # least |x| with (q + |x|)/q clearing a/b, for period q = |xy|
    t = (a - b) * q
    m = t // b + 1 if strict else -(-t // b)
    return max(m, 1)


@numba.njit(cache=True, inline="always")
def min_x_reverse(T, a, b, strict):
    # least |x| with T/(T - |x|) clearing a/b, for total length T = |xyx~|
    t = (a - b) * T
    m = t // a + 1 if strict else -(-t // a)
    return max(m, 1)


@numba.njit(cache=True)
def first_power(w, n, a, b, strict, want_ord, want_rev):
    """Canonical occurrence in w[:n]: least start, then least length, ordinary first.

    Returns (start, x_len, y_len, kind) or (-1, 0, 0, -1).
    """
    for i in range(n):
        best_T = n + 1
        best_m = 0
        best_kind = -1
        if want_ord:
            q = 1
            while True:
                m = min_x_ordinary(q, a, b, strict)
                T = q + m
                if i + T > n:
                    break
                if m <= q:
                    ok = True
                    for j in range(m):
                        if w[i + j] != w[i + q + j]:
                            ok = False
                            break
                    if ok:
                        best_T = T
                        best_m = m
                        best_kind = ORDINARY
                        break
                q += 1
        if want_rev:
            T = 2
            while T < best_T and i + T <= n:
                m = min_x_reverse(T, a, b, strict)
                if 2 * m <= T:
                    ok = True
                    for t in range(m):
                        if w[i + t] != w[i + T - 1 - t]:
                            ok = False
                            break
                    if ok:
                        best_T = T
                        best_m = m
                        best_kind = REVERSE
                        break
                T += 1
        if best_kind >= 0:
            return i, best_m, best_T - 2 * best_m, best_kind
    return -1, 0, 0, -1


@numba.njit(cache=True)
def suffix_has_power(w, n, a, b, strict):
    """True iff w[:n] has an undirected power (clearing a/b) ending at n - 1."""
    q = 1
    while True:
        m = min_x_ordinary(q, a, b, strict)
        if q + m > n:
            break
        if m <= q:
            ok = True
            for j in range(m):
                if w[n - m + j] != w[n - m - q + j]:
                    ok = False
                    break
            if ok:
                return True
        q += 1
    for T in range(2, n + 1):
        m = min_x_reverse(T, a, b, strict)
        if 2 * m > T:
            continue
        s = n - T
        ok = True
        for t in range(m):
            if w[s + t] != w[n - 1 - t]:
                ok = False
                break
        if ok:
            return True
    return False


@numba.njit(cache=True)
def batch_free(words, lengths, a, b, strict):
    out = np.empty(words.shape[0], dtype=np.bool_)
    for r in range(words.shape[0]):
        s, _, _, _ = first_power(words[r], lengths[r], a, b, strict, True, True)
        out[r] = s < 0
    return out


def as_array(w: bytes) -> np.ndarray:
    return np.frombuffer(w, dtype=np.uint8) if w else np.zeros(0, dtype=np.uint8)


# ---- two-variable pattern instances -------------------------------------------
# A pattern is an int8 array over {0, 1} whose first symbol is 0; na, nb count
# the symbols.  Lengths of the two variables are la, lb (lb unused when nb == 0).

@numba.njit(cache=True)
def instance_at(w, s, pat, la, lb):
    first_a = -1
    first_b = -1
    pos = s
    for sym in pat:
        L = la if sym == 0 else lb
        first = first_a if sym == 0 else first_b
        if first < 0:
            if sym == 0:
                first_a = pos
            else:
                first_b = pos
        else:
            same = True
            for t in range(L):
                if w[first + t] != w[pos + t]:
                    same = False
                    break
            if not same:
                for t in range(L):
                    if w[first + t] != w[pos + L - 1 - t]:
                        return False
        pos += L
    return True


@numba.njit(cache=True)
def first_instance(w, n, pat, na, nb):
    """Least (start, total length, |x|) instance in w[:n]; (-1, 0, 0) if none."""
    for s in range(n):
        best_T = n + 1
        best_a = 0
        best_b = 0
        la = 1
        while s + na * la + nb <= n and na * la + nb <= best_T:
            if nb == 0:
                T = na * la
                if instance_at(w, s, pat, la, 0):
                    best_T = T
                    best_a = la
                    break
            else:
                lb = 1
                while True:
                    T = na * la + nb * lb
                    if s + T > n or T >= best_T:
                        break
                    if instance_at(w, s, pat, la, lb):
                        best_T = T
                        best_a = la
                        best_b = lb
                        break
                    lb += 1
            la += 1
        if best_a > 0:
            return s, best_a, best_b
    return -1, 0, 0


@numba.njit(cache=True)
def suffix_has_instance(w, n, pat, na, nb):
    la = 1
    while na * la + nb <= n:
        if nb == 0:
            if instance_at(w, n - na * la, pat, la, 0):
                return True
        else:
            lb = 1
            while na * la + nb * lb <= n:
                if instance_at(w, n - na * la - nb * lb, pat, la, lb):
                    return True
                lb += 1
        la += 1
    return False


# ---- backtracking -------------------------------------------------------------

@numba.njit(cache=True)
def dfs_pattern(prefix, pat, na, nb, alphabet, cap, symmetry):
    """Longest extension of ``prefix`` over {1..alphabet} avoiding the pattern up to reversal.

    Returns (best length, witness, nodes, hit cap).  With ``symmetry`` new
    letters must appear in increasing order.  The prefix itself is trusted.
    """
    base = len(prefix)
    word = np.zeros(cap + 1, dtype=np.uint8)
    word[:base] = prefix
    best_word = word.copy()
    nxt = np.ones(cap + 2, dtype=np.int64)
    top = np.zeros(cap + 2, dtype=np.int64)
    for i in range(base):
        top[base] = max(top[base], prefix[i])
    best = base
    nodes = 0
    d = base
    while d >= base:
        if d >= cap:
            return d, word, nodes, True
        limit = alphabet
        if symmetry and top[d] + 1 < alphabet:
            limit = top[d] + 1
        c = nxt[d]
        if c > limit:
            d -= 1
            continue
        nxt[d] = c + 1
        word[d] = c
        nodes += 1
        if not suffix_has_instance(word, d + 1, pat, na, nb):
            top[d + 1] = max(top[d], c)
            d += 1
            nxt[d] = 1
            if d > best:
                best = d
                best_word[:d] = word[:d]
    return best, best_word, nodes, False


@numba.njit(cache=True)
def dfs_power(prefix, k, a, b, strict, cap, symmetry):
    """Longest extension of ``prefix`` over {1..k} with no undirected power clearing a/b."""
    base = len(prefix)
    word = np.zeros(cap + 1, dtype=np.uint8)
    word[:base] = prefix
    best_word = word.copy()
    nxt = np.ones(cap + 2, dtype=np.int64)
    top = np.zeros(cap + 2, dtype=np.int64)
    for i in range(base):
        top[base] = max(top[base], prefix[i])
    best = base
    nodes = 0
    d = base
    while d >= base:
        if d >= cap:
            return d, word, nodes, True
        limit = k
        if symmetry and top[d] + 1 < k:
            limit = top[d] + 1
        c = nxt[d]
        if c > limit:
            d -= 1
            continue
        nxt[d] = c + 1
        word[d] = c
        nodes += 1
        if not suffix_has_power(word, d + 1, a, b, strict):
            top[d + 1] = max(top[d], c)
            d += 1
            nxt[d] = 1
            if d > best:
                best = d
                best_word[:d] = word[:d]
    return best, best_word, nodes, False
