"""Exhaustive backtracking for the longest power-free or pattern-avoiding word.

Only violations ending at the newly appended letter are tested, and with
``symmetry`` on, letters make their first appearance in increasing order
(1, then 2, ...), which is sound because both predicates are invariant
under renaming letters.

With ``jobs > 1`` the tree is cut at ``split_depth``; the subtrees are
searched in parallel and merged in lexicographic order, so the result,
witness and node count do not depend on scheduling.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .patterns import Pattern, as_pattern, general_suffix_has_instance
from .repetitions import PowerOccurrence, _check_threshold, find_undirected_power
from .words import ExtExponent, Word


@dataclass(frozen=True)
class SearchResult:
    max_length: int | None  # None: a word of length cap was found
    witness: Word
    nodes_expanded: int
    cap: int

    @property
    def cap_exceeded(self) -> bool:
        return self.max_length is None

    def to_dict(self) -> dict:
        return {
            "max_length": "cap exceeded" if self.cap_exceeded else self.max_length,
            "witness": self.witness.format(),
            "nodes_expanded": self.nodes_expanded,
            "cap": self.cap,
        }


@dataclass(frozen=True)
class SearchConfig:
    cap: int = 1000
    symmetry: bool = True
    jobs: int = 1
    split_depth: int = 6


# A task is (kind, params); a kernel run returns (best, word, nodes, hit).
def _run(task, prefix: bytes, cap: int, symmetry: bool):
    kind, params = task
    pre = np.frombuffer(prefix, dtype=np.uint8).copy()
    if kind == "power":
        k, a, b, strict = params
        best, w, nodes, hit = _kernels.dfs_power(pre, k, a, b, strict, cap, symmetry)
    elif kind == "pattern":
        codes, na, nb, alphabet = params
        pat = np.array(codes, dtype=np.int8)
        best, w, nodes, hit = _kernels.dfs_pattern(pre, pat, na, nb, alphabet, cap, symmetry)
    else:
        return _python_dfs(params, prefix, cap, symmetry)
    return int(best), bytes(w[:best]), int(nodes), bool(hit)


def _violates(task, w: bytes) -> bool:
    kind, params = task
    arr = _kernels.as_array(w)
    if kind == "power":
        k, a, b, strict = params
        return bool(_kernels.suffix_has_power(arr, len(w), a, b, strict))
    if kind == "pattern":
        codes, na, nb, _ = params
        return bool(_kernels.suffix_has_instance(arr, len(w), np.array(codes, dtype=np.int8), na, nb))
    return general_suffix_has_instance(w, Pattern(params[0]))


def _alphabet(task) -> int:
    kind, params = task
    return params[0] if kind == "power" else params[-1]


def _python_dfs(params, prefix: bytes, cap: int, symmetry: bool):
    """Reference DFS for patterns with more than two variables."""
    p, alphabet = Pattern(params[0]), params[1]
    best, best_w, nodes = len(prefix), prefix, 0
    stack = [prefix]
    while stack:
        w = stack.pop()
        if len(w) > best:
            best, best_w = len(w), w
        if len(w) >= cap:
            return len(w), w, nodes, True
        limit = min(alphabet, max(w, default=0) + 1) if symmetry else alphabet
        kids = []
        for c in range(1, limit + 1):
            nodes += 1
            v = w + bytes([c])
            if not general_suffix_has_instance(v, p):
                kids.append(v)
        stack.extend(reversed(kids))
    return best, best_w, nodes, False


def _frontier(task, depth: int, cap: int, symmetry: bool):
    """Valid words of length ``depth`` in lex order, plus the best shorter dead end."""
    alphabet = _alphabet(task)
    out, nodes = [], 0
    best, best_w = 0, b""

    def walk(w: bytes):
        nonlocal nodes, best, best_w
        if len(w) > best:
            best, best_w = len(w), w
        if len(w) == depth:
            out.append(w)
            return
        limit = min(alphabet, max(w, default=0) + 1) if symmetry else alphabet
        for c in range(1, limit + 1):
            nodes += 1
            v = w + bytes([c])
            if not _violates(task, v):
                walk(v)

    walk(b"")
    return out, nodes, best, best_w


def _search(task, config: SearchConfig) -> tuple[int, bytes, int, bool]:
    cap = config.cap
    if config.jobs <= 1 or config.split_depth >= cap:
        return _run(task, b"", cap, config.symmetry)
    roots, nodes, best, best_w = _frontier(task, config.split_depth, cap, config.symmetry)
    if not roots:
        return best, best_w, nodes, False
    with ProcessPoolExecutor(max_workers=config.jobs) as pool:
        futures = [pool.submit(_run, task, r, cap, config.symmetry) for r in roots]
        for fut in futures:
            b, w, n, hit = fut.result()
            nodes += n
            if hit:
                for rest in futures:
                    rest.cancel()
                return b, w, nodes, True
            if b > best:
                best, best_w = b, w
    return best, best_w, nodes, False


def _result(best: int, w: bytes, nodes: int, hit: bool, alphabet: int, cap: int) -> SearchResult:
    return SearchResult(None if hit else best, Word(w, alphabet), nodes, cap)


def longest_power_free(k: int, threshold: ExtExponent | str, cap: int = 1000,
                       symmetry: bool = True, jobs: int = 1, split_depth: int = 6) -> SearchResult:
    """Longest word over Sigma_k with no undirected power clearing the threshold."""
    if isinstance(threshold, str):
        threshold = ExtExponent.parse(threshold)
    threshold = _check_threshold(threshold)
    if k < 1 or k > 255:
        raise ValueError("alphabet size must lie in 1..255")
    task = ("power", (k, threshold.num, threshold.den, threshold.strict))
    best, w, nodes, hit = _search(task, SearchConfig(cap, symmetry, jobs, split_depth))
    return _result(best, w, nodes, hit, k, cap)


def longest_pattern_free(p: Pattern | str, alphabet: int = 2, cap: int = 1000,
                         symmetry: bool = True, jobs: int = 1, split_depth: int = 8) -> SearchResult:
    """Longest word over {1..alphabet} avoiding p up to reversal."""
    p = as_pattern(p)
    if len(p.variables) <= 2:
        counts = p.counts + (0,)
        task = ("pattern", (p.codes, counts[0], counts[1], alphabet))
    else:
        task = ("general", (p.symbols, alphabet))
    best, w, nodes, hit = _search(task, SearchConfig(cap, symmetry, jobs, split_depth))
    return _result(best, w, nodes, hit, alphabet, cap)


# ---- the decision tree for (k-1)/(k-2)-free words ---------------------------

@dataclass(frozen=True)
class TreeLeaf:
    word: bytes
    occurrence: PowerOccurrence
    claimed_ratio: Fraction
    claimed_kind: str

    @property
    def agrees(self) -> bool:
        occ = self.occurrence
        return occ is not None and occ.ratio == self.claimed_ratio and occ.kind == self.claimed_kind


def tree_leaf_words(k: int) -> list[tuple[bytes, Fraction, str]]:
    """The eleven dead ends of the search below 12...(k-1), with their expected power.

    Each entry is the leaf word (the common prefix 12...(k-1) followed by the
    branch letters) and the ratio and kind of the power ending at its last
    letter.
    """
    if k < 6:
        raise ValueError("the tree is stated for k >= 6")
    base = list(range(1, k))
    short, long_ = Fraction(k + 1, k - 1), Fraction(k + 2, k)
    K = k
    branches = [
        ([1, 2], short, "ordinary"),
        ([1, K, 2, 3], long_, "ordinary"),
        ([1, K, 2, 4, 3], long_, "reverse"),
        ([1, K, 2, 4, 5], short, "ordinary"),
        # 23...(k-1)1k32 ends in 32, the reversal of its first block
        ([1, K, 3, 2], long_, "reverse"),
        ([1, K, 3, 4], short, "ordinary"),
        ([K, 1, 2], long_, "ordinary"),
        ([K, 1, 3, 2], long_, "reverse"),
        ([K, 1, 3, 4], short, "ordinary"),
        ([K, 2, 1], long_, "reverse"),
        ([K, 2, 3], short, "ordinary"),
    ]
    return [(bytes(base + tail), r, kind) for tail, r, kind in branches]


def verify_tree_leaves(k: int) -> list[TreeLeaf]:
    """The shortest power ending at the last letter of each leaf.

    The occurrence reported is the one of least length ending at the end of
    the leaf word, found by scanning suffixes.
    """
    out = []
    limit = ExtExponent(Fraction(k - 1, k - 2), strict=False)
    for w, ratio, kind in tree_leaf_words(k):
        occ = None
        for s in range(len(w) - 2, -1, -1):
            found = find_undirected_power(w[s:], limit)
            if found is not None and found.start + found.length == len(w) - s:
                occ = PowerOccurrence(found.start + s, found.x_len, found.y_len, found.kind)
                break
        out.append(TreeLeaf(w, occ, ratio, kind))
    return out
