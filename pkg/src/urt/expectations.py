"""Published values, each paired with the computation that should reproduce it.

``run_all`` evaluates every entry and returns one row per value; the CLI
prints the rows as a scoreboard.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import certify, pansiot, patterns, search
from . import constructions as C
from .repetitions import find_undirected_power
from .words import ExtExponent, word


@dataclass(frozen=True)
class Expectation:
    name: str
    expected: object
    compute: Callable[[], object]
    slow: bool = False


@dataclass(frozen=True)
class Row:
    name: str
    expected: str
    got: str
    ok: bool
    seconds: float


def _show(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if v == math.inf:
        return "inf"
    if isinstance(v, bytes):
        return "".join(str(a) for a in v)
    return str(v)


def _power_ratio(text: str):
    occ = find_undirected_power(text.encode(), ExtExponent(Fraction(3, 2)))
    return None if occ is None else (occ.kind, _show(occ.ratio))


def _candidates(k: int):
    return sorted((_show(c.pi), _show(c.eta)) for c in certify.enumerate_kernel_candidates(k))


def _encoding(w: str, k: int):
    e = pansiot.encode(word(w), k)
    return _show(e.prefix), _show(e.tape)


def _instance_blocks(w: str, p: str):
    b = word(w)
    inst = patterns.find_instance_undirected(b, p)
    return None if inst is None else [_show(x) for x in inst.blocks(b)]


def registry() -> list[Expectation]:
    E = Expectation
    out = [
        E("edited is an ordinary 3/2-power", ("ordinary", "3/2"), lambda: _power_ratio("edited")),
        E("render is a reverse 3/2-power", ("reverse", "3/2"), lambda: _power_ratio("render")),
        E("encode 12342541243 over k=5", ("1234", "3131231"),
          lambda: _encoding("12342541243", 5)),
        E("ranking of 123416 over k=6", "[5,2,3,4,1,6]",
          lambda: str(pansiot.initial_ranking(word("123416"), 6))),
        E("sigma_4(3123131231) is the identity", True,
          lambda: pansiot.sigma_image(word("3123131231"), 4).is_identity()),
        E("123243414212324 is a kernel repetition", True,
          lambda: pansiot.is_kernel_repetition(word("123243414212324"), 10, 4)),
        E("URT(3) certificate", "pass", lambda: certify.verify_urt3().verdict),
        E("longest 3/2-free word over 4 letters", 7,
          lambda: search.longest_power_free(4, "3/2").max_length),
        E("longest 4/3-free word over 5 letters", 8,
          lambda: search.longest_power_free(5, "4/3").max_length),
        E("longest 5/4-free word over 6 letters", 9,
          lambda: search.longest_power_free(6, "5/4").max_length),
        E("tree leaves for k=6 carry the stated powers", True,
          lambda: all(leaf.agrees for leaf in search.verify_tree_leaves(6))),
        E("longest binary word avoiding xxx", 9, lambda: search.longest_pattern_free("xxx", 2).max_length),
    ]
    for p, n in (("xxxyy", 33), ("xxyxy", 30), ("xyxxy", 96), ("xyyyx", 39), ("xxxyxxx", 62)):
        out.append(E(f"longest binary word avoiding {p}", n,
                     lambda p=p: search.longest_pattern_free(p, 2).max_length, slow=p == "xxxyxxx"))
    out += [
        E("candidates for k=4", [("111", ""), ("112112", "1"), ("121121", "1")], lambda: _candidates(4)),
        E("candidates for k=5", [("1212112121", "1")], lambda: _candidates(5)),
    ]
    for k in C.K_RANGE:
        out.append(E(f"URT({k}) certificate", "pass", lambda k=k: certify.verify_threshold(k).verdict,
                     slow=True))
    out.append(E("N <= 23 for every k in 4..21", True,
                 lambda: all((n := certify.compute_N(k)) is not None and n <= 23 for k in C.K_RANGE),
                 slow=True))
    out += [
        E("012021 avoids xx", None, lambda: _instance_blocks("012021", "xx")),
        E("012021 encounters xyxy", ["0", "12", "0", "21"], lambda: _instance_blocks("012021", "xyxy")),
        E("f_xxxyyx(1)", "1112", lambda: _show(C.load("f_xxxyyx").images[1])),
        E("index of xyx", math.inf, lambda: patterns.classify_binary_pattern("xyx")),
        E("index of xxyyx", 2, lambda: patterns.classify_binary_pattern("xxyyx")),
        E("index of xyxy", 3, lambda: patterns.classify_binary_pattern("xyxy")),
        E("index of xx", 3, lambda: patterns.unary_index(2)),
        E("index of xxx", 3, lambda: patterns.unary_index(3)),
        E("index of x^5", 2, lambda: patterns.unary_index(5)),
    ]
    for p in C.CONSTRUCTED_PATTERNS:
        out.append(E(f"prefix of w_{p} avoids {p}", True,
                     lambda p=p: patterns.verify_lemma3_bounded(p, 500).avoids))
    return out


def run_all(include_slow: bool = True) -> list[Row]:
    rows = []
    for e in registry():
        if e.slow and not include_slow:
            continue
        t = time.perf_counter()
        try:
            got = e.compute()
            shown = _show(got)
        except Exception as exc:  # a crash is a failed row, not a failed run
            got, shown = exc, f"error: {exc}"
        rows.append(Row(e.name, _show(e.expected), shown, got == e.expected,
                        time.perf_counter() - t))
    return rows
