"""End-to-end acceptance run: one PASS/FAIL line per criterion.

Under pytest the lines are printed in the terminal summary; run this file
directly (``python tests/test_acceptance.py``) to get them on stdout.
"""

import math
import os
import random
import sys
import time

import numpy as np

sys.path.insert(0, os.path.dirname(__file__))

import conftest  # noqa: E402
from oracles import compare_exhaustive, compare_random, oracle_has_instance  # noqa: E402
from samplers import has_period, periodic_factors, random_encodable_word  # noqa: E402
from test_certify import N_VALUES  # noqa: E402
from urt import certify, pansiot, patterns  # noqa: E402
from urt import constructions as C  # noqa: E402
from urt.cli import run  # noqa: E402
from urt.words import word  # noqa: E402

BACKTRACK_TABLE = [("xxxyy", 33), ("xxyxy", 30), ("xyxxy", 96), ("xyyyx", 39), ("xxxyxxx", 62), ("xxx", 9)]


def _record(number, passed, detail):
    conftest.ACCEPTANCE.append((number, passed, detail))
    if __name__ == "__main__":
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}", flush=True)
    assert passed, detail


def _cli_first_line(argv):
    import contextlib
    import io
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = run(argv)
    return code, buf.getvalue().splitlines()[0]


def test_criterion_1_power_thresholds():
    rows, ok = [], True
    for k, t, want in ((4, "3/2", 7), (5, "4/3", 8), (6, "5/4", 9)):
        start = time.perf_counter()
        code, line = _cli_first_line(["backtrack-power", "--k", str(k), "--threshold", t])
        secs = time.perf_counter() - start
        good = code == 0 and line == str(want) and secs < 10
        ok &= good
        rows.append(f"k={k}:{line} ({secs:.1f}s)")
    _record(1, ok, "; ".join(rows))


def test_criterion_2_table():
    start = time.perf_counter()
    rows, ok = [], True
    for p, want in BACKTRACK_TABLE:
        code, line = _cli_first_line(["backtrack-pattern", "--pattern", p])
        ok &= code == 0 and line == str(want)
        rows.append(f"{p}:{line}")
    secs = time.perf_counter() - start
    ok &= secs < 600
    _record(2, ok, f"{' '.join(rows)} ({secs:.0f}s)")


def test_criterion_3_urt3():
    start = time.perf_counter()
    cert = certify.verify_urt3()
    secs = time.perf_counter() - start
    checks = {c.name: c for c in cert.checks}
    rev = checks["max_reversible_factor"].detail["max_length"]
    f3 = C.urt3_morphism().power(3)(b"\x01")
    ok = (cert.verdict == "pass" and rev == 18 and checks["factors_upto_62_in_f3"].passed
          and len(f3) == 13824 and secs < 120)
    failed = [c.name for c in cert.checks if not c.passed]
    _record(3, ok, f"max reversible {rev}, |f^3(1)|={len(f3)}, failed checks {failed} ({secs:.0f}s)")


def test_criterion_4_pansiot():
    e = pansiot.encode(word("12342541243"), 5)
    checks = [
        (e.prefix, e.tape) == (word("1234"), word("3131231")),
        list(pansiot.initial_ranking(word("123416"), 6).order) == [5, 2, 3, 4, 1, 6],
        pansiot.sigma_image(word("3123131231"), 4).is_identity(),
        pansiot.is_kernel_repetition(word("123243414212324"), 10, 4),
    ]
    _record(4, all(checks), f"{sum(checks)}/4 exact matches")


def test_criterion_5_certificates():
    expected = {
        4: {("111", ""), ("112112", "1"), ("121121", "1")},
        5: {("1212112121", "1")},
    }
    bad, slowest = [], 0.0
    for k in C.K_RANGE:
        start = time.perf_counter()
        cert = certify.verify_threshold(k)
        secs = time.perf_counter() - start
        slowest = max(slowest, secs)
        got = {(c.to_dict()["pi"], c.to_dict()["eta"]) for c in cert.candidates}
        if cert.verdict != "pass" or got != expected.get(k, set()) or secs > 300:
            bad.append(k)
        if any(certify.check_not_zero(c, k) for c in cert.candidates):
            bad.append(k)
    ok = not bad and certify.search_power(18) == 4
    _record(5, ok, f"failing k: {bad or 'none'}; k=18 uses f^{certify.search_power(18)}; "
                   f"slowest {slowest:.0f}s")


def test_criterion_6_n_bound():
    first = {k: certify.compute_N(k) for k in C.K_RANGE}
    second = {k: certify.compute_N(k) for k in C.K_RANGE}
    ok = (first == second == N_VALUES) and all(n is not None and n <= 23 for n in first.values())
    _record(6, ok, f"max N = {max(first.values())}; values {first}")


def test_criterion_7_constructed_words():
    start = time.perf_counter()
    reports = [patterns.verify_lemma3_bounded(p, 500) for p in C.CONSTRUCTED_PATTERNS]
    secs = time.perf_counter() - start
    failing = [r.pattern for r in reports if not r.avoids]
    maxima = ", ".join(f"{r.pattern}:{list(r.reversible_by_prefix.values())[-1]}"
                       f"/{'inf' if r.saturated_reversible is None else r.saturated_reversible}"
                       for r in reports)
    unstable = [r.pattern for r in reports if not r.stabilized]
    ok = not failing and secs < 300
    _record(7, ok, f"instances found for {failing or 'none'}; reversible maxima (prefix/saturated) "
                   f"{maxima}; not stabilized {unstable or 'none'} ({secs:.0f}s)")


def _reference_class(p):
    def eq(q):
        s = q.translate(str.maketrans("xy", "yx"))
        return {q, s, q[::-1], s[::-1]}

    if eq(p) & {"x", "y", "xy", "yx", "xyx", "yxy"}:
        return math.inf
    two = set(C.INDEX_TWO_PATTERNS) | {"xxxx"}
    facs = {p[i:j] for i in range(len(p)) for j in range(i + 1, len(p) + 1)}
    return 2 if any(eq(f) & two for f in facs) else 3


def test_criterion_8_classifier():
    bad = [p for p in patterns.binary_patterns(7)
           if patterns.classify_binary_pattern(p) != _reference_class(p)]
    table = [p for p, _ in BACKTRACK_TABLE if patterns.classify_binary_pattern(p) < 3]
    total = sum(1 for _ in patterns.binary_patterns(7))
    _record(8, not bad and not table,
            f"{total - len(bad)}/{total} patterns agree; backtracked patterns below 3: {table or 'none'}")


def _random_batch(rng, count, max_len=40):
    words = np.zeros((count, max_len), dtype=np.uint8)
    lengths = rng.integers(1, max_len + 1, size=count)
    ks = rng.integers(2, 6, size=count)
    for r in range(count):
        words[r, :lengths[r]] = rng.integers(1, ks[r] + 1, size=lengths[r])
    choices = [(3, 2), (4, 3), (5, 4), (7, 4), (2, 1), (7, 5), (5, 3)]
    pick = rng.integers(0, len(choices), size=count)
    a = np.array([choices[i][0] for i in pick], dtype=np.int64)
    b = np.array([choices[i][1] for i in pick], dtype=np.int64)
    strict = rng.integers(0, 2, size=count).astype(np.bool_)
    return words, lengths.astype(np.int64), a, b, strict


def test_criterion_9_oracles():
    start = time.perf_counter()
    exhaustive_bad, words_checked = 0, 0
    for a, b, strict in ((3, 2, False), (7, 4, True), (2, 1, False), (4, 3, False)):
        for n in range(1, 15):
            bad, _ = compare_exhaustive(3, n, a, b, strict)
            exhaustive_bad += bad
            words_checked += 3 ** n
    rng = np.random.default_rng(2024)
    n_random = 100_000
    random_bad, _ = compare_random(*_random_batch(rng, n_random))

    trips = 0
    for k in C.K_RANGE:
        w = certify.build_wk_prefix(k, 1000)
        e = pansiot.encode(w, k)
        trips += pansiot.decode(e.prefix, e.tape, k) == w
    round_trip_ok = trips == len(C.K_RANGE)

    py_rng = random.Random(7)
    samples = period_bad = 0
    for k in (4, 5):
        for v, q in periodic_factors(certify.build_wk_prefix(k, 600), k):
            samples += 1
            period_bad += not has_period(pansiot.encode(v, k).tape, q)
    for _ in range(40):
        k = py_rng.randint(4, 7)
        w = random_encodable_word(k, 300, py_rng)
        for v, q in periodic_factors(w, k, max_q=30):
            samples += 1
            period_bad += not has_period(pansiot.encode(v, k).tape, q)
    secs = time.perf_counter() - start
    ok = exhaustive_bad == 0 and random_bad == 0 and round_trip_ok and period_bad == 0 and samples > 0
    _record(9, ok, f"exhaustive {words_checked} words: {exhaustive_bad} mismatches; "
                   f"random {n_random}: {random_bad}; round trips {trips}/{len(C.K_RANGE)}; "
                   f"period transfer {samples - period_bad}/{samples} ({secs:.0f}s)")


def _ordinary_avoiders(p, max_len):
    """All binary words up to max_len avoiding p in the ordinary sense (prefix-closed)."""
    level, out = [b""], []
    for _ in range(max_len):
        level = [w + bytes([c]) for w in level for c in (1, 2)
                 if not oracle_has_instance(w + bytes([c]), p, undirected=False)]
        out.extend(level)
    return out


def test_criterion_10_direct_product():
    details, ok = [], True
    for p in ("xxx", "xyxy", "xxyy"):
        us = _ordinary_avoiders(p, 15)
        bad = [u for u in us if not patterns.avoids(patterns.product_with_123(u).letters, p)]
        ok &= not bad and bool(us)
        details.append(f"{p}: {len(us)} words, {len(bad)} counterexamples")
    _record(10, ok, "; ".join(details))


if __name__ == "__main__":
    failures = 0
    tests = [(int(n.split("_")[2]), fn) for n, fn in globals().items() if n.startswith("test_criterion_")]
    for _, fn in sorted(tests, key=lambda t: t[0]):
        try:
            fn()
        except AssertionError:
            failures += 1
    sys.exit(1 if failures else 0)
