from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import oracle_first_power_py
from urt.repetitions import (
    find_ordinary_power, find_reverse_power, find_undirected_power, is_undirected_free,
    is_undirected_free_batch, suffix_has_power,
)
from urt.words import ExtExponent

THREE_HALVES = ExtExponent(Fraction(3, 2))


def test_edited_and_render():
    ed = find_undirected_power(b"edited", THREE_HALVES)
    assert (ed.kind, ed.ratio, ed.factor(b"edited")) == ("ordinary", Fraction(3, 2), b"edited")
    rd = find_undirected_power(b"render", THREE_HALVES)
    assert (rd.kind, rd.ratio) == ("reverse", Fraction(3, 2))
    assert find_ordinary_power(b"render", THREE_HALVES) is None
    assert find_reverse_power(b"edited", THREE_HALVES) is None


def test_strictness_matters_at_the_boundary():
    assert not is_undirected_free(b"edited", "3/2")
    assert is_undirected_free(b"edited", "3/2+")


def test_thresholds_above_two_rejected():
    with pytest.raises(ValueError):
        find_undirected_power(b"aaa", ExtExponent(Fraction(5, 2)))


def test_empty_and_single_letter():
    assert find_undirected_power(b"", "2") is None
    assert find_undirected_power(b"\x01", "3/2") is None


words = st.lists(st.integers(1, 3), min_size=0, max_size=18).map(bytes)
thresholds = st.sampled_from([(Fraction(7, 4), True), (Fraction(3, 2), False), (Fraction(2), False),
                              (Fraction(4, 3), True), (Fraction(6, 5), False)])


@settings(max_examples=300)
@given(words, thresholds)
def test_matches_python_oracle(w, th):
    value, strict = th
    occ = find_undirected_power(w, ExtExponent(value, strict))
    want = oracle_first_power_py(w, value, strict)
    if want is None:
        assert occ is None
    else:
        assert (occ.start, occ.length, occ.kind) == want
        assert occ.is_valid_in(w)
        assert ExtExponent(value, strict).forbids(occ.ratio)


@given(words, thresholds)
def test_suffix_check_agrees_with_prefix_scans(w, th):
    t = ExtExponent(*th)
    # a power ends at the last letter iff w is dirty while w[:-1] is clean
    if w and is_undirected_free(w[:-1], t):
        assert suffix_has_power(w, t) == (not is_undirected_free(w, t))


def test_batch_agrees_with_single():
    rng = np.random.default_rng(7)
    rows = rng.integers(1, 4, size=(200, 20), dtype=np.uint8)
    lengths = rng.integers(0, 21, size=200).astype(np.int64)
    got = is_undirected_free_batch(rows, lengths, "7/4+")
    want = [is_undirected_free(bytes(r[:n]), "7/4+") for r, n in zip(rows, lengths)]
    assert list(got) == want


def test_occurrence_json():
    d = find_undirected_power(b"render", THREE_HALVES).to_dict()
    assert d["ratio"] == "3/2" and d["kind"] == "reverse"
