import os
import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from urt import constructions as C
from urt.morphic import (
    Morphism, MorphicWord, apply, blocks_end_distinct, direct_product, every_length_L_factor_has_cut,
    find_cuts, fixed_point_prefix, format_morphism, iterate, parse_morphism, parses,
    saturated_factor_set, saturated_max_reversible, start_offsets,
)
from urt.words import Word, factors, word

LISTINGS = os.path.join(os.path.dirname(__file__), "..", "paper.md")
THUE = Morphism({1: word("123"), 2: word("13"), 3: word("2")})


def test_parse_and_format_round_trip():
    text = "# comment\n1 -> 12\n2 -> 1  # trailing\n"
    h = parse_morphism(text)
    assert h.images == {1: word("12"), 2: word("1")}
    assert parse_morphism(format_morphism(h)) == h


@pytest.mark.parametrize("text", ["1 -> 12\n1 -> 2\n", "1 12\n", "2 -> 1\n", "1 -> \n", "12 -> 1\n"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_morphism(text)


def test_apply_outside_domain():
    with pytest.raises(ValueError):
        apply(THUE, word("14"))


def test_fixed_point_prefix_length_and_prolongability():
    assert fixed_point_prefix(THUE, 1, 12) == word("123132123213")
    assert len(fixed_point_prefix(THUE, 1, 1000)) == 1000
    with pytest.raises(ValueError):
        fixed_point_prefix(THUE, 2, 5)


def test_composition_and_power():
    assert THUE.power(3)(word("1")) == iterate(THUE, word("1"), 3)
    assert THUE.compose(THUE)(word("2")) == THUE(THUE(word("2")))


@pytest.mark.parametrize("L", [1, 4, 9, 15])
def test_saturated_set_equals_long_prefix_factors(L):
    # oracle: factors of a much longer prefix than saturation looks at
    long = fixed_point_prefix(THUE, 1, 20000)
    assert saturated_factor_set(THUE, 1, L) == factors(long, L)


@pytest.mark.parametrize("k", [4, 5, 8])
def test_composite_factor_set_matches_prefix(k):
    mw = C.tape_word(k)
    assert mw.factor_set(12) == factors(mw.prefix(60000), 12)


def test_saturation_refuses_non_growing():
    with pytest.raises(ValueError):
        saturated_factor_set(Morphism({1: word("12"), 2: word("2")}), 1, 3)


def test_cuts_on_uniform_code():
    code = [word("12"), word("21")]
    # 1221 parses only as 12|21 with no offset
    assert find_cuts(word("1221"), code) == [0, 2, 4]
    assert find_cuts(b"", code) == [0]
    with pytest.raises(ValueError):
        find_cuts(word("111"), code)
    with pytest.raises(ValueError):
        find_cuts(word("1"), [word("1"), word("12")])


def test_parses_list_every_phase():
    code = [word("12"), word("21")]
    assert frozenset({1}) in parses(word("11"), code)


def test_urt3_triggers_have_one_phase():
    f = C.urt3_morphism()
    for t in ("12131", "23212", "31323"):
        assert len(start_offsets(word(t), f.blocks)) == 1


def test_every_factor_of_f4_has_cut():
    f = C.f_k(4)
    assert every_length_L_factor_has_cut(f)
    assert blocks_end_distinct(f) and blocks_end_distinct(C.g_k(4))


def test_direct_product_alphabet():
    u, v = Word(word("1212"), 2), Word(word("1231"), 3)
    p = direct_product(u, v)
    assert p.alphabet_size == 6 and p.letters == word("1534")
    with pytest.raises(ValueError):
        direct_product(u, Word(word("1"), 3))


def test_saturated_reversible_of_urt3_word():
    assert saturated_max_reversible(MorphicWord(C.urt3_morphism(), 1), cap=40) == 18


@given(st.integers(1, 40))
def test_prefix_is_prefix(n):
    mw = C.tape_word(6)
    assert mw.prefix(n) == mw.prefix(n + 17)[:n]


# ---- shipped tables against the published listings ---------------------------

LISTING = re.compile(r"^([fg])_\{?([0-9a-z]+)\}?\(\s*\\tt\{(\d)\}\)&=\s*\\tt\{([\d\\, ]+)\}", re.M)


def _published():
    with open(LISTINGS, encoding="utf-8") as fh:
        text = fh.read()
    out = {}
    for kind, sub, letter, image in LISTING.findall(text):
        digits = re.sub(r"[^0-9]", "", image)
        out.setdefault(f"{kind}_{sub}", {})[int(letter)] = word(digits)
    return text, out


@pytest.mark.skipif(not os.path.exists(LISTINGS), reason="listing source not available")
def test_data_files_match_listings():
    text, tables = _published()
    assert len(tables) >= 18 + 3 + 12
    for name, images in tables.items():
        if name == "g_k":
            continue
        assert C.load(name).images == images, name
    generic = tables["g_k"]
    for k in C.K_RANGE:
        if k not in (5, 6, 8):
            assert C.g_k(k).images == generic, k
    assert "f(\\tt{1})&= \\tt{123}" in text
    assert C.thue_morphism().images == THUE.images


@pytest.mark.skipif(not os.path.exists(LISTINGS), reason="listing source not available")
def test_urt3_table_matches_listing():
    with open(LISTINGS, encoding="utf-8") as fh:
        text = fh.read()
    rows = re.findall(r"\\tt\{(\d)\}&\\mapsto \\tt\{([\d\\, ]+)\}", text)
    assert len(rows) == 3
    f = C.urt3_morphism()
    for letter, image in rows:
        assert f.images[int(letter)] == word(re.sub(r"[^0-9]", "", image))


def test_every_pattern_morphism_is_prolongable_on_seed():
    for p in C.CONSTRUCTED_PATTERNS:
        mw = C.pattern_word(p)
        assert mw.h.is_prolongable(C.PATTERN_SEED), p


def test_known_images():
    assert C.load("f_xxxyyx").images[1] == word("1112")
    assert C.load("f_xyxy").images[1] == word("1324")
    assert C.load("g_xxyxxy").images == {1: word("111"), 2: word("112"), 3: word("222")}
    assert C.f_k(4).images == {1: word("12111211212"), 2: word("11121211211")}


def test_unknown_construction():
    with pytest.raises(ValueError):
        C.f_k(22)
    with pytest.raises(ValueError):
        C.pattern_word("xyz")
