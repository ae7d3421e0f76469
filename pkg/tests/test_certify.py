import json
from fractions import Fraction

import pytest

from urt import certify
from urt.certify import (
    CertifyConfig, KernelCandidate, ThresholdParams, appearance_check, build_u, check_not_zero,
    compute_N, covering_length, enumerate_kernel_candidates, reversed_prefix_tape, prefix_free_check,
    recheck_certificate, search_power, verify_threshold, verify_urt3,
)
from urt.morphic import MorphicWord
from urt.pansiot import tau_image
from urt import constructions as C
from urt.words import word

# recorded once and expected to stay put
N_VALUES = {4: 11, 5: 19, 6: 23, 7: 13, 8: 18, 9: 11, 10: 13, 11: 13, 12: 13, 13: 11,
            14: 13, 15: 13, 16: 13, 17: 13, 18: 13, 19: 13, 20: 13, 21: 13}


def test_parameters_k4_k5():
    assert ThresholdParams.for_k(4) == ThresholdParams(4, 11, 2, 1, 0)
    assert ThresholdParams.for_k(5) == ThresholdParams(5, 9, 4, 8, 3)


@pytest.mark.parametrize("k", [4, 5, 9, 21])
def test_bounds_against_direct_formula(k):
    p = ThresholdParams.for_k(k)
    for e in range(p.r):
        general = (k - 2) * (e + Fraction(p.chi_f, p.r - 1) + Fraction(p.chi_g + k, p.r_g))
        strict = (k - 2) * (e + Fraction(p.chi_f, p.r - 1) + Fraction(p.chi_g + k, p.r_g * p.r))
        assert p.general_bound(e) == general
        assert p.not_zero_bound(e) == strict
    assert p.length_cap() == p.not_zero_bound(p.r - 1) + p.r - 1


def _pairs(k, config=CertifyConfig()):
    return {(c.pi, c.eta) for c in enumerate_kernel_candidates(k, config)}


def test_candidates_k4():
    assert _pairs(4) == {(word("111"), b""), (word("112112"), word("1")), (word("121121"), word("1"))}


def test_candidates_k5():
    assert _pairs(5) == {(word("1212112121"), word("1"))}


@pytest.mark.parametrize("k", [6, 7, 8, 11])
def test_no_candidates(k):
    assert _pairs(k) == set()


@pytest.mark.parametrize("k", [4, 5])
def test_candidates_are_kernel_words_failing_the_strict_bound(k):
    g = C.g_k(k)
    for c in enumerate_kernel_candidates(k):
        assert tau_image(c.pi, g, k).is_identity()
        assert c.pi.startswith(c.eta)
        assert not check_not_zero(c, k)


def test_synthetic_candidate_bound():
    # |pi| = 1, |eta| = 0: inside the strict bound for k = 5, outside for k = 4
    c = KernelCandidate(word("1"), b"", 0)
    assert check_not_zero(c, 5)
    assert not check_not_zero(c, 4)
    assert ThresholdParams.for_k(4).not_zero_bound(0) < 1


def test_relaxed_eta_only_adds_candidates():
    strict = _pairs(4)
    relaxed = _pairs(4, CertifyConfig(eta_prefix_of_repetition=True))
    assert strict <= relaxed


def test_search_power_choice():
    assert search_power(18) == 4 and search_power(17) == 3
    assert search_power(18, CertifyConfig(search_power=3)) == 3


def test_reversed_prefix_tape_is_312():
    for k in (4, 9, 21):
        assert reversed_prefix_tape(k) == word("312")


@pytest.mark.parametrize("k", [4, 5, 6, 8, 9])
def test_N_values(k):
    assert compute_N(k) == N_VALUES[k]


def test_covering_length_trivial():
    mw = MorphicWord(C.thue_morphism(), 1)
    n = covering_length(mw, word("1"))
    assert n is not None and n <= 4


def test_prefix_check_catches_a_power():
    assert not prefix_free_check(word("123123"), 4).passed
    assert prefix_free_check(build_u(4)[:500], 4).passed


def test_appearance_check_runs():
    r = appearance_check("x", 4, 20)
    assert r.passed and r.detail["length"] == 19


def test_certificate_k4_structure():
    cert = verify_threshold(4)
    assert cert.verdict == "pass"
    names = [c.name for c in cert.checks]
    assert names[:5] == ["prefix_free", "cuts_f", "cuts_g", "blocks_end_distinct", "algebraic_property"]
    data = json.loads(cert.to_json())
    assert data["N"] == 11 and len(data["candidates"]) == 3
    assert all("/" in c["detail"].get("cap", "/") for c in data["checks"])
    assert recheck_certificate(data)


def test_recheck_notices_tampering():
    data = verify_threshold(5).to_dict()
    forged = json.loads(json.dumps(data))
    forged["candidates"].append({"pi": "1", "eta": "", "position": 0})
    assert not recheck_certificate(forged)
    forged = json.loads(json.dumps(data))
    forged["N"] = 30
    assert not recheck_certificate(forged)
    forged = json.loads(json.dumps(data))
    forged["construction_checksums"]["f_5"] = "0" * 64
    assert not recheck_certificate(forged)


def test_bad_k():
    with pytest.raises(ValueError):
        verify_threshold(3)


def test_urt3_certificate():
    cert = verify_urt3()
    assert cert.verdict == "pass", [c for c in cert.checks if not c.passed]
    assert {c.name: c.detail for c in cert.checks}["max_reversible_factor"] == {"max_length": 18}


def test_mutated_g_breaks_certificate(monkeypatch):
    real = C.g_k

    def broken(k):
        g = real(k)
        return type(g)({1: word("31"), 2: word("11")})

    monkeypatch.setattr(certify.C, "g_k", broken)
    monkeypatch.setattr(certify.C, "tape_word", lambda k: MorphicWord(C.f_k(k), 1, broken(k)))
    assert verify_threshold(4).verdict == "fail"
