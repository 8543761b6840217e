# tests/core/test_bwt.py
import numpy as np
import pytest

from lyndon_bwt.core.bwt import (
    BwtString,
    PsiView,
    bwt_from_sa,
    check_permutation,
    count_array,
    f_bitvector,
    invert_bwt,
    isa_stream,
    lf_array,
    load_bwt,
    psi_at,
    sa_and_bwt,
)
from lyndon_bwt.core.suffix import build_sa, invert_sa
from lyndon_bwt.core.textcore import IntArray, Text
from lyndon_bwt.exceptions import EmptyInput, LengthMismatch, NonTerminating, OutOfRange, PermutationViolation, SentinelConflict
from tests.conftest import BANANA, all_words, random_words


def _bwt(raw: bytes) -> BwtString:
    text = Text.from_bytes(raw)
    return bwt_from_sa(text, build_sa(text))


@pytest.mark.parametrize("raw, expected", [
    (b"banana", "annb$aa"),
    (b"", "$"),
    (b"ab", "b$a"),
])
def test_bwt_from_sa(raw, expected):
    assert str(_bwt(raw)) == expected


def test_bwt_from_sa_length_mismatch(banana):
    with pytest.raises(LengthMismatch):
        bwt_from_sa(banana, IntArray.from_values([1, 2]))


@pytest.mark.parametrize("sorter", ["sais", "naive"])
def test_sa_and_bwt_banana(banana, sorter):
    sa, l = sa_and_bwt(banana, sorter=sorter)
    assert sa.tolist() == BANANA["sa"]
    assert str(l) == BANANA["bwt"]


def test_sa_and_bwt_matches_separate_gather():
    """L written during induced sorting equals T[SA - 1] on every word tried."""
    words = list(all_words(b"ab", 9)) + list(all_words(b"abc", 6)) + list(random_words(200, 2000, seed=13))
    for word in words:
        text = Text.from_bytes(word)
        sa, l = sa_and_bwt(text)
        expected = build_sa(text)
        assert sa.tolist() == expected.tolist(), word
        assert l.to_bytes() == bwt_from_sa(text, expected).to_bytes(), word


def test_sa_and_bwt_width_64(banana):
    sa, l = sa_and_bwt(banana, width=64)
    assert sa.width == 64
    assert str(l) == BANANA["bwt"]


def test_bwt_string_from_bytes_checks_sentinel():
    assert BwtString.from_bytes("annb$aa").to_bytes() == b"annb\x00aa"
    with pytest.raises(EmptyInput):
        BwtString.from_bytes(b"")
    with pytest.raises(SentinelConflict, match="found 0"):
        BwtString.from_bytes(b"annb")
    with pytest.raises(SentinelConflict, match="found 2"):
        BwtString.from_bytes(b"a\x00\x00")


def test_load_bwt(tmp_path):
    path = tmp_path / "banana.bwt"
    path.write_bytes(b"annb\x00aa")
    assert str(load_bwt(path)) == "annb$aa"


def test_count_array():
    c = count_array(BwtString.from_bytes("annb$aa"))
    assert (c["$"], c["a"], c["b"], c["n"]) == (0, 1, 4, 5)
    assert c.sigma == 4
    assert c.n == 7
    assert count_array(BwtString.from_bytes("$"))["$"] == 0
    small = count_array(BwtString.from_bytes("b$a"))
    assert (small["$"], small["a"], small["b"]) == (0, 1, 2)


@pytest.mark.parametrize("l, expected", [
    ("annb$aa", [2, 6, 7, 5, 1, 3, 4]),
    ("$", [1]),
    ("b$a", [3, 1, 2]),
])
def test_lf_array(l, expected):
    assert lf_array(BwtString.from_bytes(l)).tolist() == expected


@pytest.mark.parametrize("l, expected", [
    ("annb$aa", "banana$"),
    ("$", "$"),
    ("b$a", "ab$"),
])
def test_invert_bwt(l, expected):
    assert str(invert_bwt(BwtString.from_bytes(l))) == expected


def test_invert_bwt_rejects_non_cycle():
    """An LF permutation with more than one cycle never decodes the whole text."""
    with pytest.raises(NonTerminating):
        invert_bwt(BwtString.from_bytes("$ba"))


def test_invert_bwt_validates_lf():
    l = BwtString.from_bytes("annb$aa")
    with pytest.raises(PermutationViolation):
        invert_bwt(l, IntArray.from_values([2, 6, 7, 5, 1, 3, 3]))
    with pytest.raises(LengthMismatch):
        invert_bwt(l, IntArray.from_values([1]))


def test_check_permutation():
    check_permutation(IntArray.from_values([2, 6, 7, 5, 1, 3, 4]))
    with pytest.raises(PermutationViolation, match="LF"):
        check_permutation(IntArray.from_values([0, 1]), "LF")


def test_round_trip_exhaustive_and_random():
    """invert_bwt(bwt(T)) = T on small words and random texts."""
    words = list(all_words(b"abc", 6)) + list(random_words(200, 2000))
    for word in words:
        text = Text.from_bytes(word)
        assert invert_bwt(bwt_from_sa(text, build_sa(text))) == text


@pytest.mark.parametrize("raw, ones", [
    (b"banana", [1, 2, 5, 6]),
    (b"", [1]),
    (b"ab", [1, 2, 3]),
])
def test_f_bitvector(raw, ones):
    l = _bwt(raw)
    f = f_bitvector(count_array(l), l.n)
    assert [f.select1(k) for k in range(1, f.ones + 1)] == ones


@pytest.mark.parametrize("select_index", ["positions", "sampled"])
def test_psi_banana(select_index):
    view = PsiView(BwtString.from_bytes("annb$aa"), select_index=select_index, sample_rate=2)
    assert [psi_at(view, i) for i in range(1, 8)] == BANANA["psi"]
    lf = lf_array(view.l)
    assert lf.at(view(3)) == 3


def test_psi_out_of_range():
    view = PsiView(BwtString.from_bytes("$"))
    assert psi_at(view, 1) == 1
    with pytest.raises(OutOfRange):
        psi_at(view, 2)
    with pytest.raises(OutOfRange):
        psi_at(view, 0)


@pytest.mark.parametrize("raw, expected", [
    (b"banana", [5, 4, 7, 3, 6, 2, 1]),
    (b"", [1]),
    (b"ab", [2, 3, 1]),
])
def test_isa_stream_examples(raw, expected):
    assert list(isa_stream(_bwt(raw))) == expected


@pytest.mark.parametrize("select_index", ["positions", "sampled"])
def test_isa_stream_matches_inverted_sa(select_index):
    """Streaming ISA through Psi equals inverting SA, and LF undoes Psi."""
    for word in random_words(60, 1500):
        text = Text.from_bytes(word)
        sa = build_sa(text)
        l = bwt_from_sa(text, sa)
        view = PsiView(l, select_index=select_index, sample_rate=4)
        assert list(isa_stream(view)) == invert_sa(sa).tolist()
        lf = lf_array(l).values
        psi = np.array([view(i) for i in range(1, l.n + 1)])
        assert all(lf[psi[i - 1] - 1] == i for i in range(2, l.n + 1))
        assert psi[0] == invert_sa(sa).at(1)


def test_psi_view_unknown_select_index():
    with pytest.raises(ValueError, match="Unknown select index"):
        PsiView(BwtString.from_bytes("$"), select_index="wavelet")
