import itertools
from fractions import Fraction

import pytest
from hypothesis import given

from mzv_csf.errors import NotInH1, ParseError
from mzv_csf.free_algebra import (
    Index,
    Poly,
    Space,
    classify,
    compositions,
    concat_product,
    count_cyclic_classes,
    cyclic_canonical,
    enumerate_words,
    format_poly,
    index_from_word,
    parse_index,
    parse_poly,
    parse_word,
    rotate,
    word_from_index,
)

from conftest import polys


def P(text):
    return parse_poly(text)


@pytest.mark.parametrize("idx, word", [((2, 1), "xyy"), ((3,), "xxy"), ((), "")])
def test_word_index_encoding(idx, word):
    assert word_from_index(idx) == word
    assert index_from_word(word) == Index(idx)


def test_index_from_word_rejects_non_h1():
    with pytest.raises(NotInH1):
        index_from_word("xyx")


def test_index_properties():
    k = Index((3, 1, 2))
    assert (k.weight, k.depth, k.admissible) == (6, 3, True)
    assert not Index((1, 2)).admissible
    assert Index(()).admissible
    assert str(k) == "3,1,2"
    assert parse_index("3,1,2") == k
    with pytest.raises(ParseError):
        parse_index("2,0")


def test_concat_product_examples():
    assert concat_product(P("xy"), P("y")) == P("xyy")
    assert concat_product(P("x - y"), P("y")) == P("xy - yy")
    assert concat_product(P("2*xy"), P("3*y")) == P("6*xyy")


def test_poly_normalizes():
    p = Poly([("xy", 1), ("xy", -1), ("y", Fraction(4, 2))])
    assert p.terms == {"y": 2}
    assert isinstance(p.coeff("y"), int)
    assert Poly.zero() == 0 and not Poly.zero()
    assert Poly.one() == 1


def test_poly_format_and_parse():
    p = Poly({"xxy": -1, "xyy": 1, "y": Fraction(1, 2)})
    assert format_poly(p) == "1/2*y - 1*xxy + 1*xyy"
    assert parse_poly(format_poly(p)) == p
    assert format_poly(Poly.zero()) == "0"
    assert format_poly(Poly.one()) == "1*1"
    assert parse_poly("2yy - xy") == Poly({"yy": 2, "xy": -1})
    assert parse_poly("0") == Poly.zero()
    assert parse_poly("1") == Poly.one()
    with pytest.raises(ParseError):
        parse_poly("xz")
    with pytest.raises(ParseError):
        parse_word("xay")


@given(polys(), polys(), polys())
def test_concat_associative_with_unit(p, q, r):
    assert concat_product(p, concat_product(q, r)) == concat_product(concat_product(p, q), r)
    assert concat_product(Poly.one(), p) == p == concat_product(p, Poly.one())


@given(polys())
def test_text_round_trip(p):
    assert parse_poly(format_poly(p)) == p


@pytest.mark.parametrize("w, flags", [
    ("xy", (True, True, True, True)),
    ("yy", (True, False, False, False)),
    ("xx", (False, False, False, False)),
    ("", (True, True, False, False)),
])
def test_classify(w, flags):
    f = classify(w)
    assert (f.in_h1, f.in_h0, f.in_check_h1, f.in_check_h) == flags


def test_classify_implications():
    for d in range(0, 7):
        for w in enumerate_words(d):
            f = classify(w)
            assert not f.in_h0 or f.in_h1
            assert not f.in_check_h1 or f.in_h1


@pytest.mark.parametrize("w, canon", [("yx", "xy"), ("yxy", "xyy"), ("xyxy", "xyxy")])
def test_cyclic_canonical(w, canon):
    assert cyclic_canonical(w) == canon


def test_cyclic_canonical_rotation_invariant():
    for w in enumerate_words(7):
        c = cyclic_canonical(w)
        assert cyclic_canonical(c) == c
        assert all(cyclic_canonical(rotate(w, k)) == c for k in range(len(w)))


def test_enumerate_words():
    assert enumerate_words(3, Space.CHECK_H1) == ["xxy", "xyy", "yxy"]
    assert enumerate_words(1, Space.CHECK_H1) == []
    assert enumerate_words(2, Space.H1) == ["xy", "yy"]
    for d in range(2, 11):
        assert len(enumerate_words(d)) == 2 ** d
        assert len(enumerate_words(d, Space.H1)) == 2 ** (d - 1)
        assert len(enumerate_words(d, Space.CHECK_H1)) == 2 ** (d - 1) - 1


def test_count_cyclic_classes_brute_force():
    assert [count_cyclic_classes(d) for d in (1, 2, 3)] == [2, 3, 4]
    for d in range(1, 15):
        brute = {cyclic_canonical("".join(t)) for t in itertools.product("xy", repeat=d)}
        assert count_cyclic_classes(d) == len(brute)


def test_compositions():
    assert sorted(compositions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert sum(1 for _ in compositions(8)) == 2 ** 7


def test_index_word_round_trip():
    for n in range(1, 9):
        for idx in compositions(n):
            assert index_from_word(word_from_index(idx)) == idx
    for w in enumerate_words(8, Space.H1):
        assert word_from_index(index_from_word(w)) == w
