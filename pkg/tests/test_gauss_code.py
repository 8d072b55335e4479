import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_words
from selfcross.errors import LimitExceeded, MalformedToken, OccurrenceError, OddLength
from selfcross.gauss_code import (GaussCode, canonical_code, enumerate_words, interlaced,
                                  normalize, parse_code, render_text, symmetry_images)


@st.composite
def words(draw, max_n=5):
    n = draw(st.integers(0, max_n))
    labels = [c for c in range(1, n + 1) for _ in range(2)]
    perm = draw(st.permutations(labels))
    # arbitrary positive names, not necessarily 1..n
    names = draw(st.lists(st.integers(1, 50), min_size=n, max_size=n, unique=True))
    return tuple(names[c - 1] for c in perm)


def test_parse_roundtrip():
    code = parse_code("  3 3 7 7 ")
    assert code.word == (1, 1, 2, 2)
    assert render_text(code) == "1 1 2 2"


@pytest.mark.parametrize("text, exc", [
    ("1 1 x", MalformedToken),
    ("1 0 0 1", MalformedToken),
    ("1 2 1", OccurrenceError),      # a missing partner is reported before parity
    ("1 1 1", OccurrenceError),
    ("1 1 2 2 2 2", OccurrenceError),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_code(text)


def test_constructor_checks_parity_first():
    with pytest.raises(OddLength):
        GaussCode((1, 1, 1))


def test_empty_word():
    assert parse_code("").n == 0
    assert canonical_code(GaussCode(())).word == ()


def test_canonical_examples():
    assert canonical_code(GaussCode((1, 2, 2, 1))).word == (1, 1, 2, 2)
    assert canonical_code(GaussCode((1, 2, 3, 1, 2, 3))).word == (1, 2, 3, 1, 2, 3)


def test_enumeration_counts():
    # chord diagrams up to rotation and reflection
    assert [len(enumerate_words(n)) for n in range(6)] == [1, 1, 2, 5, 17, 79]


def test_enumeration_matches_brute_force():
    for n in range(5):
        brute = {canonical_code(GaussCode(w)).word for w in all_words(n)}
        assert sorted(brute) == [c.word for c in enumerate_words(n)]


def test_enumeration_limit():
    with pytest.raises(LimitExceeded):
        enumerate_words(9)
    with pytest.raises(LimitExceeded):
        enumerate_words(3, max_crossings=2)


@given(words())
def test_canonical_invariant_under_symmetries(word):
    canon = canonical_code(GaussCode(word)).word
    for _, _, image in symmetry_images(word):
        assert canonical_code(GaussCode(image)).word == canon


@given(words())
def test_canonical_idempotent_and_minimal(word):
    c = canonical_code(GaussCode(word))
    assert canonical_code(c.code).word == c.word
    assert all(c.word <= normalize(img)[0] for _, _, img in symmetry_images(word))


@given(words())
def test_provenance_reproduces_canonical(word):
    c = canonical_code(GaussCode(word))
    p = c.provenance
    base = tuple(reversed(word)) if p.reflected else tuple(word)
    image = base[p.offset:] + base[:p.offset]
    assert tuple(p.relabel[a] for a in image) == c.word


@settings(max_examples=50)
@given(words(max_n=4))
def test_interlacing_is_symmetric_and_invariant(word):
    code = GaussCode(word)
    canon = canonical_code(code)
    labels = sorted(set(word))
    for a in labels:
        for b in labels:
            if a == b:
                continue
            assert interlaced(code, a, b) == interlaced(code, b, a)
            ra, rb = canon.provenance.relabel[a], canon.provenance.relabel[b]
            assert interlaced(code, a, b) == interlaced(canon.code, ra, rb)
