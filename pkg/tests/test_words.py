import random

import pytest
from hypothesis import given, strategies as st

from sunadacheck.words import (GENUS2_RELATOR, SUBSURFACE, SURFACE, CyclicWord, Endomorphism,
                               HomologyClass, Word, WordSyntaxError, abelianize, cyclic_reduce,
                               format_word, free_reduce, letter_inverse, parse_word,
                               surface_conjugate)

letters = st.tuples(st.sampled_from("abcd"), st.sampled_from([1, -1]))
words = st.lists(letters, max_size=14).map(lambda ls: Word(tuple(ls)))


def L(text, alphabet=SURFACE):
    return parse_word(text, alphabet).letters


def test_parse_alpha_with_commutator():
    assert L("a b d [d,c^-1] d^-1") == L("a b d d c^-1 d^-1 c d^-1")


def test_parse_trivial_cases():
    assert len(parse_word("")) == 0
    assert L("a^-2") == (("a", -1), ("a", -1))
    assert L("a^3") == (("a", 1),) * 3


def test_parse_error_reports_position():
    with pytest.raises(WordSyntaxError) as exc:
        parse_word("a b q", SURFACE)
    assert exc.value.position == 4


def test_free_and_cyclic_reduction_examples():
    assert free_reduce(parse_word("a a^-1 b")).letters == (("b", 1),)
    assert cyclic_reduce(parse_word("b^-1 a b")).letters == (("a", 1),)
    alpha = parse_word("a b d [d,c^-1] d^-1", SURFACE)
    assert free_reduce(alpha) == alpha and len(alpha) == 8


def test_involution_examples(cfg, alpha_sub):
    tau = cfg.tau()
    assert tau(parse_word("a")) == parse_word("a^-1")
    expected = parse_word("a^-1 b^-1 b^-1 x^-1 b a^-1 b^-1 a x b", SUBSURFACE)
    assert cfg.tau_sub()(alpha_sub) == expected


@given(words)
def test_identity_endomorphism_reduces(w):
    assert Endomorphism.identity()(w) == free_reduce(w)


def test_abelianize_examples(cfg, alpha):
    assert abelianize(alpha, SURFACE).as_dict() == {"a": 1, "b": 1, "c": 0, "d": 0}
    assert abelianize(Word(()), SURFACE).as_dict() == {g: 0 for g in "abcd"}
    assert abelianize(cfg.tau()(alpha), SURFACE).as_dict() == {"a": -1, "b": -1, "c": 0, "d": 0}


def random_cancellation(w: Word, rng: random.Random) -> tuple:
    """Reduce by cancelling a randomly chosen adjacent inverse pair each step."""
    ls = list(w.letters)
    while True:
        spots = [i for i in range(len(ls) - 1) if ls[i + 1] == letter_inverse(ls[i])]
        if not spots:
            return tuple(ls)
        i = rng.choice(spots)
        del ls[i:i + 2]


def test_reduction_confluence_randomized():
    rng = random.Random(11)
    for _ in range(1000):
        n = rng.randrange(0, 20)
        w = Word(tuple((rng.choice("ab"), rng.choice((1, -1))) for _ in range(n)))
        assert random_cancellation(w, rng) == free_reduce(w).letters


@given(words)
def test_parse_format_round_trip(w):
    assert parse_word(format_word(w)).letters == w.letters


@given(words, words)
def test_abelianize_is_additive(u, v):
    assert abelianize(u + v, SURFACE) == abelianize(u, SURFACE) + abelianize(v, SURFACE)
    assert abelianize(u.inverse(), SURFACE) == -abelianize(u, SURFACE)


@given(words, words)
def test_endomorphism_respects_concatenation(u, v):
    phi = Endomorphism.from_strings({"a": "b a", "b": "a^-1", "c": "c d", "d": "c^-1"}, SURFACE)
    assert phi(u + v) == free_reduce(phi(u) + phi(v))


@given(words)
def test_cyclic_word_is_rotation_invariant(w):
    w = free_reduce(w)
    c = cyclic_reduce(w)
    for r in c.rotations():
        assert CyclicWord(r.letters) == c
    assert c.inverse().inverse() == c


def test_surface_conjugate_examples():
    w = parse_word("a b a^-1 c", SURFACE)
    assert surface_conjugate(w, parse_word("b a^-1 c a", SURFACE), GENUS2_RELATOR)
    assert not surface_conjugate(parse_word("a"), parse_word("b"), GENUS2_RELATOR)
    # equal only modulo the relator: [a,b] = [c,d]^-1
    assert surface_conjugate(parse_word("[a,b]"), parse_word("d c d^-1 c^-1"), GENUS2_RELATOR)


def test_surface_conjugacy_is_reflexive_and_symmetric():
    rng = random.Random(3)
    for _ in range(30):
        w = free_reduce(Word(tuple((rng.choice("abcd"), rng.choice((1, -1))) for _ in range(6))))
        g = free_reduce(Word(tuple((rng.choice("abcd"), rng.choice((1, -1))) for _ in range(3))))
        v = free_reduce(g + w + g.inverse())
        assert surface_conjugate(w, w, GENUS2_RELATOR)
        assert surface_conjugate(w, v, GENUS2_RELATOR) == surface_conjugate(v, w, GENUS2_RELATOR) is True


@pytest.mark.xfail(strict=True, reason="the surface form of alpha and the expansion of its subsurface "
                   "form under x = d a^-1 are not conjugate; both are used as given")
def test_surface_and_subsurface_forms_are_conjugate(cfg, alpha, alpha_sub):
    expanded = Endomorphism({"x": parse_word("d a^-1", SURFACE)})(alpha_sub)
    assert surface_conjugate(alpha, expanded, GENUS2_RELATOR)


def test_homology_class_arithmetic():
    h = HomologyClass(SURFACE.names, (1, 2, 0, -1))
    assert (h + -h).as_dict() == {g: 0 for g in "abcd"}
