import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from sunadacheck.geodesic_oracle import (axes_cross, axis, disk_layout, geodesic_self_intersections,
                                         schottky_generators)
from sunadacheck.intersections import CALIBRATED_RIBBON, self_intersection_number
from sunadacheck.words import SUBSURFACE, CyclicWord, Word, parse_word

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def mobius(m, p: Fraction) -> Fraction:
    return (m.a * p + m.b) / (m.c * p + m.d)


def short_word_corpus(n=30, seed=7):
    rng = random.Random(seed)
    seen, out = set(), []
    while len(out) < n:
        k = rng.randint(2, 8)
        w = Word(tuple((rng.choice("abx"), rng.choice((1, -1))) for _ in range(k)))
        if not (w.is_reduced() and w.is_cyclically_reduced()):
            continue
        c = CyclicWord(w.letters, SUBSURFACE)
        if not c.is_primitive() or c in seen:
            continue
        seen.add(c)
        out.append(w)
    return out


@given(rationals, rationals, rationals, rationals)
def test_crossing_test_matches_endpoint_interleaving(p, q, r, s):
    assume(len({p, q, r, s}) == 4)
    a1, a2 = (p + q, p * q), (r + s, r * s)
    lo1, hi1 = sorted((p, q))
    lo2, hi2 = sorted((r, s))
    interleave = (lo1 < lo2 < hi1 < hi2) or (lo2 < lo1 < hi2 < hi1)
    assert axes_cross(a1, a2) == interleave


def test_generators_pair_the_disk_boundaries():
    disks = disk_layout(CALIBRATED_RIBBON)
    gens = schottky_generators(CALIBRATED_RIBBON)
    for (g, sign), m in gens.items():
        c_from, r_from = disks[(g, -sign)]
        c_to, r_to = disks[(g, sign)]
        for p in (c_from - r_from, c_from + r_from):
            assert abs(mobius(m, p) - c_to) == r_to


def test_axis_fixed_points():
    m = schottky_generators(CALIBRATED_RIBBON)[("a", 1)]
    sigma, pi = axis(m)
    # the fixed points solve c z^2 + (d - a) z - b = 0
    assert m.c * pi == -m.b and m.c * sigma == m.a - m.d


def test_oracle_on_alpha(alpha_sub):
    assert geodesic_self_intersections(alpha_sub) == 4


def test_oracle_rejects_powers_and_unreduced_words():
    with pytest.raises(ValueError):
        geodesic_self_intersections(parse_word("a b a b", SUBSURFACE))
    with pytest.raises(ValueError):
        geodesic_self_intersections(parse_word("a b a^-1", SUBSURFACE))


def test_combinatorial_count_agrees_with_oracle():
    corpus = short_word_corpus()
    assert len(corpus) >= 20
    for w in corpus:
        assert self_intersection_number(w) == geodesic_self_intersections(w), str(w)
