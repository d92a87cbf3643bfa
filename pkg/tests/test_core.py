from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from penner.core import (
    BigMatrix,
    apply_word,
    certified_dilatation,
    certified_spectral_radius,
    char_poly,
    collatz_wielandt,
    is_irreducible,
    is_primitive,
    pf_eigenpair,
    spectral_radius_float,
    twist_matrix,
    word_char_poly,
    word_matrix,
)
from penner.errors import NotPerronFrobenius, ResourceLimit
from penner.graphs import IntersectionGraph, cycle_graph, enriched_cycle_graph
from penner.orientations import TwistWord, canonical_word

# high-precision reference values from an independent dense-product eigen solve
MU3 = 6.9960242237228209769088874017846360817062566309345
MU5 = 6.4524553732158894741221645042265663139637861480538


def test_twist_matrix_example():
    m = twist_matrix(cycle_graph(3), 0)
    assert m.rows == ((1, 1, 1), (0, 1, 0), (0, 0, 1))


def test_twist_matrix_double_edge():
    g = IntersectionGraph.from_edges(2, [(0, 1, 2)])
    assert twist_matrix(g, 1).rows == ((1, 0), (2, 1))


def test_word_matrix_is_product_first_twist_rightmost():
    g = enriched_cycle_graph(5)
    w = canonical_word(5, 1, enriched=True)
    ref = BigMatrix.identity(g.n)
    for i in w.order:
        ref = twist_matrix(g, i) @ ref
    assert word_matrix(w) == ref


def test_word_matrix_determinant_one():
    for l in (3, 5, 7):
        assert word_matrix(canonical_word(l, 1)).determinant() == 1


def test_apply_word_matches_matvec():
    w = canonical_word(7, 3)
    x = list(range(1, 8))
    assert apply_word(w, x) == list(word_matrix(w).matvec(x))


def test_primitivity():
    assert is_primitive(word_matrix(canonical_word(5, 1)))
    assert not is_primitive(BigMatrix(((0, 1), (1, 0))))
    assert is_irreducible(BigMatrix(((0, 1), (1, 0))))
    assert not is_irreducible(BigMatrix(((1, 1), (0, 1))))
    with pytest.raises(NotPerronFrobenius):
        spectral_radius_float(BigMatrix(((0, 1), (1, 0))))


def test_char_poly_small():
    p = char_poly(BigMatrix(((2, 1), (1, 1))))
    assert p.coeffs == (1, -3, 1)
    with pytest.raises(ResourceLimit):
        char_poly(BigMatrix.identity(3), limit=2)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_char_poly_matches_numpy(rows):
    m = BigMatrix(tuple(map(tuple, rows)))
    ref = np.poly(np.array(rows, dtype=float))[::-1]
    assert np.allclose([float(c) for c in char_poly(m).coeffs], ref, atol=1e-6 * max(1, np.abs(ref).max()))


def test_word_char_poly_matches_faddeev_leverrier():
    rng = random.Random(7)
    for g in (cycle_graph(5), enriched_cycle_graph(7), cycle_graph(8)):
        for _ in range(5):
            perm = list(range(g.n))
            rng.shuffle(perm)
            w = TwistWord(g, tuple(perm))
            assert word_char_poly(w) == char_poly(word_matrix(w))


def test_word_char_poly_depends_only_on_orientation():
    g = IntersectionGraph.from_edges(4, [(0, 1, 2), (1, 2), (2, 3), (3, 0)])
    seen = {}
    for perm in itertools.permutations(range(4)):
        w = TwistWord(g, perm)
        pos = w.position()
        key = tuple(pos[a] < pos[b] for a, b, _ in g.edges())
        seen.setdefault(key, set()).add(word_matrix(w))
    assert all(len(v) == 1 for v in seen.values())


def test_spectral_radius_matches_numpy():
    for l, d in [(3, 1), (5, 3), (7, 5)]:
        m = word_matrix(canonical_word(l, d))
        ref = max(abs(np.linalg.eigvals(m.to_numpy().astype(float))))
        assert spectral_radius_float(m) == pytest.approx(ref, rel=1e-10)


def test_pf_eigenpair():
    m = word_matrix(canonical_word(5, 1, enriched=True))
    lam, y = pf_eigenpair(m)
    assert lam == pytest.approx(MU5, rel=1e-12)
    assert y.max() == pytest.approx(1.0)
    assert np.abs(m.to_numpy() @ y - lam * y).max() < 1e-9


def test_collatz_wielandt_brackets():
    m = word_matrix(canonical_word(5, 1))
    lo, hi = collatz_wielandt(m, [1] * 5)
    lam = spectral_radius_float(m)
    assert lo <= lam <= hi


def test_certified_bracket_contains_reference():
    lo, hi = certified_spectral_radius(canonical_word(3, 1, enriched=True), 40)
    assert hi - lo <= Fraction(1, 10**40) * lo
    ref = Fraction("6.9960242237228209769088874017846360817062566309345")
    assert lo - Fraction(1, 10**45) <= ref <= hi + Fraction(1, 10**45)


def test_certified_dilatation_is_char_poly_root():
    w = canonical_word(5, 1, enriched=True)
    ar = certified_dilatation(w, 30)
    assert ar.poly == word_char_poly(w)
    assert abs(ar.approx - MU5) < 1e-14
    assert ar.width() < Fraction(1, 10**28)
