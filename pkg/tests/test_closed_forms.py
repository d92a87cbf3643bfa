from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from penner.closed_forms import (
    FlowPoint,
    companion_poly,
    conjectured_odd_limit,
    even_genus_min,
    even_genus_poly,
    f,
    silver_limit,
)
from penner.core import spectral_radius_float, word_matrix
from penner.errors import DomainError, InvalidParameter
from penner.orientations import canonical_word, twist_and_click_params
from penner.polys import largest_real_root

LIMIT = 6.0713602414689505037429960567715853380481116429308


def test_flow_point_domain():
    FlowPoint(1, 3)
    for x, y in [(3, 3), (0, 0), (1, -2), (-4, 3)]:
        with pytest.raises(DomainError):
            FlowPoint(x, y)
    with pytest.raises(DomainError):
        f(3, 3)


def test_f_example_values():
    assert f(1, 3) == pytest.approx(6.222263, abs=1e-6)
    assert f(1, 5) == pytest.approx(5.961091, abs=1e-6)
    assert f(3, 5) == pytest.approx(7.520478, abs=1e-6)


def test_f_accepts_flow_point():
    assert f(FlowPoint(3, 7)) == f(3, 7)


def test_f_even_and_homogeneous():
    assert f(-3, 7) == f(3, 7)
    assert f(2, 10) == pytest.approx(f(1, 5), rel=1e-12)


def test_f_at_zero_flow():
    # s = 0 gives t - 2 sqrt t - 1 = 0, sqrt t = 1 + sqrt 2
    assert f(0, 4) == pytest.approx((1 + math.sqrt(2)) ** 2, rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.01, 0.98), st.floats(0.5, 50))
def test_f_solves_defining_equation(r, y):
    x = r * y
    t = f(x, y)
    s = x / (2 * y)
    assert t - t ** (0.5 + s) - t ** (0.5 - s) - 1 == pytest.approx(0, abs=1e-8 * t)


def test_f_monotone_in_x():
    vals = [f(x / 10, 1) for x in range(10)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_f_approaches_silver_from_above():
    assert f(1, 101) > 3 + 2 * math.sqrt(2)
    assert f(1, 10001) - (3 + 2 * math.sqrt(2)) < 1e-2


@pytest.mark.parametrize("l,d", [(3, 1), (5, 1), (5, 3), (7, 1), (7, 3), (7, 5), (9, 7), (11, 5)])
def test_f_matches_cycle_pf(l, d):
    assert f(d, l) == pytest.approx(spectral_radius_float(word_matrix(canonical_word(l, d))), rel=1e-10)


def test_companion_poly():
    assert companion_poly(5, 2).coeffs == (-1, 0, -1, -1, 0, 1)
    assert companion_poly(3, 1).coeffs == (-1, -1, -1, 1)
    with pytest.raises(InvalidParameter):
        companion_poly(9, 3)


@pytest.mark.parametrize("l", [3, 5, 7, 9, 11])
def test_companion_root_matches_f(l):
    for c in range(1, l):
        if math.gcd(c, l) != 1:
            continue
        a, d = twist_and_click_params(l, c)
        if d <= -l or d >= l:
            continue
        r = largest_real_root(companion_poly(l, c)).approx
        assert r**l == pytest.approx(f(d, l), rel=1e-9)


def test_even_genus_poly():
    assert even_genus_poly(2).coeffs == (-1, -1, -1, 1)


def test_even_genus_min():
    assert even_genus_min(4).approx == pytest.approx(f(1, 3), rel=1e-12)
    lo, hi = even_genus_min(100, Fraction(1, 10**25)).interval()
    assert hi - lo <= Fraction(1, 10**25)
    for g in (3, 2, 7):
        with pytest.raises(InvalidParameter):
            even_genus_min(g)


def test_limits():
    assert silver_limit().approx == pytest.approx(3 + 2 * math.sqrt(2), abs=1e-15)
    lim = conjectured_odd_limit()
    lo, hi = lim.interval()
    ref = Fraction("6.0713602414689505037429960567715853380481116429308")
    assert lo - Fraction(1, 10**40) <= ref <= hi + Fraction(1, 10**40)
    assert hi - lo <= Fraction(1, 10**30)
