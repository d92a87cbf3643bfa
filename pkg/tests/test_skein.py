from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from penner.closed_forms import f
from penner.errors import InvalidInput, InvalidParameter
from penner.orientations import twist_and_click_params
from penner.polys import IntPoly, largest_real_root
from penner.skein import (
    NABLA,
    HalfLaurent,
    SignedCurveSystem,
    cycle_char_poly,
    cycle_diff_identity,
    cycle_diff_poly,
    doubled_cycle_system,
    doubled_enriched_system,
    enriched_alexander_diff,
    enriched_char_poly,
    enriched_diff_identity,
    h_alexander,
    homology_action,
    normalization_sign,
    torus_alexander,
    twist_and_click_homology,
)

laurents = st.dictionaries(st.integers(-8, 8), st.integers(-5, 5), max_size=5).map(HalfLaurent)


def test_half_laurent_basics():
    u = HalfLaurent({1: 1})
    assert u * u.invert() == HalfLaurent({0: 1})
    assert NABLA == u - u.invert()
    assert (NABLA**2).terms == {2: 1, 0: -2, -2: 1}
    assert HalfLaurent({3: 0}) == HalfLaurent()


@settings(max_examples=60, deadline=None)
@given(laurents, laurents, laurents)
def test_half_laurent_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == HalfLaurent()


def test_half_laurent_json():
    p = HalfLaurent({-3: 2, 5: -7})
    assert HalfLaurent.from_json(p.to_json()) == p


def test_torus_alexander():
    assert torus_alexander(0) == HalfLaurent()
    assert torus_alexander(1) == HalfLaurent({1: 1, -1: -1})
    assert torus_alexander(2) == HalfLaurent({3: 1, -3: -1, 1: -1, -1: 1})
    assert all(torus_alexander(i).is_antisymmetric() for i in range(8))
    with pytest.raises(InvalidParameter):
        torus_alexander(-1)


def test_torus_alexander_consecutive_sum():
    for i in range(1, 8):
        assert torus_alexander(i + 1) + torus_alexander(i) == HalfLaurent({2 * i + 1: 1, -2 * i - 1: -1})


def test_h_alexander_symmetric():
    for d in range(0, 12, 2):
        assert h_alexander(d).is_symmetric()
    with pytest.raises(InvalidParameter):
        h_alexander(3)


@pytest.mark.parametrize("d", range(0, 11, 2))
def test_cycle_diff_identity_against_h_links(d):
    assert cycle_diff_identity(d, check=True) == NABLA * HalfLaurent({d + 1: 1, -d - 1: -1})


def test_enriched_alexander_diff():
    assert enriched_alexander_diff(0) == -(NABLA**3) * HalfLaurent({1: 1, -1: -1})


def test_signed_curve_system_validation():
    with pytest.raises(InvalidInput):
        SignedCurveSystem(2, ((0, 1), (1, 0)), (1, 1), (0, 1))
    with pytest.raises(InvalidInput):
        SignedCurveSystem(2, ((0, 1), (-1, 0)), (1, 2), (0, 1))


@pytest.mark.parametrize("system", [doubled_cycle_system, doubled_enriched_system])
def test_homology_action_preserves_pairing(system):
    sys = system(8, 2)
    m = homology_action(sys).to_numpy().astype(float)
    j = np.array(sys.pairing, dtype=float)
    assert np.allclose(m.T @ j @ m, j)


@pytest.mark.parametrize("l", [4, 6, 8, 10])
def test_cycle_identity_exact(l):
    for d in range(0, l - 3, 2):
        cycle_diff_poly(d, l, check=True)
        enriched_diff_identity(d, l, check=True)


def test_identity_rhs_shape():
    t = IntPoly.t()
    assert cycle_diff_poly(0, 6) == (t - 1) * (t**3 - t**2)
    assert enriched_diff_identity(2, 8) == (t - 1) ** 3 * (t**5 - t**2)
    with pytest.raises(InvalidParameter):
        cycle_diff_poly(1, 6)
    with pytest.raises(InvalidParameter):
        cycle_diff_poly(0, 7)


@pytest.mark.parametrize("l", [4, 6, 8, 10])
def test_homological_char_polys_palindromic_monic(l):
    for d in range(0, l - 1, 2):
        p = cycle_char_poly(d, l)
        assert p.lc == 1 and p.is_palindromic()
        assert enriched_char_poly(d, l).lc == 1


def test_normalization_signs():
    assert normalization_sign(False) == 1
    assert normalization_sign(True) == -1
    assert normalization_sign(False, 8) == 1
    assert normalization_sign(True, 8) == -1


@pytest.mark.parametrize("l,d", [(3, 1), (5, 1), (5, 3), (7, 3), (9, 5)])
def test_lifted_root_matches_base_dilatation(l, d):
    r = largest_real_root(cycle_char_poly(2 * d, 2 * l)).approx
    assert r == pytest.approx(f(d, l), rel=1e-10)


def test_twist_and_click_homology_power_spectrum():
    for l, c in [(5, 2), (7, 3), (7, 1)]:
        _, _, rt = twist_and_click_homology(l, c)
        p = rt.to_numpy().astype(float)
        rho = max(abs(np.linalg.eigvals(np.linalg.matrix_power(p, l))))
        d = twist_and_click_params(l, c)[1]
        assert rho == pytest.approx(f(d, l), rel=1e-8)
