import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from holder_resolvent import (DualVector, InputError, LpSpace, PrimalVector, bregman_phi,
                              dual_norm, duality_map, inverse_duality_map, norm, pairing)

P15 = LpSpace(2, 1.5)
P2 = LpSpace(2, 2.0)
C = 2.0 ** (1.0 / 3.0)


def pv(coords, space=P15):
    return PrimalVector(np.array(coords, dtype=float), space)


def dv(coords, space=P15):
    return DualVector(np.array(coords, dtype=float), space)


def mp_norm(x, p):
    with mpmath.workdps(40):
        return float(mpmath.fsum(abs(mpmath.mpf(v)) ** p for v in x) ** (1 / mpmath.mpf(p)))


# space descriptor

def test_conjugate_exponent():
    for p in (1.1, 1.5, 2.0, 3.0, 7.0):
        s = LpSpace(4, p)
        assert abs(1 / s.p + 1 / s.p_conj - 1) < 1e-12
        assert s.q_smooth == min(p, 2.0)
        assert s.in_theorem_regime == (p <= 2)


@pytest.mark.parametrize("dim,p", [(0, 1.5), (2, 1.0), (2, 0.5), (2, math.inf), (2, math.nan)])
def test_invalid_space(dim, p):
    with pytest.raises(InputError):
        LpSpace(dim, p)


def test_k_est_does_not_affect_equality():
    assert P15.with_K_est(0.5) == P15


# norms and pairing, spec examples

def test_norm_examples():
    assert norm(pv([3, 4], P2)) == 5.0
    assert norm(pv([1, 1])) == pytest.approx(2 ** (2 / 3), rel=1e-14)
    assert norm(pv([1, 1])) == pytest.approx(mp_norm([1, 1], 1.5), rel=1e-14)
    assert norm(pv([0, 0])) == 0.0


def test_dual_norm_examples():
    assert dual_norm(dv([3, 4], P2)) == 5.0
    assert dual_norm(dv([C, C])) == pytest.approx(1.587401, abs=1e-6)
    assert dual_norm(dv([C, C])) == pytest.approx(norm(pv([1, 1])), rel=1e-14)
    assert dual_norm(dv([0, 0])) == 0.0


def test_pairing_examples():
    assert pairing(pv([1, 1]), dv([C, C])) == pytest.approx(2.519842, abs=1e-6)
    assert pairing(pv([1, 1]), dv([C, C])) == pytest.approx(norm(pv([1, 1])) ** 2, rel=1e-14)
    assert pairing(pv([1, 0]), dv([0, 5])) == 0.0
    assert pairing(pv([1, 2]), dv([3, 4])) == 11.0


def test_pairing_space_mismatch():
    with pytest.raises(InputError):
        pairing(pv([1, 1]), dv([1, 1], P2))


@pytest.mark.parametrize("bad", [[np.nan, 1.0], [np.inf, 0.0], [1.0, 2.0, 3.0]])
def test_vector_validation(bad):
    with pytest.raises(InputError):
        pv(bad)


def test_norm_rejects_dual_vector():
    with pytest.raises(InputError):
        norm(dv([1, 1]))


# duality map

def test_duality_map_examples():
    np.testing.assert_array_equal(duality_map(pv([3, 4], P2)).coords, [3, 4])
    np.testing.assert_allclose(duality_map(pv([1, 1])).coords, [1.259921, 1.259921], atol=1e-6)
    np.testing.assert_allclose(duality_map(pv([1, 1])).coords, [C, C], rtol=1e-14)
    for p in (1.1, 1.5, 3.0):
        assert not np.any(duality_map(pv([0, 0], LpSpace(2, p))).coords)


def test_inverse_duality_map_examples():
    np.testing.assert_array_equal(inverse_duality_map(dv([3, 4], P2)).coords, [3, 4])
    np.testing.assert_allclose(inverse_duality_map(dv([C, C])).coords, [1, 1], rtol=1e-14)
    assert not np.any(inverse_duality_map(dv([0, 0])).coords)


def test_duality_map_zero_coordinates_are_finite():
    s = LpSpace(4, 1.1)
    x = np.array([0.0, 1e-300, -2.0, 0.0])
    jx = s.duality_map(x)
    assert np.all(np.isfinite(jx))
    assert jx[0] == 0.0 and jx[3] == 0.0


def test_defining_property_on_samples(space, rng):
    x = rng.standard_normal((10_000, space.dim)) * np.exp(rng.uniform(-5, 5, (10_000, 1)))
    jx = space.duality_map(x)
    n = space.norm(x)
    assert np.all(np.abs(space.pairing(x, jx) - n ** 2) <= 1e-10 * np.maximum(1, n ** 2))
    assert np.all(np.abs(space.dual_norm(jx) - n) <= 1e-10 * np.maximum(1, n))
    back = space.inverse_duality_map(jx)
    assert np.all(space.norm(back - x) <= 1e-9 * n)


def test_duality_map_against_mpmath(space, rng):
    x = rng.standard_normal(space.dim)
    with mpmath.workdps(40):
        p = mpmath.mpf(space.p)
        nx = mpmath.fsum(abs(mpmath.mpf(v)) ** p for v in x) ** (1 / p)
        ref = [float(nx ** (2 - p) * abs(mpmath.mpf(v)) ** (p - 1) * mpmath.sign(v)) for v in x]
    np.testing.assert_allclose(space.duality_map(x), ref, rtol=1e-13)


def test_support_functional_has_unit_norm(space, rng):
    x = rng.standard_normal((100, space.dim))
    j = space.support_functional(x)
    np.testing.assert_allclose(space.dual_norm(j), 1.0, rtol=1e-12)
    np.testing.assert_allclose(space.pairing(x, j), space.norm(x), rtol=1e-12)
    assert not np.any(space.support_functional(np.zeros(space.dim)))


finite = st.floats(-1e3, 1e3, allow_nan=False, allow_subnormal=False)
exps = st.sampled_from([1.1, 1.3, 1.5, 2.0, 2.5, 4.0])


@given(p=exps, x=arrays(float, 3, elements=finite), lam=st.floats(-1e3, 1e3))
def test_duality_map_homogeneous(p, x, lam):
    s = LpSpace(3, p)
    lhs = s.duality_map(lam * x)
    rhs = lam * s.duality_map(x)
    assert np.all(np.abs(lhs - rhs) <= 1e-10 * np.maximum(1.0, np.abs(rhs).max()))


@given(p=exps, x=arrays(float, 3, elements=finite), y=arrays(float, 3, elements=finite))
def test_duality_map_monotone(p, x, y):
    s = LpSpace(3, p)
    m = s.pairing(x - y, s.duality_map(x) - s.duality_map(y))
    assert m >= -1e-12 * max(1.0, s.norm(x) ** 2 + s.norm(y) ** 2)


@given(p=exps, x=arrays(float, 3, elements=finite), u=arrays(float, 3, elements=finite))
def test_hoelder_inequality(p, x, u):
    s = LpSpace(3, p)
    assert abs(s.pairing(x, u)) <= s.norm(x) * s.dual_norm(u) * (1 + 1e-12) + 1e-300


# Bregman distance

def test_bregman_examples():
    assert bregman_phi(pv([1, 1]), pv([1, 1])) == 0.0
    assert bregman_phi(pv([1, 0], P2), pv([0, 1], P2)) == 2.0
    expected = 2 ** (4 / 3) - 2 + 1
    assert expected == pytest.approx(1.519842, abs=1e-6)
    assert bregman_phi(pv([1, 1]), pv([1, 0])) == pytest.approx(expected, rel=1e-13)


def test_bregman_space_mismatch():
    with pytest.raises(InputError):
        bregman_phi(pv([1, 1]), pv([1, 1], P2))


def mp_phi(x, y, p):
    with mpmath.workdps(60):
        p = mpmath.mpf(p)
        x = [mpmath.mpf(v) for v in x]
        y = [mpmath.mpf(v) for v in y]
        nx = mpmath.fsum(abs(v) ** p for v in x) ** (1 / p)
        ny = mpmath.fsum(abs(v) ** p for v in y) ** (1 / p)
        jy = [ny ** (2 - p) * abs(v) ** (p - 1) * mpmath.sign(v) if v else 0 for v in y]
        return nx ** 2 - 2 * mpmath.fsum(a * b for a, b in zip(x, jy)) + ny ** 2


def test_bregman_near_pairs_against_mpmath(space, rng):
    # cancellation regime: y within 1e-7 of x
    x = rng.standard_normal(space.dim)
    for eps in (1e-3, 1e-5, 1e-7):
        y = x + eps * rng.standard_normal(space.dim)
        ref = float(mp_phi(x, y, space.p))
        assert space.bregman_phi(x, y) == pytest.approx(ref, rel=1e-8, abs=1e-13 * space.norm(x) ** 2)


@given(p=exps, x=arrays(float, 3, elements=finite), y=arrays(float, 3, elements=finite))
def test_bregman_two_sided_bound(p, x, y):
    s = LpSpace(3, p)
    phi = s.bregman_phi(x, y)
    nx, ny = s.norm(x), s.norm(y)
    scale = 1e-12 * (nx + ny) ** 2 + 1e-300
    assert phi >= (nx - ny) ** 2 - scale
    assert phi <= (nx + ny) ** 2 + scale
    assert s.bregman_phi(x, x) <= scale


def test_hilbert_degeneracy(rng):
    s = LpSpace(5, 2.0)
    x, y = rng.standard_normal((2, 200, 5))
    np.testing.assert_array_equal(s.duality_map(x), x)
    np.testing.assert_allclose(s.bregman_phi(x, y), s.norm(x - y) ** 2, rtol=1e-12)


def test_vectors_are_immutable():
    v = pv([1, 2])
    with pytest.raises(ValueError):
        v.coords[0] = 5.0


@pytest.mark.parametrize("p", [1.1, 1.5, 2.5, 4.0])
def test_bregman_wide_dynamic_range(p):
    # coordinates spread over ~180 decades; both the split and direct forms are exercised
    s = LpSpace(3, p)
    rng = np.random.default_rng(int(p * 10))
    for _ in range(200):
        x, y = rng.standard_normal((2, 3)) * np.exp(rng.uniform(-90, 90, (2, 3)) * rng.integers(0, 2, (2, 3)))
        scale = s.norm(x) ** 2 + s.norm(y) ** 2
        ref = float(mp_phi(x, y, p))
        assert abs(s.bregman_phi(x, y) - ref) <= 1e-12 * scale
