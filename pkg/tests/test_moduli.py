import numpy as np
import pytest

from holder_resolvent import LpSpace, SamplerConfig
from holder_resolvent.moduli import (modulus_convexity_estimate, modulus_smoothness_estimate,
                                     modulus_smoothness_table, rho_ceiling, rho_exact_lp,
                                     smoothness_ceiling_constant, smoothness_constant_estimate)

SAMPLER = SamplerConfig(seed=3, count=2000)
P2 = LpSpace(2, 2.0)
P15 = LpSpace(2, 1.5)


def test_rho_small_tau():
    for s in (P2, P15, LpSpace(3, 1.1)):
        assert modulus_smoothness_estimate(s, 1e-8, SAMPLER) <= 1e-8


def test_rho_hilbert_closed_form():
    assert modulus_smoothness_estimate(P2, 1.0, SAMPLER) == pytest.approx(np.sqrt(2) - 1, abs=1e-4)


def test_rho_below_lp_ceiling():
    est = modulus_smoothness_estimate(P15, 0.1, SAMPLER)
    assert est <= 0.1 ** 1.5 / 1.5 * (1 + 1e-6)
    assert 0.1 ** 1.5 / 1.5 == pytest.approx(0.021082, abs=1e-6)


@pytest.mark.parametrize("p", [1.1, 1.5, 2.0, 3.0])
def test_rho_estimate_approaches_exact_value(p):
    s = LpSpace(2, p)
    for tau in (0.1, 0.5, 1.0):
        est = modulus_smoothness_estimate(s, tau, SAMPLER)
        exact = float(rho_exact_lp(p, tau))
        assert est <= exact * (1 + 1e-9)
        assert est >= 0.95 * exact


def test_exact_rho_is_below_ceiling():
    tau = np.geomspace(1e-4, 2, 50)
    for p in (1.1, 1.5, 1.9, 2.0):
        assert np.all(rho_exact_lp(p, tau) <= rho_ceiling(LpSpace(2, p), tau) * (1 + 1e-12))


def test_rho_table_is_nondecreasing():
    taus = [0.5, 0.01, 1.0, 0.1, 2.0]
    est = modulus_smoothness_table(P15, taus, SAMPLER)
    order = np.argsort(taus)
    assert np.all(np.diff(est[order]) >= 0)


def test_rho_rejects_nonpositive_tau():
    with pytest.raises(ValueError):
        modulus_smoothness_estimate(P15, 0.0, SAMPLER)


def test_delta_hilbert():
    assert modulus_convexity_estimate(P2, 2.0, SAMPLER) == pytest.approx(1.0, abs=1e-6)
    assert modulus_convexity_estimate(P2, 1.0, SAMPLER) == pytest.approx(1 - np.sqrt(3) / 2, abs=1e-4)


def test_delta_small_eps():
    for s in (P2, P15, LpSpace(3, 3.0)):
        for eps in (1e-3, 1e-2):
            assert 0 <= modulus_convexity_estimate(s, eps, SAMPLER) <= eps / 2


@pytest.mark.parametrize("eps", [0.0, -1.0, 2.5])
def test_delta_rejects_out_of_range(eps):
    with pytest.raises(ValueError):
        modulus_convexity_estimate(P15, eps, SAMPLER)


def test_smoothness_constant():
    grid = np.geomspace(0.01, 2.0, 8)
    assert smoothness_constant_estimate(P2, grid, SAMPLER) <= 0.5 + 1e-3
    assert smoothness_constant_estimate(P15, grid, SAMPLER) <= 1 / 1.5 + 1e-3
    single = smoothness_constant_estimate(P15, [0.3], SAMPLER)
    assert single == pytest.approx(modulus_smoothness_estimate(P15, 0.3, SAMPLER) / 0.3 ** 1.5)
    assert smoothness_ceiling_constant(P15) == pytest.approx(1 / 1.5)


def test_smoothness_constant_empty_grid():
    with pytest.raises(ValueError):
        smoothness_constant_estimate(P15, [], SAMPLER)
