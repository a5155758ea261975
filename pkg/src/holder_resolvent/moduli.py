"""Moduli of smoothness and convexity: analytic ceilings and sampled estimates.

A sampled supremum can only under-shoot, so smoothness estimates are lower
bounds of rho_E; a sampled infimum can only over-shoot, so convexity
estimates are upper bounds of delta_E.
"""

from __future__ import annotations

import numpy as np

from .geometry import LpSpace
from .sampling import SamplerConfig, sample_sphere, substream

ASCENT_STEPS = 50
ASCENT_STEP = 1e-2
ASCENT_SHRINK = 0.5
_REFINE_TOP = 8
_BISECT_ITERS = 64


def rho_ceiling(space: LpSpace, tau):
    """Analytic upper bound for the modulus of smoothness.

    ``sqrt(1 + tau^2) - 1`` at p = 2 (exact), ``tau^p / p`` for 1 < p < 2.
    Outside the theorem regime the bound ``tau`` (always valid) is returned.
    """
    tau = np.asarray(tau, dtype=float)
    if space.p == 2.0:
        # sqrt(1 + tau^2) - 1 without cancellation at small tau
        return tau * tau / (np.hypot(1.0, tau) + 1.0)
    if space.p < 2.0:
        return tau ** space.p / space.p
    return tau


def rho_exact_lp(p: float, tau):
    """Modulus of smoothness of l_p^n for n >= 2 (Lindenstrauss' formulas).

    ``(1 + tau^p)^(1/p) - 1`` for 1 < p <= 2 and
    ``((|1+tau|^p + |1-tau|^p)/2)^(1/p) - 1`` for p >= 2.
    """
    tau = np.asarray(tau, dtype=float)
    if p <= 2.0:
        return np.expm1(np.log1p(tau ** p) / p)
    return (0.5 * (np.abs(1 + tau) ** p + np.abs(1 - tau) ** p)) ** (1.0 / p) - 1.0


def smoothness_ceiling_constant(space: LpSpace) -> float:
    """K with rho_E(tau) <= K tau^q for all tau: 1/2 at p = 2, 1/p below."""
    return 1.0 / space.q_smooth


def _smoothness_objective(space, x, y, tau):
    return 0.5 * (space.norm(x + tau * y) + space.norm(x - tau * y)) - 1.0


def _coordinate_refine(objective, states, project, steps=ASCENT_STEPS, step=ASCENT_STEP,
                       shrink=ASCENT_SHRINK):
    """Projected coordinate ascent on several candidate states at once.

    ``states`` is a tuple of arrays of shape (k, n) and ``project`` maps a
    list of such blocks back onto their constraint sets.  Every coordinate
    of every block is tried at +-step; the best move is kept when it
    improves, otherwise that candidate's step shrinks.
    """
    states = [s.copy() for s in states]
    k, n = states[0].shape
    nb = len(states)
    value = objective(*states)
    h = np.full(k, float(step))
    eye = np.eye(n)
    for _ in range(steps):
        trials = []
        for b in range(nb):
            for sign in (1.0, -1.0):
                moved = [np.repeat(s[:, None, :], n, axis=1) for s in states]
                moved[b] = moved[b] + sign * h[:, None, None] * eye[None]
                trials.append(moved)
        cand = [np.concatenate([t[b] for t in trials], axis=1) for b in range(nb)]
        cand = project(cand)
        vals = objective(*cand)
        best = np.argmax(vals, axis=1)
        bestval = vals[np.arange(k), best]
        better = bestval > value
        for b in range(nb):
            states[b][better] = cand[b][better, best[better]]
        value = np.where(better, bestval, value)
        h = np.where(better, h, h * shrink)
    return states, value


def modulus_smoothness_estimate(space: LpSpace, tau: float, sampler: SamplerConfig,
                                steps: int = ASCENT_STEPS) -> float:
    """Lower estimate of rho_E(tau) from random unit pairs plus local ascent.

    ``sampler.count`` pairs are drawn on the unit sphere; the best few are
    refined by projected coordinate ascent.  The seed stream does not depend
    on ``tau``, so on a fixed sampler the raw sampled values are
    nondecreasing in tau (each pair's objective is).
    """
    tau = float(tau)
    if not tau > 0:
        raise ValueError("tau must be positive")
    rng = substream(sampler.seed, "modulus_smoothness")
    x = sample_sphere(space, rng, sampler.count)
    y = sample_sphere(space, rng, sampler.count)
    val = _smoothness_objective(space, x, y, tau)
    top = np.argsort(val)[::-1][:_REFINE_TOP]

    def objective(a, b):
        return _smoothness_objective(space, a, b, tau)

    def project(blocks):
        return [blk / space.norm(blk)[..., None] for blk in blocks]

    (_, _), refined = _coordinate_refine(objective, (x[top], y[top]), project, steps=steps)
    return float(max(val.max(), refined.max(), 0.0))


def modulus_smoothness_table(space: LpSpace, taus, sampler: SamplerConfig) -> np.ndarray:
    """Estimates on a grid of tau, made nondecreasing by a running maximum.

    The running maximum is still a valid lower bound because rho_E itself
    is nondecreasing.
    """
    taus = np.asarray(taus, dtype=float)
    order = np.argsort(taus)
    est = np.array([modulus_smoothness_estimate(space, t, sampler) for t in taus[order]])
    est = np.maximum.accumulate(est)
    out = np.empty_like(est)
    out[order] = est
    return out


def _max_midpoint(space, v, d):
    """Largest s >= 0 with ||s v + d|| <= 1 and ||s v - d|| <= 1 (bisection)."""
    lo = np.zeros(v.shape[:-1])
    hi = np.ones(v.shape[:-1])
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        sv = mid[..., None] * v
        ok = (space.norm(sv + d) <= 1.0) & (space.norm(sv - d) <= 1.0)
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
    return lo


def modulus_convexity_estimate(space: LpSpace, eps: float, sampler: SamplerConfig,
                               steps: int = ASCENT_STEPS) -> float:
    """Upper estimate of delta_E(eps) over pairs in the unit ball at distance eps.

    Pairs are parameterized as x = s v + d, y = s v - d with ||d|| = eps/2 and
    ||v|| = 1; for each (v, d) the largest feasible s is found by bisection,
    so ``1 - s`` is the value 1 - ||x + y||/2 of a feasible pair.
    """
    eps = float(eps)
    if not 0 < eps <= 2:
        raise ValueError("eps must lie in (0, 2]")
    rng = substream(sampler.seed, "modulus_convexity")
    v = sample_sphere(space, rng, sampler.count)
    d = 0.5 * eps * sample_sphere(space, rng, sampler.count)
    val = 1.0 - _max_midpoint(space, v, d)
    top = np.argsort(val)[:_REFINE_TOP]

    def objective(a, b):
        return _max_midpoint(space, a, b) - 1.0

    def project(blocks):
        a, b = blocks
        return [a / space.norm(a)[..., None], 0.5 * eps * b / space.norm(b)[..., None]]

    (_, _), refined = _coordinate_refine(objective, (v[top], d[top]), project, steps=steps)
    return float(max(min(val.min(), -refined.max()), 0.0))


def smoothness_constant_estimate(space: LpSpace, tau_grid, sampler: SamplerConfig) -> float:
    """max over the grid of rho-estimate(tau) / tau^q, an empirical lower estimate of K."""
    taus = np.atleast_1d(np.asarray(tau_grid, dtype=float))
    if taus.size == 0:
        raise ValueError("tau grid is empty")
    if np.any(taus <= 0):
        raise ValueError("tau values must be positive")
    est = np.array([modulus_smoothness_estimate(space, t, sampler) for t in taus])
    return float(np.max(est / taus ** space.q_smooth))
