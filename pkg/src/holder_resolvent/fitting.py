"""Hoelder exponent fits on multiscale pair clouds.

The bounds are upper bounds, so the pass condition is that every point of
log10 ||F x - F y|| against log10 ||x - y|| lies on or below the line of
slope q - 1 through log10 L.  The least-squares slope is reported for
context only: at generic smooth points the local exponent is 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .checks import holder_constant
from .errors import InputError, RegimeError
from .geometry import LpSpace
from .inequalities import SLACK, main1_constant
from .operators import OperatorSpec
from .reports import InequalityReport
from .resolvent import DEFAULT_TOL, resolve_batch
from .sampling import SamplerConfig, project_ball, sample_ball, sample_sphere, substream

N_DISTANCES = 16
N_DIRECTIONS = 4
MIN_PAIRS = 10
MAPS = ("J", "resolvent")


@dataclass
class HolderFit:
    slope: float
    intercept: float
    r_squared: float
    n_pairs: int
    scale_range: tuple[float, float]
    exponent: float = float("nan")
    log10_L: float = float("nan")
    max_excess: float = float("nan")
    excluded: int = 0
    points: dict = field(default_factory=dict, repr=False)

    @property
    def below_line(self) -> bool:
        return self.max_excess <= math.log10(1.0 + SLACK)

    def summary(self) -> dict:
        return {"slope": self.slope, "intercept": self.intercept, "r_squared": self.r_squared,
                "n_pairs": self.n_pairs, "scale_range": list(self.scale_range),
                "exponent": self.exponent, "log10_L": self.log10_L,
                "max_excess": self.max_excess, "below_line": self.below_line,
                "excluded": self.excluded}


def multiscale_pairs(space: LpSpace, sampler: SamplerConfig, task: str = "holder_fit"):
    """Pairs around base points at distances log-spaced over ``scale_decades``.

    The first base points are R/2 e_1 (most zero coordinates) and R/2 times
    the normalized all-ones vector; each base gets two random and two axis
    directions.  Returns (X, Y, base_id).
    """
    rng = substream(sampler.seed, task)
    R = sampler.radius
    per_base = N_DISTANCES * N_DIRECTIONS
    n_base = max(1, sampler.count // per_base)
    special = [np.eye(space.dim)[0]]
    if space.dim > 1:
        special.append(np.ones(space.dim))
    special = np.array(special)
    special = 0.5 * R * special / space.norm(special)[:, None]
    bases = np.concatenate([special, sample_ball(space, rng, max(0, n_base - len(special)), R,
                                                 sparsity=0.3)])[:n_base]
    lo, hi = sampler.scale_decades
    dists = R * np.logspace(lo, hi, N_DISTANCES)
    xs, ys, ids = [], [], []
    for b, x in enumerate(bases):
        dirs = sample_sphere(space, rng, N_DIRECTIONS)
        axes = rng.integers(0, space.dim, size=N_DIRECTIONS // 2)
        signs = rng.choice([-1.0, 1.0], size=N_DIRECTIONS // 2)
        dirs[N_DIRECTIONS // 2:] = 0.0
        dirs[np.arange(N_DIRECTIONS // 2, N_DIRECTIONS), axes] = signs
        step = (dists[None, :, None] * dirs[:, None, :]).reshape(-1, space.dim)
        xs.append(np.repeat(x[None], len(step), 0))
        ys.append(project_ball(space, x + step, R))
        ids.append(np.full(len(step), b))
    return np.concatenate(xs), np.concatenate(ys), np.concatenate(ids)


def fit_holder_exponent(map_under_test: str, space: LpSpace, sampler: SamplerConfig,
                        operator: OperatorSpec | None = None, r: float = 1.0,
                        tol: float = DEFAULT_TOL, allow_collapsed: bool = False) -> HolderFit:
    """Fit log10 ||Fx - Fy|| against log10 ||x - y|| and compare with the bound line.

    Parameters
    ----------
    map_under_test : {"J", "resolvent"}
        F = J (image distance in the dual norm) or F = J_r for ``operator``.
    space, sampler
        Pairs come from :func:`multiscale_pairs`.
    operator, r
        Required for ``"resolvent"``.
    allow_collapsed : bool
        If the map sends every converged pair to one point there is nothing
        to fit; return an empty fit (bound holds trivially) instead of raising.

    Returns
    -------
    HolderFit
        Includes the bound line (exponent q - 1, intercept log10 L with
        L = M R^(2-q) for J and L = 2 mu_hat M R^(2-q) for J_r) and the
        largest excess of any point above it.
    """
    if map_under_test not in MAPS:
        raise InputError(f"map must be one of {MAPS}")
    if not space.in_theorem_regime:
        raise RegimeError("Hoelder fits need 1 < p <= 2")
    q = space.q_smooth
    R = sampler.radius
    X, Y, ids = multiscale_pairs(space, sampler)
    if map_under_test == "J":
        img = space.dual_norm(space.duality_map(X) - space.duality_map(Y))
        ok = np.ones(len(X), dtype=bool)
        L = main1_constant(q) * R ** (2.0 - q)
    else:
        if operator is None:
            raise InputError("a resolvent fit needs an operator")
        R = min(R, operator.radius)
        sx = resolve_batch(space, operator, r, X, tol)
        sy = resolve_batch(space, operator, r, Y, tol)
        ok = sx.converged & sy.converged
        img = space.norm(sx.z - sy.z)
        L = holder_constant(space, sampler, R)
    dist = space.norm(X - Y)
    keep = ok & (dist > 0) & (img > 0)
    n = int(keep.sum())
    if n < MIN_PAIRS and allow_collapsed and ok.sum() >= MIN_PAIRS and not np.any(img[ok] > 0):
        return HolderFit(
            slope=float("nan"), intercept=float("nan"), r_squared=float("nan"), n_pairs=0,
            scale_range=tuple(float(v) for v in sampler.scale_decades), exponent=q - 1.0,
            log10_L=math.log10(L), max_excess=-math.inf, excluded=int(len(X)),
            points={c: np.zeros(0) for c in ("base_point_id", "log10_dist",
                                             "log10_image_dist", "bound_value")})
    if n < MIN_PAIRS:
        raise InputError(f"insufficient pairs for a fit ({n} < {MIN_PAIRS})")
    lx, ly = np.log10(dist[keep]), np.log10(img[keep])
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 1.0
    bound = math.log10(L) + (q - 1.0) * lx
    return HolderFit(
        slope=float(slope), intercept=float(intercept), r_squared=float(min(max(r2, 0.0), 1.0)),
        n_pairs=n, scale_range=tuple(float(v) for v in sampler.scale_decades),
        exponent=q - 1.0, log10_L=math.log10(L), max_excess=float(np.max(ly - bound)),
        excluded=int(len(X) - n),
        points={"base_point_id": ids[keep], "log10_dist": lx, "log10_image_dist": ly,
                "bound_value": bound})


def check_holder_fit(map_under_test: str, space: LpSpace, sampler: SamplerConfig,
                     operator: OperatorSpec | None = None, r: float = 1.0) -> tuple[InequalityReport, HolderFit]:
    """Report form of :func:`fit_holder_exponent`: violations are points above the bound line."""
    fit = fit_holder_exponent(map_under_test, space, sampler, operator, r, allow_collapsed=True)
    above = fit.points["log10_image_dist"] - fit.points["bound_value"] > math.log10(1.0 + SLACK)
    name = "holder_fit_J" if map_under_test == "J" else f"holder_fit_resolvent[r={r!r}]"
    details = fit.summary()
    if fit.n_pairs == 0:
        details["collapsed"] = True
    if operator is not None and map_under_test != "J":
        details["operator"] = operator.to_dict()
        details["r"] = r
    report = InequalityReport(
        check_name=name, samples=fit.n_pairs, violations=int(above.sum()),
        worst_margin=-fit.max_excess, estimated_constant=fit.slope,
        passed=not above.any(), details=details)
    return report, fit
