"""Seeded sampling of points and pairs in l_p balls.

Every random draw in the package goes through :func:`substream`, so a
``(seed, task)`` pair always yields the same numbers regardless of how the
work is scheduled.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

from .geometry import LpSpace


@dataclass(frozen=True)
class SamplerConfig:
    """Sampling budget and region.

    Parameters
    ----------
    seed : int
        Root seed (any 64-bit integer).
    count : int
        Number of samples or pairs per check.
    radius : float
        Radius R of the l_p ball that points are drawn from.
    scale_decades : tuple of float
        ``(lo, hi)`` log10 range of pair distances (relative to ``radius``)
        used for near pairs and Hölder fits.
    """

    seed: int = 0
    count: int = 10_000
    radius: float = 1.0
    scale_decades: tuple[float, float] = (-6.0, 0.0)

    def __post_init__(self):
        if int(self.count) < 1:
            raise ValueError("count must be at least 1")
        if not (self.radius > 0 and np.isfinite(self.radius)):
            raise ValueError("radius must be positive and finite")
        lo, hi = (float(v) for v in self.scale_decades)
        if not lo < hi:
            raise ValueError("scale_decades must be a nonempty range (lo < hi)")
        object.__setattr__(self, "scale_decades", (lo, hi))
        object.__setattr__(self, "count", int(self.count))
        object.__setattr__(self, "seed", int(self.seed))

    def replace(self, **changes) -> "SamplerConfig":
        values = dict(seed=self.seed, count=self.count, radius=self.radius,
                      scale_decades=self.scale_decades)
        values.update(changes)
        return SamplerConfig(**values)


def substream(seed: int, task: int | str = 0) -> np.random.Generator:
    """Independent generator for ``(seed, task)``.

    String task labels are hashed with CRC32 so they are stable across runs
    and Python processes (unlike ``hash``).
    """
    if isinstance(task, str):
        task = zlib.crc32(task.encode("utf-8"))
    seed = int(seed) & 0xFFFFFFFFFFFFFFFF
    return np.random.default_rng(np.random.SeedSequence([seed, int(task)]))


def sample_sphere(space: LpSpace, rng: np.random.Generator, size: int) -> np.ndarray:
    """Points on the unit sphere of ``space``: Gaussian draws normalized in the l_p norm."""
    g = rng.standard_normal((size, space.dim))
    nrm = space.norm(g)
    # a Gaussian row is zero with probability zero; guard anyway
    bad = nrm == 0
    if np.any(bad):
        g[bad, 0] = 1.0
        nrm = space.norm(g)
    return g / nrm[:, None]


def sample_ball(space: LpSpace, rng: np.random.Generator, size: int,
                radius: float = 1.0, sparsity: float = 0.0) -> np.ndarray:
    """Points in the closed ball of the given radius.

    With ``sparsity > 0`` each coordinate is zeroed with that probability
    before normalization; those points sit on the non-smooth set of J when
    p < 2 and drive the sharp constants.
    """
    g = rng.standard_normal((size, space.dim))
    if sparsity > 0:
        g[rng.random(g.shape) < sparsity] = 0.0
        empty = ~np.any(g != 0, axis=1)
        if np.any(empty):
            idx = rng.integers(0, space.dim, size=int(empty.sum()))
            g[np.flatnonzero(empty), idx] = 1.0
    g /= space.norm(g)[:, None]
    rad = radius * rng.random(size) ** (1.0 / space.dim)
    return g * rad[:, None]


def project_ball(space: LpSpace, x: np.ndarray, radius: float) -> np.ndarray:
    """Radial projection onto the ball (not the metric projection, which l_p lacks in closed form)."""
    nrm = space.norm(x)
    scale = np.where(nrm > radius, radius / np.where(nrm > 0, nrm, 1.0), 1.0)
    return x * scale[..., None]


def sample_pairs(space: LpSpace, config: SamplerConfig, task: int | str = 0,
                 count: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Mixture of pairs in the ball of radius ``config.radius``.

    The mixture is fixed: 30% independent dense pairs, 20% independent
    sparse pairs, 15% antipodal-ish pairs (y near -t x) and 35% near pairs
    whose separation is log-uniform over ``config.scale_decades``.
    """
    rng = substream(config.seed, task)
    n = config.count if count is None else int(count)
    R = config.radius
    n_dense = int(0.30 * n)
    n_sparse = int(0.20 * n)
    n_anti = int(0.15 * n)
    n_near = n - n_dense - n_sparse - n_anti

    xs, ys = [], []
    xs.append(sample_ball(space, rng, n_dense, R))
    ys.append(sample_ball(space, rng, n_dense, R))
    xs.append(sample_ball(space, rng, n_sparse, R, sparsity=0.5))
    ys.append(sample_ball(space, rng, n_sparse, R, sparsity=0.5))

    xa = sample_ball(space, rng, n_anti, R, sparsity=0.3)
    t = rng.random(n_anti)[:, None]
    noise = 10.0 ** rng.uniform(-4, 0, size=(n_anti, 1)) * sample_sphere(space, rng, n_anti)
    xs.append(xa)
    ys.append(project_ball(space, -t * xa + noise * R * t, R))

    base = sample_ball(space, rng, n_near, R, sparsity=0.3)
    lo, hi = config.scale_decades
    dist = R * 10.0 ** rng.uniform(lo, hi, size=(n_near, 1))
    direction = sample_sphere(space, rng, n_near)
    sparse_dir = rng.random(n_near) < 0.3
    if np.any(sparse_dir):
        k = int(sparse_dir.sum())
        axis = np.zeros((k, space.dim))
        axis[np.arange(k), rng.integers(0, space.dim, size=k)] = rng.choice([-1.0, 1.0], size=k)
        direction[sparse_dir] = axis
    xs.append(base)
    ys.append(project_ball(space, base + dist * direction, R))

    X = np.concatenate(xs)
    Y = np.concatenate(ys)
    perm = rng.permutation(n)
    return X[perm], Y[perm]


def degenerate_pairs(space: LpSpace, config: SamplerConfig, task: int | str = "degenerate"
                     ) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """The edge cases every check classifies: x=y, x=0, y=0, x=λy for λ>0 and λ<0, x=y=0."""
    rng = substream(config.seed, task)
    R = config.radius
    k = 8
    a = sample_ball(space, rng, k, R)
    lam = rng.uniform(0.1, 0.9, size=(k, 1))
    zero = np.zeros_like(a)
    return {
        "x_eq_y": (a, a.copy()),
        "x_zero": (zero, a),
        "y_zero": (a, zero.copy()),
        "both_zero": (zero[:1], zero[:1].copy()),
        "x_pos_multiple_y": (lam * a, a),
        "x_neg_multiple_y": (-lam * a, a),
    }
