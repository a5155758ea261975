"""Finite-dimensional l_p geometry.

All array routines act on the last axis and broadcast over leading axes,
so a batch of points is just an array of shape ``(..., n)``.  The small
:class:`PrimalVector` / :class:`DualVector` wrappers tag single points with
the side of the duality they live on; the module-level functions accept
those.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InputError

_SERIES_RADIUS = 0.25
_SERIES_TERMS = 40
_DIRECT_ABOVE = 1e3  # beyond this relative difference the direct formula is exact enough


def lp_norm(x, p: float) -> np.ndarray:
    """(sum |x_i|^p)^(1/p) along the last axis, scaled to avoid over/underflow."""
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    m = ax.max(axis=-1, initial=0.0)
    safe = np.where(m > 0, m, 1.0)
    if p == 2.0:
        s = np.sqrt(np.sum((ax / safe[..., None]) ** 2, axis=-1))
    else:
        s = np.sum((ax / safe[..., None]) ** p, axis=-1) ** (1.0 / p)
    return np.where(m > 0, m * s, 0.0)


def lp_duality_map(x, p: float) -> np.ndarray:
    """Normalized duality map of l_p: ||x||^(2-p) |x_i|^(p-1) sign(x_i), with J(0) = 0."""
    x = np.asarray(x, dtype=float)
    if p == 2.0:
        return x.copy()
    nrm = lp_norm(x, p)
    safe = np.where(nrm > 0, nrm, 1.0)[..., None]
    xh = x / safe
    # zero coordinates map to zero for every p > 1
    return nrm[..., None] * np.abs(xh) ** (p - 1.0) * np.sign(xh)


def lp_duality_jacobian(x, p: float) -> np.ndarray:
    """Jacobian of :func:`lp_duality_map` in coordinates, shape ``(..., n, n)``.

    Equals ``(p-1) diag(|x̂|^(p-2)) + (2-p) s s^T`` with ``x̂ = x/||x||`` and
    ``s = |x̂|^(p-1) sign(x̂)``.  The map is 1-homogeneous, so the Jacobian
    depends on the direction only.  For p < 2 the diagonal is infinite at
    zero coordinates; callers that need a finite matrix must avoid that case.
    At x = 0 the direction is taken as 0, which gives ``(p-1) I`` for p = 2
    and the zero matrix for p > 2.
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    if p == 2.0:
        return np.broadcast_to(np.eye(n), x.shape + (n,)).copy()
    nrm = lp_norm(x, p)
    xh = x / np.where(nrm > 0, nrm, 1.0)[..., None]
    ax = np.abs(xh)
    s = ax ** (p - 1.0) * np.sign(xh)
    with np.errstate(divide="ignore"):
        diag = (p - 1.0) * ax ** (p - 2.0)
    jac = (2.0 - p) * s[..., :, None] * s[..., None, :]
    idx = np.arange(n)
    jac[..., idx, idx] += diag
    return jac


def _power_excess(e, k: float) -> np.ndarray:
    """(1+e)^k - 1 - k e for e >= -1, accurate when e is tiny."""
    e = np.asarray(e, dtype=float)
    out = np.empty_like(e)
    small = np.abs(e) <= _SERIES_RADIUS
    if np.any(small):
        es = e[small]
        coef = k * (k - 1.0) / 2.0
        term = np.full_like(es, 1.0) * es * es
        acc = coef * term
        for j in range(3, _SERIES_TERMS):
            coef *= (k - j + 1.0) / j
            term = term * es
            acc = acc + coef * term
        out[small] = acc
    big = ~small
    if np.any(big):
        eb = e[big]
        with np.errstate(divide="ignore", invalid="ignore"):
            val = np.expm1(k * np.log1p(eb)) - k * eb
        out[big] = val
    return out


def _scaled_excess(base, e, k: float) -> np.ndarray:
    """base^k ((1+e)^k - 1 - k e), switching to the direct form when e is large.

    For large e the relative form overflows while the direct form has no
    cancellation left to avoid.
    """
    base = np.asarray(base, dtype=float)
    e = np.asarray(e, dtype=float)
    large = np.abs(e) > _DIRECT_ABOVE
    es = np.where(large, 0.0, e)
    rel = base ** k * _power_excess(es, k)
    with np.errstate(over="ignore", invalid="ignore"):
        direct = (base * (1.0 + e)) ** k - base ** k - k * base ** k * e
        direct = np.where(large, direct, 0.0)
    return np.where(large, direct, rel)


def _abs_power_bregman(x, y, p: float) -> np.ndarray:
    """|x|^p - |y|^p - p|y|^(p-1) sign(y) (x - y), elementwise and cancellation-free."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ax, ay = np.abs(x), np.abs(y)
    same = (np.sign(x) == np.sign(y)) & (y != 0)
    ysafe = np.where(same, y, 1.0)
    rel = np.where(same, (x - y) / ysafe, 0.0)
    near = _scaled_excess(ay, rel, p)
    far = ax ** p + (p - 1.0) * ay ** p + p * ay ** (p - 1.0) * ax
    far = np.where(y == 0, ax ** p, far)
    return np.where(same, near, far)


def _abs_power_difference(x, y, p: float) -> np.ndarray:
    """|x|^p - |y|^p elementwise without catastrophic cancellation."""
    ax, ay = np.abs(x), np.abs(y)
    ysafe = np.where(ay > 0, ay, 1.0)
    rel = (ax - ay) / ysafe
    large = (ay == 0) | (rel > _DIRECT_ABOVE)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        d = ay ** p * np.expm1(p * np.log1p(np.where(large, 0.0, rel)))
    return np.where(large, ax ** p - ay ** p, d)


def lp_bregman_phi(x, y, p: float) -> np.ndarray:
    """phi(x, y) = ||x||^2 - 2<x, Jy> + ||y||^2 in l_p, evaluated stably.

    The squared norm is split as g(N(x)) with N(x) = sum |x_i|^p and
    g(t) = t^(2/p)/2, so phi/2 is a scalar Bregman term of g plus g'(N(y))
    times a separable Bregman term of |t|^p.  Each piece is computed from
    relative differences, which keeps phi accurate to a few ulps even when
    x and y nearly coincide (the naive three-term formula loses all digits
    there).  Far-apart pairs use the three-term formula directly.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x, y = np.broadcast_arrays(x, y)
    if p == 2.0:
        d = x - y
        return np.einsum("...i,...i->...", d, d)
    # power-of-two scaling is exact, so x - y keeps every digit
    _, expo = np.frexp(np.maximum(lp_norm(x, p), lp_norm(y, p)))
    m = np.ldexp(1.0, expo)
    xs, ys = x / m[..., None], y / m[..., None]

    b = np.sum(np.abs(ys) ** p, axis=-1)
    diff = np.sum(_abs_power_difference(xs, ys, p), axis=-1)
    sep = np.sum(_abs_power_bregman(xs, ys, p), axis=-1)
    k = 2.0 / p
    bsafe = np.where(b > 0, b, 1.0)
    scalar_term = 0.5 * _scaled_excess(bsafe, diff / bsafe, k)
    slope = bsafe ** (k - 1.0) / p
    phi = 2.0 * (scalar_term + slope * sep)
    # far pairs: the split form cancels (g' blows up as y -> 0) while the
    # three-term formula is accurate because phi is comparable to the scale
    nxs, nys = lp_norm(xs, p), lp_norm(ys, p)
    far = lp_norm(xs - ys, p) > 0.5 * np.maximum(nxs, nys)
    direct = nxs ** 2 - 2.0 * np.einsum("...i,...i->...", xs, lp_duality_map(ys, p)) + nys ** 2
    phi = np.where(far | (b == 0), direct, phi)
    return np.maximum(phi, 0.0) * m ** 2


@dataclass(frozen=True)
class LpSpace:
    """The space l_p^n = (R^n, ||.||_p) and its dual l_{p'}^n.

    Parameters
    ----------
    dim : int
        Dimension n.
    p : float
        Exponent, 1 < p < inf.
    K_est : float, optional
        Empirical smoothness constant attached by
        :func:`holder_resolvent.moduli.smoothness_constant_estimate`.
        Ignored by equality, so spaces differing only in ``K_est`` are
        compatible.
    """

    dim: int
    p: float
    K_est: float = field(default=float("nan"), compare=False)

    def __post_init__(self):
        dim = int(self.dim)
        p = float(self.p)
        if dim < 1:
            raise InputError("dimension must be a positive integer")
        if not (p > 1.0 and math.isfinite(p)):
            raise InputError("exponent must exceed 1 and be finite")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "p", p)

    @property
    def p_conj(self) -> float:
        if self.p == 2.0:
            return 2.0
        return self.p / (self.p - 1.0)

    @property
    def q_smooth(self) -> float:
        """Power type of the modulus of smoothness: min(p, 2)."""
        return min(self.p, 2.0)

    @property
    def in_theorem_regime(self) -> bool:
        """True when 1 < p <= 2 (q-uniformly smooth and 2-uniformly convex)."""
        return self.p <= 2.0

    @property
    def dual(self) -> "LpSpace":
        return LpSpace(self.dim, self.p_conj)

    def with_K_est(self, value: float) -> "LpSpace":
        return replace(self, K_est=float(value))

    def check(self, x, name: str = "x") -> np.ndarray:
        """Coerce to a float array whose last axis has length ``dim``; reject non-finite entries."""
        arr = np.asarray(x, dtype=float)
        if arr.ndim == 0 or arr.shape[-1] != self.dim:
            raise InputError(f"{name} must have last axis of length {self.dim}, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InputError(f"{name} has non-finite entries")
        return arr

    # batched array API

    def norm(self, x) -> np.ndarray:
        return lp_norm(x, self.p)

    def dual_norm(self, u) -> np.ndarray:
        return lp_norm(u, self.p_conj)

    def pairing(self, x, u) -> np.ndarray:
        x, u = np.broadcast_arrays(np.asarray(x, float), np.asarray(u, float))
        return np.einsum("...i,...i->...", x, u)

    def duality_map(self, x) -> np.ndarray:
        return lp_duality_map(x, self.p)

    def inverse_duality_map(self, u) -> np.ndarray:
        # in l_p the inverse of J is the duality map of the dual space l_{p'}
        return lp_duality_map(u, self.p_conj)

    def support_functional(self, x) -> np.ndarray:
        """j(x) = Jx / ||x|| (norm-one supporting functional); zero where x = 0."""
        nrm = self.norm(x)
        return self.duality_map(x) / np.where(nrm > 0, nrm, 1.0)[..., None]

    def bregman_phi(self, x, y) -> np.ndarray:
        return lp_bregman_phi(x, y, self.p)

    def duality_jacobian(self, x) -> np.ndarray:
        return lp_duality_jacobian(x, self.p)

    def inverse_duality_jacobian(self, u) -> np.ndarray:
        return lp_duality_jacobian(u, self.p_conj)


@dataclass(frozen=True, eq=False)
class PrimalVector:
    """A point of E = l_p^n."""

    coords: np.ndarray
    space: LpSpace

    def __post_init__(self):
        arr = self.space.check(self.coords, "coords")
        if arr.ndim != 1:
            raise InputError("a vector must be one-dimensional")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    def __eq__(self, other):
        return (type(other) is type(self) and self.space == other.space
                and np.array_equal(self.coords, other.coords))

    def __hash__(self):
        return hash((type(self).__name__, self.space, self.coords.tobytes()))


@dataclass(frozen=True, eq=False)
class DualVector(PrimalVector):
    """A functional in E* = l_{p'}^n, stored in the standard coordinates of the pairing."""


def _same_space(a, b):
    if a.space != b.space:
        raise InputError(f"space mismatch: {a.space} vs {b.space}")


def _expect(v, kind):
    if not isinstance(v, kind) or (kind is PrimalVector and isinstance(v, DualVector)):
        raise InputError(f"expected a {kind.__name__}, got {type(v).__name__}")


def norm(v: PrimalVector) -> float:
    _expect(v, PrimalVector)
    return float(v.space.norm(v.coords))


def dual_norm(u: DualVector) -> float:
    _expect(u, DualVector)
    return float(u.space.dual_norm(u.coords))


def pairing(x: PrimalVector, u: DualVector) -> float:
    _expect(x, PrimalVector)
    _expect(u, DualVector)
    _same_space(x, u)
    return float(x.space.pairing(x.coords, u.coords))


def duality_map(x: PrimalVector) -> DualVector:
    _expect(x, PrimalVector)
    return DualVector(x.space.duality_map(x.coords), x.space)


def inverse_duality_map(u: DualVector) -> PrimalVector:
    _expect(u, DualVector)
    return PrimalVector(u.space.inverse_duality_map(u.coords), u.space)


def bregman_phi(x: PrimalVector, y: PrimalVector) -> float:
    _expect(x, PrimalVector)
    _expect(y, PrimalVector)
    _same_space(x, y)
    return float(x.space.bregman_phi(x.coords, y.coords))
