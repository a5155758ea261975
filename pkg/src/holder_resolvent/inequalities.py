"""Registered one-sided inequalities, written once for two numeric backends.

Each inequality is ``lhs <= const * base`` (kind ``"ratio"``) or
``lhs <= base`` (kind ``"difference"``) over pairs (x, y).  The formulas are
evaluated either on numpy batches or on single pairs in mpmath at
:data:`MP_DPS` digits, the latter being used to re-verify any witness
before it is reported as a violation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import mpmath
import numpy as np

from .geometry import LpSpace
from .moduli import rho_ceiling

MP_DPS = 50
SLACK = 1e-6
FLOOR = 1e-13
REVERIFY_TOL = 1e-12
DEGENERATE_EPS = 1e-14


def main1_constant(q: float) -> float:
    """M = 2^(2q) K with the analytic ceiling K = 1/q."""
    return _main1_constant(q)


def _main1_constant(q):
    # failure-injection hook: tests monkeypatch this to corrupt M
    return 2.0 ** (2.0 * q) / q


class NumpyOps:
    """Batched backend: vectors are arrays of shape (B, n), scalars (B,)."""

    def __init__(self, space: LpSpace, rho=None):
        self.space = space
        self.p = space.p
        self.q = space.q_smooth
        self._rho = rho

    def norm(self, x):
        return self.space.norm(x)

    def dnorm(self, u):
        return self.space.dual_norm(u)

    def J(self, x):
        return self.space.duality_map(x)

    def pair(self, x, u):
        return self.space.pairing(x, u)

    def sub(self, x, y):
        return x - y

    def add(self, x, y):
        return x + y

    def scale(self, a, x):
        return np.asarray(a)[..., None] * x

    def div(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, float), np.asarray(b, float))
        out = np.zeros(a.shape)
        np.divide(a, b, out=out, where=b != 0)
        return out

    def max(self, a, b):
        return np.maximum(a, b)

    def pow(self, a, k):
        return np.asarray(a, float) ** k

    def rho(self, t):
        if self._rho is not None:
            return self._rho(t)
        return rho_ceiling(self.space, t)


class MpOps:
    """Single-pair backend in mpmath; vectors are lists of mpf."""

    def __init__(self, space: LpSpace):
        self.space = space
        self.p = mpmath.mpf(space.p)
        self.pc = self.p / (self.p - 1)
        self.q = mpmath.mpf(space.q_smooth)

    @staticmethod
    def vector(x):
        return [mpmath.mpf(float(v)) for v in np.asarray(x, dtype=float).ravel()]

    def _lp(self, x, p):
        s = mpmath.fsum(abs(v) ** p for v in x)
        return s ** (1 / p) if s > 0 else mpmath.mpf(0)

    def norm(self, x):
        return self._lp(x, self.p)

    def dnorm(self, u):
        return self._lp(u, self.pc)

    def J(self, x):
        n = self.norm(x)
        if n == 0:
            return [mpmath.mpf(0)] * len(x)
        return [n ** (2 - self.p) * abs(v) ** (self.p - 1) * mpmath.sign(v) for v in x]

    def pair(self, x, u):
        return mpmath.fsum(a * b for a, b in zip(x, u))

    def sub(self, x, y):
        return [a - b for a, b in zip(x, y)]

    def add(self, x, y):
        return [a + b for a, b in zip(x, y)]

    def scale(self, a, x):
        return [a * v for v in x]

    def div(self, a, b):
        return a / b if b != 0 else mpmath.mpf(0)

    def max(self, a, b):
        return max(a, b)

    def pow(self, a, k):
        return mpmath.mpf(a) ** k

    def rho(self, t):
        if self.space.p == 2.0:
            return mpmath.sqrt(1 + t ** 2) - 1
        if self.space.p < 2.0:
            return t ** self.p / self.p
        return t


@dataclass(frozen=True)
class Inequality:
    """``evaluate(ops, x, y)`` returns (lhs, base, ref, include).

    ``ref`` is a magnitude for the absolute floor of the tolerance and
    ``include`` says whether the pair satisfies the statement's hypotheses.
    ``task`` names the sampling stream shared with the matching check.
    """

    id: str
    kind: str
    evaluate: Callable
    constant: Callable[[LpSpace], float]
    description: str
    task: str

    def rhs(self, space, base):
        return self.constant(space) * base if self.kind == "ratio" else base


def _unit(ops, x):
    return ops.scale(ops.div(1.0, ops.norm(x)), x)


def _main1(ops, x, y):
    nx, ny = ops.norm(x), ops.norm(y)
    m = ops.max(nx, ny)
    lhs = ops.dnorm(ops.sub(ops.J(x), ops.J(y)))
    base = ops.pow(ops.norm(ops.sub(x, y)), ops.q - 1) * ops.pow(m, 2 - ops.q)
    return lhs, base, m, _true_like(nx)


def _keylem1(ops, x, y):
    nx, ny = ops.norm(x), ops.norm(y)
    m = ops.max(nx, ny)
    tau = ops.norm(ops.sub(_unit(ops, x), _unit(ops, y)))
    lhs = ops.dnorm(ops.sub(ops.J(x), ops.J(y)))
    base = 2 * m * ops.div(ops.rho(2 * tau), tau)
    include = (nx > 0) & (ny > 0) & (tau >= DEGENERATE_EPS)
    return lhs, base, m, include


def _keyinequ2(ops, x, y):
    nx, ny = ops.norm(x), ops.norm(y)
    m = ops.max(nx, ny)
    lhs = ops.norm(ops.sub(_unit(ops, x), _unit(ops, y)))
    base = ops.div(ops.norm(ops.sub(x, y)), m)
    include = (nx > 0) & (ny > 0)
    return lhs, base, _one_like(nx), include


def _support(ops, u, v):
    nu = ops.norm(u)
    lhs = ops.pair(v, ops.scale(ops.div(1.0, nu), ops.J(u)))
    base = ops.norm(ops.add(u, v)) - nu
    return lhs, base, ops.max(nu, ops.norm(v)), nu > 0


def _true_like(a):
    return np.ones(np.shape(a), dtype=bool) if isinstance(a, np.ndarray) else True


def _one_like(a):
    return np.ones(np.shape(a)) if isinstance(a, np.ndarray) else mpmath.mpf(1)


INEQUALITIES: dict[str, Inequality] = {
    "main1": Inequality(
        "main1", "ratio", _main1, lambda s: main1_constant(s.q_smooth),
        "||Jx - Jy||_* <= M ||x - y||^(q-1) max(||x||, ||y||)^(2-q)", "main1"),
    "keylem1": Inequality(
        "keylem1", "ratio", _keylem1, lambda s: 1.0,
        "||Jx - Jy||_* <= 2 max(||x||, ||y||) rho(2 t) / t,  t = ||x/||x|| - y/||y||||", "keylem1"),
    "keyinequ2": Inequality(
        "keyinequ2", "ratio", _keyinequ2, lambda s: 2.0,
        "||x/||x|| - y/||y|||| <= 2 ||x - y|| / max(||x||, ||y||)", "normalization"),
    "support": Inequality(
        "support", "difference", _support, lambda s: 1.0,
        "<v, j(u)> <= ||u + v|| - ||u||  (u = x, v = y)", "support"),
}


@dataclass
class PairEvaluation:
    lhs: np.ndarray
    rhs: np.ndarray
    margin: np.ndarray
    tol: np.ndarray
    include: np.ndarray
    ratio: np.ndarray


def evaluate_pairs(ineq: Inequality, space: LpSpace, X, Y, rho=None) -> PairEvaluation:
    """Margins ``rhs - lhs`` with per-pair tolerance ``SLACK |rhs| + FLOOR ref``."""
    ops = NumpyOps(space, rho)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        lhs, base, ref, include = ineq.evaluate(ops, X, Y)
        rhs = ineq.rhs(space, base)
        margin = rhs - lhs
        tol = SLACK * np.abs(rhs) + FLOOR * ref
        if ineq.kind == "ratio":
            ratio = np.where(base > 0, lhs / np.where(base > 0, base, 1.0), np.nan)
        else:
            ratio = lhs - base
    include = np.asarray(include, dtype=bool) & np.isfinite(margin)
    return PairEvaluation(lhs, rhs, margin, tol, include, ratio)


def reverify(ineq: Inequality, space: LpSpace, x, y) -> dict:
    """High-precision re-evaluation of a candidate witness.

    The witness is confirmed when the violation survives in mpmath at
    :data:`MP_DPS` digits by more than ``REVERIFY_TOL * max(1, ref)``
    beyond the slack.
    """
    with mpmath.workdps(MP_DPS):
        ops = MpOps(space)
        lhs, base, ref, include = ineq.evaluate(ops, ops.vector(x), ops.vector(y))
        const = mpmath.mpf(ineq.constant(space)) if ineq.kind == "ratio" else mpmath.mpf(1)
        rhs = const * base
        excess = lhs - rhs - mpmath.mpf(SLACK) * abs(rhs)
        confirmed = bool(include) and excess > REVERIFY_TOL * max(mpmath.mpf(1), ref)
        return {
            "x": [float(v) for v in np.asarray(x).ravel()],
            "y": [float(v) for v in np.asarray(y).ravel()],
            "mp_lhs": float(lhs),
            "mp_rhs": float(rhs),
            "mp_excess": float(excess),
            "confirmed": confirmed,
        }
