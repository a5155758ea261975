"""Resolvents J_r x = (J + rA)^{-1} J x of catalog operators.

The resolvent is the unique z with  J z + r A z = J x  (an inclusion when A
has an l1 part).  Three routes are available:

closed_form
    Operators without a matrix part: with w = J z the inclusion reads
    a w + r c + r gamma sign(w) = J x, so w is a soft threshold of J x and
    z = J^{-1} w.  At p = 2 the quadratic and shrinkage formulas.
newton
    For 1 < p <= 2, damped semismooth Newton on the normal map
    N(u) = a u + r (G J^{-1}(soft(u, tau)) + c) - J x  in dual coordinates,
    where w = soft(u, tau) and z = J^{-1} w.  J^{-1} is the l_{p'} duality
    map (p' >= 2) whose Jacobian is finite, symmetric PSD and vanishes on
    thresholded coordinates, so a I + r G K is always invertible for
    monotone G.  For p > 2: the analogous primal normal map, with Tikhonov
    damping max(1e-12, residual) on the Jacobian.
descent
    Proximal-gradient minimization of
    h(z) = r f(z) + a/2 ||z||^2 - <z, J x>  for gradient-type operators,
    Armijo backtracking from step 1.  Only used on request; it is linearly
    convergent at best and rarely reaches 1e-10 within the default budget.

Convergence is always declared on the residual of the original inclusion,
measured in the dual norm with the best subgradient selection at kinks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InputError, SolverError
from .geometry import LpSpace, PrimalVector
from .operators import OperatorSpec, check_domain

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 200
ARMIJO = 1e-4
SHRINK = 0.5
_MAX_BACKTRACK = 40

METHODS = ("closed_form", "newton", "descent")


def soft_threshold(u, tau):
    return np.sign(u) * np.maximum(np.abs(u) - tau, 0.0)


@dataclass(frozen=True)
class ResolventProblem:
    space: LpSpace
    operator: OperatorSpec
    r: float
    x: PrimalVector
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER

    def __post_init__(self):
        if not float(self.r) > 0:
            raise InputError("r must be positive")
        if not float(self.tol) > 0:
            raise InputError("tol must be positive")
        if int(self.max_iter) < 1:
            raise InputError("max_iter must be a positive integer")
        if self.x.space != self.space:
            raise InputError("x lives in a different space")
        check_domain(self.operator, self.space, self.x.coords)


@dataclass(frozen=True)
class ResolventSolution:
    z: PrimalVector
    residual: float
    iterations: int
    method: str


@dataclass
class BatchSolution:
    """Resolvents of a batch of points, one row per input."""

    z: np.ndarray
    residual: np.ndarray
    iterations: np.ndarray
    converged: np.ndarray
    method: str

    @property
    def failures(self) -> int:
        return int(np.sum(~self.converged))


def resolvent_residual(space: LpSpace, operator: OperatorSpec, r: float, x, z) -> np.ndarray:
    """Dual norm of J z + r A z - J x, choosing the best subgradient at zero coordinates.

    Recomputed from ``z`` alone, independently of any solver state.
    """
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    res = space.duality_map(z) + r * operator.apply(space, z) - space.duality_map(x)
    gamma = operator.decompose(space).l1
    if gamma:
        # sign(0) = 0 was used; any s in [-1, 1] is admissible there
        kink = z == 0
        res = np.where(kink, np.sign(res) * np.maximum(np.abs(res) - r * gamma, 0.0), res)
    return space.dual_norm(res)


def _is_scaled_identity(G):
    g = G[0, 0]
    return np.allclose(G, g * np.eye(G.shape[0]), rtol=0, atol=1e-15 * max(1.0, abs(g)))


def select_route(space: LpSpace, operator: OperatorSpec) -> str:
    d = operator.decompose(space)
    if d.matrix is None:
        return "closed_form"
    if space.p == 2.0 and (d.is_smooth or _is_scaled_identity(d.matrix)):
        return "closed_form"
    return "newton"


def _closed_form(space, d, r, X):
    a = 1.0 + r * d.dual_scale
    if d.matrix is None:
        if d.l1 == 0 and not np.any(d.offset):
            # J is positively homogeneous, so z = x / a; exact for the zero operator
            return X / a
        W = soft_threshold((space.duality_map(X) - r * d.offset) / a, r * d.l1 / a)
        return space.inverse_duality_map(W)
    if space.p != 2.0:
        raise InputError("closed form with a matrix part exists only at p = 2")
    n = space.dim
    if d.is_smooth:
        M = a * np.eye(n) + r * d.matrix
        return np.linalg.solve(M, (X - r * d.offset).T).T
    if not _is_scaled_identity(d.matrix):
        raise InputError("closed form with an l1 part needs G proportional to the identity")
    denom = a + r * d.matrix[0, 0]
    return soft_threshold((X - r * d.offset) / denom, r * d.l1 / denom)


def _dual_newton(space, d, r, X, tol, max_iter):
    """Semismooth Newton on the normal map in dual coordinates (see module docstring)."""
    a = 1.0 + r * d.dual_scale
    tau = r * d.l1 / a
    G = d.matrix
    n = space.dim
    JX = space.duality_map(X)
    B = X.shape[0]
    eye = np.eye(n)

    def normal_map(U, rows=slice(None)):
        Z = space.inverse_duality_map(soft_threshold(U, tau))
        return a * U + r * (Z @ G.T + d.offset) - JX[rows], Z

    U = (JX - r * d.offset) / a
    N, Z = normal_map(U)
    nrm = space.dual_norm(N)
    iters = np.zeros(B, dtype=int)
    live = nrm > 0
    for _ in range(max_iter):
        idx = np.flatnonzero(live)
        if idx.size == 0:
            break
        # rows already within tol take one polishing step, then stop
        last = nrm[idx] <= tol
        Ui, Ni, nrm_i = U[idx], N[idx], nrm[idx]
        W = soft_threshold(Ui, tau)
        K = space.inverse_duality_jacobian(W)
        active = (np.abs(Ui) > tau)
        K = K * active[:, None, :] * active[:, :, None]
        jac = a * eye + r * np.einsum("ij,bjk->bik", G, K)
        step = np.linalg.solve(jac, -Ni[..., None])[..., 0]

        t = np.ones(idx.size)
        accepted = np.zeros(idx.size, dtype=bool)
        U_new, N_new, Z_new, nrm_new = Ui.copy(), Ni.copy(), Z[idx].copy(), nrm_i.copy()
        pending = np.ones(idx.size, dtype=bool)
        for _ in range(_MAX_BACKTRACK):
            if not pending.any():
                break
            pi = np.flatnonzero(pending)
            trial = Ui[pi] + t[pi, None] * step[pi]
            Nt, Zt = normal_map(trial, idx[pi])
            nt = space.dual_norm(Nt)
            ok = nt <= (1.0 - ARMIJO * t[pi]) * nrm_i[pi]
            good = pi[ok]
            U_new[good], N_new[good], Z_new[good], nrm_new[good] = trial[ok], Nt[ok], Zt[ok], nt[ok]
            accepted[good] = True
            pending[good] = False
            t[pi[~ok]] *= SHRINK
        U[idx], N[idx], Z[idx], nrm[idx] = U_new, N_new, Z_new, nrm_new
        iters[idx] += 1
        # a row that cannot decrease any further is finished, converged or not
        live[idx[~accepted | last]] = False
    return Z, iters


def _primal_newton(space, d, r, X, tol, max_iter):
    """Tikhonov-damped semismooth Newton in primal coordinates, for p > 2.

    With kappa = r gamma, the inclusion is equivalent to F(v) = 0 for
    F(v) = a J z + r (G z + c) + (v - z) - J x  and  z = soft(v, kappa)
    (v - z = kappa s with s a subgradient of |.|_1 at z).  J is smooth with
    a finite Jacobian when p > 2; the damping max(1e-12, residual) keeps the
    step defined where that Jacobian degenerates.
    """
    a = 1.0 + r * d.dual_scale
    kappa = r * d.l1
    G = d.matrix if d.matrix is not None else np.zeros((space.dim, space.dim))
    n = space.dim
    JX = space.duality_map(X)
    eye = np.eye(n)

    def F(V, rows=slice(None)):
        Z = soft_threshold(V, kappa)
        return a * space.duality_map(Z) + r * (Z @ G.T + d.offset) + (V - Z) - JX[rows], Z

    V = X.copy()
    Fv, Z = F(V)
    nrm = space.dual_norm(Fv)
    iters = np.zeros(X.shape[0], dtype=int)
    live = nrm > 0
    for _ in range(max_iter):
        idx = np.flatnonzero(live)
        if idx.size == 0:
            break
        last = nrm[idx] <= tol
        Vi, Fi, ni = V[idx].copy(), Fv[idx].copy(), nrm[idx].copy()
        active = (np.abs(Vi) > kappa).astype(float)
        core = a * space.duality_jacobian(Z[idx]) + r * G
        jac = (core - eye) * active[:, None, :] + eye + np.maximum(1e-12, ni)[:, None, None] * eye
        step = np.linalg.solve(jac, -Fi[..., None])[..., 0]
        t = np.ones(idx.size)
        pending = np.ones(idx.size, dtype=bool)
        Zi = Z[idx].copy()
        for _ in range(_MAX_BACKTRACK):
            if not pending.any():
                break
            pi = np.flatnonzero(pending)
            trial = V[idx[pi]] + t[pi, None] * step[pi]
            Ft, Zt = F(trial, idx[pi])
            nt = space.dual_norm(Ft)
            ok = nt <= (1.0 - ARMIJO * t[pi]) * nrm[idx[pi]]
            g = pi[ok]
            Vi[g], Fi[g], ni[g], Zi[g] = trial[ok], Ft[ok], nt[ok], Zt[ok]
            pending[g] = False
            t[pi[~ok]] *= SHRINK
        V[idx], Fv[idx], nrm[idx], Z[idx] = Vi, Fi, ni, Zi
        iters[idx] += 1
        live[idx[pending | last]] = False
    return Z, iters


def _descent(space, d, r, X, tol, max_iter, operator):
    """Proximal gradient on h(z) = r f(z) + a/2 ||z||^2 - <z, Jx> from z0 = x."""
    if not d.symmetric:
        raise InputError("descent needs a gradient-type operator (symmetric linear part)")
    a = 1.0 + r * d.dual_scale
    G = d.matrix if d.matrix is not None else np.zeros((space.dim, space.dim))
    JX = space.duality_map(X)

    def h(Z, rows=slice(None)):
        quad = 0.5 * np.einsum("bi,ij,bj->b", Z, G, Z) + Z @ d.offset
        return (r * quad + 0.5 * a * space.norm(Z) ** 2 + r * d.l1 * np.abs(Z).sum(-1)
                - space.pairing(Z, JX[rows]))

    def grad(Z, rows):
        return r * (Z @ G.T + d.offset) + a * space.duality_map(Z) - JX[rows]

    Z = X.copy()
    hz = h(Z)
    iters = np.zeros(X.shape[0], dtype=int)
    live = resolvent_residual(space, operator, r, X, Z) > tol
    for _ in range(max_iter):
        idx = np.flatnonzero(live)
        if idx.size == 0:
            break
        Zi, gi, hi = Z[idx], grad(Z[idx], idx), hz[idx]
        t = np.ones(idx.size)
        newZ, newh = Zi.copy(), hi.copy()
        pending = np.ones(idx.size, dtype=bool)
        for _ in range(_MAX_BACKTRACK):
            if not pending.any():
                break
            pi = np.flatnonzero(pending)
            trial = soft_threshold(Zi[pi] - t[pi, None] * gi[pi], t[pi, None] * r * d.l1)
            ht = h(trial, idx[pi])
            move = np.sum((trial - Zi[pi]) ** 2, axis=-1)
            ok = ht <= hi[pi] - ARMIJO / t[pi] * move
            g = pi[ok]
            newZ[g], newh[g] = trial[ok], ht[ok]
            pending[g] = False
            t[pi[~ok]] *= SHRINK
        Z[idx], hz[idx] = newZ, newh
        iters[idx] += 1
        res = resolvent_residual(space, operator, r, X[idx], Z[idx])
        live[idx] = (res > tol) & ~pending
    return Z, iters


def resolve_batch(space: LpSpace, operator: OperatorSpec, r: float, X, tol: float = DEFAULT_TOL,
                  max_iter: int = DEFAULT_MAX_ITER, method: str | None = None) -> BatchSolution:
    """Resolvents of every row of ``X`` (shape (B, n)).

    ``method`` forces a route; by default :func:`select_route` picks one.
    Rows whose certified residual exceeds ``tol`` are flagged in
    ``converged`` rather than raising.
    """
    r = float(r)
    if not r > 0:
        raise InputError("r must be positive")
    X = space.check(np.atleast_2d(X), "X")
    check_domain(operator, space, X)
    d = operator.decompose(space)
    method = method or select_route(space, operator)
    if method not in METHODS:
        raise InputError(f"unknown method {method!r}")
    if method == "closed_form":
        Z = _closed_form(space, d, r, X)
        iters = np.zeros(X.shape[0], dtype=int)
    elif method == "newton":
        if d.matrix is None:
            d = type(d)(d.dual_scale, np.zeros((space.dim, space.dim)), d.offset, d.l1)
        if space.p <= 2.0:
            Z, iters = _dual_newton(space, d, r, X, tol, max_iter)
        else:
            Z, iters = _primal_newton(space, d, r, X, tol, max_iter)
    else:
        Z, iters = _descent(space, d, r, X, tol, max_iter, operator)
    residual = resolvent_residual(space, operator, r, X, Z)
    converged = np.isfinite(residual) & (residual <= tol)
    return BatchSolution(Z, residual, iters, converged, method)


def solve_resolvent(problem: ResolventProblem, method: str | None = None) -> ResolventSolution:
    """Solve a single resolvent problem; raise SolverError if the residual target is missed."""
    sol = resolve_batch(problem.space, problem.operator, problem.r, problem.x.coords[None, :],
                        problem.tol, problem.max_iter, method)
    res = float(sol.residual[0])
    if not sol.converged[0]:
        raise SolverError(
            f"{sol.method} route stopped at residual {res:.3e} > tol {problem.tol:.1e}",
            best_residual=res, iterations=int(sol.iterations[0]))
    z = sol.z[0]
    R = problem.operator.radius
    if problem.space.norm(z) > R * (1 + 1e-12):
        raise DomainError("resolvent lies outside the operator's domain ball")
    return ResolventSolution(PrimalVector(z, problem.space), res, int(sol.iterations[0]), sol.method)


def fnt_margins(space: LpSpace, operator: OperatorSpec, r: float, X, Y,
                tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER):
    """Batched firm-nonexpansiveness-type margins.

    Returns ``(margin, scale, sol_x, sol_y)`` where
    margin = <Tx-Ty, Jx-Jy> - <Tx-Ty, JTx-JTy> (nonnegative in theory) and
    scale = ||Tx-Ty|| ||Jx-Jy||_*, the Hölder bound of the first pairing.
    """
    sx = resolve_batch(space, operator, r, X, tol, max_iter)
    sy = resolve_batch(space, operator, r, Y, tol, max_iter)
    dT = sx.z - sy.z
    dJ = space.duality_map(X) - space.duality_map(Y)
    dJT = space.duality_map(sx.z) - space.duality_map(sy.z)
    margin = space.pairing(dT, dJ) - space.pairing(dT, dJT)
    scale = space.norm(dT) * space.dual_norm(dJ)
    return margin, scale, sx, sy


def fnt_margin(space: LpSpace, operator: OperatorSpec, r: float, x: PrimalVector,
               y: PrimalVector, tol: float = DEFAULT_TOL) -> float:
    """<Tx-Ty, Jx-Jy> - <Tx-Ty, JTx-JTy> for T = J_r; raises SolverError on failure."""
    for v in (x, y):
        if v.space != space:
            raise InputError("point lives in a different space")
    margin, _, sx, sy = fnt_margins(space, operator, r, x.coords[None], y.coords[None], tol)
    for s in (sx, sy):
        if not s.converged[0]:
            raise SolverError("resolvent did not converge", best_residual=float(s.residual[0]),
                              iterations=int(s.iterations[0]))
    return float(margin[0])
