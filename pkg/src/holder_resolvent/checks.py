"""Sampled checks of the identities and inequalities, one report each.

Every check runs the sampled pairs of :func:`sample_pairs` plus the
dedicated degenerate cases (x = y, x = 0, y = 0, x = lam y), classifying
each case as included or skipped according to the hypotheses of the
statement under test.  A violation is only flagged as re-verified after the
worst witness survives high-precision re-evaluation.
"""

from __future__ import annotations

import copy
import math
from functools import lru_cache

import mpmath
import numpy as np

from .errors import RegimeError
from .geometry import LpSpace
from .inequalities import (FLOOR, INEQUALITIES, MP_DPS, REVERIFY_TOL, SLACK, MpOps,
                           evaluate_pairs, main1_constant, reverify)
from .moduli import modulus_smoothness_table, rho_ceiling, smoothness_ceiling_constant
from .operators import OperatorSpec, monotonicity_certificate
from .reports import InequalityReport, worst_index
from .resolvent import DEFAULT_TOL, fnt_margins, resolve_batch
from .sampling import SamplerConfig, degenerate_pairs, sample_pairs

IDENTITY_TOL = 1e-9
SUPPORT_TOL = 1e-10
FNT_TOL = 1e-8
COARSE_SLACK = 1e-8
EXCLUDE_BELOW = 1e-14
FAILURE_BUDGET = 1e-3

MU_CONVENTION = "mu = 2 * mu_hat, mu_hat = sup ||x-y||^2 / phi(x,y)"
RHO_CONVENTION = "analytic ceiling: tau^p/p for 1<p<2, sqrt(1+tau^2)-1 at p=2"


def _require_regime(space: LpSpace, what: str):
    if not space.in_theorem_regime:
        raise RegimeError(f"{what} needs 1 < p <= 2 (got p = {space.p:g})")


def _with_degenerates(space, sampler, X, Y, task):
    """Append the degenerate cases to the sampled pairs; return labels per row."""
    cases = degenerate_pairs(space, sampler, task)
    labels = ["sampled"] * len(X)
    xs, ys = [X], [Y]
    for name, (a, b) in cases.items():
        xs.append(a)
        ys.append(b)
        labels.extend([name] * len(a))
    return np.concatenate(xs), np.concatenate(ys), np.array(labels)


def _classify(labels, include):
    out = {}
    for name in dict.fromkeys(labels.tolist()):
        if name == "sampled":
            continue
        inc = include[labels == name]
        out[name] = "included" if inc.all() else ("skipped" if not inc.any() else "mixed")
    return out


def _witness_index(margin, tol, mask):
    """Row with the largest normalized excess among ``mask``."""
    score = np.where(mask, -(margin + tol) / np.maximum(tol, 1e-300), -np.inf)
    return int(np.argmax(score))


def _inequality_check(name, ineq_id, space, sampler, rho=None, details=None):
    ineq = INEQUALITIES[ineq_id]
    task = ineq.task
    X, Y = sample_pairs(space, sampler, task)
    X, Y, labels = _with_degenerates(space, sampler, X, Y, task)
    ev = evaluate_pairs(ineq, space, X, Y, rho)
    inc = ev.include
    bad = inc & (ev.margin < -ev.tol)
    violations = int(bad.sum())
    margins = np.where(inc, ev.margin, np.inf)
    worst = worst_index(margins)
    ratios = np.where(inc & np.isfinite(ev.ratio), ev.ratio, -np.inf)
    estimate = float(ratios.max()) if np.isfinite(ratios.max()) else None
    info = {
        "inequality": ineq.description,
        "constant": ineq.constant(space) if ineq.kind == "ratio" else None,
        "slack": SLACK,
        "excluded": int((~inc).sum()),
        "degenerate": _classify(labels, inc),
    }
    if details:
        info.update(details)
    if violations:
        w = _witness_index(ev.margin, ev.tol, bad)
        wit = reverify(ineq, space, X[w], Y[w]) if rho is None else {
            "x": X[w], "y": Y[w], "confirmed": False, "note": "empirical rho not re-verified"}
        info["witness"] = wit
        info["witness_reverified"] = wit["confirmed"]
    else:
        i = int(np.argmax(ratios))
        info["witness"] = {"x": X[i], "y": Y[i], "ratio": ratios[i]}
    return InequalityReport(
        check_name=name, samples=int(inc.sum()), violations=violations,
        worst_margin=float(margins[worst]) if np.isfinite(margins[worst]) else 0.0,
        estimated_constant=estimate, passed=violations == 0, details=info)


# identities

def check_duality_map(space: LpSpace, sampler: SamplerConfig) -> InequalityReport:
    """<x, Jx> = ||x||^2 = ||Jx||_*^2 and J^{-1} J x = x, relative residuals."""
    X, Y = sample_pairs(space, sampler, "duality_map")
    X = np.concatenate([X, np.zeros((1, space.dim))])
    nx = space.norm(X)
    JX = space.duality_map(X)
    sq = np.where(nx > 0, nx ** 2, 1.0)
    res = {
        "pairing": np.abs(space.pairing(X, JX) - nx ** 2) / sq,
        "dual_norm": np.abs(space.dual_norm(JX) ** 2 - nx ** 2) / sq,
        "inverse": space.norm(space.inverse_duality_map(JX) - X) / np.where(nx > 0, nx, 1.0),
    }
    worst = np.max(np.stack(list(res.values())), axis=0)
    violations = int(np.sum(worst > IDENTITY_TOL))
    i = int(np.argmax(worst))
    return InequalityReport(
        check_name="duality_map", samples=len(X), violations=violations,
        worst_margin=float(IDENTITY_TOL - worst[i]), estimated_constant=None,
        passed=violations == 0,
        details={"tolerance_rel": IDENTITY_TOL,
                 "worst_relative_residual": {k: float(v.max()) for k, v in res.items()},
                 "zero_vector": "included",
                 "witness": {"x": X[i]}})


def check_phi_identity(space: LpSpace, sampler: SamplerConfig) -> InequalityReport:
    """phi(x,y) + phi(y,x) = 2 <x-y, Jx-Jy>, residual relative to ||x||^2 + ||y||^2."""
    X, Y = sample_pairs(space, sampler, "phi_identity")
    X, Y, labels = _with_degenerates(space, sampler, X, Y, "phi_identity")
    lhs = space.bregman_phi(X, Y) + space.bregman_phi(Y, X)
    rhs = 2.0 * space.pairing(X - Y, space.duality_map(X) - space.duality_map(Y))
    res = np.abs(lhs - rhs)
    scale = space.norm(X) ** 2 + space.norm(Y) ** 2
    rel = np.where(scale > 0, res / np.where(scale > 0, scale, 1.0), res)
    margin = IDENTITY_TOL * scale - res
    violations = int(np.sum(rel > IDENTITY_TOL))
    i = int(np.argmax(rel))
    return InequalityReport(
        check_name="phi_identity", samples=len(X), violations=violations,
        worst_margin=float(margin.min()), estimated_constant=None,
        passed=violations == 0,
        details={"tolerance_rel": IDENTITY_TOL, "scale": "||x||^2 + ||y||^2",
                 "worst_abs_residual": float(res.max()),
                 "worst_rel_residual": float(rel.max()),
                 "degenerate": _classify(labels, np.ones(len(X), dtype=bool)),
                 "witness": {"x": X[i], "y": Y[i]}})


# mu and the 2-uniform convexity inequalities

@lru_cache(maxsize=64)
def _mu_cached(space: LpSpace, sampler: SamplerConfig) -> InequalityReport:
    X, Y = sample_pairs(space, sampler, "mu")
    X, Y, labels = _with_degenerates(space, sampler, X, Y, "mu")
    # both orders: phi is asymmetric
    X, Y, labels = np.concatenate([X, Y]), np.concatenate([Y, X]), np.concatenate([labels, labels])
    phi = space.bregman_phi(X, Y)
    d2 = space.norm(X - Y) ** 2
    keep = (phi >= EXCLUDE_BELOW) & (np.sqrt(d2) >= EXCLUDE_BELOW)
    ratio = np.where(keep, d2 / np.where(keep, phi, 1.0), -np.inf)
    i = int(np.argmax(ratio))
    mu_hat = float(ratio[i]) if keep.any() else float("nan")
    finite = math.isfinite(mu_hat)
    return InequalityReport(
        check_name="mu", samples=int(keep.sum()), violations=0,
        worst_margin=0.0, estimated_constant=mu_hat, passed=finite,
        details={"mu_hat": mu_hat,
                 "mu_conventions": {"phi_form (1/mu)||x-y||^2 <= phi": mu_hat,
                                    "pairing_form (1/mu)||x-y||^2 <= <x-y,Jx-Jy>": 2 * mu_hat},
                 "excluded_below": EXCLUDE_BELOW, "excluded": int((~keep).sum()),
                 "degenerate": _classify(labels, keep),
                 "witness": {"x": X[i], "y": Y[i]}})


def estimate_mu(space: LpSpace, sampler: SamplerConfig) -> InequalityReport:
    """mu_hat = sup over sampled pairs of ||x-y||^2 / phi(x,y), a lower bound of the optimal mu.

    Pairs with phi or ||x-y|| below 1e-14 are excluded and counted.
    """
    _require_regime(space, "estimate_mu")
    return copy.deepcopy(_mu_cached(LpSpace(space.dim, space.p), sampler))


def mu_constant(space: LpSpace, sampler: SamplerConfig) -> float:
    """The constant used in bounds: 2 * mu_hat."""
    return 2.0 * estimate_mu(space, sampler).estimated_constant


def check_strong_monotonicity(space: LpSpace, sampler: SamplerConfig,
                              mu_hat: float | None = None) -> InequalityReport:
    """(1/(2 mu_hat)) ||x-y||^2 <= <x-y, Jx-Jy> on pairs independent of the mu estimate."""
    _require_regime(space, "strong monotonicity")
    if mu_hat is None:
        mu_hat = estimate_mu(space, sampler).estimated_constant
    X, Y = sample_pairs(space, sampler, "strong_monotonicity")
    X, Y, labels = _with_degenerates(space, sampler, X, Y, "strong_monotonicity")
    D = X - Y
    lhs = space.norm(D) ** 2 / (2.0 * mu_hat)
    rhs = space.pairing(D, space.duality_map(X) - space.duality_map(Y))
    ref = np.maximum(space.norm(X), space.norm(Y)) ** 2
    margin = rhs - lhs
    tol = SLACK * np.abs(rhs) + FLOOR * ref
    bad = margin < -tol
    details = {"mu_hat": mu_hat, "slack": SLACK,
               "degenerate": _classify(labels, np.ones(len(X), dtype=bool))}
    if bad.any():
        w = _witness_index(margin, tol, bad)
        with mpmath.workdps(MP_DPS):
            ops = MpOps(space)
            x, y = ops.vector(X[w]), ops.vector(Y[w])
            d = ops.sub(x, y)
            mlhs = ops.norm(d) ** 2 / (2 * mpmath.mpf(mu_hat))
            mrhs = ops.pair(d, ops.sub(ops.J(x), ops.J(y)))
            excess = mlhs - mrhs * (1 + mpmath.mpf(SLACK))
            ok = bool(excess > REVERIFY_TOL * max(1, float(ref[w])))
        details["witness"] = {"x": X[w], "y": Y[w], "mp_lhs": float(mlhs), "mp_rhs": float(mrhs),
                              "confirmed": ok}
        details["witness_reverified"] = ok
    i = worst_index(margin)
    return InequalityReport(
        check_name="strong_monotonicity", samples=len(X), violations=int(bad.sum()),
        worst_margin=float(margin[i]), estimated_constant=2.0 * mu_hat,
        passed=not bad.any(), details=details)


# inequalities around the duality map

def check_support_inequality(space: LpSpace, sampler: SamplerConfig) -> InequalityReport:
    """<j(u), v> <= ||u + v|| - ||u||; u = 0 samples are skipped and counted."""
    return _inequality_check("support_inequality", "support", space, sampler)


def check_normalization_inequality(space: LpSpace, sampler: SamplerConfig) -> InequalityReport:
    """||x/||x|| - y/||y|||| <= 2 ||x - y|| / max(||x||, ||y||) for x, y != 0."""
    return _inequality_check("normalization_inequality", "keyinequ2", space, sampler)


_EMPIRICAL_TAUS = np.geomspace(1e-3, 4.0, 13)


def _empirical_rho(space, sampler):
    """Log-log interpolant of sampled rho estimates (a lower estimate of rho)."""
    est = modulus_smoothness_table(space, _EMPIRICAL_TAUS, sampler.replace(count=min(sampler.count, 2000)))
    est = np.maximum(est, 1e-300)
    lt, le = np.log(_EMPIRICAL_TAUS), np.log(est)
    q = space.q_smooth

    def rho(t):
        t = np.asarray(t, float)
        lt_t = np.log(np.maximum(t, 1e-300))
        inner = np.exp(np.interp(lt_t, lt, le))
        below = est[0] * (np.maximum(t, 0.0) / _EMPIRICAL_TAUS[0]) ** q
        return np.where(t < _EMPIRICAL_TAUS[0], below, inner)

    return rho


def check_keylem1(space: LpSpace, sampler: SamplerConfig, empirical: bool = True) -> InequalityReport:
    """||Jx - Jy|| <= 2 max(||x||,||y||) rho(2t)/t with t = ||x/||x|| - y/||y||||.

    Pass/fail uses the analytic ceiling of rho, which dominates rho, so any
    confirmed violation is also a violation for the true modulus.  The
    variant with the sampled rho estimate is reported in the details.
    """
    report = _inequality_check("keylem1", "keylem1", space, sampler,
                               details={"rho": RHO_CONVENTION})
    if empirical:
        emp = _inequality_check("keylem1", "keylem1", space, sampler,
                                rho=_empirical_rho(space, sampler))
        report.details["empirical_rho_variant"] = {
            "violations": emp.violations, "worst_margin": emp.worst_margin,
            "estimated_constant": emp.estimated_constant}
    return report


def check_theorem_main1(space: LpSpace, sampler: SamplerConfig) -> InequalityReport:
    """||Jx - Jy|| <= M ||x-y||^(q-1) max(||x||,||y||)^(2-q), M = 2^(2q) / q.

    Runs on all pairs including x = y, x = 0 and y = 0; the estimated
    constant is the sampled sharp M_hat.
    """
    _require_regime(space, "Theorem main 1")
    q = space.q_smooth
    details = {"M": main1_constant(q), "K_ceiling": smoothness_ceiling_constant(space),
               "constant_C_equals_M": True}
    if math.isfinite(space.K_est):
        details["K_est"] = space.K_est
        details["M_from_K_est"] = 2.0 ** (2 * q) * space.K_est
    return _inequality_check("theorem_main1", "main1", space, sampler, details=details)


# resolvent checks

def _resolvent_pairs(space, operator, r, sampler, task):
    R = min(sampler.radius, operator.radius)
    cfg = sampler.replace(radius=R)
    X, Y = sample_pairs(space, cfg, task)
    X, Y, labels = _with_degenerates(space, cfg, X, Y, task)
    return X, Y, labels, R


def _mp_dist(space, a, b, dual=False):
    with mpmath.workdps(MP_DPS):
        ops = MpOps(space)
        d = ops.sub(ops.vector(a), ops.vector(b))
        return ops.dnorm(d) if dual else ops.norm(d)


def _resolve_tight(space, operator, r, x):
    sol = resolve_batch(space, operator, r, np.atleast_2d(x), tol=1e-13, max_iter=500)
    return sol.z[0], float(sol.residual[0])


def check_fnt(space: LpSpace, operator: OperatorSpec, r: float, sampler: SamplerConfig,
              tol: float = DEFAULT_TOL) -> InequalityReport:
    """<Tx-Ty, JTx-JTy> <= <Tx-Ty, Jx-Jy> for T = J_r.

    Tolerance 1e-8 * ||Tx-Ty|| ||Jx-Jy||_*; every resolvent must be
    certified to ``tol``, and any uncertified one fails the check.
    """
    X, Y, labels, R = _resolvent_pairs(space, operator, r, sampler, f"fnt:{r!r}")
    margin, scale, sx, sy = fnt_margins(space, operator, r, X, Y, tol)
    ok = sx.converged & sy.converged
    bad = ok & (margin < -FNT_TOL * scale)
    failures = int((~sx.converged).sum() + (~sy.converged).sum())
    m = np.where(ok, margin, np.inf)
    i = worst_index(m)
    details = {"operator": operator.to_dict(), "r": r, "method": sx.method,
               "tolerance_rel": FNT_TOL, "solver_failures": failures,
               "max_residual": float(max(sx.residual.max(), sy.residual.max())),
               "max_iterations": int(max(sx.iterations.max(), sy.iterations.max())),
               "min_margin_over_scale": float(np.min(np.where(ok & (scale > 0), margin / np.where(scale > 0, scale, 1.0), np.inf))),
               "degenerate": _classify(labels, np.ones(len(X), dtype=bool))}
    if bad.any():
        w = int(np.argmin(np.where(bad, margin / scale, np.inf)))
        tx, _ = _resolve_tight(space, operator, r, X[w])
        ty, _ = _resolve_tight(space, operator, r, Y[w])
        with mpmath.workdps(MP_DPS):
            ops = MpOps(space)
            x, y, a, b = (ops.vector(v) for v in (X[w], Y[w], tx, ty))
            dT = ops.sub(a, b)
            mm = ops.pair(dT, ops.sub(ops.J(x), ops.J(y))) - ops.pair(dT, ops.sub(ops.J(a), ops.J(b)))
            sc = ops.norm(dT) * ops.dnorm(ops.sub(ops.J(x), ops.J(y)))
            confirmed = bool(mm < -(FNT_TOL * sc + REVERIFY_TOL))
        details["witness"] = {"x": X[w], "y": Y[w], "Tx": tx, "Ty": ty, "mp_margin": float(mm),
                              "confirmed": confirmed}
        details["witness_reverified"] = confirmed
    return InequalityReport(
        check_name=f"fnt[r={r!r}]", samples=int(ok.sum()), violations=int(bad.sum()),
        worst_margin=float(m[i]) if np.isfinite(m[i]) else 0.0, estimated_constant=None,
        passed=not bad.any() and failures == 0, details=details)


def _holder_common(space, operator, r, sampler, task, tol):
    X, Y, labels, R = _resolvent_pairs(space, operator, r, sampler, task)
    sx = resolve_batch(space, operator, r, X, tol)
    sy = resolve_batch(space, operator, r, Y, tol)
    ok = sx.converged & sy.converged
    failures = int((~sx.converged).sum() + (~sy.converged).sum())
    return X, Y, labels, R, sx, sy, ok, failures


def check_coarse_bound(space: LpSpace, operator: OperatorSpec, r: float, sampler: SamplerConfig,
                       tol: float = DEFAULT_TOL) -> InequalityReport:
    """(1/mu) ||Tx - Ty|| <= ||Jx - Jy||_* (1 + 1e-8) with mu = 2 mu_hat.

    The count of violations under the mu_hat variant is reported alongside.
    """
    _require_regime(space, "coarse bound")
    mu_hat = estimate_mu(space, sampler).estimated_constant
    mu = 2.0 * mu_hat
    X, Y, labels, R, sx, sy, ok, failures = _holder_common(
        space, operator, r, sampler, f"coarse:{r!r}", tol)
    dT = space.norm(sx.z - sy.z)
    dJ = space.dual_norm(space.duality_map(X) - space.duality_map(Y))
    ref = np.maximum(space.norm(X), space.norm(Y))
    margin = dJ - dT / mu
    tolv = COARSE_SLACK * dJ + FLOOR * ref
    bad = ok & (margin < -tolv)
    bad_hat = ok & (dJ - dT / mu_hat < -(COARSE_SLACK * dJ + FLOOR * ref))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(ok & (dJ > EXCLUDE_BELOW), dT / np.where(dJ > 0, dJ, 1.0), -np.inf)
    details = {"operator": operator.to_dict(), "r": r, "mu_convention": MU_CONVENTION,
               "mu": mu, "mu_hat": mu_hat, "solver_failures": failures,
               "mu_hat_variant_violations": int(bad_hat.sum()),
               "degenerate": _classify(labels, np.ones(len(X), dtype=bool))}
    if bad.any():
        w = _witness_index(margin, tolv, bad)
        tx, _ = _resolve_tight(space, operator, r, X[w])
        ty, _ = _resolve_tight(space, operator, r, Y[w])
        with mpmath.workdps(MP_DPS):
            lhs = _mp_dist(space, tx, ty) / mpmath.mpf(mu)
            ops = MpOps(space)
            rhs = ops.dnorm(ops.sub(ops.J(ops.vector(X[w])), ops.J(ops.vector(Y[w]))))
            confirmed = bool(lhs - rhs * (1 + mpmath.mpf(COARSE_SLACK)) > REVERIFY_TOL)
        details["witness"] = {"x": X[w], "y": Y[w], "confirmed": confirmed}
        details["witness_reverified"] = confirmed
    m = np.where(ok, margin, np.inf)
    i = worst_index(m)
    return InequalityReport(
        check_name=f"coarse_bound[r={r!r}]", samples=int(ok.sum()), violations=int(bad.sum()),
        worst_margin=float(m[i]) if np.isfinite(m[i]) else 0.0,
        estimated_constant=float(ratio.max()) if np.isfinite(ratio.max()) else None,
        passed=not bad.any() and failures <= FAILURE_BUDGET * 2 * len(X), details=details)


def holder_constant(space: LpSpace, sampler: SamplerConfig, radius: float | None = None) -> float:
    """L = mu M R^(2-q) with mu = 2 mu_hat and M = 2^(2q)/q."""
    q = space.q_smooth
    R = sampler.radius if radius is None else radius
    return mu_constant(space, sampler) * main1_constant(q) * R ** (2.0 - q)


def check_holder_T(space: LpSpace, operator: OperatorSpec, r: float, sampler: SamplerConfig,
                   tol: float = DEFAULT_TOL) -> InequalityReport:
    """||Tx - Ty|| <= L ||x - y||^(q-1) for T = J_r on the ball of radius R.

    More than 0.1% uncertified resolvents fail the check.
    """
    _require_regime(space, "Hoelder bound for T")
    q = space.q_smooth
    X, Y, labels, R, sx, sy, ok, failures = _holder_common(
        space, operator, r, sampler, f"holder_T:{r!r}", tol)
    L = holder_constant(space, sampler, R)
    dist = space.norm(X - Y)
    lhs = space.norm(sx.z - sy.z)
    rhs = L * dist ** (q - 1.0)
    margin = rhs - lhs
    tolv = SLACK * rhs + FLOOR * R
    bad = ok & (margin < -tolv)
    keep = ok & (dist >= EXCLUDE_BELOW)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(keep, lhs / np.where(keep, dist, 1.0) ** (q - 1.0), -np.inf)
    budget_ok = failures <= FAILURE_BUDGET * 2 * len(X)
    details = {"operator": operator.to_dict(), "r": r, "L": L, "R": R,
               "mu_convention": MU_CONVENTION, "M": main1_constant(q),
               "solver_failures": failures, "failure_budget": FAILURE_BUDGET,
               "degenerate": _classify(labels, np.ones(len(X), dtype=bool))}
    if bad.any():
        w = _witness_index(margin, tolv, bad)
        tx, _ = _resolve_tight(space, operator, r, X[w])
        ty, _ = _resolve_tight(space, operator, r, Y[w])
        with mpmath.workdps(MP_DPS):
            mlhs = _mp_dist(space, tx, ty)
            mrhs = mpmath.mpf(L) * _mp_dist(space, X[w], Y[w]) ** (mpmath.mpf(q) - 1)
            confirmed = bool(mlhs - mrhs * (1 + mpmath.mpf(SLACK)) > REVERIFY_TOL * max(1.0, R))
        details["witness"] = {"x": X[w], "y": Y[w], "Tx": tx, "Ty": ty, "mp_lhs": float(mlhs),
                              "mp_rhs": float(mrhs), "confirmed": confirmed}
        details["witness_reverified"] = confirmed
    m = np.where(ok, margin, np.inf)
    i = worst_index(m)
    return InequalityReport(
        check_name=f"holder_T[r={r!r}]", samples=int(ok.sum()), violations=int(bad.sum()),
        worst_margin=float(m[i]) if np.isfinite(m[i]) else 0.0,
        estimated_constant=float(ratio.max()) if np.isfinite(ratio.max()) else None,
        passed=not bad.any() and budget_ok, details=details)


def check_monotonicity(space: LpSpace, operator: OperatorSpec, sampler: SamplerConfig) -> InequalityReport:
    return monotonicity_certificate(operator, space, sampler)


def rho_table(space: LpSpace, taus, sampler: SamplerConfig) -> dict:
    """Ceiling and sampled estimate of rho on a grid, for reports."""
    taus = np.asarray(taus, dtype=float)
    return {"tau": taus, "ceiling": rho_ceiling(space, taus),
            "estimate": modulus_smoothness_table(space, taus, sampler)}
