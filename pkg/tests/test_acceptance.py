"""Acceptance criteria, one test each, at the stated tolerances and runtime budgets.

Every test prints a single ``PASS``/``FAIL`` line; the lines are collected
again in the pytest terminal summary.  Run directly with
``python3 tests/test_acceptance.py`` for the lines alone.
"""

import filecmp
import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np

from holder_resolvent import (GradQuadratic, LpSpace, SamplerConfig, SubgradL1, Sum,
                              adversarial_search, check_fnt, check_holder_T,
                              check_normalization_inequality, check_phi_identity,
                              check_support_inequality, check_theorem_main1, default_catalog,
                              estimate_mu, resolve_batch)
from holder_resolvent.fitting import check_holder_fit
from holder_resolvent.resolvent import soft_threshold
from holder_resolvent.sampling import sample_ball, substream

SEED = 42
IDENTITY_SPACES = [(n, p) for p in (1.1, 1.5, 2.0) for n in (1, 2, 3, 10, 50)]
THEOREM_SPACES = [(n, p) for p in (1.1, 1.5, 2.0) for n in (2, 10)]
RESOLVENT_SPACES = [(n, p) for p in (1.5, 2.0) for n in (2, 10)]
R_VALUES = (0.1, 1.0, 10.0)

RESULTS = []


def verdict(k, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {title} | {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def test_criterion_1_phi_identity():
    t0 = time.perf_counter()
    worst = 0.0
    for n, p in IDENTITY_SPACES:
        rep = check_phi_identity(LpSpace(n, p), SamplerConfig(seed=SEED, count=10_000))
        assert rep.samples >= 10_000
        worst = max(worst, rep.details["worst_rel_residual"])
    dt = time.perf_counter() - t0
    ok = worst <= 1e-9 and dt < 10
    assert verdict(1, "Bregman identity phi(x,y)+phi(y,x) = 2<x-y,Jx-Jy>", ok,
                   f"worst relative residual {worst:.2e} (<= 1e-9), {dt:.1f}s (< 10s)")


def test_criterion_2_duality_map():
    t0 = time.perf_counter()
    worst = 0.0
    for n, p in IDENTITY_SPACES:
        s = LpSpace(n, p)
        X = sample_ball(s, substream(SEED, f"acceptance-J-{n}-{p}"), 10_000, 1.0, sparsity=0.2)
        X = X * np.exp(substream(SEED, "scales").uniform(-10, 10, (10_000, 1)))
        nx = s.norm(X)
        JX = s.duality_map(X)
        sq = np.where(nx > 0, nx ** 2, 1.0)
        worst = max(worst,
                    float(np.max(np.abs(s.pairing(X, JX) - nx ** 2) / sq)),
                    float(np.max(np.abs(s.dual_norm(JX) ** 2 - nx ** 2) / sq)),
                    float(np.max(s.norm(s.inverse_duality_map(JX) - X) / np.where(nx > 0, nx, 1.0))))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-9 and dt < 5
    assert verdict(2, "<x,Jx> = ||x||^2 = ||Jx||_*^2 and J^-1 J = id", ok,
                   f"worst relative residual {worst:.2e} (<= 1e-9), {dt:.1f}s (< 5s)")


def test_criterion_3_theorem_main1():
    t0 = time.perf_counter()
    violations, parts = 0, []
    for n, p in THEOREM_SPACES:
        s = LpSpace(n, p)
        sampler = SamplerConfig(seed=SEED, count=100_000)
        rep = check_theorem_main1(s, sampler)
        assert rep.samples >= 100_000
        srch = adversarial_search("main1", s, restarts=100, steps=200, sampler=sampler)
        violations += rep.violations + srch.violations
        parts.append(f"p={p:g},n={n}: M_hat={srch.estimated_constant:.4f}/M={rep.details['M']:.3f}")
        if p == 2.0:
            # Lipschitz continuity of J = identity
            assert srch.estimated_constant <= 1.0 + 1e-9
    dt = time.perf_counter() - t0
    ok = violations == 0 and dt < 60
    assert verdict(3, "Hoelder bound for J with M = 2^(2q)/q", ok,
                   f"{violations} violations, {dt:.1f}s (< 60s); " + "; ".join(parts))


def test_criterion_4_fnt():
    t0 = time.perf_counter()
    bad, max_res, n_checks, min_rel = 0, 0.0, 0, math.inf
    for n, p in RESOLVENT_SPACES:
        s = LpSpace(n, p)
        for name, op in default_catalog(n, seed=SEED).items():
            for r in R_VALUES:
                rep = check_fnt(s, op, r, SamplerConfig(seed=SEED, count=10_000))
                n_checks += 1
                bad += rep.violations + rep.details["solver_failures"]
                max_res = max(max_res, rep.details["max_residual"])
                min_rel = min(min_rel, rep.details["min_margin_over_scale"])
    dt = time.perf_counter() - t0
    ok = bad == 0 and max_res <= 1e-10 and dt < 120
    assert verdict(4, "firmly nonexpansive type margin >= -1e-8 scale", ok,
                   f"{n_checks} operator/r/space sweeps, {bad} violations or solver failures, "
                   f"min margin/scale {min_rel:.2e}, max residual {max_res:.2e} (<= 1e-10), "
                   f"{dt:.1f}s (< 120s)")


def test_criterion_5_holder_T():
    t0 = time.perf_counter()
    violations, points_above, fits = 0, 0, 0
    sampler = SamplerConfig(seed=SEED, count=10_000, radius=1.0)
    for n, p in RESOLVENT_SPACES + [(2, 1.1)]:
        s = LpSpace(n, p)
        rep, fit = check_holder_fit("J", s, sampler)
        points_above += rep.violations
        fits += 1
        for name, op in default_catalog(n, seed=SEED).items():
            for r in R_VALUES:
                rep = check_holder_T(s, op, r, sampler)
                violations += rep.violations + (not rep.passed)
            rep, fit = check_holder_fit("resolvent", s, sampler, op, 1.0)
            points_above += rep.violations
            fits += 1
    dt = time.perf_counter() - t0
    ok = violations == 0 and points_above == 0 and dt < 120
    assert verdict(5, "Hoelder bound for T = J_r with L = mu M R^(2-q), mu = 2 mu_hat", ok,
                   f"{violations} violations on 10^4 pairs per sweep, {points_above} fit points above "
                   f"the (q-1, log L) line over {fits} fits, {dt:.1f}s (< 120s)")


def test_criterion_6_hilbert():
    t0 = time.perf_counter()
    errs = []
    for n in (1, 2, 3, 10):
        s = LpSpace(n, 2.0)
        rng = substream(SEED, f"hilbert-{n}")
        X, Y, B = rng.standard_normal((3, 1000, n)) * 2
        errs.append(np.max(np.abs(s.duality_map(X) - X)))
        errs.append(np.max(np.abs(s.bregman_phi(X, Y) - np.sum((X - Y) ** 2, axis=1))
                           / (1 + np.sum((X - Y) ** 2, axis=1))))
        for r in R_VALUES:
            for lam, gamma in ((1.0, 0.0), (0.0, 0.7), (2.0, 0.3)):
                b = B[0]
                ops = []
                if lam:
                    ops.append(GradQuadratic(b=tuple(b), lam=lam))
                if gamma:
                    ops.append(SubgradL1(gamma=gamma))
                z = resolve_batch(s, Sum(terms=tuple(ops)), r, X).z
                ref = soft_threshold(X + r * lam * b, r * gamma) / (1 + r * lam)
                errs.append(np.max(np.abs(z - ref)))
    mu = estimate_mu(LpSpace(3, 2.0), SamplerConfig(seed=SEED)).estimated_constant
    dt = time.perf_counter() - t0
    err = float(max(errs))
    ok = err <= 1e-8 and abs(mu - 1.0) <= 1e-6 and dt < 10
    assert verdict(6, "Hilbert degeneracy (J = I, phi = ||x-y||^2, classical prox, mu = 1)", ok,
                   f"max deviation {err:.2e} (<= 1e-8), mu_hat = {mu!r}, {dt:.1f}s (< 10s)")


FULL_CONFIG = """\
dim = 2
p = 1.5
r_values = [0.1, 1.0, 10.0]
checks = "all"

[sampler]
seed = 42

[operator]
kind = "sum"

[[operator.terms]]
kind = "grad_quadratic"
b = [0.0, 0.0]
lambda = 1.0

[[operator.terms]]
kind = "subgrad_l1"
gamma = 0.3
"""


def _tree(path):
    return sorted(str(p.relative_to(path)) for p in path.rglob("*") if p.is_file())


def test_criterion_7_determinism(tmp_path):
    cfg = tmp_path / "full.toml"
    cfg.write_text(FULL_CONFIG, encoding="utf-8")
    codes = []
    for out in ("run1", "run2"):
        proc = subprocess.run([sys.executable, "-m", "holder_resolvent.cli", "verify", "--config",
                               str(cfg), "--out", str(tmp_path / out)], capture_output=True, text=True)
        codes.append(proc.returncode)
    a, b = tmp_path / "run1", tmp_path / "run2"
    files = _tree(a)
    same = files == _tree(b) and all(filecmp.cmp(a / f, b / f, shallow=False) for f in files)
    ok = same and len(files) > 1 and codes[0] == codes[1] and codes[0] in (0, 1, 2)
    assert verdict(7, "full verify is byte-identical across invocations", ok,
                   f"{len(files)} report files identical: {same}; exit codes {codes}")


def test_criterion_8_normalization_and_support():
    t0 = time.perf_counter()
    violations, spaces = 0, IDENTITY_SPACES + [(2, 3.0), (10, 4.0)]
    for n, p in spaces:
        s = LpSpace(n, p)
        sampler = SamplerConfig(seed=SEED, count=100_000)
        for check in (check_normalization_inequality, check_support_inequality):
            rep = check(s, sampler)
            assert rep.samples >= 99_000
            violations += rep.violations
    best = []
    for n, p in THEOREM_SPACES:
        rep = adversarial_search("keyinequ2", LpSpace(n, p), sampler=SamplerConfig(seed=SEED))
        violations += rep.violations
        best.append(rep.estimated_constant)
    dt = time.perf_counter() - t0
    ok = violations == 0 and max(best) <= 2.0 and min(best) >= 1.999
    assert verdict(8, "normalization and support inequalities", ok,
                   f"{violations} violations over 10^5 pairs x {len(spaces)} spaces; search ratio for "
                   f"the normalization bound in [{min(best):.6f}, {max(best):.6f}] (<= 2, -> 2), "
                   f"{dt:.1f}s")


if __name__ == "__main__":
    import tempfile

    status = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                if "tmp_path" in fn.__code__.co_varnames[:fn.__code__.co_argcount]:
                    with tempfile.TemporaryDirectory() as d:
                        fn(Path(d))
                else:
                    fn()
            except AssertionError:
                status = 1
    sys.exit(status)
