"""Planning and execution of a verification run.

A run is a list of independent tasks (check, r); they may execute in any
order or in a process pool, and the reports are merged back in plan order.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import checks as C
from .config import OPERATOR_CHECKS, RunConfig, config_to_dict
from .fitting import check_holder_fit
from .search import adversarial_search

PER_R = frozenset(OPERATOR_CHECKS) - {"monotonicity"}
EXIT_OK, EXIT_FAILED, EXIT_VIOLATION = 0, 1, 2

_SPACE_FNS = {
    "duality_map": C.check_duality_map,
    "phi_identity": C.check_phi_identity,
    "mu": C.estimate_mu,
    "strong_monotonicity": C.check_strong_monotonicity,
    "support_inequality": C.check_support_inequality,
    "keylem1": C.check_keylem1,
    "normalization_inequality": C.check_normalization_inequality,
    "theorem_main1": C.check_theorem_main1,
}
_OPERATOR_FNS = {
    "fnt": C.check_fnt,
    "coarse_bound": C.check_coarse_bound,
    "holder_T": C.check_holder_T,
}


@dataclass
class RunResult:
    reports: list
    fits: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        if any(r.reverified_violation for r in self.reports):
            return EXIT_VIOLATION
        return EXIT_OK if all(r.passed for r in self.reports) else EXIT_FAILED


def plan(config: RunConfig) -> list[tuple[str, float | None]]:
    tasks = []
    for name in config.selected_checks():
        if name in PER_R:
            tasks.extend((name, r) for r in config.r_values)
        else:
            tasks.append((name, None))
    return tasks


def run_task(config: RunConfig, name: str, r: float | None = None):
    """Execute one task; returns (reports, fits)."""
    space, sampler, op = config.space, config.sampler, config.operator
    if name in _SPACE_FNS:
        return [_SPACE_FNS[name](space, sampler)], {}
    if name in _OPERATOR_FNS:
        return [_OPERATOR_FNS[name](space, op, r, sampler)], {}
    if name == "monotonicity":
        return [C.check_monotonicity(space, op, sampler)], {}
    if name == "holder_fit_J":
        rep, fit = check_holder_fit("J", space, sampler)
        return [rep], {rep.check_name: fit}
    if name == "holder_fit_resolvent":
        rep, fit = check_holder_fit("resolvent", space, sampler, op, r)
        return [rep], {rep.check_name: fit}
    if name.startswith("search_"):
        rep = adversarial_search(name[len("search_"):], space, config.search_restarts,
                                 config.search_steps, sampler)
        return [rep], {}
    raise ValueError(f"unknown check {name!r}")


def _call(args):
    return run_task(*args)


def run(config: RunConfig, jobs: int = 1) -> RunResult:
    """Run every planned task; results are ordered by the plan, not by completion."""
    tasks = [(config, name, r) for name, r in plan(config)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outputs = list(pool.map(_call, tasks))
    else:
        outputs = [_call(t) for t in tasks]
    reports, fits = [], {}
    for reps, fs in outputs:
        reports.extend(reps)
        fits.update(fs)
    return RunResult(reports, fits)


def run_meta(config: RunConfig) -> dict:
    # output_dir is left out so runs into different directories compare equal
    cfg = config_to_dict(config)
    cfg.pop("output_dir")
    return {"seed": config.sampler.seed, "config": cfg}
