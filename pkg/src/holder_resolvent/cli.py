"""Command line entry point.

Subcommands: ``verify`` (the check suite), ``resolve`` (one resolvent),
``moduli`` (rho/delta tables), ``fit`` (Hoelder fits and plot data) and
``search`` (adversarial refinement).  Exit status: 0 when every check
passes, 2 when a violation survived high-precision re-verification, 1 for
any other failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

import numpy as np

from .config import FORMATS, RunConfig, load_config
from .errors import ConfigError, DomainError, InputError, RegimeError, SolverError
from .geometry import PrimalVector
from .inequalities import INEQUALITIES
from .moduli import (modulus_convexity_estimate, modulus_smoothness_table, rho_ceiling,
                     rho_exact_lp, smoothness_constant_estimate)
from .operators import Zero
from .reporting import _csv_text, _plain, emit_plot_data, write_reports
from .resolvent import METHODS, ResolventProblem, solve_resolvent
from .suite import EXIT_FAILED, RunResult, run, run_meta

OUTPUT_ENV = "HOLDER_RESOLVENT_OUTPUT_DIR"
DEFAULT_TAUS = (0.01, 0.03, 0.1, 0.3, 1.0, 2.0)
DEFAULT_EPS = (0.1, 0.5, 1.0, 1.5, 2.0)


class _Parser(argparse.ArgumentParser):
    # usage errors must not collide with exit status 2 (confirmed violation)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FAILED, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", metavar="PATH", help="TOML run configuration")
    p.add_argument("--seed", type=int, help="override the sampler seed")
    p.add_argument("--out", metavar="DIR", help=f"output directory (overrides ${OUTPUT_ENV})")
    p.add_argument("--format", choices=FORMATS, help="report format")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="holder-resolvent", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="run the configured checks")
    _common(p)

    p = sub.add_parser("resolve", help="solve one resolvent and print z and the residual")
    _common(p)
    p.add_argument("--x", required=True, help="comma-separated coordinates of x")
    p.add_argument("--r", type=float, help="resolvent parameter (default: first of r_values)")
    p.add_argument("--method", choices=METHODS, help="force a solver route")

    p = sub.add_parser("moduli", help="tables of rho_E and delta_E estimates")
    _common(p)
    p.add_argument("--tau", type=float, nargs="+", default=list(DEFAULT_TAUS))
    p.add_argument("--eps", type=float, nargs="+", default=list(DEFAULT_EPS))

    p = sub.add_parser("fit", help="Hoelder fits of J and of each resolvent, with plot data")
    _common(p)

    p = sub.add_parser("search", help="adversarial search on registered inequalities")
    _common(p)
    p.add_argument("--inequality", choices=sorted(INEQUALITIES), action="append",
                   help="inequality id (repeatable; default main1 and keyinequ2)")
    p.add_argument("--restarts", type=int)
    p.add_argument("--steps", type=int)
    return parser


def resolve_config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig(dim=2, p=1.5)
    changes = {}
    if args.seed is not None:
        changes["sampler"] = cfg.sampler.replace(seed=args.seed)
    if args.format:
        changes["format"] = args.format
    out = args.out or os.environ.get(OUTPUT_ENV)
    if out:
        changes["output_dir"] = out
    return dataclasses.replace(cfg, **changes)


def _finish(result: RunResult, cfg: RunConfig, extra_meta=None) -> int:
    code = result.exit_code
    meta = run_meta(cfg)
    if extra_meta:
        meta.update(extra_meta)
    write_reports(result.reports, cfg.output_dir, cfg.format, meta, code)
    for r in result.reports:
        print(r.summary_line())
        if r.reverified_violation:
            print("  witness:", json.dumps(_plain(r.details.get("witness"))))
    print(f"exit {code}: reports in {cfg.output_dir}")
    return code


def cmd_verify(args) -> int:
    cfg = resolve_config(args)
    return _finish(run(cfg, args.jobs), cfg)


def cmd_fit(args) -> int:
    cfg = resolve_config(args)
    names = ["holder_fit_J"] + (["holder_fit_resolvent"] if cfg.operator is not None else [])
    cfg = dataclasses.replace(cfg, checks=tuple(names))
    result = run(cfg, args.jobs)
    emit_plot_data(result.fits, cfg.output_dir)
    return _finish(result, cfg)


def cmd_search(args) -> int:
    cfg = resolve_config(args)
    ids = args.inequality or ["main1", "keyinequ2"]
    changes = {"checks": tuple(f"search_{i}" for i in ids)}
    if args.restarts is not None:
        changes["search_restarts"] = args.restarts
    if args.steps is not None:
        changes["search_steps"] = args.steps
    cfg = dataclasses.replace(cfg, **changes)
    return _finish(run(cfg, args.jobs), cfg)


def cmd_resolve(args) -> int:
    cfg = resolve_config(args)
    space = cfg.space
    x = np.array([float(v) for v in args.x.split(",")])
    r = args.r if args.r is not None else cfg.r_values[0]
    op = cfg.operator if cfg.operator is not None else Zero()
    sol = solve_resolvent(ResolventProblem(space, op, r, PrimalVector(x, space)), args.method)
    print(json.dumps({"z": sol.z.coords.tolist(), "residual": sol.residual,
                      "iterations": sol.iterations, "method": sol.method}))
    return 0


def cmd_moduli(args) -> int:
    cfg = resolve_config(args)
    space, sampler = cfg.space, cfg.sampler
    taus = np.array(sorted(args.tau))
    est = modulus_smoothness_table(space, taus, sampler)
    rows = [["rho", t, e, float(rho_ceiling(space, t)), float(rho_exact_lp(space.p, t))]
            for t, e in zip(taus.tolist(), est.tolist())]
    for e in sorted(args.eps):
        rows.append(["delta", e, modulus_convexity_estimate(space, e, sampler), None, None])
    K = smoothness_constant_estimate(space, taus, sampler)
    header = ("modulus", "argument", "estimate", "ceiling", "exact_lp")
    os.makedirs(cfg.output_dir, exist_ok=True)
    path = os.path.join(cfg.output_dir, f"moduli.{cfg.format}")
    if cfg.format == "csv":
        text = _csv_text(header, rows)
    else:
        text = json.dumps(_plain({"p": space.p, "dim": space.dim, "seed": sampler.seed,
                                  "K_est": K, "K_ceiling": 1.0 / space.q_smooth,
                                  "rows": [dict(zip(header, r)) for r in rows]}), indent=2) + "\n"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    print(_csv_text(header, rows), end="")
    print(f"K_est {K!r} (ceiling {1.0 / space.q_smooth!r}); written to {path}")
    return 0


COMMANDS = {"verify": cmd_verify, "resolve": cmd_resolve, "moduli": cmd_moduli,
            "fit": cmd_fit, "search": cmd_search}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_FAILED
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, InputError, DomainError, RegimeError, SolverError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
