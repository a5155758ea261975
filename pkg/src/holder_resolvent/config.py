"""Run configuration: a small TOML document, validated at parse time.

Example::

    dim = 2
    p = 1.5
    r_values = [0.1, 1.0, 10.0]
    checks = "all"
    output_dir = "reports"
    format = "json"

    [sampler]
    seed = 42
    count = 10000
    radius = 1.0
    scale_decades = [-6.0, 0.0]

    [search]
    restarts = 100
    steps = 200

    [operator]
    kind = "sum"

    [[operator.terms]]
    kind = "grad_quadratic"
    b = [0.0, 0.0]
    lambda = 1.0

    [[operator.terms]]
    kind = "subgrad_l1"
    gamma = 0.3

Unknown keys anywhere are errors.  Errors carry the line (and column, for
syntax errors) of the offending entry.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import tomli
import tomli_w

from .errors import ConfigError, InputError
from .geometry import LpSpace
from .operators import OperatorSpec, spec_from_dict
from .sampling import SamplerConfig

FORMATS = ("json", "csv")

SPACE_CHECKS = (
    "duality_map", "phi_identity", "mu", "strong_monotonicity", "support_inequality",
    "keylem1", "normalization_inequality", "theorem_main1", "holder_fit_J",
    "search_main1", "search_keyinequ2", "search_keylem1", "search_support",
)
OPERATOR_CHECKS = ("monotonicity", "fnt", "coarse_bound", "holder_T", "holder_fit_resolvent")
ALL_CHECKS = SPACE_CHECKS + OPERATOR_CHECKS
# checks whose statements assume 1 < p <= 2
REGIME_CHECKS = frozenset({"mu", "strong_monotonicity", "theorem_main1", "holder_fit_J",
                           "search_main1", "coarse_bound", "holder_T", "holder_fit_resolvent"})

_TOP_KEYS = {"dim", "p", "r_values", "checks", "output_dir", "format", "sampler", "search",
             "operator"}
_SAMPLER_KEYS = {"seed", "count", "radius", "scale_decades"}
_SEARCH_KEYS = {"restarts", "steps"}


@dataclass(frozen=True)
class RunConfig:
    dim: int
    p: float
    operator: OperatorSpec | None = None
    r_values: tuple = (1.0,)
    sampler: SamplerConfig = field(default_factory=SamplerConfig)
    checks: tuple | str = "all"
    output_dir: str = "reports"
    format: str = "json"
    search_restarts: int = 100
    search_steps: int = 200

    @property
    def space(self) -> LpSpace:
        return LpSpace(self.dim, self.p)

    def selected_checks(self) -> list[str]:
        """Explicit list, or for "all" every check applicable to this space and operator."""
        if self.checks != "all":
            return list(self.checks)
        out = []
        for name in ALL_CHECKS:
            if name in OPERATOR_CHECKS and self.operator is None:
                continue
            if name in REGIME_CHECKS and self.p > 2:
                continue
            out.append(name)
        return out


def _line_of(text: str, table: str, key: str):
    """1-based line of ``key = ...`` inside ``[table]`` ("" for the root table)."""
    current = ""
    for i, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        m = re.match(r"^\[\[?\s*([^\]]+?)\s*\]\]?", s)
        if m:
            current = m.group(1)
            continue
        if current == table and re.match(rf"^{re.escape(key)}\s*=", s):
            return i
    return None


def _fail(text, table, key, message):
    raise ConfigError(message, line=_line_of(text, table, key) if text else None)


def _number(text, table, key, value, kind=float):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(text, table, key, f"{key} must be a number")
    if kind is int and not isinstance(value, int):
        _fail(text, table, key, f"{key} must be an integer")
    return kind(value)


def config_from_dict(data: dict, text: str = "") -> RunConfig:
    """Validate a decoded document; ``text`` is only used to attribute lines."""
    unknown = sorted(set(data) - _TOP_KEYS)
    if unknown:
        _fail(text, "", unknown[0], f"unknown key {unknown[0]!r}")
    for key in ("dim", "p"):
        if key not in data:
            raise ConfigError(f"missing required key {key!r}")
    dim = _number(text, "", "dim", data["dim"], int)
    if dim < 1:
        _fail(text, "", "dim", "dimension must be a positive integer")
    p = _number(text, "", "p", data["p"])
    if not (p > 1.0 and math.isfinite(p)):
        _fail(text, "", "p", "exponent must exceed 1")

    r_values = data.get("r_values", [1.0])
    if not isinstance(r_values, list) or not r_values:
        _fail(text, "", "r_values", "r_values must be a nonempty list")
    r_values = tuple(_number(text, "", "r_values", r) for r in r_values)
    if any(not (r > 0 and math.isfinite(r)) for r in r_values):
        _fail(text, "", "r_values", "every r must be positive")

    sdata = data.get("sampler", {})
    if not isinstance(sdata, dict):
        _fail(text, "", "sampler", "sampler must be a table")
    bad = sorted(set(sdata) - _SAMPLER_KEYS)
    if bad:
        _fail(text, "sampler", bad[0], f"unknown key {bad[0]!r} in [sampler]")
    kwargs = {}
    for key, kind in (("seed", int), ("count", int), ("radius", float)):
        if key in sdata:
            kwargs[key] = _number(text, "sampler", key, sdata[key], kind)
    if "scale_decades" in sdata:
        sd = sdata["scale_decades"]
        if not isinstance(sd, list) or len(sd) != 2:
            _fail(text, "sampler", "scale_decades", "scale_decades must be a pair [lo, hi]")
        kwargs["scale_decades"] = tuple(_number(text, "sampler", "scale_decades", v) for v in sd)
    try:
        sampler = SamplerConfig(**kwargs)
    except ValueError as exc:
        key = next((k for k in ("count", "radius", "scale_decades") if k in str(exc)), "seed")
        _fail(text, "sampler", key, str(exc))
    if not -(2 ** 63) <= sampler.seed < 2 ** 64:
        _fail(text, "sampler", "seed", "seed must fit in 64 bits")

    qdata = data.get("search", {})
    bad = sorted(set(qdata) - _SEARCH_KEYS)
    if bad:
        _fail(text, "search", bad[0], f"unknown key {bad[0]!r} in [search]")
    restarts = _number(text, "search", "restarts", qdata.get("restarts", 100), int)
    steps = _number(text, "search", "steps", qdata.get("steps", 200), int)
    if restarts < 1 or steps < 0:
        _fail(text, "search", "restarts" if restarts < 1 else "steps",
              "restarts must be >= 1 and steps >= 0")

    operator = None
    if "operator" in data:
        try:
            operator = spec_from_dict(data["operator"])
            operator.decompose(LpSpace(dim, p))
        except (InputError, TypeError, ValueError) as exc:
            line = _line_of(text, "operator", "kind") if text else None
            raise ConfigError(f"invalid operator: {exc}", line=line) from None

    checks = data.get("checks", "all")
    if checks != "all":
        if not isinstance(checks, list) or not all(isinstance(c, str) for c in checks):
            _fail(text, "", "checks", 'checks must be "all" or a list of check names')
        for c in checks:
            if c not in ALL_CHECKS:
                _fail(text, "", "checks", f"unknown check {c!r}")
            if c in OPERATOR_CHECKS and operator is None:
                _fail(text, "", "checks", f"check {c!r} needs an [operator] table")
            if c in REGIME_CHECKS and p > 2:
                _fail(text, "", "checks", f"check {c!r} needs 1 < p <= 2")
        checks = tuple(checks)

    output_dir = data.get("output_dir", "reports")
    if not isinstance(output_dir, str) or not output_dir:
        _fail(text, "", "output_dir", "output_dir must be a nonempty string")
    fmt = data.get("format", "json")
    if fmt not in FORMATS:
        _fail(text, "", "format", f"format must be one of {FORMATS}")
    return RunConfig(dim=dim, p=p, operator=operator, r_values=r_values, sampler=sampler,
                     checks=checks, output_dir=output_dir, format=fmt,
                     search_restarts=restarts, search_steps=steps)


def parse_config(text: str) -> RunConfig:
    """Parse and validate; raises :class:`ConfigError` with line/column on failure."""
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        m = re.search(r"line (\d+), column (\d+)", str(exc))
        msg = str(exc).split(" (at")[0]
        raise ConfigError(f"syntax error: {msg}", *(int(g) for g in m.groups()) if m else ()) from None
    return config_from_dict(data, text)


def config_to_dict(config: RunConfig) -> dict:
    s = config.sampler
    out = {
        "dim": config.dim,
        "p": config.p,
        "r_values": list(config.r_values),
        "checks": config.checks if config.checks == "all" else list(config.checks),
        "output_dir": config.output_dir,
        "format": config.format,
        "sampler": {"seed": s.seed, "count": s.count, "radius": s.radius,
                    "scale_decades": list(s.scale_decades)},
        "search": {"restarts": config.search_restarts, "steps": config.search_steps},
    }
    if config.operator is not None:
        out["operator"] = config.operator.to_dict()
    return out


def serialize_config(config: RunConfig) -> str:
    """TOML text with ``parse_config(serialize_config(c)) == c``."""
    return tomli_w.dumps(config_to_dict(config))


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
