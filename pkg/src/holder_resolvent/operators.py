"""A small catalog of monotone operators A: E -> E*.

Operators act on coordinates of E and return coordinates of E* in the
standard pairing, so monotonicity of a linear part is just positive
semidefiniteness of its symmetric part.  Every catalog member reduces to

    A z = lam_J * J z + G z + c + gamma * sign(z)

(see :meth:`OperatorSpec.decompose`), which is what the resolvent solver
works with.  ``sign(0) = 0`` is the chosen subgradient selection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np

from .errors import DomainError, InputError
from .geometry import DualVector, LpSpace, PrimalVector
from .reports import InequalityReport, worst_index
from .sampling import SamplerConfig, sample_pairs

PSD_TOLERANCE = 1e-10
MONOTONE_TOLERANCE = 1e-10


def _as_tuple(values, name):
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or not np.all(np.isfinite(arr)):
        raise InputError(f"{name} must be a finite vector")
    return tuple(float(v) for v in arr)


def _nonneg(value, name):
    value = float(value)
    if not (value >= 0 and math.isfinite(value)):
        raise InputError(f"{name} must be a finite nonnegative number")
    return value


@dataclass(frozen=True)
class Decomposition:
    """Canonical form ``lam_J J z + G z + c + gamma sign(z)``; ``matrix`` is None when G = 0."""

    dual_scale: float
    matrix: np.ndarray | None
    offset: np.ndarray
    l1: float

    @property
    def symmetric(self) -> bool:
        return self.matrix is None or np.allclose(self.matrix, self.matrix.T, rtol=0, atol=1e-14)

    @property
    def is_smooth(self) -> bool:
        return self.l1 == 0.0


@dataclass(frozen=True, kw_only=True)
class OperatorSpec:
    """Base of the catalog.  ``domain_radius`` is the radius of the ball C (inf means C = E)."""

    domain_radius: float = math.inf
    kind: ClassVar[str] = "abstract"

    def __post_init__(self):
        r = float(self.domain_radius)
        if not r > 0:
            raise InputError("domain_radius must be positive (or inf)")
        object.__setattr__(self, "domain_radius", r)

    @property
    def radius(self) -> float:
        """Effective domain radius (sums intersect their members' balls)."""
        return self.domain_radius

    def apply(self, space: LpSpace, z) -> np.ndarray:
        """Batched evaluation on raw coordinates, no domain check."""
        d = self.decompose(space)
        z = np.asarray(z, dtype=float)
        out = np.broadcast_to(d.offset, z.shape).copy()
        if d.dual_scale:
            out += d.dual_scale * space.duality_map(z)
        if d.matrix is not None:
            out += z @ d.matrix.T
        if d.l1:
            out += d.l1 * np.sign(z)
        return out

    def selection_mask(self, z) -> np.ndarray:
        """True where the returned value is a selection from a set-valued subdifferential."""
        z = np.asarray(z, dtype=float)
        return np.zeros(z.shape[:-1], dtype=bool)

    def decompose(self, space: LpSpace) -> Decomposition:
        raise NotImplementedError

    def _params(self) -> dict:
        return {}

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        out.update(self._params())
        if math.isfinite(self.domain_radius):
            out["domain_radius"] = self.domain_radius
        return out


@dataclass(frozen=True)
class Zero(OperatorSpec):
    kind: ClassVar[str] = "zero"

    def decompose(self, space):
        return Decomposition(0.0, None, np.zeros(space.dim), 0.0)


@dataclass(frozen=True)
class Constant(OperatorSpec):
    """A z = c for every z (the gradient of a linear functional)."""

    c: tuple = ()
    kind: ClassVar[str] = "constant"

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "c", _as_tuple(self.c, "c"))

    def decompose(self, space):
        c = np.array(self.c)
        if c.shape != (space.dim,):
            raise InputError(f"constant has length {c.size}, space has dimension {space.dim}")
        return Decomposition(0.0, None, c, 0.0)

    def _params(self):
        return {"c": list(self.c)}


@dataclass(frozen=True)
class LinearPSD(OperatorSpec):
    """A z = G z with (G + G^T)/2 positive semidefinite; G need not be symmetric."""

    matrix: tuple = ()
    kind: ClassVar[str] = "linear_psd"

    def __post_init__(self):
        super().__post_init__()
        G = np.asarray(self.matrix, dtype=float)
        if G.ndim != 2 or G.shape[0] != G.shape[1] or not np.all(np.isfinite(G)):
            raise InputError("linear_psd needs a finite square matrix")
        lam_min = float(np.linalg.eigvalsh(0.5 * (G + G.T)).min())
        if lam_min < -PSD_TOLERANCE:
            raise InputError(f"linear_psd matrix is not monotone: symmetric part has eigenvalue {lam_min:.3e}")
        object.__setattr__(self, "matrix", tuple(tuple(float(v) for v in row) for row in G))

    def decompose(self, space):
        G = np.array(self.matrix)
        if G.shape != (space.dim, space.dim):
            raise InputError(f"matrix is {G.shape}, space has dimension {space.dim}")
        return Decomposition(0.0, G, np.zeros(space.dim), 0.0)

    def _params(self):
        return {"matrix": [list(row) for row in self.matrix]}


@dataclass(frozen=True)
class ScaledDuality(OperatorSpec):
    """A z = lam * J z."""

    lam: float = 1.0
    kind: ClassVar[str] = "scaled_duality"

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "lam", _nonneg(self.lam, "lambda"))

    def decompose(self, space):
        return Decomposition(self.lam, None, np.zeros(space.dim), 0.0)

    def _params(self):
        return {"lambda": self.lam}


@dataclass(frozen=True)
class GradQuadratic(OperatorSpec):
    """A z = lam (z - b), the coordinate gradient of lam/2 |z - b|_2^2."""

    b: tuple = ()
    lam: float = 1.0
    kind: ClassVar[str] = "grad_quadratic"

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "b", _as_tuple(self.b, "b"))
        object.__setattr__(self, "lam", _nonneg(self.lam, "lambda"))

    def decompose(self, space):
        b = np.array(self.b)
        if b.shape != (space.dim,):
            raise InputError(f"b has length {b.size}, space has dimension {space.dim}")
        if self.lam == 0:
            return Decomposition(0.0, None, np.zeros(space.dim), 0.0)
        return Decomposition(0.0, self.lam * np.eye(space.dim), -self.lam * b, 0.0)

    def _params(self):
        return {"b": list(self.b), "lambda": self.lam}


@dataclass(frozen=True)
class SubgradL1(OperatorSpec):
    """A z = gamma * sign(z), the selection of the subdifferential of gamma |z|_1 with sign(0) = 0."""

    gamma: float = 1.0
    kind: ClassVar[str] = "subgrad_l1"

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "gamma", _nonneg(self.gamma, "gamma"))

    def decompose(self, space):
        return Decomposition(0.0, None, np.zeros(space.dim), self.gamma)

    def selection_mask(self, z):
        z = np.asarray(z, dtype=float)
        if self.gamma == 0:
            return np.zeros(z.shape[:-1], dtype=bool)
        return np.any(z == 0, axis=-1)

    def _params(self):
        return {"gamma": self.gamma}


@dataclass(frozen=True)
class Sum(OperatorSpec):
    terms: tuple = field(default=())
    kind: ClassVar[str] = "sum"

    def __post_init__(self):
        super().__post_init__()
        terms = tuple(self.terms)
        if not all(isinstance(t, OperatorSpec) for t in terms):
            raise InputError("sum terms must be operator specs")
        object.__setattr__(self, "terms", terms)

    @property
    def radius(self):
        return min([self.domain_radius] + [t.radius for t in self.terms])

    def decompose(self, space):
        lam, G, c, gamma = 0.0, None, np.zeros(space.dim), 0.0
        for t in self.terms:
            d = t.decompose(space)
            lam += d.dual_scale
            if d.matrix is not None:
                G = d.matrix.copy() if G is None else G + d.matrix
            c = c + d.offset
            gamma += d.l1
        return Decomposition(lam, G, c, gamma)

    def selection_mask(self, z):
        z = np.asarray(z, dtype=float)
        mask = np.zeros(z.shape[:-1], dtype=bool)
        for t in self.terms:
            mask |= t.selection_mask(z)
        return mask

    def _params(self):
        return {"terms": [t.to_dict() for t in self.terms]}


CATALOG = {cls.kind: cls for cls in (Zero, Constant, LinearPSD, ScaledDuality, GradQuadratic,
                                      SubgradL1, Sum)}


def spec_from_dict(data: dict) -> OperatorSpec:
    """Inverse of :meth:`OperatorSpec.to_dict`.  Unknown keys raise ``InputError``."""
    data = dict(data)
    kind = data.pop("kind", None)
    if kind not in CATALOG:
        raise InputError(f"unknown operator kind {kind!r}; expected one of {sorted(CATALOG)}")
    allowed = {
        "zero": set(), "constant": {"c"}, "linear_psd": {"matrix"},
        "scaled_duality": {"lambda"}, "grad_quadratic": {"b", "lambda"},
        "subgrad_l1": {"gamma"}, "sum": {"terms"},
    }[kind] | {"domain_radius"}
    unknown = set(data) - allowed
    if unknown:
        raise InputError(f"unknown key(s) for {kind}: {sorted(unknown)}")
    kwargs = {}
    if "domain_radius" in data:
        kwargs["domain_radius"] = float(data["domain_radius"])
    if "lambda" in data:
        kwargs["lam"] = data["lambda"]
    if "terms" in data:
        kwargs["terms"] = tuple(spec_from_dict(t) for t in data["terms"])
    for key in ("c", "matrix", "b", "gamma"):
        if key in data:
            kwargs[key] = data[key]
    return CATALOG[kind](**kwargs)


@dataclass(frozen=True)
class OperatorEvaluation:
    input: PrimalVector
    output: DualVector
    is_selection: bool


def check_domain(operator: OperatorSpec, space: LpSpace, z) -> None:
    """Raise DomainError if any point of ``z`` lies outside the operator's domain ball."""
    R = operator.radius
    if math.isinf(R):
        return
    nrm = space.norm(z)
    if np.any(nrm > R * (1 + 1e-12)):
        raise DomainError(f"point with norm {float(np.max(nrm)):.6g} outside domain ball of radius {R:g}")


def evaluate(operator: OperatorSpec, z: PrimalVector) -> OperatorEvaluation:
    """Evaluate A z for a single tagged vector."""
    space = z.space
    check_domain(operator, space, z.coords)
    out = operator.apply(space, z.coords)
    return OperatorEvaluation(z, DualVector(out, space), bool(operator.selection_mask(z.coords)))


def monotonicity_certificate(operator: OperatorSpec, space: LpSpace, sampler: SamplerConfig,
                             task: int | str = "monotonicity") -> InequalityReport:
    """Sampled check of <x - y, Ax - Ay> >= 0 over pairs in the domain.

    The tolerance per pair is 1e-10 * max(1, ||x-y|| ||Ax-Ay||_*).
    """
    R = min(sampler.radius, operator.radius)
    X, Y = sample_pairs(space, sampler.replace(radius=R), task)
    AX, AY = operator.apply(space, X), operator.apply(space, Y)
    margins = space.pairing(X - Y, AX - AY)
    scale = space.norm(X - Y) * space.dual_norm(AX - AY)
    tol = MONOTONE_TOLERANCE * np.maximum(1.0, scale)
    violations = int(np.sum(margins < -tol))
    i = worst_index(margins)
    details = {
        "operator": operator.to_dict(),
        "tolerance_rel": MONOTONE_TOLERANCE,
        "min_margin_over_scale": float(np.min(margins / np.maximum(scale, 1e-300))),
        "witness": {"x": X[i], "y": Y[i]},
    }
    return InequalityReport(
        check_name="monotonicity", samples=len(margins), violations=violations,
        worst_margin=float(margins[i]), estimated_constant=None,
        passed=violations == 0, details=details)


def default_catalog(dim: int, seed: int = 0) -> dict[str, OperatorSpec]:
    """One representative of every variant, with seeded random parameters."""
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), dim, 7]))
    B = rng.standard_normal((dim, dim)) / np.sqrt(dim)
    C = rng.standard_normal((dim, dim)) / np.sqrt(dim)
    G = B @ B.T + 0.5 * (C - C.T)
    b = rng.uniform(-0.5, 0.5, size=dim)
    c = rng.uniform(-0.5, 0.5, size=dim)
    quad = GradQuadratic(b=b, lam=1.0)
    l1 = SubgradL1(gamma=0.3)
    return {
        "zero": Zero(),
        "constant": Constant(c=c),
        "linear_psd": LinearPSD(matrix=G),
        "scaled_duality": ScaledDuality(lam=1.0),
        "grad_quadratic": quad,
        "subgrad_l1": l1,
        "sum": Sum(terms=(quad, l1)),
    }
