"""
A catalog of monotone operators
===============================

Declarative specs, evaluation, and sampled monotonicity certificates.
"""

# %%
import numpy as np

from holder_resolvent import (LinearPSD, LpSpace, PrimalVector, SamplerConfig, SubgradL1,
                              default_catalog, evaluate, spec_from_dict)
from holder_resolvent.operators import monotonicity_certificate

E = LpSpace(3, 1.5)
catalog = default_catalog(3, seed=0)
for name, op in catalog.items():
    print(f"{name:15s}", op.to_dict())

# %% [markdown]
# The l1 selection picks sign(0) = 0 and flags the evaluation as a selection.

# %%
ev = evaluate(SubgradL1(gamma=1.0), PrimalVector(np.array([3.0, 0.0, -2.0]), E))
print(ev.output.coords, "selection:", ev.is_selection)

# %% [markdown]
# Monotonicity is <x - y, Ax - Ay> >= 0; a rotation is monotone with margin 0.

# %%
sampler = SamplerConfig(seed=1, count=10_000)
for name, op in catalog.items():
    print(monotonicity_certificate(op, E, sampler).summary_line())
rot = LinearPSD(matrix=[[0.0, 1.0], [-1.0, 0.0]])
print(monotonicity_certificate(rot, LpSpace(2, 1.5), sampler).summary_line())

# %% [markdown]
# Specs round-trip through plain dictionaries (the config file format).

# %%
spec = {"kind": "sum", "terms": [{"kind": "grad_quadratic", "b": [0, 0, 1], "lambda": 2.0},
                                 {"kind": "subgrad_l1", "gamma": 0.5}]}
op = spec_from_dict(spec)
print(op)
print(op.to_dict() == spec_from_dict(op.to_dict()).to_dict())
