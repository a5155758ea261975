"""
Resolvents J_r x = (J + rA)^{-1} J x
===================================

Route selection, residual certificates, agreement with the Hilbert
proximal formulas, and the firmly-nonexpansive-type margin.
"""

# %%
import numpy as np

from holder_resolvent import (Constant, GradQuadratic, LpSpace, PrimalVector, ResolventProblem,
                              SubgradL1, Sum, default_catalog, fnt_margin, resolve_batch,
                              solve_resolvent)
from holder_resolvent.resolvent import select_route, soft_threshold

E = LpSpace(2, 1.5)
x = PrimalVector(np.array([1.0, 1.0]), E)

# %% [markdown]
# A constant operator equal to Jx sends x to the origin.

# %%
c = tuple(E.duality_map(x.coords))
sol = solve_resolvent(ResolventProblem(E, Constant(c=c), 1.0, x))
print(sol)

# %% [markdown]
# Each route and its certified residual, for every catalog operator and a few p.

# %%
X = np.random.default_rng(0).standard_normal((500, 4))
for p in (1.1, 1.5, 2.0, 4.0):
    s = LpSpace(4, p)
    for name, op in default_catalog(4, seed=0).items():
        b = resolve_batch(s, op, 1.0, X)
        print(f"p={p:<4} {name:15s} {b.method:12s} max residual {b.residual.max():.1e}  "
              f"max iterations {b.iterations.max()}")

# %% [markdown]
# At p = 2 the resolvent of lam (z - b) + gamma sign(z) is a shrinkage.

# %%
H = LpSpace(3, 2.0)
b = np.array([0.5, -1.0, 2.0])
op = Sum(terms=(GradQuadratic(b=tuple(b), lam=2.0), SubgradL1(gamma=0.3)))
z = resolve_batch(H, op, 0.7, X[:5, :3]).z
ref = soft_threshold(X[:5, :3] + 0.7 * 2.0 * b, 0.7 * 0.3) / (1 + 0.7 * 2.0)
print(select_route(H, op), np.abs(z - ref).max())

# %% [markdown]
# <Tx - Ty, JTx - JTy> <= <Tx - Ty, Jx - Jy> for T = J_r.

# %%
y = PrimalVector(np.array([0.0, 1.0]), E)
x1 = PrimalVector(np.array([1.0, 0.0]), E)
print("margin", fnt_margin(E, GradQuadratic(b=(0.0, 0.0)), 1.0, x1, y))
