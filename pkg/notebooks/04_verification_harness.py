"""
Sampled and adversarial verification
====================================

The identities, the inequalities around J, the Hoelder bounds for J and
for resolvents, and the one statement that fails.
"""

# %%
import numpy as np

from holder_resolvent import (GradQuadratic, LpSpace, SamplerConfig, adversarial_search,
                              check_fnt, check_holder_T, check_keylem1,
                              check_normalization_inequality, check_phi_identity,
                              check_strong_monotonicity, check_support_inequality,
                              check_theorem_main1, estimate_mu)
from holder_resolvent.fitting import fit_holder_exponent
from holder_resolvent.inequalities import INEQUALITIES, evaluate_pairs, reverify

E = LpSpace(2, 1.5)
sampler = SamplerConfig(seed=42, count=10_000)
for check in (check_phi_identity, estimate_mu, check_strong_monotonicity,
              check_support_inequality, check_normalization_inequality, check_theorem_main1):
    print(check(E, sampler).summary_line())

# %% [markdown]
# mu_hat approaches 1/(p - 1) = 2, the optimal constant of the phi form.

# %%
for p in (1.1, 1.5, 2.0):
    print(p, estimate_mu(LpSpace(2, p), sampler).estimated_constant, 1 / (p - 1))

# %% [markdown]
# The search refines the sampled sharp constant of the Hoelder bound for J.

# %%
for p in (1.1, 1.5, 2.0):
    s = LpSpace(2, p)
    print(p, check_theorem_main1(s, sampler).estimated_constant,
          adversarial_search("main1", s, sampler=sampler).estimated_constant)

# %% [markdown]
# The bound ||Jx - Jy|| <= 2 max(||x||,||y||) rho(2t)/t with
# t = ||x/||x|| - y/||y|||| fails: take y close to the ray of x but
# shorter.  Then t -> 0 and the right side vanishes while the left side
# stays near ||x - y||.

# %%
H = LpSpace(2, 2.0)
for delta in (1e-1, 1e-2, 1e-3):
    x, y = np.array([[1.0, 0.0]]), np.array([[0.5, delta]])
    ev = evaluate_pairs(INEQUALITIES["keylem1"], H, x, y)
    print(f"delta={delta:.0e}  lhs {ev.lhs[0]:.4f}  rhs {ev.rhs[0]:.4f}")
print(reverify(INEQUALITIES["keylem1"], H, x[0], y[0]))
print(check_keylem1(E, sampler).summary_line())

# %% [markdown]
# Resolvent bounds at r = 1 for a quadratic, and the Hoelder fit against
# the bound line of slope q - 1.

# %%
op = GradQuadratic(b=(0.0, 0.0), lam=1.0)
print(check_fnt(E, op, 1.0, sampler).summary_line())
print(check_holder_T(E, op, 1.0, sampler).summary_line())
for which in ("J", "resolvent"):
    fit = fit_holder_exponent(which, E, sampler, op, 1.0)
    print(which, fit.summary())
