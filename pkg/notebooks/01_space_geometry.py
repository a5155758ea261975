"""
Geometry of l_p^n
=================

Norms, the normalized duality map J, its inverse, the Bregman distance
phi and the two moduli, on a couple of small spaces.
"""

# %%
import numpy as np

from holder_resolvent import LpSpace, SamplerConfig
from holder_resolvent.moduli import (modulus_convexity_estimate, modulus_smoothness_table,
                                     rho_ceiling, rho_exact_lp, smoothness_constant_estimate)

E = LpSpace(2, 1.5)
print(E, "conjugate exponent", E.p_conj)

# %% [markdown]
# J sends x to the functional with <x, Jx> = ||x||^2 = ||Jx||_*^2.

# %%
x = np.array([1.0, 1.0])
jx = E.duality_map(x)
print("Jx          ", jx)
print("<x, Jx>     ", E.pairing(x, jx), " ||x||^2", E.norm(x) ** 2)
print("||Jx||_*    ", E.dual_norm(jx), " ||x||  ", E.norm(x))
print("J^-1 J x    ", E.inverse_duality_map(jx))

# %% [markdown]
# Coordinates that vanish stay at zero; there is no 0^(p-2) blow-up.

# %%
print(LpSpace(3, 1.1).duality_map(np.array([0.0, 2.0, -1e-12])))

# %% [markdown]
# phi(x, y) = ||x||^2 - 2 <x, Jy> + ||y||^2.  Near the diagonal the
# three-term formula cancels; the library evaluates it from relative
# differences instead.

# %%
y = np.array([1.0, 0.0])
print("phi(x, y) =", E.bregman_phi(x, y), " closed form", 2 ** (4 / 3) - 1)
for eps in (1e-2, 1e-5, 1e-8):
    z = x + eps * np.array([0.3, -0.7])
    naive = E.norm(x) ** 2 - 2 * E.pairing(x, E.duality_map(z)) + E.norm(z) ** 2
    print(f"eps={eps:.0e}  stable {E.bregman_phi(x, z):.6e}  naive {naive:.6e}")

# %% [markdown]
# Sampled moduli sit below (rho) or above (delta) the true values; the
# analytic ceiling tau^p/p dominates rho for 1 < p < 2.

# %%
sampler = SamplerConfig(seed=0, count=4000)
taus = np.array([0.01, 0.1, 0.5, 1.0, 2.0])
est = modulus_smoothness_table(E, taus, sampler)
for t, e, c, ex in zip(taus, est, rho_ceiling(E, taus), rho_exact_lp(E.p, taus)):
    print(f"tau={t:<5} estimate {e:.6f}  exact {ex:.6f}  ceiling {c:.6f}")
print("K_est", smoothness_constant_estimate(E, taus, sampler), "ceiling", 1 / E.q_smooth)
for eps in (0.5, 1.0, 2.0):
    print(f"delta({eps}) <= {modulus_convexity_estimate(E, eps, sampler):.6f}")
