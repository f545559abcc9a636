# %% [markdown]
# Upper and lower sieve functions
# F and f are built branch by branch from nested integrals; w is Buchstab's
# function, continued numerically past u = 3.

# %%
import math

import numpy as np

from weighted_sieve.sieve_functions import EULER_GAMMA, buchstab_w, lower_f, upper_F

# %%
# F(2) is e^gamma exactly, and both functions approach 1 from either side
print("F(2) =", upper_F(2.0).value, " e^gamma =", math.exp(EULER_GAMMA))
for s in (2.5, 3.0, 4.0, 5.0, 6.0, 7.0):
    F, f = upper_F(s), lower_f(s)
    print(f"s={s:3.1f}  F={F.value:.10f} (+-{F.abs_error:.1e})  f={f.value:.10f}")

# %%
# the gap F - f closes quickly; it is what makes a weighted sieve pay off
s = np.arange(2.0, 7.01, 0.5)
gap = [upper_F(v).value - lower_f(v).value for v in s]
print(np.round(gap, 6))

# %%
# Buchstab's function oscillates around e^-gamma with rapidly shrinking amplitude
for u in (2, 3, 4, 5, 6, 8, 10):
    print(u, f"{buchstab_w(u).value:.10f}", f"{buchstab_w(u).value - math.exp(-EULER_GAMMA):+.2e}")
