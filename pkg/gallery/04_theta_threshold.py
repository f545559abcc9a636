# %% [markdown]
# Where the restricted-prime margin changes sign

# %%
import numpy as np

from weighted_sieve.bounds import theorem2_margin, theorem2_threshold

# %%
thetas = np.round(np.arange(0.93, 1.0001, 0.005), 3)
margins = [theorem2_margin(t).combined for t in thetas]
for t, m in zip(thetas, margins):
    print(f"{t:.3f}  {m:+.6f}  {'#' * max(0, int(m * 200))}")

# %%
star = theorem2_threshold()
print("threshold:", star)
print("margin there:", theorem2_margin(star).combined)
