# %% [markdown]
# Reproducing the weighted-sieve constants
# Each bound is a weighted sum of integrals; the breakdown keeps every term.

# %%
from weighted_sieve import bounds, golden

# %%
b1 = bounds.theorem1_bound()
for name, value in b1.components.items():
    print(f"{name:5s} {float(b1.weights[name]):+4.0f}  {value:.7f}")
print("positive", b1.positive_total, "negative", b1.negative_total)
print("combined lower constant", b1.combined)

# %%
# compare with the published values; the combined constant lands a little above the quoted window
for row in golden.THEOREM1_ROWS:
    v = golden.breakdown_value(b1, row.name)
    print(f"{row.name:9s} printed {row.printed:>10s}  computed {v:.7f}  {'ok' if row.passes(v) else 'outside band'}")

# %%
# the restricted-prime version at the smallest admissible exponent has almost no room left
b2 = bounds.theorem2_margin(0.9409)
print("margin before /4:", b2.weighted_sum, " after:", b2.combined)

# %%
b5 = bounds.theorem5_upper()
print({k: round(v, 6) for k, v in b5.components.items()}, b5.combined, b5.notes)
