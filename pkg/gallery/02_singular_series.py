# %% [markdown]
# The twin-prime constant and the singular series C(m)

# %%
from weighted_sieve.singular_series import (
    PredictionInput,
    predicted_count,
    singular_coefficient,
    twin_prime_constant,
)

# %%
# coarse requests stop at a short partial product, tight ones add a prime-zeta tail
for eps in (1e-3, 1e-6, 1e-10):
    t = twin_prime_constant(eps)
    print(f"eps={eps:.0e}  C={t.value:.15f}  err<={t.abs_error:.1e}  cutoff={t.cutoff}")

# %%
# only the odd primes dividing m matter, each contributing (p-1)/(p-2)
for m in (2**10, 30, 210, 2310, 9 * 49):
    s = singular_coefficient(m)
    print(m, s.odd_prime_factors, s.local_factor_exact, round(s.value, 12))

# %%
# the main term the lower bound is measured against
for N in (10**4, 10**6, 10**8):
    q = PredictionInput(1, 1, N, coefficient=0.8671)
    print(N, round(predicted_count(q), 3))
