# %% [markdown]
# Exact counts at desk scale
# N = a p + b m with m squarefree and at most r prime factors.

# %%
from weighted_sieve.counting import RepresentationQuery, count_representations, empirical_ratio

# %%
res = count_representations(RepresentationQuery(1, 1, 100), witnesses=True)
print(res.count, res.witnesses)

# %%
# the ratio to C(N) N / log^2 N; asymptotics are slow, so this is only a diagnostic
for N in (10**4, 10**5, 10**6, 10**7):
    q = RepresentationQuery(1, 1, N)
    print(N, count_representations(q).count, round(empirical_ratio(q), 4))

# %%
# variants share one counter
N = 10**6
for q in (
    RepresentationQuery(1, 1, N, variant="small_prime", theta=0.9409),
    RepresentationQuery(1, 1, N, variant="short_interval", kappa=0.8),
    RepresentationQuery(1, 1, N, variant="progression", c=4, d=1),
    RepresentationQuery(1, 1, N, variant="prime_prime"),
    RepresentationQuery(1, 1, N, variant="generalized", r=3),
    RepresentationQuery(2, 3, N + 1),
):
    r = count_representations(q, segments=4, workers=2)
    print(f"{q.variant:22s} a={q.a} b={q.b}  {r.count:7d}  {r.elapsed:.2f}s  {' '.join(r.notes)}")
