# %% [markdown]
# Rough numbers against Buchstab's approximation w(u) x / log z

# %%
import math

from weighted_sieve.counting import count_rough
from weighted_sieve.sieve_functions import buchstab_w

# %%
x = 10**7
for u in (2.0, 2.5, 3.0, 4.0, 5.0):
    z = x ** (1 / u)
    exact = count_rough(x, z=z)
    model = buchstab_w(u).value * x / math.log(z)
    print(f"u={u:3.1f}  z={z:10.1f}  exact={exact:8d}  model={model:10.1f}  ratio={exact / model:.4f}")

# %%
# the same in a short window (x - y, x]
y = int(x**0.8)
z = x ** (1 / 3)
exact = count_rough(x, y, z, mode="interval")
print(exact, buchstab_w(3.0).value * y / math.log(z))
