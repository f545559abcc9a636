"""Small prime-table helpers shared by the series and counting modules."""
from __future__ import annotations

from functools import lru_cache
import math

import numpy as np


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (odd-only sieve of Eratosthenes)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    # index i stands for 2*i + 1
    size = (n - 1) // 2 + 1
    sieve = np.ones(size, dtype=bool)
    sieve[0] = False
    for i in range(1, (math.isqrt(n) - 1) // 2 + 1):
        if sieve[i]:
            p = 2 * i + 1
            sieve[p * p // 2 :: p] = False
    odd = 2 * np.flatnonzero(sieve).astype(np.int64) + 1
    return np.concatenate((np.array([2], dtype=np.int64), odd))


@lru_cache(maxsize=8)
def _cached_small_primes(n: int) -> tuple[int, ...]:
    return tuple(int(p) for p in primes_up_to(n))


def small_primes(n: int = 1000) -> tuple[int, ...]:
    return _cached_small_primes(n)


def factorize(m: int) -> list[tuple[int, int]]:
    """Prime factorization of m >= 1 by trial division, as (prime, exponent)."""
    out = []
    for p in small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    else:
        # continue on the 6k-1, 6k+1 wheel past the table
        d = small_primes()[-1] + 1
        d += (5 - d) % 6
        while d * d <= m:
            for q in (d, d + 2):
                if m % q == 0:
                    e = 0
                    while m % q == 0:
                        m //= q
                        e += 1
                    out.append((q, e))
            d += 6
    if m > 1:
        out.append((m, 1))
    return out
