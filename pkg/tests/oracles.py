"""Slow, independent reference implementations used only by the tests."""
from __future__ import annotations

import math

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Prime factors of n with multiplicity, by trial division."""
    out, d = [], 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def squarefree_by_scan(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def a1_class_ok(a: int, b: int, N: int, p: int) -> bool:
    """Residue-class form: p = N a^-1 + k b (mod b^2) for some k coprime to b."""
    if b == 1:
        return True
    inv = pow(a, -1, b * b)
    return any(
        (p - N * inv - k * b) % (b * b) == 0
        for k in range(b)
        if math.gcd(k, b) == 1
    )


def naive_count(a, b, N, variant="base", theta=None, kappa=None, c=None, d=None, r=2,
                residue_classes=False):
    """Enumerate primes p and test every predicate directly."""
    count = 0
    for p in range(2, N // a + 1):
        if a * p >= N or not is_prime(p):
            continue
        rem = N - a * p
        if variant == "prime_prime":
            if rem % b == 0 and is_prime(rem // b):
                count += 1
            continue
        if math.gcd(p, a * b * N) != 1:
            continue
        if theta is not None and a * p > N ** theta:
            continue
        if c is not None and (p - d) % c:
            continue
        if residue_classes:
            if not a1_class_ok(a, b, N, p):
                continue
            m = rem // b
        else:
            if rem % b:
                continue
            m = rem // b
            if math.gcd(m, b) != 1:
                continue
        if m <= 1:
            continue
        f = prime_factors(m)
        if len(set(f)) != len(f) or len(f) > r:
            continue
        if c is not None and math.gcd(m, c) != 1:
            continue
        if kappa is not None:
            lo, hi = N / 2 - N ** kappa, N / 2 + N ** kappa
            if not (lo <= p <= hi and lo <= m <= hi):
                continue
        count += 1
    return count


def naive_rough(lo: int, hi: int, z: float) -> int:
    """Integers in [lo, hi] with no prime factor below z."""
    small = [p for p in range(2, math.ceil(z)) if p < z and is_prime(p)]
    return sum(1 for n in range(lo, hi + 1) if all(n % p for p in small))


def simpson(func, a: float, b: float, n: int = 2000) -> float:
    if b <= a:
        return 0.0
    n += n % 2
    x = np.linspace(a, b, n + 1)
    y = np.array([func(t) for t in x])
    return (b - a) / (3 * n) * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum())


def simpson_F(s: float, n: int = 600) -> float:
    """F(s) on 5 <= s <= 7 from its formula, by nested Simpson rules."""
    L = math.log

    def inner(t):
        return simpson(lambda u: L((u - 1) / (t + 1)) / u, t + 2, s - 1, n)

    bracket = (1 + simpson(lambda t: L(t - 1) / t, 2, s - 1, n)
               + simpson(lambda t: L(t - 1) / t * inner(t), 2, s - 3, n))
    return 2 * math.exp(0.57721566490153286060651209) / s * bracket


def simpson_f(s: float, n: int = 600) -> float:
    """f(s) on 4 <= s <= 6 from its formula, by nested Simpson rules."""
    L = math.log

    def inner(t):
        return simpson(lambda u: L(u - 1) / u, 2, t - 1, n)

    bracket = L(s - 1) + simpson(lambda t: inner(t) / t, 3, s - 1, n)
    return 2 * math.exp(0.57721566490153286060651209) / s * bracket
