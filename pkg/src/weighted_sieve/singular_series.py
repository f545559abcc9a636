"""Singular series C(m) and the leading-order representation prediction.

C(m) = prod_{p | m, p > 2} (p-1)/(p-2) * prod_{p > 2} (1 - 1/(p-1)^2).

Only leading-order quantities are computed here: the (1 + o(1)) factors of
the asymptotic statements are dropped, so every comparison against a count
is a leading-order comparison.  Logarithms are natural.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .errors import DomainError
from .primes import factorize, primes_up_to

# Largest cutoff for which the plain partial product is used.
_DIRECT_LIMIT = 1 << 21
# Cutoff of the partial product when the tail is summed through prime zeta values.
_SERIES_CUTOFF = 10_000


@dataclass(frozen=True)
class TwinConstant:
    value: float
    abs_error: float
    cutoff: int


@dataclass(frozen=True)
class SingularSeries:
    modulus: int
    odd_prime_factors: tuple[int, ...]
    local_factor: float
    twin_constant: float
    twin_abs_error: float
    value: float
    local_factor_exact: Fraction = field(repr=False, default=Fraction(1))


def _partial_log(cutoff: int) -> float:
    p = primes_up_to(cutoff)[1:].astype(float)
    return float(np.sum(np.log1p(-1.0 / (p - 1.0) ** 2)))


def _series_tail(cutoff: int, eps: float) -> tuple[float, float]:
    """log prod_{p > cutoff} (1 - 1/(p-1)^2) via prime zeta values.

    log(1 - 1/(p-1)^2) = -sum_{k>=2} (2^k - 2)/k p^-k, and the prime sums
    sum_{p > cutoff} p^-k come from P(k) minus the finite part.  Returns the
    tail and a bound on the truncation error.
    """
    # terms decay like (2/cutoff)^k; pick K so the remainder is below eps/10
    ratio = 2.0 / cutoff
    K = 2
    while cutoff * ratio ** (K + 1) / (1.0 - ratio) > eps / 10.0:
        K += 1
    small = [int(p) for p in primes_up_to(cutoff)]
    with mpmath.workdps(40 + 5 * K):
        total = mpmath.mpf(0)
        for k in range(2, K + 1):
            head = mpmath.fsum(mpmath.mpf(p) ** -k for p in small)
            tail_k = mpmath.primezeta(k) - head
            total -= (mpmath.mpf(2) ** k - 2) / k * tail_k
        trunc = cutoff * ratio ** (K + 1) / (1.0 - ratio)
        return float(total), trunc


@lru_cache(maxsize=64)
def twin_prime_constant(eps: float) -> TwinConstant:
    """prod_{p>2} (1 - 1/(p-1)^2) with absolute error at most ``eps``.

    For moderate ``eps`` this is the partial product over p <= P with the
    elementary tail bound (relative tail below 2/(P-1)).  When that P would be
    too large to sieve, the tail beyond 10^4 is summed from prime zeta values.
    """
    eps = float(eps)
    if not eps > 0.0:
        raise DomainError("eps must be positive")
    cutoff = max(1000, math.ceil(2.0 / eps) + 1)
    if cutoff <= _DIRECT_LIMIT:
        value = math.exp(_partial_log(cutoff))
        return TwinConstant(value, value * 2.0 / (cutoff - 1), cutoff)
    tail, trunc = _series_tail(_SERIES_CUTOFF, eps)
    value = math.exp(_partial_log(_SERIES_CUTOFF) + tail)
    # truncation error plus rounding in the float sum of the partial product
    err = value * trunc + 1e-15
    return TwinConstant(value, err, _SERIES_CUTOFF)


def odd_local_factor(primes) -> Fraction:
    out = Fraction(1)
    for p in primes:
        if p > 2:
            out *= Fraction(p - 1, p - 2)
    return out


def singular_coefficient(m: int, eps: float = 1e-12) -> SingularSeries:
    """C(m) for a positive integer modulus m."""
    m = int(m)
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    odd = tuple(p for p, _ in factorize(m) if p > 2)
    exact = odd_local_factor(odd)
    local = float(exact)
    twin = twin_prime_constant(eps)
    return SingularSeries(
        modulus=m,
        odd_prime_factors=odd,
        local_factor=local,
        twin_constant=twin.value,
        twin_abs_error=twin.abs_error,
        value=local * twin.value,
        local_factor_exact=exact,
    )


def ap_factor_exact(c: int, N: int) -> Fraction:
    if c < 1 or N < 1:
        raise DomainError("ap_factor needs c >= 1 and N >= 1")
    return odd_local_factor(p for p, _ in factorize(c) if N % p)


def ap_factor(c: int, N: int) -> float:
    """prod (p-1)/(p-2) over odd primes p dividing c but not N."""
    return float(ap_factor_exact(int(c), int(N)))


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out -= out // p
    return out


def is_squarefree_int(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n))


EXPONENT_MODES = ("full", "theta", "interval")


@dataclass(frozen=True)
class PredictionInput:
    a: int
    b: int
    N: int
    coefficient: float = 1.0
    exponent_mode: str = "full"
    exponent: float | None = None
    ap_modulus: int | None = None

    def __post_init__(self):
        a, b, N = self.a, self.b, self.N
        if a < 1 or b < 1 or N < 1:
            raise DomainError("a, b and N must be positive")
        if not is_squarefree_int(a):
            raise DomainError(f"a={a} is not squarefree")
        if not is_squarefree_int(b):
            raise DomainError(f"b={b} is not squarefree")
        if math.gcd(a, b) != 1:
            raise DomainError("gcd(a, b) must be 1")
        if math.gcd(N, a * b) != 1:
            raise DomainError("gcd(N, ab) must be 1")
        if self.exponent_mode not in EXPONENT_MODES:
            raise DomainError(f"exponent_mode must be one of {EXPONENT_MODES}")
        if self.exponent_mode != "full":
            x = self.exponent
            if x is None or not 0.0 < x <= 1.0:
                raise DomainError(f"{self.exponent_mode} exponent must lie in (0, 1]")
        if self.ap_modulus is not None and self.ap_modulus < 1:
            raise DomainError("ap_modulus must be positive")


def predicted_count(q: PredictionInput, eps: float = 1e-12) -> float:
    """coefficient * C(abN) * X / (ab log^2 N), X = N, N^theta or N^kappa.

    With an ap_modulus c the value is divided by phi(c) and multiplied by
    ap_factor(c, N).
    """
    if q.N < 3:
        raise DomainError("predicted_count needs N >= 3")
    X = float(q.N) if q.exponent_mode == "full" else float(q.N) ** q.exponent
    C = singular_coefficient(q.a * q.b * q.N, eps).value
    out = q.coefficient * C * X / (q.a * q.b * math.log(q.N) ** 2)
    if q.ap_modulus is not None:
        out = out * ap_factor(q.ap_modulus, q.N) / euler_phi(q.ap_modulus)
    return out
