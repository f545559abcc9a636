"""Exact counts of representations N = a p + b m at desk scale.

The prime p runs through a segmented sieve.  For each segment the matching
cofactors m = (N - a p)/b fill a contiguous range, which is sieved once by
the base primes to get the squarefree flag and the number of prime factors
of every m in the range.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .primes import factorize, primes_up_to
from .singular_series import PredictionInput, is_squarefree_int, predicted_count

SEGMENT = 1 << 20
SEARCH_LIMIT = 200_000_000
WITNESS_LIMIT = 1_000_000

VARIANTS = (
    "base",
    "small_prime",
    "short_interval",
    "progression",
    "progression_small_prime",
    "progression_interval",
    "prime_prime",
    "generalized",
)

_NEEDS = {
    "base": (),
    "small_prime": ("theta",),
    "short_interval": ("kappa",),
    "progression": ("c", "d"),
    "progression_small_prime": ("theta", "c", "d"),
    "progression_interval": ("kappa", "c", "d"),
    "prime_prime": (),
    "generalized": (),
}


@dataclass(frozen=True)
class RepresentationQuery:
    a: int
    b: int
    N: int
    variant: str = "base"
    theta: float | None = None
    kappa: float | None = None
    c: int | None = None
    d: int | None = None
    r: int = 2

    def __post_init__(self):
        a, b, N = self.a, self.b, self.N
        if self.variant not in VARIANTS:
            raise DomainError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
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
        if a % 2 and b % 2 and N % 2:
            raise DomainError("N must be even when a and b are both odd")
        if self.r < 1:
            raise DomainError("r must be >= 1")
        needs = _NEEDS[self.variant]
        for name in ("theta", "kappa", "c", "d"):
            given = getattr(self, name) is not None
            if given and name not in needs:
                raise DomainError(f"parameter {name} does not apply to variant {self.variant}")
            if not given and name in needs:
                raise DomainError(f"variant {self.variant} needs parameter {name}")
        for name in ("theta", "kappa"):
            v = getattr(self, name)
            if v is not None and not 0.0 < v <= 1.0:
                raise DomainError(f"{name} must lie in (0, 1]")
        if self.c is not None:
            if self.c < 1:
                raise DomainError("c must be positive")
            if math.gcd(self.c, self.d) != 1:
                raise DomainError("gcd(c, d) must be 1")
        if self.search_bound() > SEARCH_LIMIT:
            raise DomainError(f"search bound {self.search_bound()} exceeds {SEARCH_LIMIT}")

    def search_bound(self) -> int:
        return max(self.N // self.a, self.N // self.b)

    @property
    def interval(self) -> tuple[int, int] | None:
        """Integer endpoints of [N/2 - N^kappa, N/2 + N^kappa]."""
        if self.kappa is None:
            return None
        w = float(self.N) ** self.kappa
        return math.ceil(self.N / 2 - w), math.floor(self.N / 2 + w)

    def p_range(self) -> tuple[int, int]:
        lo, hi = 2, (self.N - 1) // self.a
        if self.theta is not None:
            cap = self.N if self.theta == 1.0 else float(self.N) ** self.theta
            hi = min(hi, math.floor(cap / self.a))
        if self.kappa is not None:
            i_lo, i_hi = self.interval
            lo, hi = max(lo, i_lo), min(hi, i_hi)
        return lo, hi


@dataclass(frozen=True)
class CountResult:
    count: int
    witnesses: list[tuple[int, int]] | None
    elapsed: float
    query: RepresentationQuery
    notes: tuple[str, ...] = field(default=())


@dataclass(frozen=True)
class FactorTable:
    limit: int
    smallest_prime_factor: np.ndarray


def build_factor_table(limit: int) -> FactorTable:
    """Least-prime-factor table over [0, limit] (entries 0 and 1 are 0)."""
    limit = int(limit)
    if not 2 <= limit <= SEARCH_LIMIT:
        raise DomainError(f"limit must lie in [2, {SEARCH_LIMIT}]")
    spf = np.zeros(limit + 1, dtype=np.uint32)
    spf[2::2] = 2
    for p in primes_up_to(math.isqrt(limit))[1:]:
        p = int(p)
        view = spf[p * p :: p]
        view[view == 0] = p
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    return FactorTable(limit, spf)


def _prime_factors(n: int, table: FactorTable | None) -> list[tuple[int, int]]:
    if table is None or n > table.limit:
        return factorize(n)
    spf = table.smallest_prime_factor
    out: list[tuple[int, int]] = []
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return out


def omega_multiplicity(n: int, table: FactorTable | None = None) -> int:
    """Number of prime factors of n counted with multiplicity."""
    if n < 1:
        raise DomainError("omega_multiplicity needs n >= 1")
    return sum(e for _, e in _prime_factors(int(n), table))


def is_squarefree(n: int, table: FactorTable | None = None) -> bool:
    if n < 1:
        raise DomainError("is_squarefree needs n >= 1")
    return all(e == 1 for _, e in _prime_factors(int(n), table))


def _segment_primes(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Primes in [lo, hi] using base primes up to sqrt(hi)."""
    lo = max(lo, 2)
    if hi < lo:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(hi - lo + 1, dtype=bool)
    for p in base:
        p = int(p)
        if p * p > hi:
            break
        start = max(p * p, -(-lo // p) * p)
        flags[start - lo :: p] = False
    return np.flatnonzero(flags).astype(np.int64) + lo


def _cofactor_info(lo: int, hi: int, base: np.ndarray):
    """Squarefree flags and Omega of squarefree m for m in [lo, hi].

    Omega is exact for squarefree m: one count per distinct base prime plus
    one when a prime above sqrt(m) is left over.
    """
    n = hi - lo + 1
    resid = np.arange(lo, hi + 1, dtype=np.int64)
    omega = np.zeros(n, dtype=np.int16)
    sqfree = np.ones(n, dtype=bool)
    for p in base:
        p = int(p)
        if p * p > hi:
            break
        start = -(-lo // p) * p
        sl = slice(start - lo, None, p)
        omega[sl] += 1
        resid[sl] //= p
        pp = p * p
        start2 = -(-lo // pp) * pp
        sqfree[start2 - lo :: pp] = False
    return sqfree, omega + (resid > 1)


def _prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)] if n > 1 else []


def _count_range(q: RepresentationQuery, lo: int, hi: int, base: np.ndarray, keep: bool):
    a, b, N = q.a, q.b, q.N
    bad_p = _prime_divisors(a * b * N)
    b_primes = _prime_divisors(b)
    c_primes = _prime_divisors(q.c) if q.c is not None else []
    m_window = q.interval
    width = max(1, SEGMENT // a)
    total = 0
    found: list[tuple[int, int]] = []
    for start in range(lo, hi + 1, width):
        end = min(hi, start + width - 1)
        ps = _segment_primes(start, end, base)
        if q.variant != "prime_prime":
            for r in bad_p:
                ps = ps[ps != r]
        if q.c is not None:
            ps = ps[ps % q.c == q.d % q.c]
        rem = N - a * ps
        ps, rem = ps[rem % b == 0], rem[rem % b == 0]
        ms = rem // b
        keep_m = ms > 1
        ps, ms = ps[keep_m], ms[keep_m]
        if m_window is not None:
            inside = (ms >= m_window[0]) & (ms <= m_window[1])
            ps, ms = ps[inside], ms[inside]
        if ms.size == 0:
            continue
        m_lo, m_hi = int(ms.min()), int(ms.max())
        sqfree, big_omega = _cofactor_info(m_lo, m_hi, base)
        idx = ms - m_lo
        if q.variant == "prime_prime":
            ok = sqfree[idx] & (big_omega[idx] == 1)
        else:
            ok = sqfree[idx] & (big_omega[idx] <= q.r)
            for r in b_primes + c_primes:
                ok &= ms % r != 0
        total += int(ok.sum())
        if keep:
            found.extend(zip(ps[ok].tolist(), ms[ok].tolist()))
    return total, found


def _split(lo: int, hi: int, k: int) -> list[tuple[int, int]]:
    if hi < lo:
        return []
    edges = np.linspace(lo, hi + 1, k + 1).astype(np.int64)
    return [(int(edges[i]), int(edges[i + 1]) - 1) for i in range(k) if edges[i + 1] > edges[i]]


def count_representations(q: RepresentationQuery, witnesses: bool = False,
                          segments: int = 1, workers: int = 1) -> CountResult:
    """Exact count of primes p in the variant's range with a valid cofactor.

    ``segments`` splits the p range into that many contiguous pieces, handed
    to ``workers`` threads; the result does not depend on either.
    """
    if segments < 1 or workers < 1:
        raise DomainError("segments and workers must be positive")
    t0 = time.perf_counter()
    lo, hi = q.p_range()
    base = primes_up_to(math.isqrt(max(hi, q.N // q.b, 4)) + 1)
    keep = witnesses and q.N <= WITNESS_LIMIT
    pieces = _split(lo, hi, segments)
    if workers > 1 and len(pieces) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda pr: _count_range(q, pr[0], pr[1], base, keep), pieces))
    else:
        parts = [_count_range(q, pl, ph, base, keep) for pl, ph in pieces]
    count = sum(n for n, _ in parts)
    found = [w for _, ws in parts for w in ws] if keep else None
    notes = []
    if q.kappa is not None:
        notes.append("short interval constraint applied to both p and (N-ap)/b")
    if witnesses and not keep:
        notes.append(f"witnesses are kept only for N <= {WITNESS_LIMIT}")
    return CountResult(count, found, time.perf_counter() - t0, q, tuple(notes))


def count_rough(x: int, y: int | None = None, z: float = 2.0, mode: str = "tail") -> int:
    """Integers with no prime factor below z, in [1, x] or in (x - y, x]."""
    x = int(x)
    z = float(z)
    if mode not in ("tail", "interval"):
        raise DomainError("mode must be 'tail' or 'interval'")
    if not 2.0 <= z <= x:
        raise DomainError("count_rough needs 2 <= z <= x")
    if x > 10 * SEARCH_LIMIT:
        raise DomainError(f"x exceeds {10 * SEARCH_LIMIT}")
    if mode == "tail":
        lo = 1
    else:
        if y is None or not 0 <= y <= x:
            raise DomainError("interval mode needs 0 <= y <= x")
        lo = math.floor(x - y) + 1
    sifting = primes_up_to(math.ceil(z))
    sifting = sifting[sifting < z]
    total = 0
    for start in range(lo, x + 1, SEGMENT):
        end = min(x, start + SEGMENT - 1)
        flags = np.ones(end - start + 1, dtype=bool)
        for p in sifting:
            p = int(p)
            first = -(-start // p) * p
            flags[first - start :: p] = False
        total += int(flags.sum())
    return total


def as_prediction(q: RepresentationQuery, coefficient: float = 1.0) -> PredictionInput:
    if q.theta is not None:
        mode, expo = "theta", q.theta
    elif q.kappa is not None:
        mode, expo = "interval", q.kappa
    else:
        mode, expo = "full", None
    return PredictionInput(q.a, q.b, q.N, coefficient, mode, expo, q.c)


def empirical_ratio(q: RepresentationQuery, coefficient: float = 1.0, **kwargs) -> float:
    """count / predicted_count; a diagnostic only, never a test of the theorems."""
    predicted = predicted_count(as_prediction(q, coefficient))
    if predicted == 0:
        raise DomainError("predicted count is zero")
    return count_representations(q, **kwargs).count / predicted
