"""Linear-sieve functions F, f and the Buchstab function w.

F and f are evaluated from their piecewise closed forms on 0 < s <= 7 and
0 < s <= 8.  The innermost one-dimensional integral

    I(x) = int_2^x log(t - 1) / t dt

has the dilogarithm form log(x-1) log(x) + Li2(1-x) + pi^2/12, which removes
one level of nesting from every branch.  The remaining integrals go through
``scipy.integrate.quad``.

w(u) is exact on [1, 3] and continued past u = 3 by fixed-step trapezoidal
integration of (u w(u))' = w(u - 1) on a uniform grid whose history is cached.
"""
from __future__ import annotations

import math
import sys
import threading
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import spence

from .errors import DomainError

# Euler's constant to 40 significant digits.
EULER_GAMMA = 0.5772156649015328606065120900824024310422
EXP_GAMMA = math.exp(EULER_GAMMA)
TWO_EXP_GAMMA = 2.0 * EXP_GAMMA

INNER_TOL = 1e-12
OUTER_TOL = 1e-10

# relative rounding allowance attached to closed-form values
_ROUND = 8 * sys.float_info.epsilon

F_MAX = 7.0
f_MAX = 8.0


@dataclass(frozen=True)
class SieveFunctionValue:
    value: float
    abs_error: float

    def __float__(self) -> float:
        return self.value


def _quad(func, a, b, tol):
    if b <= a:
        return 0.0, 0.0
    if b - a < 1e-3:
        # the integrands vanish at one end of these short ranges; QUADPACK's
        # relative test is unreachable there, so use Simpson's rule directly
        fa, fm, fb = func(a), func(0.5 * (a + b)), func(b)
        simpson = (b - a) * (fa + 4.0 * fm + fb) / 6.0
        return simpson, abs(simpson - (b - a) * fm)
    val, err = quad(func, a, b, epsabs=tol, epsrel=tol, limit=200)
    return val, err


def log_ratio_integral(x: float) -> float:
    """Closed form of int_2^x log(t-1)/t dt for x >= 2."""
    if x <= 2.0:
        return 0.0
    return math.log(x - 1.0) * math.log(x) + float(spence(x)) + math.pi ** 2 / 12.0


def _check_arg(s: float, hi: float, name: str) -> float:
    s = float(s)
    if not math.isfinite(s) or s <= 0.0 or s > hi:
        raise DomainError(f"{name} requires 0 < s <= {hi:g}, got {s!r}")
    return s


def _F_bracket(s: float, tol: float) -> tuple[float, float]:
    """Bracketed factor B(s) with F(s) = 2 e^gamma B(s) / s."""
    if s <= 3.0:
        return 1.0, 0.0
    base = 1.0 + log_ratio_integral(s - 1.0)
    if s <= 5.0:
        return base, _ROUND * base
    i_top = log_ratio_integral(s - 1.0)

    def inner(t):
        # int_{t+2}^{s-1} log((u-1)/(t+1)) du / u, in closed form
        g = i_top - log_ratio_integral(t + 2.0) - math.log(t + 1.0) * math.log((s - 1.0) / (t + 2.0))
        return math.log(t - 1.0) / t * g

    extra, err = _quad(inner, 2.0, s - 3.0, tol)
    total = base + extra
    return total, err + _ROUND * total


def _f_bracket(s: float, tol: float) -> tuple[float, float]:
    """Bracketed factor b(s) with f(s) = 2 e^gamma b(s) / s."""
    if s <= 2.0:
        return 0.0, 0.0
    lead = math.log(s - 1.0)
    if s <= 4.0:
        return lead, _ROUND * lead
    second, err = _quad(lambda t: log_ratio_integral(t - 1.0) / t, 3.0, s - 1.0, tol)
    total = lead + second
    if s <= 6.0:
        return total, err + _ROUND * total
    third, err3 = _f_third(s, tol)
    total += third
    return total, err + err3 + _ROUND * total


def _f_third(s: float, tol: float) -> tuple[float, float]:
    # The last factor is log((s-1)/(u+1)), the kernel produced by integrating
    # (s f)' = F(s-1) from 6; log(s/(u+2)) breaks that identity by ~1e-5.
    inner_tol = tol * (INNER_TOL / OUTER_TOL)
    worst = [0.0]

    def inner(t):
        lt = math.log(t + 1.0)
        val, err = _quad(
            lambda u: (math.log(u - 1.0) - lt) * math.log((s - 1.0) / (u + 1.0)) / u,
            t + 2.0,
            s - 2.0,
            inner_tol,
        )
        worst[0] = max(worst[0], err)
        return math.log(t - 1.0) / t * val

    val, err = _quad(inner, 2.0, s - 4.0, tol)
    # the outer weight log(t-1)/t stays below 0.3 on the range
    return val, err + 0.3 * (s - 6.0) * worst[0]


def upper_F(s: float, tol: float = OUTER_TOL) -> SieveFunctionValue:
    """Upper linear-sieve function F(s) for 0 < s <= 7."""
    s = _check_arg(s, F_MAX, "upper_F")
    bracket, err = _F_bracket(s, tol)
    scale = TWO_EXP_GAMMA / s
    value = scale * bracket
    return SieveFunctionValue(value, scale * err + _ROUND * value)


def lower_f(s: float, tol: float = OUTER_TOL) -> SieveFunctionValue:
    """Lower linear-sieve function f(s) for 0 < s <= 8; zero on (0, 2]."""
    s = _check_arg(s, f_MAX, "lower_f")
    bracket, err = _f_bracket(s, tol)
    scale = TWO_EXP_GAMMA / s
    value = scale * bracket
    return SieveFunctionValue(value, scale * err + _ROUND * value)


class _BuchstabGrid:
    """Cached trapezoidal solution of (u w)' = w(u-1) on unit blocks.

    Block k covers [k, k+1] with ``steps`` intervals.  Blocks 1 and 2 are
    filled from the exact solution; later blocks integrate the previous one.
    Extensions only append, so concurrent callers see identical entries.
    """

    def __init__(self, steps: int):
        self.steps = steps
        self.h = 1.0 / steps
        self._lock = threading.Lock()
        frac = np.linspace(0.0, 1.0, steps + 1)
        u2 = 2.0 + frac
        w2 = np.empty_like(u2)
        w2[0] = 0.5
        w2[1:] = (1.0 + np.log(u2[1:] - 1.0)) / u2[1:]
        self._frac = frac
        self._y = {2: u2 * w2}
        self._w = {2: w2}

    def _extend(self, k: int) -> None:
        with self._lock:
            top = max(self._w)
            while top < k:
                prev = self._w[top]
                incr = np.concatenate(([0.0], np.cumsum(0.5 * self.h * (prev[1:] + prev[:-1]))))
                y = self._y[top][-1] + incr
                u = top + 1 + self._frac
                self._y[top + 1] = y
                self._w[top + 1] = y / u
                top += 1

    def _history(self, k: int, x: float) -> float:
        # w at k + x, 0 <= x <= 1, for an already filled block
        if k == 2:
            return (1.0 + math.log(1.0 + x)) / (2.0 + x) if x > 0 else 0.5
        pos = x * self.steps
        j = min(int(pos), self.steps - 1)
        d = pos - j
        w = self._w[k]
        return (1.0 - d) * w[j] + d * w[j + 1]

    def value(self, u: float) -> float:
        k = math.ceil(u) - 1
        if k not in self._w:
            self._extend(k)
        pos = (u - k) * self.steps
        j = min(int(pos), self.steps)
        d = (pos - j) * self.h
        y = self._y[k][j]
        if d > 0.0:
            x0 = j * self.h
            y += 0.5 * d * (self._w[k - 1][j] + self._history(k - 1, x0 + d))
        return float(y) / u


_GRIDS: dict[int, _BuchstabGrid] = {}
_GRIDS_LOCK = threading.Lock()
W_MAX = 1000.0


def _grid(steps: int) -> _BuchstabGrid:
    with _GRIDS_LOCK:
        g = _GRIDS.get(steps)
        if g is None:
            g = _GRIDS[steps] = _BuchstabGrid(steps)
    return g


def buchstab_w(u: float, step: float = 1e-4) -> SieveFunctionValue:
    """Buchstab function w(u) for 1 <= u <= 1000.

    The error estimate for u > 3 compares the step-``step`` solution with the
    one at twice the step (trapezoid error scales as step^2).
    """
    u = float(u)
    if not math.isfinite(u) or u < 1.0 or u > W_MAX:
        raise DomainError(f"buchstab_w requires 1 <= u <= {W_MAX:g}, got {u!r}")
    if u <= 2.0:
        v = 1.0 / u
        return SieveFunctionValue(v, _ROUND * v)
    if u <= 3.0:
        v = (1.0 + math.log(u - 1.0)) / u
        return SieveFunctionValue(v, _ROUND * v)
    steps = max(2, round(1.0 / step))
    steps += steps % 2
    fine = _grid(steps).value(u)
    coarse = _grid(steps // 2).value(u)
    err = 2.0 * abs(fine - coarse) / 3.0 + _ROUND * fine
    return SieveFunctionValue(fine, err)


def delay_identity_residual(s: float, h: float) -> float:
    """Central-difference residual of (sF)' = f(s-1) and (sf)' = F(s-1)."""
    s, h = float(s), float(h)
    if not (h > 0.0 and 2.0 + h < s and s + h <= F_MAX):
        raise DomainError(f"delay_identity_residual needs 2 + h < s and s + h <= {F_MAX:g}")
    hi, lo = s + h, s - h
    dF = (hi * upper_F(hi).value - lo * upper_F(lo).value) / (2.0 * h)
    df = (hi * lower_f(hi).value - lo * lower_f(lo).value) / (2.0 * h)
    return max(abs(dF - lower_f(s - 1.0).value), abs(df - upper_F(s - 1.0).value))
