"""Weighted-sieve bound components and the theorem constants they produce.

Every component is a dimensionless coefficient multiplying
C(abN) N^theta / (ab log^2 N) (theta = 1 for the first theorem).  With
sieve level lam = theta/2 the recurring prefactors are

    x = 1 / (2 lam)       from X = N^theta / (theta log N)
    4 / lam               from 2 alpha e^-gamma * 2 e^gamma / (s alpha) with s = lam / alpha
    4 / lam_B             for the switched sets, lam_B = theta - 1/2

so a single parametrised evaluator covers both the theta = 1 profile and the
theta profile.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from scipy.integrate import quad

from .errors import ComputationError, DomainError
from .sieve_functions import (
    EXP_GAMMA,
    _F_bracket,
    log_ratio_integral,
    lower_f,
    upper_F,
)

DEFAULT_TOL = 1e-8
THETA_PUBLISHED = 0.9409


@dataclass(frozen=True)
class ExponentProfile:
    """Exponents of one theorem instance.

    ``s62_split`` is the ratio r with p4 < r * z in the split of the S62
    range; ``theta`` is None for the theta = 1 profile.
    """

    alpha1: float = 1 / 13.2
    alpha2: float = 1 / 8.4
    beta1: float = 1 / 3
    beta2: float = 1 / 3.604
    cut1: float = 4.1001 / 13.2
    cut2: float = 3.6 / 13.2
    switch_cut: float = 4.6 / 13.2
    recycle_lo: float = 1 / 3.675
    recycle_hi: float = 1 / 2.5
    w_bound_2: float = 1 / 1.763
    w_bound_3: float = 0.5644
    w_bound_4: float = 0.5617
    sieve_level: float = 0.5
    s62_split: float = 1.4
    theta: float | None = None

    def __post_init__(self):
        names = ("alpha1", "alpha2", "beta1", "beta2", "cut1", "cut2", "switch_cut",
                 "recycle_lo", "recycle_hi", "w_bound_2", "w_bound_3", "w_bound_4",
                 "sieve_level")
        for name in names:
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise DomainError(f"profile slot {name}={v!r} must lie in (0, 1)")
        # alpha1 == alpha2 is allowed: it collapses the S2 domain to nothing
        if not self.alpha1 <= self.alpha2 < self.beta1 <= 1 / 3 + 1e-15:
            raise DomainError("profile needs alpha1 <= alpha2 < beta1 <= 1/3")
        if not self.alpha2 < self.beta2 <= 1 / 3 + 1e-15:
            raise DomainError("profile needs alpha2 < beta2 <= 1/3")
        if self.s62_split < 1.0:
            raise DomainError("profile slot s62_split must be >= 1")
        if self.theta is not None and not 0.5 < self.theta <= 1.0:
            raise DomainError(f"theta={self.theta!r} must lie in (1/2, 1]")

    @classmethod
    def theorem1(cls) -> "ExponentProfile":
        return cls()

    @classmethod
    def theorem2(cls, theta: float = THETA_PUBLISHED) -> "ExponentProfile":
        theta = float(theta)
        if not 0.5 < theta <= 1.0:
            raise DomainError(f"theta={theta!r} must lie in (1/2, 1]")
        return cls(
            alpha1=1 / 14,
            alpha2=1 / 8.8,
            beta1=1 / 3.1,
            beta2=1 / 3.7,
            cut1=4.08631 / 14,
            cut2=3.5863 / 14,
            switch_cut=4.5863 / 14,
            sieve_level=theta / 2,
            s62_split=1.8,
            theta=theta,
        )

    @property
    def x_scale(self) -> float:
        return 1.0 / (2.0 * self.sieve_level)

    @property
    def switched_level(self) -> float:
        """Exponent of the switched sieve level, theta - 1/2."""
        return 2.0 * self.sieve_level - 0.5


@dataclass(frozen=True)
class UpperProfile:
    """Exponents of the prime-plus-prime upper bound."""

    alpha: float = 1 / 7
    beta: float = 1 / 5
    sieve_level: float = 0.5
    w_bound: float = 1 / 1.763

    def __post_init__(self):
        if not 0.0 < self.alpha < self.beta < self.sieve_level:
            raise DomainError("upper profile needs 0 < alpha < beta < sieve_level")


@dataclass(frozen=True)
class BoundBreakdown:
    components: dict[str, float]
    weights: dict[str, Fraction]
    multiplicity: int
    profile: object
    label: str
    notes: tuple[str, ...] = field(default=())

    @property
    def weighted_sum(self) -> float:
        return math.fsum(float(self.weights[k]) * v for k, v in self.components.items())

    @property
    def combined(self) -> float:
        return self.weighted_sum / self.multiplicity

    @property
    def positive_total(self) -> float:
        return math.fsum(float(w) * self.components[k] for k, w in self.weights.items() if w > 0)

    @property
    def negative_total(self) -> float:
        return math.fsum(-float(w) * self.components[k] for k, w in self.weights.items() if w < 0)

    def group(self, prefix: str) -> float:
        """Plain sum of the components whose name starts with ``prefix``."""
        return math.fsum(v for k, v in self.components.items() if k.startswith(prefix))


def _q(func, a, b, tol):
    if b <= a:
        return 0.0
    return quad(func, a, b, epsabs=tol, epsrel=tol, limit=200)[0]


def _q2(func, a, b, lo, hi, tol):
    """int_a^b int_{lo(t1)}^{hi(t1)} func(t1, t2) dt2 dt1, inner variable t2."""
    inner_tol = tol * 1e-2
    return _q(lambda t1: _q(lambda t2: func(t1, t2), lo(t1), hi(t1), inner_tol), a, b, tol)


def log_plus(x: float) -> float:
    return math.log(x) if x > 1.0 else 0.0


def switch_integral(a: float, b: float) -> float:
    """int_a^b dt1/t1 int_{t1}^b (1/t2)(1/t1 - 1/t2) dt2, in closed form.

    With A = 1/a, B = 1/b this is (A + B) log(A/B) - 2(A - B).
    """
    A, B = 1.0 / a, 1.0 / b
    return (A + B) * math.log(A / B) - 2.0 * (A - B)


def _switch_budget(profile: ExponentProfile) -> float:
    return 4.0 / profile.switched_level


def _require_below_level(profile: ExponentProfile, slot: str) -> None:
    if getattr(profile, slot) >= profile.sieve_level:
        raise ComputationError(
            f"profile slot {slot} reaches the sieve level; the kernel has a pole there", slot)


def s1_terms(profile: ExponentProfile, tol: float = DEFAULT_TOL):
    """(S11, S12, S1) from f at s = lam/alpha; S1 = 3 S11 + S12."""
    lam = profile.sieve_level
    pre = profile.x_scale * 2.0 / EXP_GAMMA

    def one(alpha):
        s = lam / alpha
        if s > 8.0:
            raise ComputationError("lam/alpha exceeds 8, outside the range of f", "alpha1")
        return pre / alpha * lower_f(s, tol=min(tol, 1e-10)).value

    s11, s12 = one(profile.alpha1), one(profile.alpha2)
    return s11, s12, 3.0 * s11 + s12


def _s2_kernel(profile: ExponentProfile):
    lam, a1 = profile.sieve_level, profile.alpha1
    s0 = lam / a1

    def k(t1, t2):
        t = t1 + t2
        # f vanishes for arguments below 2, hence the clipped logarithm
        return log_plus(s0 - 1.0 - t / a1) / (t1 * t2 * (2.0 * lam - 2.0 * t))

    return k


def s2_parts(profile: ExponentProfile, tol: float = DEFAULT_TOL):
    """(S21, S22): the S2 integral below and above t2 = alpha2."""
    _require_below_level(profile, "switch_cut")
    a1, a2, sw = profile.alpha1, profile.alpha2, profile.switch_cut
    k = _s2_kernel(profile)
    pre = 8.0 * profile.x_scale
    s21 = pre * _q2(k, a1, a2, lambda t1: t1, lambda t1: a2, tol)
    s22 = pre * _q2(k, a1, a2, lambda t1: a2, lambda t1: sw - t1, tol)
    return s21, s22


def s2_term(profile: ExponentProfile, tol: float = DEFAULT_TOL) -> float:
    """S2 over the whole region alpha1 <= t1 <= t2 <= switch_cut - t1."""
    _require_below_level(profile, "switch_cut")
    a1, a2, sw = profile.alpha1, profile.alpha2, profile.switch_cut
    return 8.0 * profile.x_scale * _q2(
        _s2_kernel(profile), a1, a2, lambda t1: t1, lambda t1: sw - t1, tol)


def _s3_one(profile: ExponentProfile, cut: float, tol: float) -> float:
    lam, a1 = profile.sieve_level, profile.alpha1
    s0 = lam / a1
    u_lo = (lam - cut) / a1
    if s0 - 1.0 > 7.0:
        raise ComputationError("lam/alpha1 - 1 exceeds the range of F", "alpha1")
    lead = math.log(cut * (lam - a1) / (a1 * (lam - cut)))
    # F(u) = 2 e^gamma B(u)/u with B = 1 below 3; only B - 1 needs quadrature
    extra = _q(lambda u: (_F_bracket(u, tol * 1e-2)[0] - 1.0) * (1.0 / u + 1.0 / (s0 - u)),
               max(3.0, u_lo), s0 - 1.0, tol)
    return profile.x_scale * 4.0 / lam * (lead + extra)


def s3_terms(profile: ExponentProfile, tol: float = DEFAULT_TOL):
    """(S31, S32, S3) from the integral of F over p in [z, N^cut)."""
    _require_below_level(profile, "cut1")
    _require_below_level(profile, "cut2")
    s31 = _s3_one(profile, profile.cut1, tol)
    s32 = _s3_one(profile, profile.cut2, tol)
    return s31, s32, s31 + s32


def _switched_f_integral(beta: float, alpha: float, tol: float) -> float:
    A = 1.0 / beta
    return _q(lambda s: math.log(A - 1.0 - A / (s + 1.0)) / s, A - 1.0, 1.0 / alpha - 1.0, tol)


def s4_terms(profile: ExponentProfile, tol: float = DEFAULT_TOL):
    pre = _switch_budget(profile)
    s41 = pre * _switched_f_integral(profile.beta1, profile.alpha1, tol)
    s42 = pre * _switched_f_integral(profile.beta2, profile.alpha2, tol)
    return s41, s42, s41 + s42


def s7_parts(profile: ExponentProfile, tol: float = DEFAULT_TOL):
    pre = _switch_budget(profile)
    s71 = pre * log_ratio_integral(1.0 / profile.beta1 - 1.0)
    s72 = pre * log_ratio_integral(1.0 / profile.beta2 - 1.0)
    return s71, s72


def s7_term(profile: ExponentProfile, tol: float = DEFAULT_TOL) -> float:
    return sum(s7_parts(profile, tol))


def s5_multiplier(profile: ExponentProfile, tol: float = DEFAULT_TOL) -> float:
    """Bracketed factor shared by S51 and S52 (the recycled Gamma bound)."""
    u_lo = 1.0 / profile.recycle_lo
    u_hi = 1.0 / profile.recycle_hi
    gamma1 = 1.0 + log_ratio_integral(u_lo - 1.0)
    gamma2 = _q(lambda t: math.log(u_lo - 1.0 - u_lo / (t + 1.0)) / t, u_hi - 1.0, u_lo - 1.0, tol)
    ratio = profile.sieve_level / profile.switched_level
    gamma3 = ratio * profile.w_bound_2 * switch_integral(profile.recycle_lo, profile.recycle_hi)
    return gamma1 - 0.5 * gamma2 + gamma3


def s5_outer(profile: ExponentProfile, cut: float, beta: float, tol: float = DEFAULT_TOL) -> float:
    lam = profile.sieve_level
    if beta >= lam:
        raise ComputationError("beta reaches the sieve level", "beta1")
    return _q(lambda t: 1.0 / (t * (2.0 * lam - 2.0 * t)), cut, beta, tol)


def s5_terms(profile: ExponentProfile, tol: float = DEFAULT_TOL):
    m = s5_multiplier(profile, tol)
    pre = 8.0 * profile.x_scale
    s51 = pre * s5_outer(profile, profile.cut1, profile.beta1, tol) * m
    s52 = pre * s5_outer(profile, profile.cut2, profile.beta2, tol) * m
    return s51, s52, s51 + s52


def s6_terms(profile: ExponentProfile, tol: float = DEFAULT_TOL):
    """(S61, S62, S6) with the fixed w-bounds as multipliers."""
    a1, a2 = profile.alpha1, profile.alpha2
    sw, split = profile.switch_cut, profile.s62_split
    if sw - a2 <= split * a2:
        raise ComputationError("switch_cut - alpha2 must exceed s62_split * alpha2", "s62_split")
    pre = _switch_budget(profile)

    def weight(t1, t2):
        return (1.0 / t2) * (1.0 / t1 - 1.0 / t2) / t1

    i61 = _q2(lambda t1, t2: weight(t1, t2) * math.log(a2 / t2), a1, a2,
              lambda t1: t1, lambda t1: a2, tol)
    i62 = _q2(lambda t1, t2: weight(t1, t2) * math.log((sw - t2) / (split * a2)), a1, a2,
              lambda t1: t1, lambda t1: a2, tol)
    s61 = profile.w_bound_4 * pre * i61
    s62 = (profile.w_bound_4 * pre * switch_integral(a1, a2) * math.log(split)
           + profile.w_bound_3 * pre * i62)
    return s61, s62, s61 + s62


def _weights(theta_profile: bool) -> dict[str, Fraction]:
    w = {"S11": Fraction(3), "S12": Fraction(1), "S21": Fraction(1), "S22": Fraction(1)}
    for k in ("S31", "S32", "S41", "S42", "S51", "S52", "S61", "S62"):
        w[k] = Fraction(-1)
    if theta_profile:
        w["S71"] = w["S72"] = Fraction(-2)
    else:
        w["S7"] = Fraction(-2)
    return w


def _breakdown(profile: ExponentProfile, tol: float, label: str) -> BoundBreakdown:
    s11, s12, _ = s1_terms(profile, tol)
    s21, s22 = s2_parts(profile, tol)
    s31, s32, _ = s3_terms(profile, tol)
    s41, s42, _ = s4_terms(profile, tol)
    s51, s52, _ = s5_terms(profile, tol)
    s61, s62, _ = s6_terms(profile, tol)
    s71, s72 = s7_parts(profile, tol)
    comps = {"S11": s11, "S12": s12, "S21": s21, "S22": s22, "S31": s31, "S32": s32,
             "S41": s41, "S42": s42, "S51": s51, "S52": s52, "S61": s61, "S62": s62}
    theta_profile = profile.theta is not None
    if theta_profile:
        comps["S71"], comps["S72"] = s71, s72
    else:
        # the beta1 = 1/3 range is empty, so only the beta2 piece survives
        comps["S7"] = s71 + s72
    return BoundBreakdown(comps, _weights(theta_profile), 4, profile, label)


def theorem1_bound(profile: ExponentProfile | None = None, tol: float = DEFAULT_TOL) -> BoundBreakdown:
    """(S1 + S2 - S3 - S4 - S5 - S6 - 2 S7) / 4 for the theta = 1 profile."""
    return _breakdown(profile or ExponentProfile.theorem1(), tol, "theorem1")


def theta_terms(theta: float = THETA_PUBLISHED, tol: float = DEFAULT_TOL) -> dict[str, float]:
    return dict(theorem2_margin(theta, tol).components)


def theorem2_margin(theta: float = THETA_PUBLISHED, tol: float = DEFAULT_TOL,
                    profile: ExponentProfile | None = None) -> BoundBreakdown:
    """Breakdown for the theta profile; ``combined`` is the margin."""
    if profile is None:
        profile = ExponentProfile.theorem2(theta)
    elif profile.theta != theta:
        profile = replace(profile, theta=float(theta), sieve_level=float(theta) / 2)
    return _breakdown(profile, tol, "theorem2")


def theorem2_threshold(lo: float = 0.9, hi: float = 1.0, xtol: float = 1e-6,
                       tol: float = DEFAULT_TOL) -> float:
    """Root of the theta margin in (lo, hi) by bisection."""
    m_lo = theorem2_margin(lo, tol).combined
    m_hi = theorem2_margin(hi, tol).combined
    if m_lo * m_hi > 0:
        raise ComputationError(f"margin keeps one sign on ({lo}, {hi})", "theta")
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        m = theorem2_margin(mid, tol).combined
        if (m > 0) == (m_hi > 0):
            hi = mid
        else:
            lo, m_lo = mid, m
    return 0.5 * (lo + hi)


def theorem5_upper(profile: UpperProfile | None = None, tol: float = DEFAULT_TOL) -> BoundBreakdown:
    """Upsilon1 - Upsilon2/2 + Upsilon3/2 for primes p1, p2 with a p1 + b p2 = N.

    The intermediate values of this bound are not printed anywhere; the
    Upsilon3 term uses the switching kernel of S61 over (alpha, beta) with the
    w-bound valid for u >= 2, and the breakdown is flagged as reconstructed.
    """
    pr = profile or UpperProfile()
    lam, a, b = pr.sieve_level, pr.alpha, pr.beta
    pre = 2.0 / (2.0 * lam) / (a * EXP_GAMMA)
    u1 = pre * upper_F(lam / a).value
    u2 = pre * _q(lambda t: lower_f((lam - t) / a).value / t, a, b, tol)
    switched = 2.0 * lam - 0.5
    u3 = 4.0 / switched * pr.w_bound * switch_integral(a, b)
    comps = {"Upsilon1": u1, "Upsilon2": u2, "Upsilon3": u3}
    weights = {"Upsilon1": Fraction(1), "Upsilon2": Fraction(-1, 2), "Upsilon3": Fraction(1, 2)}
    return BoundBreakdown(comps, weights, 1, pr, "theorem5",
                          notes=("reconstructed: intermediate values are not published",))
