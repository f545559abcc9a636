import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from weighted_sieve.errors import DomainError
from weighted_sieve.sieve_functions import (
    EULER_GAMMA,
    _F_bracket,
    _f_bracket,
    buchstab_w,
    delay_identity_residual,
    log_ratio_integral,
    lower_f,
    upper_F,
)

from oracles import simpson_F, simpson_f

E_GAMMA = math.exp(EULER_GAMMA)

# 30-digit evaluations of the same formulas with mpmath.quad, frozen
F_AT_5_6 = 1.00033460864074256038223770036
f_AT_4_6 = 0.995044138195154701345247936271


def test_gamma_literal():
    assert EULER_GAMMA == pytest.approx(0.5772156649015329, abs=0)


def test_F_at_2_is_e_gamma():
    assert upper_F(2.0).value == pytest.approx(E_GAMMA, rel=1e-14)


def test_F_knot_3():
    assert upper_F(3.0).value == pytest.approx(2 * E_GAMMA / 3, rel=1e-14)


def test_F_5_6_against_oracles():
    v = upper_F(5.6)
    assert abs(v.value - F_AT_5_6) < 1e-12
    assert abs(v.value - simpson_F(5.6)) < 1e-9
    assert v.abs_error <= 1e-9


def test_f_4_6_against_oracles():
    v = lower_f(4.6)
    assert abs(v.value - f_AT_4_6) < 1e-12
    assert abs(v.value - simpson_f(4.6)) < 1e-9


def test_f_small_arguments():
    assert lower_f(2.0).value == 0.0
    assert lower_f(0.5).value == 0.0
    assert lower_f(4.0).value == pytest.approx(2 * E_GAMMA * math.log(3) / 4, rel=1e-14)


def test_f_top_branch_solves_delay_equation():
    # s f(s) = 6 f(6) + int_6^s F(v - 1) dv
    for s in (6.5, 7.3, 8.0):
        ode = (6 * lower_f(6.0).value
               + quad(lambda v: upper_F(v - 1).value, 6.0, s, epsabs=1e-13)[0]) / s
        assert lower_f(s).value == pytest.approx(ode, abs=1e-11)


@pytest.mark.parametrize("x", [2.0, 2.4, 3.3, 4.6, 5.9, 6.9])
def test_dilog_form_matches_quadrature(x):
    direct = quad(lambda t: math.log(t - 1) / t, 2, x, epsabs=1e-14)[0]
    assert log_ratio_integral(x) == pytest.approx(direct, abs=1e-13)


@pytest.mark.parametrize("bad", [0.0, -1.0, 7.0001, float("nan")])
def test_F_domain(bad):
    with pytest.raises(DomainError, match="0 < s <= 7"):
        upper_F(bad)


def test_f_and_w_domain():
    with pytest.raises(DomainError):
        lower_f(8.5)
    with pytest.raises(DomainError):
        buchstab_w(0.99)


@pytest.mark.parametrize("knot,fn,bracket", [(3.0, "F", _F_bracket), (5.0, "F", _F_bracket),
                                             (4.0, "f", _f_bracket), (6.0, "f", _f_bracket)])
def test_knot_continuity(knot, fn, bracket):
    func = upper_F if fn == "F" else lower_f
    eps = 1e-6
    # the neighbouring branch formula evaluated at the knot itself
    if fn == "F" and knot == 3.0:
        upper_branch = 1.0 + log_ratio_integral(knot - 1)
    else:
        upper_branch = bracket(knot + 1e-12, 1e-12)[0]
    assert abs(bracket(knot, 1e-12)[0] - upper_branch) < 1e-10
    # two-sided difference once the honest slope is removed
    slope = (func(knot + 1e-3).value - func(knot - 1e-3).value) / 2e-3
    jump = func(knot + eps).value - func(knot - eps).value - 2 * eps * slope
    assert abs(jump) <= 1e-7


def test_monotonicity_and_ordering():
    grid = np.arange(2.0, 7.0001, 0.05)
    F = np.array([upper_F(s).value for s in grid])
    assert np.all(np.diff(F) < 0)
    grid_f = np.arange(2.0, 8.0001, 0.05)
    f = np.array([lower_f(s).value for s in grid_f])
    assert np.all(np.diff(f) > 0)
    for s in np.arange(0.05, 8.0001, 0.05):
        if s <= 7:
            assert lower_f(s).value <= upper_F(s).value


def test_delay_identity_grid():
    worst = max(delay_identity_residual(s, 1e-4) for s in np.arange(3.1, 6.9001, 0.1))
    assert worst <= 1e-5


@pytest.mark.parametrize("s", [4.0, 6.5])
def test_delay_identity_examples(s):
    assert delay_identity_residual(s, 1e-4) <= 1e-5


def test_delay_identity_at_3_is_kink_limited():
    # (sF)'' jumps at 3, so the central difference error is e^gamma h / 4
    h = 1e-4
    assert delay_identity_residual(3.0, h) == pytest.approx(E_GAMMA * h / 4, rel=1e-2)


def test_delay_identity_domain():
    with pytest.raises(DomainError):
        delay_identity_residual(2.00005, 1e-4)
    with pytest.raises(DomainError):
        delay_identity_residual(6.99995, 1e-4)


def test_buchstab_closed_forms():
    assert buchstab_w(1.5).value == pytest.approx(2 / 3, rel=1e-15)
    assert buchstab_w(3.0).value == pytest.approx((1 + math.log(2)) / 3, rel=1e-15)


def test_buchstab_continuation_meets_analytic_piece():
    # just past 3 the continuation must agree with the [2, 3] solution's limit
    assert buchstab_w(3.0 + 1e-9).value == pytest.approx((1 + math.log(2)) / 3, abs=1e-8)


def test_buchstab_continuation_against_quadrature():
    # on [3, 4]: u w(u) = 1 + log 2 + int_3^u (1 + log(t - 2))/(t - 1) dt
    for u in (3.3, 3.75, 4.0):
        exact = (1 + math.log(2) + quad(lambda t: (1 + math.log(t - 2)) / (t - 1), 3, u)[0]) / u
        r = buchstab_w(u)
        assert abs(r.value - exact) <= max(r.abs_error, 1e-12) * 5
        assert abs(r.value - exact) < 1e-9


def test_buchstab_bounds():
    grid = np.arange(2.0, 10.0001, 0.01)
    w = np.array([buchstab_w(u).value for u in grid])
    assert np.all(w <= 1 / 1.763)
    assert np.all(w[grid >= 3.0] < 0.5644)
    assert np.all(w[grid >= 4.0] < 0.5617)
    assert buchstab_w(4.0).value < 0.5617


def test_buchstab_tends_to_exp_minus_gamma():
    assert buchstab_w(20.0).value == pytest.approx(math.exp(-EULER_GAMMA), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=0.05, max_value=7.0))
def test_values_nonnegative_with_small_error(s):
    for r in (upper_F(s), lower_f(s)):
        assert r.value >= 0
        assert 0 <= r.abs_error <= 1e-9


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=1.0, max_value=12.0))
def test_buchstab_error_bound(u):
    r = buchstab_w(u)
    assert r.value > 0 and r.abs_error <= 1e-9


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=2.0, max_value=8.0))
def test_halving_tolerance_within_error(s):
    a, b = lower_f(s, tol=1e-10), lower_f(s, tol=5e-11)
    assert abs(a.value - b.value) <= a.abs_error
    if s <= 7:
        a, b = upper_F(s, tol=1e-10), upper_F(s, tol=5e-11)
        assert abs(a.value - b.value) <= a.abs_error


def test_halving_step_within_error():
    for u in (3.5, 4.2, 6.0, 9.5):
        a, b = buchstab_w(u, step=1e-4), buchstab_w(u, step=5e-5)
        assert abs(a.value - b.value) < a.abs_error
