import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weighted_sieve.errors import DomainError
from weighted_sieve.primes import primes_up_to
from weighted_sieve.singular_series import (
    PredictionInput,
    ap_factor,
    ap_factor_exact,
    predicted_count,
    singular_coefficient,
    twin_prime_constant,
)

# mpmath's built-in twin prime constant, frozen to 30 digits
TWIN = 0.660161815846869573927812110015
# 0.8671 * C(10^6) * 10^6 / log^2(10^6), each factor evaluated separately in mpmath
PREDICTED_1E6 = 3998.75177190477952878288385793


def _partial_product_interval(P):
    p = primes_up_to(P)[1:].astype(float)
    prod = math.exp(np.sum(np.log1p(-1.0 / (p - 1.0) ** 2)))
    return prod * (1 - 2.0 / (P - 1)), prod


def test_twin_constant_tight():
    t = twin_prime_constant(1e-10)
    assert t.abs_error <= 1e-10
    assert abs(t.value - TWIN) <= 1e-10
    assert abs(t.value - float(mpmath.twinprime)) <= 1e-10


def test_twin_constant_inside_partial_product_interval():
    lo, hi = _partial_product_interval(2 * 10**7)
    assert lo <= twin_prime_constant(1e-10).value <= hi


def test_twin_constant_loose():
    t = twin_prime_constant(0.5)
    assert 0.5 < t.value < 0.7 and t.abs_error <= 0.5


def test_twin_constant_refinement():
    assert abs(twin_prime_constant(1e-6).value - twin_prime_constant(1e-12).value) <= 1e-6


@pytest.mark.parametrize("eps", [1e-3, 1e-5, 1e-6, 1e-8, 1e-11])
def test_twin_error_bound_honoured(eps):
    a, b = twin_prime_constant(eps), twin_prime_constant(eps / 10)
    assert abs(a.value - b.value) <= eps
    assert abs(a.value - TWIN) <= eps
    assert 0.6 < a.value < 0.7


def test_twin_constant_rejects_nonpositive():
    with pytest.raises(DomainError):
        twin_prime_constant(0.0)


@pytest.mark.parametrize("k", [0, 1, 5, 40])
def test_powers_of_two(k):
    s = singular_coefficient(2**k)
    assert s.odd_prime_factors == ()
    assert s.value == s.twin_constant


def test_modulus_30():
    s = singular_coefficient(30)
    assert s.odd_prime_factors == (3, 5)
    assert s.local_factor_exact == Fraction(8, 3)
    assert s.value == pytest.approx(8 / 3 * s.twin_constant, rel=1e-15)


def test_modulus_2310_reverse_order():
    s = singular_coefficient(2 * 3 * 5 * 7 * 11)
    rev = 1.0
    for p in (11, 7, 5, 3):
        rev *= (p - 1) / (p - 2)
    assert s.value == pytest.approx(rev * TWIN, rel=1e-14)


def test_modulus_zero():
    with pytest.raises(DomainError):
        singular_coefficient(0)


def test_series_fields():
    s = singular_coefficient(3 * 3 * 7)
    assert s.local_factor >= 1
    assert 0.6 < s.twin_constant < 0.7
    assert s.value == s.local_factor * s.twin_constant


odd_primes = st.sampled_from([3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 97, 101, 1009])


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=10**9), odd_primes)
def test_multiplicative_in_new_prime(m, p):
    if m % p == 0:
        return
    ratio = singular_coefficient(m * p).local_factor_exact / singular_coefficient(m).local_factor_exact
    assert ratio == Fraction(p - 1, p - 2)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=10**6), st.integers(min_value=1, max_value=4))
def test_depends_on_radical(m, k):
    assert singular_coefficient(m**k).value == singular_coefficient(m).value


def test_ap_factor_examples():
    assert ap_factor(1, 10) == 1
    assert ap_factor(2**7, 9) == 1
    assert ap_factor_exact(15, 2 * 7) == Fraction(8, 3)
    # primes dividing N are skipped
    assert ap_factor_exact(15, 3 * 7) == Fraction(4, 3)


def test_predicted_count_examples():
    base = PredictionInput(1, 1, 10**6, coefficient=0.8671)
    assert predicted_count(base) == pytest.approx(PREDICTED_1E6, rel=1e-13)
    assert predicted_count(PredictionInput(1, 1, 10**6, coefficient=0.0)) == 0.0
    odd = PredictionInput(1, 2, 10**6 + 1, coefficient=0.8671)
    with_c = PredictionInput(1, 2, 10**6 + 1, coefficient=0.8671, ap_modulus=2)
    assert predicted_count(with_c) == predicted_count(odd)


def test_predicted_count_modes():
    q = PredictionInput(1, 1, 10**6, exponent_mode="theta", exponent=0.5)
    full = predicted_count(PredictionInput(1, 1, 10**6))
    assert predicted_count(q) == pytest.approx(full / 10**3, rel=1e-12)


@pytest.mark.parametrize("kwargs,msg", [
    (dict(a=2, b=4, N=9), "squarefree"),
    (dict(a=2, b=6, N=7), "gcd\\(a, b\\)"),
    (dict(a=3, b=1, N=9), "gcd\\(N, ab\\)"),
    (dict(a=1, b=1, N=10, exponent_mode="theta", exponent=1.5), "theta"),
    (dict(a=1, b=1, N=10, exponent_mode="interval"), "interval"),
])
def test_prediction_input_validation(kwargs, msg):
    with pytest.raises(DomainError, match=msg):
        PredictionInput(**kwargs)


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=-10, max_value=10, allow_nan=False),
       st.integers(min_value=2, max_value=10**5))
def test_linear_in_coefficient(coef, half):
    N = 2 * half
    one = predicted_count(PredictionInput(1, 1, N, coefficient=1.0))
    assert predicted_count(PredictionInput(1, 1, N, coefficient=coef)) == pytest.approx(coef * one, rel=1e-14, abs=1e-300)
