import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from analytic_series import (
    CenterMismatchError,
    DivisionAtCenterError,
    DomainError,
    LaurentSeries,
    NullFunctionError,
    PreconditionError,
    SeriesError,
    TruncatedSeries,
    binomial_root_series,
    cauchy_product,
    compose,
    derivative,
    evaluate,
    laurent_evaluate,
    linear_combine,
    radius_estimate,
    recenter,
    reciprocal,
    zero_factorization,
)

T = TruncatedSeries


def close(a, b, tol):
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    assert a.shape == b.shape
    scale = max(1.0, float(np.abs(b).max(initial=0)))
    assert float(np.abs(a - b).max(initial=0)) <= tol * scale, (a, b)


# -- construction -------------------------------------------------------------

def test_rejects_nonfinite_and_bad_hint():
    with pytest.raises(SeriesError):
        T((1, float("nan")))
    with pytest.raises(SeriesError):
        T((1,), 0j, 0.0)
    with pytest.raises(SeriesError):
        LaurentSeries((), (1,), (2.0, 1.0))


def test_coefficients_stored_as_given():
    f = T.polynomial([1, 2, 0, 0])
    assert f.order == 3 and f.degree() == 1


# -- linear_combine / cauchy_product ---------------------------------------------

def test_linear_combine_examples():
    close(linear_combine(1, T.polynomial([1, 1]), 1, T.polynomial([1, -1])).coeffs, [2, 0], 0)
    g = T.polynomial([3, 1j, 2])
    assert linear_combine(0, T.exp(2), 1, g).coeffs == g.coeffs
    assert all(c == 0 for c in linear_combine(2, T.exp(4), -2, T.exp(4)).coeffs)


def test_linear_combine_truncates_and_takes_min_hint():
    f = T((1, 1, 1), 0j, 2.0)
    g = T((1, 1), 0j, 0.5)
    h = linear_combine(1, f, 1, g)
    assert h.order == 1 and h.radius_hint == 0.5


def test_center_mismatch_rejected():
    with pytest.raises(CenterMismatchError):
        linear_combine(1, T.identity(2), 1, T.identity(2, center=1))
    with pytest.raises(CenterMismatchError):
        cauchy_product(T.identity(2), T.identity(2, center=1))


def test_cauchy_product_examples():
    close(cauchy_product(T.polynomial([1, 1]), T.polynomial([1, -1])).coeffs, [1, 0], 0)
    close(cauchy_product(T.polynomial([1, 1, 1, 1]), T.polynomial([1, 1, 1, 1])).coeffs,
          [1, 2, 3, 4], 0)
    f = cauchy_product(T.exp(6), T.exp(6))
    close(f.coeffs, [2 ** n / math.factorial(n) for n in range(7)], 1e-12)


def test_product_of_full_polynomials_matches_numpy():
    a, b = [1, 2, 3, 0, 0, 0], [0, 1, -1, 0, 0, 0]
    close(cauchy_product(T(tuple(a)), T(tuple(b))).coeffs,
          np.convolve(a, b)[:6], 0)


# -- derivative / evaluate -------------------------------------------------------------

def test_derivative_examples():
    assert derivative(T.polynomial([5])).coeffs == (0,)
    close(derivative(T.polynomial([0, 0, 1])).coeffs, [0, 2], 0)
    assert derivative(T.exp(8)).coeffs == T.exp(7).coeffs
    assert derivative(T.identity(3, center=2)).center == 2


def test_evaluate_examples():
    f = T.polynomial([4, 3, 2], center=1 + 1j)
    assert evaluate(f, 1 + 1j) == 4
    assert evaluate(T.geometric(20), 0.5) == pytest.approx(2 * (1 - 2 ** -21), rel=1e-15)
    assert abs(evaluate(T.exp(20), 1) - math.e) < 1e-12


def test_evaluate_vectorized_matches_numpy():
    c = [1, -2j, 0.5, 3]
    z = np.linspace(-1, 1, 7) + 0.3j
    close(evaluate(T(tuple(c)), z), oracles.polyval(c, z), 1e-14)


# -- radius_estimate -----------------------------------------------------------------

def test_radius_estimate_examples():
    assert radius_estimate(T.geometric(10)).value == pytest.approx(1.0)
    f = T(tuple(2.0 ** n for n in range(17)))
    assert radius_estimate(f, 8).value == pytest.approx(0.5)
    assert radius_estimate(T.polynomial([1, 3], order=10), 5).value == math.inf
    assert radius_estimate(T.geometric(10), 4).tail_window == 4
    with pytest.raises(SeriesError):
        radius_estimate(T.geometric(3), 5)


# -- recenter --------------------------------------------------------------------------

def test_recenter_examples():
    g = recenter(T.polynomial([0, 0, 1]), 1)
    assert g.center == 1
    close(g.coeffs, [1, 2, 1], 0)
    b = recenter(T.geometric(40), 0.5)
    for m in range(11):
        exact = oracles.truncated_geometric_shift(40, m, 0.5)
        assert abs(b.coeffs[m] - exact) <= 1e-12 * exact
    for m in range(6):
        assert abs(b.coeffs[m] - 2 ** (m + 1)) <= 1e-6 * 2 ** (m + 1)
    f = T.exp(6)
    assert recenter(f, 0).coeffs == f.coeffs


def test_recenter_geometric_converges_with_order():
    b = recenter(T.geometric(64), 0.5)
    for m in range(11):
        assert abs(b.coeffs[m] - 2 ** (m + 1)) <= 1e-6 * 2 ** (m + 1)


def test_recenter_outside_hint_rejected():
    with pytest.raises(DomainError):
        recenter(T.geometric(5), 1.5)


def test_recenter_matches_numpy_shift():
    c = [1, 2 - 1j, 0.5, -3, 1j]
    close(recenter(T(tuple(c)), 0.3 - 0.7j).coeffs, oracles.shift(c, 0.3 - 0.7j), 1e-13)


def test_recenter_round_trip_exact_on_integer_data():
    f = T.polynomial([3, -1, 2, 5, 1])
    assert recenter(recenter(f, 2), 0).coeffs == f.coeffs


# -- reciprocal / compose ----------------------------------------------------------------

def test_reciprocal_examples():
    close(reciprocal(T.polynomial([1, -1], order=6)).coeffs, [1] * 7, 0)
    close(reciprocal(T.polynomial([2])).coeffs, [0.5], 0)
    close(reciprocal(T.exp(8)).coeffs, [(-1) ** n / math.factorial(n) for n in range(9)], 1e-12)
    with pytest.raises(DivisionAtCenterError):
        reciprocal(T.identity(3))


def test_compose_examples():
    close(compose(T.geometric(8), T.polynomial([0, 0, 1], order=8)).coeffs,
          [1, 0, 1, 0, 1, 0, 1, 0, 1], 1e-15)
    f = T.polynomial([1, 2, 3, 4])
    close(compose(f, T.identity(5)).coeffs, f.coeffs, 0)
    close(compose(T.exp(6), T.polynomial([0, 2])).coeffs,
          [2 ** n / math.factorial(n) for n in range(2)], 1e-12)
    close(compose(T.exp(6), T.polynomial([0, 2], order=6)).coeffs,
          [2 ** n / math.factorial(n) for n in range(7)], 1e-12)


def test_compose_recenters_when_inner_constant_is_off_center():
    # exp(1 + z) = e * exp(z)
    h = compose(T.exp(30), T.polynomial([1, 1], order=10))
    close(h.coeffs, [math.e / math.factorial(n) for n in range(11)], 1e-12)


def test_compose_outside_outer_disk_rejected():
    with pytest.raises(DomainError):
        compose(T.geometric(6), T.polynomial([2, 1], order=6))


# -- binomial_root_series ------------------------------------------------------------------

def test_binomial_root_examples():
    close(binomial_root_series(1, 4).coeffs, [1, 1, 0, 0, 0], 0)
    close(binomial_root_series(2, 4).coeffs, [1, 0.5, -1 / 8, 1 / 16, -5 / 128], 1e-15)
    b = binomial_root_series(3, 12)
    close((b ** 3).coeffs, [1, 1] + [0] * 11, 1e-10)


@pytest.mark.parametrize("p", [2, 3, 4, 7])
def test_binomial_root_matches_generalized_binomial(p):
    b = binomial_root_series(p, 20)
    close(b.coeffs, [oracles.generalized_binomial(1 / p, n) for n in range(21)], 1e-14)


# -- zero_factorization ---------------------------------------------------------------------

def test_zero_factorization_examples():
    z = zero_factorization(T.polynomial([0, 0, 1, -1]))
    assert z.order_k == 2
    close(z.cofactor.coeffs, [1, -1], 0)
    s = zero_factorization(T.sin(9))
    assert s.order_k == 1
    close(s.cofactor.coeffs[:5], [1, 0, -1 / 6, 0, 1 / 120], 1e-15)
    assert zero_factorization(T.polynomial([0, 1e-14, 1, 2])).order_k == 2


def test_zero_factorization_reconstruction_bit_identical():
    f = T.polynomial([0, 0, 0, 1.5, -2j, 0.25])
    assert zero_factorization(f).reconstruct().coeffs == f.coeffs


def test_zero_factorization_errors():
    with pytest.raises(NullFunctionError):
        zero_factorization(T.polynomial([0, 0, 0]))
    with pytest.raises(PreconditionError):
        zero_factorization(T.polynomial([1, 1]))


# -- Laurent ---------------------------------------------------------------------------------

def test_laurent_evaluate_examples():
    L = LaurentSeries.from_terms({1: 1, -1: 1})
    assert laurent_evaluate(L, 1) == 2
    assert abs(laurent_evaluate(L, 1j)) < 1e-15
    assert laurent_evaluate(LaurentSeries.from_terms({-2: 1}), 2) == 0.25


def test_laurent_domain_and_cancellation():
    L = LaurentSeries.from_terms({-1: 1}, annulus=(0.5, 2.0))
    with pytest.raises(DomainError):
        L(3.0)
    with pytest.raises(DomainError):
        L(0.25)
    zero = LaurentSeries.from_terms([(1, 1), (1, -1)])
    assert zero.indexed() == {0: 0, 1: 0}


# -- properties ----------------------------------------------------------------------------

coef = st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False)
series16 = st.lists(coef, min_size=17, max_size=17).map(lambda c: T(tuple(c)))
scalar = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)


@given(series16, series16, series16)
def test_ring_laws(f, g, h):
    close(cauchy_product(f, g).coeffs, cauchy_product(g, f).coeffs, 1e-12)
    close(cauchy_product(cauchy_product(f, g), h).coeffs,
          cauchy_product(f, cauchy_product(g, h)).coeffs, 1e-12)
    close(cauchy_product(f, linear_combine(1, g, 1, h)).coeffs,
          linear_combine(1, cauchy_product(f, g), 1, cauchy_product(f, h)).coeffs, 1e-12)


@given(series16, series16)
def test_leibniz_rule(f, g):
    lhs = derivative(cauchy_product(f, g))
    rhs = linear_combine(1, cauchy_product(derivative(f), g), 1, cauchy_product(f, derivative(g)))
    close(lhs.coeffs, rhs.coeffs, 1e-12)


@given(st.lists(coef, min_size=1, max_size=10), scalar)
def test_recenter_round_trip(c, w):
    f = T(tuple(c))
    back = recenter(recenter(f, w), 0)
    close(back.coeffs, f.coeffs, 1e-12 * (1 + abs(w)) ** len(c))


@given(series16, st.complex_numbers(min_magnitude=0.5, max_magnitude=2.0,
                                    allow_nan=False, allow_infinity=False))
def test_double_reciprocal(f, a0):
    f = T((a0,) + f.coeffs[1:8])
    close(reciprocal(reciprocal(f)).coeffs, f.coeffs, 1e-10 * max(1, 1 / abs(a0)) ** 8)


@given(st.integers(min_value=1, max_value=8))
def test_binomial_root_power(p):
    close((binomial_root_series(p, 32) ** p).coeffs, [1, 1] + [0] * 31, 1e-10)


@given(st.integers(min_value=1, max_value=5),
       st.lists(st.complex_numbers(min_magnitude=0.1, max_magnitude=1.0,
                                   allow_nan=False, allow_infinity=False),
                min_size=1, max_size=8))
def test_zero_factorization_round_trip(k, tail):
    f = T((0j,) * k + tuple(tail))
    zf = zero_factorization(f)
    assert zf.order_k == k
    assert zf.reconstruct().coeffs == f.coeffs
