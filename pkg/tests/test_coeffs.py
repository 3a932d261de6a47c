from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import gamma_star
from wrightaux.coeffs import (
    D_POLYNOMIALS,
    D_SIGN_ERRATA,
    CoefficientMethod,
    c_algorithm,
    c_closed,
    e_factor_series,
    inverse_factorial_work,
    pochhammer_reciprocal_series,
    stirling_coeffs,
)
from wrightaux.core import RangeError, derive_params
from wrightaux.tables import PUBLISHED_TABLE1, round_dp

CROSS_SIGMAS = [0.1, "1/4", "1/3", 0.45, 0.6, "2/3", "3/4", 0.9]


def c1_formula(s):
    return (2 - s) * (1 - 2 * s) / (24 * s)


# ---------------------------------------------------------------- closed forms

@pytest.mark.parametrize("sigma", ["1/4", "3/4"])
def test_c_closed_table1(sigma):
    table = c_closed(sigma, 7)
    assert table.method is CoefficientMethod.CLOSED_FORM
    assert [round_dp(c) for c in table.coeffs] == list(PUBLISHED_TABLE1[sigma])


def test_c_closed_exact_rationals():
    table = c_closed("1/4", 3)
    assert table.exact[0] == 1
    assert table.exact[1] == Fraction(7, 48)
    assert c_closed("3/4", 2).exact[1] == Fraction(-5, 144)


def test_c_closed_half_vanishes():
    table = c_closed("1/2", 7)
    assert table[0] == 1
    assert all(c == 0 for c in table.coeffs[1:])


@pytest.mark.parametrize("M", [0, 8, 20])
def test_c_closed_range(M):
    with pytest.raises(RangeError):
        c_closed("1/4", M)


def test_c_closed_printed_signs_are_errata():
    # the printed d_3, d_4 give the opposite sign of the algorithm's c_3, c_4
    printed = c_closed("1/4", 7, errata=False)
    corrected = c_closed("1/4", 7)
    for j in range(7):
        factor = D_SIGN_ERRATA.get(j, 1)
        assert printed[j] * factor == corrected[j]
    algo = c_algorithm("1/4", 7)
    assert mp.sign(printed[3]) == -mp.sign(algo[3])
    assert set(D_SIGN_ERRATA) == {3, 4}
    assert D_POLYNOMIALS[2] == (1, (2, 19, 2))


# ---------------------------------------------------------------- Stirling

def test_stirling_first_values():
    assert stirling_coeffs(3).gammas == (1, Fraction(-1, 12), Fraction(1, 288), Fraction(139, 51840))
    assert stirling_coeffs(0).gammas == (1,)


def test_stirling_known_higher():
    g = stirling_coeffs(6).gammas
    assert g[4] == Fraction(-571, 2488320)
    assert g[5] == Fraction(-163879, 209018880)


def test_stirling_gamma_star_at_50():
    with mp.workdps(40):
        err = abs(gamma_star(50) - stirling_coeffs(5).evaluate(50))
    assert err < 1e-10


def test_stirling_negative():
    with pytest.raises(ValueError):
        stirling_coeffs(-1)


# ---------------------------------------------------------------- e(alpha s; a)

def _e_factor(alpha, a, s):
    return mp.exp(-a) * (1 + a / (alpha * s)) ** (alpha * s + a - mp.mpf(1) / 2)


@pytest.mark.parametrize("alpha", ["1/4", 1, "3/2"])
def test_e_factor_a_one(alpha):
    e = e_factor_series(alpha, 1, 3)
    assert e[0] == 1 and e[1] == 0


def test_e_factor_order_one():
    e = e_factor_series("1/4", "1/4", 2)
    assert e[1] == Fraction(-3, 8)


@given(st.fractions(min_value=Fraction(1, 10), max_value=3), st.fractions(min_value=-2, max_value=3))
@settings(max_examples=40, deadline=None)
def test_e_factor_order_one_formula(alpha, a):
    e = e_factor_series(alpha, a, 1)
    assert e[1] == a * (a - 1) / (2 * alpha)


def test_e_factor_finite_difference_fit():
    # fit the order-2 coefficient from e(s;2) at s = 1e3, 1e4
    e = e_factor_series(1, 2, 3)
    with mp.workdps(40):
        def resid(s):
            return (_e_factor(1, 2, mp.mpf(s)) - e[0].numerator - mp.mpf(e[1].numerator) / e[1].denominator / s) * s * s
        r3, r4 = resid(1000), resid(10000)
        # resid(s) = e_2 + e_3/s + ...: Richardson-eliminate the 1/s term
        fitted = (10 * r4 - r3) / 9
    assert abs(fitted - mp.mpf(e[2].numerator) / e[2].denominator) < 1e-6


def test_e_factor_against_direct_evaluation():
    e = e_factor_series(0.3, 0.7, 12)
    s = mp.mpf(200)
    approx = mp.fsum(c / s**k for k, c in enumerate(e))
    assert abs(approx - _e_factor(mp.mpf(0.3), mp.mpf(0.7), s)) < 1e-25


def test_e_factor_alpha_positive():
    with pytest.raises(ValueError):
        e_factor_series(0, 1, 2)


# ---------------------------------------------------------------- algorithm

@pytest.mark.parametrize("sigma", ["1/4", "3/4"])
def test_c_algorithm_table1(sigma):
    table = c_algorithm(sigma, 7)
    assert table.method is CoefficientMethod.ALGORITHM
    assert [round_dp(c) for c in table.coeffs] == list(PUBLISHED_TABLE1[sigma])


@given(st.fractions(min_value=Fraction(1, 50), max_value=Fraction(49, 50)))
@settings(max_examples=30, deadline=None)
def test_c_algorithm_c1_formula(s):
    table = c_algorithm(s, 2)
    assert table.exact[0] == 1
    assert table.exact[1] == c1_formula(s)


@pytest.mark.parametrize("sigma", [0.17, 0.62])
def test_c_algorithm_c1_float(sigma):
    c = c_algorithm(sigma, 2, digits=20)[1]
    s = mp.mpf(sigma)
    assert abs(c - c1_formula(s)) < 1e-18


def test_c1_from_script_quantities():
    work = inverse_factorial_work(Fraction(2, 7), 2)
    kappa = Fraction(5, 7)
    c1 = kappa / 2 * (work.A_script + work.B_script / 6)
    assert c1 == c1_formula(Fraction(2, 7))
    assert work.theta_prime == 1 - (Fraction(2, 7) - Fraction(1, 2))


def test_c_algorithm_half_vanishes():
    table = c_algorithm("1/2", 10)
    assert table.exact[0] == 1 and all(c == 0 for c in table.exact[1:])
    approx = c_algorithm(0.5, 10, digits=30)
    assert all(abs(c) < 1e-50 for c in approx.coeffs[1:])


@pytest.mark.parametrize("sigma", CROSS_SIGMAS)
def test_cross_method_agreement(sigma):
    algo = c_algorithm(sigma, 7, digits=30)
    closed = c_closed(sigma, 7, dps=40)
    assert max(abs(a - c) for a, c in zip(algo.coeffs, closed.coeffs)) < 1e-10


def test_exact_and_mpf_modes_agree():
    exact = c_algorithm("2/5", 12)
    approx = c_algorithm("2/5", 12, digits=30, exact=False)
    assert approx.exact is None
    with mp.workdps(40):
        for a, b in zip(exact.exact, approx.coeffs):
            assert abs(mp.mpf(a.numerator) / a.denominator - b) < mp.mpf(10) ** -25 * max(1, abs(b))


def test_c_algorithm_range():
    with pytest.raises(RangeError):
        c_algorithm("1/4", 101)
    with pytest.raises(RangeError):
        c_algorithm("1/4", 0)
    assert len(c_algorithm(0.3, 100, digits=20)) == 100


def test_pochhammer_reciprocal_leading_unit():
    # the triangular conversion system has a unit diagonal
    for j in range(6):
        series = pochhammer_reciprocal_series(Fraction(5, 4), j, 8)
        assert all(v == 0 for v in series[:j])
        assert series[j] == 1


def _r_upsilon(sigma, s):
    # Gamma(sigma s + sigma) Gamma(kappa s + theta') / Gamma(1 + s), normalised by
    # kappa A (h kappa^kappa)^s so that the leading inverse-factorial term is c_0 = 1
    p = derive_params(sigma)
    tp = 1 - p.theta
    lg = mp.loggamma(p.sigma * s + p.sigma) + mp.loggamma(p.kappa * s + tp) - mp.loggamma(1 + s)
    return mp.exp(lg) / (p.kappa * p.a_sigma * (p.h * p.kappa**p.kappa) ** s)


def test_normalisation_leading_term():
    # the A_0 = A(sigma) normalisation: R(s) Upsilon(s) (kappa s + theta')_0 -> 1 ... times (kappa s)^0
    with mp.workdps(40):
        s = mp.mpf(10) ** 8
        assert abs(_r_upsilon("1/4", s) - 1) < 1e-6


def test_inverse_factorial_residual_decay():
    sigma, M = "1/4", 8
    with mp.workdps(60):
        c = c_algorithm(sigma, M, digits=40).coeffs
        p = derive_params(sigma)
        tp = 1 - p.theta
        resid = {}
        for s in (100, 200, 400):
            s = mp.mpf(s)
            series = mp.fsum(c[j] / mp.rf(p.kappa * s + tp, j) for j in range(M))
            resid[int(s)] = abs(_r_upsilon(sigma, s) / series - 1)
        slope1 = mp.log(resid[200] / resid[100]) / mp.log(2)
        slope2 = mp.log(resid[400] / resid[200]) / mp.log(2)
    assert abs(slope1 + M) < 0.5 or abs(slope2 + M) < 0.5
    assert abs(slope2 + M) < 0.5
