from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mpf

from hstverify.special import (
    BallReal,
    bessel_gauss_mellin,
    bessel_gauss_mellin_quadrature,
    bessel_k,
    bessel_k_integral,
    bessel_pair_mellin,
    bessel_pair_mellin_quadrature,
    gauss_2f1,
    k_bessel_square_mellin,
    omega,
    omega_hyperu,
)

PREC = 128
FOUR_PI = 4 * mpmath.pi


def rel(a, b):
    a = a.mid if isinstance(a, BallReal) else a
    b = b.mid if isinstance(b, BallReal) else b
    with mpmath.mp.workprec(PREC + 20):
        return abs(a - b) / abs(b)


# ---------------------------------------------------------------- balls

reals = st.fractions(min_value=-100, max_value=100, max_denominator=1000)
radii = st.fractions(min_value=0, max_value=Fraction(1, 100), max_denominator=10**6)


def balls():
    return st.builds(lambda m, r: BallReal.from_mid_rad(mpf(m.numerator) / m.denominator,
                                                        mpf(r.numerator) / r.denominator, 96), reals, radii)


@given(balls(), balls(), st.fractions(0, 1), st.fractions(0, 1))
def test_ball_ops_enclose_pointwise(x, y, s, t):
    # any points inside the inputs map inside the output
    with mpmath.mp.workprec(140):
        px = x.mid + (2 * mpf(s.numerator) / s.denominator - 1) * x.rad
        py = y.mid + (2 * mpf(t.numerator) / t.denominator - 1) * y.rad
        assert (x + y).contains(px + py)
        assert (x - y).contains(px - py)
        assert (x * y).contains(px * py)
        if abs(y.mid) > y.rad:
            assert (x / y).contains(px / py)


def test_exact_ball_has_zero_radius_for_dyadics():
    assert BallReal.exact(Fraction(3, 8), 64).rad == 0
    assert BallReal.exact(Fraction(1, 3), 64).rad > 0


# ---------------------------------------------------------------- Bessel K

@pytest.mark.parametrize("nu", [0, 1, 2, 5])
@pytest.mark.parametrize("z", [Fraction(1, 10), 1, FOUR_PI, 30])
def test_bessel_k_matches_integral_representation(nu, z):
    k = bessel_k(nu, z, 96)
    assert rel(k, bessel_k_integral(nu, z, 96)) < mpf(2) ** -80


@given(st.integers(1, 6), st.fractions(min_value=Fraction(1, 10), max_value=20, max_denominator=100))
def test_bessel_k_recurrence(nu, z):
    # K_{nu+1}(z) - K_{nu-1}(z) = 2 nu / z K_nu(z)
    lhs = bessel_k(nu + 1, z, 96) - bessel_k(nu - 1, z, 96)
    rhs = bessel_k(nu, z, 96) * (Fraction(2 * nu) / z)
    assert rel(lhs, rhs) < mpf(2) ** -80


def test_bessel_k_rejects_nonpositive():
    with pytest.raises(ValueError):
        bessel_k(0, 0)


# ---------------------------------------------------------------- 2F1 and omega

def test_2f1_at_zero():
    assert gauss_2f1(Fraction(1, 3), 2, 5, 0, PREC).mid == 1


@given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 8),
       st.fractions(min_value=Fraction(-9, 10), max_value=Fraction(9, 10), max_denominator=20))
def test_2f1_matches_mpmath(a, b, c, z):
    val = gauss_2f1(a, b, c, z, 96)
    with mpmath.mp.workprec(120):
        ref = mpmath.hyp2f1(a, b, c, mpf(z.numerator) / z.denominator)
    assert val.contains(ref) or rel(val, ref) < mpf(2) ** -85


def test_2f1_radius_dominates_truncation():
    z = Fraction(19, 20)
    val = gauss_2f1(2, 3, 4, z, 64)
    with mpmath.mp.workprec(200):
        ref = mpmath.hyp2f1(2, 3, 4, mpf(19) / 20)
    assert val.contains(ref)


def test_2f1_appendix_forms():
    with mpmath.mp.workprec(PREC + 20):
        z = mpf(1) / 2
        L = mpmath.log(1 - z)
        k0k0 = 6 * (-2 / z**3 * (L + z + z * z / 2) + (L + z) / z**2)
        third = mpf(1) / 3
        k1k1 = 3 * mpmath.nsum(lambda n: (1 - 2 / (n + 3)) * third**n, [0, mpmath.inf])
    assert rel(gauss_2f1(2, 2, 4, Fraction(1, 2), PREC), k0k0) < 1e-30
    assert rel(gauss_2f1(3, 2, 4, Fraction(1, 3), PREC), k1k1) < 1e-30


def test_omega_degenerate_values():
    assert omega(FOUR_PI, 1, 5, PREC).mid == 1
    assert omega(FOUR_PI, Fraction(-3, 2), 0, PREC).mid == 1


@pytest.mark.parametrize("alpha,beta", [(-1, 2), (Fraction(1, 2), Fraction(5, 2)), (2, 3)])
def test_omega_reflection(alpha, beta):
    lhs = omega(FOUR_PI, alpha, beta, PREC)
    rhs = omega(FOUR_PI, 1 - Fraction(beta), 1 - Fraction(alpha), PREC)
    assert rel(lhs, rhs) < 1e-20


def test_omega_recurrence():
    n, alpha, beta = 2, 1, 3
    lhs = omega(FOUR_PI, -alpha, beta, PREC)
    with mpmath.mp.workprec(PREC + 20):
        rhs = sum(
            mpmath.binomial(n, b) * mpmath.factorial(b + alpha) / mpmath.factorial(alpha)
            * FOUR_PI ** (-b) * omega(FOUR_PI, -alpha - b, beta + n, PREC).mid
            for b in range(n + 1)
        )
    assert rel(lhs, rhs) < 1e-30


@given(st.fractions(min_value=-3, max_value=3, max_denominator=2),
       st.fractions(min_value=Fraction(1, 2), max_value=4, max_denominator=2))
def test_omega_matches_tricomi(alpha, beta):
    val = omega(FOUR_PI, alpha, beta, 80)
    assert rel(val, omega_hyperu(FOUR_PI, alpha, beta, 80)) < 1e-18


# ---------------------------------------------------------------- Mellin closed forms

@pytest.mark.parametrize("rho,mu,nu,a", [(4, 0, 0, Fraction(1, 2)), (5, 1, 0, Fraction(1, 3)), (6, 2, 2, 1)])
def test_pair_mellin_matches_quadrature(rho, mu, nu, a):
    closed = bessel_pair_mellin(rho, mu, nu, a, 64)
    assert rel(closed, bessel_pair_mellin_quadrature(rho, mu, nu, a, 64)) < 1e-15


@pytest.mark.parametrize("alpha,beta,c", [(4, 0, 1), (5, 3, 2), (6, 0, Fraction(1, 3))])
def test_gauss_mellin_matches_quadrature(alpha, beta, c):
    closed = bessel_gauss_mellin(alpha, beta, c, 64)
    assert rel(closed, bessel_gauss_mellin_quadrature(alpha, beta, c, 64)) < 1e-15


@given(st.integers(5, 8), st.integers(0, 2), st.integers(0, 2))
def test_pair_mellin_symmetric_in_order_signs(rho, mu, nu):
    a = Fraction(1, 2)
    assert rel(bessel_pair_mellin(rho, mu, nu, a, 80), bessel_pair_mellin(rho, -mu, -nu, a, 80)) < 1e-20


@pytest.mark.parametrize("n", [0, 2])
def test_square_mellin_matches_pair_mellin_at_a_one(n):
    for k in range(n + 2):
        sq = k_bessel_square_mellin(n, k, 96)
        assert rel(sq, bessel_pair_mellin(2 * n + 4, k, k, 1, 96)) < 1e-25
