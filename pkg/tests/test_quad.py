from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mpf

from hstverify.constants import ConstantExpr
from hstverify.poly import BiHomPoly, MultiPoly
from hstverify.quad import (
    GaussianWeight,
    QuadratureError,
    QuadratureTask,
    complex_gaussian_fourier,
    complex_gaussian_fourier_quadrature,
    correlated_moment,
    double_factorial,
    gaussian_moment,
    gaussian_moment_exact,
    integrate,
    reduce_gaussian_polynomial_integral,
)


def test_integrate_polynomial_exactly():
    val = integrate(QuadratureTask(lambda x: 3 * x * x, "unit", target_precision_bits=128))
    assert val.contains(1) and val.rad < mpf(2) ** -100


def test_integrate_log_endpoint():
    val = integrate(QuadratureTask(lambda x: mpmath.log(x), "unit", ("log",), 128))
    assert val.contains(-1)


def test_integrate_half_line():
    val = integrate(QuadratureTask(lambda x: mpmath.exp(-x), "half_line", target_precision_bits=128))
    assert val.contains(1)


def test_a_integral_value():
    def f(a: mpf) -> mpf:
        return a * (1 - a * a) * mpmath.log(a) / (1 + a * a) ** 3

    val = integrate(QuadratureTask(f, "unit", ("log",), 128))
    assert val.contains(mpf(-1) / 8) and val.rel_width() < 1e-20


def test_unknown_domain():
    with pytest.raises(ValueError):
        integrate(QuadratureTask(lambda x: x, "sphere"))


def test_nonconvergent_integral_raises():
    # oscillation too fast for a low degree cap
    task = QuadratureTask(lambda x: mpmath.sin(1000 * x), (0, 50), target_precision_bits=64, max_degree=3)
    with pytest.raises(QuadratureError):
        integrate(task)


@pytest.mark.parametrize("m,expected", [(-1, 1), (0, 1), (5, 15), (6, 48)])
def test_double_factorial(m, expected):
    assert double_factorial(m) == expected


@given(st.integers(0, 8), st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=8))
def test_gaussian_moment_matches_quadrature(k, c):
    with mpmath.mp.workprec(100):
        cm = mpf(c.numerator) / c.denominator
        ref = mpmath.quad(lambda u: u**k * mpmath.exp(-cm * mpmath.pi * u * u), [-mpmath.inf, -4, 0, 4, mpmath.inf])
        val = gaussian_moment(k, c, 96).mid
        assert abs(val - ref) <= mpf(2) ** -80 * max(abs(ref), 1)


def test_gaussian_moment_symbolic_weight():
    w = GaussianWeight(Fraction(1), a_exp=2)
    assert gaussian_moment_exact(2, w) == ConstantExpr(Fraction(1, 2), pi_power=-1) * ConstantExpr.symbol("a", -3)
    assert gaussian_moment_exact(3, w).is_zero()


@pytest.mark.parametrize("A,B,t", [(0, 0, 1), (1, 1, mpmath.mpc("0.5", "0.5")), (2, 1, mpmath.mpc("0.5", "-0.25"))])
def test_complex_gaussian_fourier_matches_quadrature(A, B, t):
    closed = complex_gaussian_fourier(A, B, t, 64).mid()
    ref = complex_gaussian_fourier_quadrature(A, B, t, 64)
    with mpmath.mp.workprec(84):
        assert abs(closed - ref) <= mpf(10) ** -15 * max(abs(ref), mpf(10) ** -10)


def test_reduce_gaussian_polynomial_integral_product_of_moments():
    vars_ = ("u", "v")
    P = MultiPoly.variable(vars_, "u", 2) * MultiPoly.variable(vars_, "v", 2)
    out = reduce_gaussian_polynomial_integral(P, {"u": 1, "v": 2}).scalar().single()
    assert out == gaussian_moment_exact(2, 1) * gaussian_moment_exact(2, 2)


def test_reduce_gaussian_polynomial_integral_needs_all_weights():
    P = MultiPoly.variable(("u", "v"), "u")
    with pytest.raises(ValueError):
        reduce_gaussian_polynomial_integral(P, {"u": 1})


def test_reduce_keeps_value_polynomial():
    vars_ = ("u",)
    P = MultiPoly(vars_, 1, {(2,): BiHomPoly(1, (1, 2))})
    out = reduce_gaussian_polynomial_integral(P, {"u": 1})
    m2 = gaussian_moment_exact(2, 1)
    assert out.coefficient(0).single() == m2 and out.coefficient(1).single() == m2 * 2


@given(st.integers(0, 4), st.integers(0, 4))
def test_correlated_moment_isserlis(i, j):
    # E[T^i S^j] with Var = 1/2, Cov = kappa, checked at kappa = 1/3 against a direct 2-D Gaussian sum
    var, kappa = Fraction(1, 2), Fraction(1, 3)
    coeffs = correlated_moment(i, j, var)
    total = sum(c * kappa**m for m, c in coeffs.items())
    # Cholesky: T = sqrt(var) X, S = rho T + sqrt(var - rho^2 var) Y with rho = kappa/var
    with mpmath.mp.workprec(100):
        sv = mpmath.sqrt(mpf(1) / 2)
        rho = mpf(2) / 3
        sy = mpmath.sqrt(mpf(1) / 2 - rho**2 / 2)

        def moment(k: int) -> mpf:
            return mpf(double_factorial(k - 1)) if k % 2 == 0 else mpf(0)

        ref = mpf(0)
        for p in range(j + 1):
            ref += mpmath.binomial(j, p) * rho**p * sy ** (j - p) * sv ** (i + p) * moment(i + p) * moment(j - p)
        assert abs(mpf(total.numerator) / total.denominator - ref) < mpf(10) ** -25
