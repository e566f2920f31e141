import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hstverify.exact import (
    GaussianRational,
    bessel_sign_sum,
    bessel_sign_sum_closed,
    binomial,
    comb_identity_sum,
    hermitian_square_norm,
    i_pow,
    verify_comb_identity,
)

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10**4)
gaussians = st.builds(GaussianRational, fractions, fractions)
even_n = st.integers(0, 5).map(lambda k: 2 * k)


@given(gaussians, gaussians, gaussians)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(gaussians)
def test_norm_is_product_with_conjugate(a):
    assert a * a.conj() == GaussianRational(a.norm())


@given(gaussians, gaussians.filter(bool))
def test_division_inverts_multiplication(a, b):
    assert (a / b) * b == a


def test_i_powers_cycle():
    assert [i_pow(k) for k in range(4)] == [1, GaussianRational(0, 1), -1, GaussianRational(0, -1)]
    assert i_pow(-1) == GaussianRational(0, -1)


@given(st.integers(0, 20), st.integers(-3, 23))
def test_binomial_matches_math_comb(a, b):
    expected = math.comb(a, b) if 0 <= b <= a else 0
    assert binomial(a, b) == expected


@pytest.mark.parametrize("A,B,expected", [(0, 0, 1), (3, 5, 6), (2, 1, 2)])
def test_comb_identity_examples(A, B, expected):
    assert comb_identity_sum(A, B) == expected


def test_comb_identity_full_grid():
    assert all(verify_comb_identity(A, B) for A in range(31) for B in range(31))


def test_comb_identity_rejects_negative():
    with pytest.raises(ValueError):
        comb_identity_sum(-1, 2)


@given(even_n, st.data())
def test_sign_sum_closed_form(n, data):
    alpha = data.draw(st.integers(0, n))
    assert bessel_sign_sum(n, alpha) == bessel_sign_sum_closed(n, alpha)


@given(even_n, st.data())
def test_sign_sum_vanishes_for_odd_alpha(n, data):
    alpha = data.draw(st.integers(0, n))
    if alpha % 2:
        assert bessel_sign_sum(n, alpha) == 0


@pytest.mark.parametrize("n", [0, 2, 4, 6, 8])
def test_hermitian_square_norm_is_power_of_two(n):
    assert hermitian_square_norm(n) == Fraction(2**n)


def test_sign_sum_rejects_odd_n():
    with pytest.raises(ValueError, match="even"):
        bessel_sign_sum(3, 1)
