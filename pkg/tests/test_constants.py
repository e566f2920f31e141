from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hstverify.constants import ConstantExpr, ExprSum, gamma_c_exact, gamma_exact, gamma_r_exact
from hstverify.special import gamma_ball, gamma_c, gamma_r

nonzero = st.fractions(min_value=-50, max_value=50, max_denominator=30).filter(bool)
exps = st.fractions(min_value=-4, max_value=4, max_denominator=2)
names = st.sampled_from(["L_As_plus", "vol_UN1", "exp_m4pi", "x2_plus_y2"])

constants = st.builds(
    lambda r, i, p, root, ph: ConstantExpr(r, i, p, root, tuple(ph)),
    nonzero,
    st.integers(0, 3),
    exps,
    st.sampled_from([1, 2, 3, 6, 12]),
    st.lists(st.tuples(names, exps), max_size=3),
)
VALUES = {"L_As_plus": 3, "vol_UN1": Fraction(1, 7), "exp_m4pi": mpmath.exp(-4 * mpmath.pi), "x2_plus_y2": 5}


@given(constants, constants)
def test_multiplication_matches_numeric(a, b):
    with mpmath.mp.workprec(150):
        lhs = (a * b).evaluate(VALUES)
        rhs = a.evaluate(VALUES) * b.evaluate(VALUES)
        assert abs(lhs - rhs) <= mpmath.mpf(2) ** -100 * abs(rhs)


@given(constants)
def test_inverse(a):
    assert a * a.inverse() == ConstantExpr(1)


@given(constants)
def test_text_round_trip(a):
    assert ConstantExpr.parse(a.to_text()) == a


@given(constants, constants)
def test_canonical_text_is_order_independent(a, b):
    assert (a * b).to_text() == (b * a).to_text()


def test_zero_collapses():
    z = ConstantExpr(0, i_power=1, pi_power=3, placeholders=(("L", 2),))
    assert z.is_zero() and z.to_text() == "0" and z == ConstantExpr(0)


def test_square_roots_reduce():
    assert ConstantExpr.sqrt(12) == ConstantExpr(2, root=3)
    assert ConstantExpr.sqrt(3) * ConstantExpr.sqrt(3) == ConstantExpr(3)
    assert ConstantExpr.sqrt(Fraction(1, 2)) == ConstantExpr(Fraction(1, 2), root=2)


def test_i_power_normalisation():
    assert ConstantExpr(1, i_power=2) == ConstantExpr(-1)
    assert ConstantExpr(1, i_power=1).conj() == ConstantExpr(-1, i_power=1)


def test_substitute():
    e = ConstantExpr(2, placeholders=(("a", 2), ("b", -1)))
    assert e.substitute({"a": 3, "b": 4}) == ConstantExpr(Fraction(9, 2))
    with pytest.raises(ValueError):
        ConstantExpr.symbol("a", Fraction(1, 2)).substitute({"a": 4})


def test_expr_sum_collects_like_terms():
    x = ConstantExpr.pi(-2)
    s = ExprSum.of(x * 3) + ExprSum.of(x * -3)
    assert s.is_zero()
    assert (ExprSum.of(x) + ExprSum.of(x)).single() == x * 2


@pytest.mark.parametrize("s", [Fraction(1), Fraction(1, 2), Fraction(5, 2), Fraction(4), Fraction(9, 2)])
def test_exact_gamma_factors_match_numeric(s):
    prec = 128
    pairs = [(gamma_exact, gamma_ball), (gamma_c_exact, gamma_c)]
    if s.denominator == 1:  # Gamma_R at half-integers needs Gamma at quarter-integers
        pairs.append((gamma_r_exact, gamma_r))
    with mpmath.mp.workprec(150):
        for exact, ball in pairs:
            ref = ball(s, prec).mid
            assert abs(exact(s).evaluate(prec=prec).real - ref) < mpmath.mpf(2) ** -110 * ref


def test_gamma_c_closed_values():
    assert gamma_c_exact(1) == ConstantExpr.pi(-1)
    assert gamma_c_exact(4) == ConstantExpr(Fraction(3, 4), pi_power=-4)
