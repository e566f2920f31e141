"""Archimedean Bessel-period constants.

``Q^alpha(z, zbar; X, Y)`` is the degree ``2n + 2`` polynomial

    2 i^(n-alpha+1) (z X^2 - 2XY - zbar Y^2) (X^2 - (z - zbar) XY + Y^2)^alpha
                    (X^2 + (z + zbar) XY - Y^2)^(n - alpha)

and ``W^0_alpha(t) = 1/2 e^(-4 pi) int Q^alpha exp(-4 pi |z|^2) psi(z t) dx dy``.
The period ``B^0_alpha`` pairs ``W^0_alpha`` with the K-Bessel Whittaker vector
and integrates over ``t in C^x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

import mpmath
from mpmath import mp, mpc, mpf

from .constants import ConstantExpr, ExprSum, gamma_c_exact
from .exact import GaussianRational, _require_even, bessel_sign_sum, binomial, i_pow
from .poly import BiHomPoly, MultiPoly, p_map_poly, rho_action, sum_of_squares_power
from .quad import QuadratureTask, complex_gaussian_fourier, integrate
from .special import GUARD, BallComplex, BallReal, bessel_gauss_mellin

Z_VARS = ("z", "zb")
EXP_M4PI = "exp_m4pi"
# (X, Y) g = (Y, -X)
SWAP_XY = ((0, -1), (1, 0))


@dataclass(frozen=True)
class BallBiHom:
    """Homogeneous ``(X, Y)`` polynomial with ball coefficients, indexed by the X exponent."""

    degree: int
    coeffs: Tuple[BallComplex, ...]

    def coefficient(self, x_exp: int) -> BallComplex:
        return self.coeffs[x_exp]


@dataclass(frozen=True)
class BesselPeriodResult:
    n: int
    alpha: int
    closed_form: ConstantExpr
    closed_value: BallComplex
    oracle: BallComplex
    rel_error: BallReal

    def agrees(self, tol: float) -> bool:
        return float(self.rel_error.mid) < tol


def _check(n: int, alpha: int) -> None:
    _require_even(n)
    if not 0 <= alpha <= n:
        raise ValueError(f"alpha must lie in [0, {n}], got {alpha}")


@lru_cache(maxsize=None)
def build_Q_alpha(n: int, alpha: int) -> MultiPoly:
    """``Q^alpha`` as a polynomial in ``z, zb`` with ``(X, Y)`` coefficients."""
    _check(n, alpha)
    z = MultiPoly.variable(Z_VARS, "z")
    zb = MultiPoly.variable(Z_VARS, "zb")
    one = MultiPoly.constant(Z_VARS, 1)
    half = Fraction(1, 2)
    first = p_map_poly(z, one.scale(-1), zb.scale(-1))
    second = p_map_poly(one, (z - zb).scale(-half), one)
    third = p_map_poly(one, (z + zb).scale(half), one.scale(-1))
    return (first * second**alpha * third ** (n - alpha)).scale(i_pow(n - alpha + 1) * 2)


def Q_alpha_conjugated(n: int, alpha: int) -> MultiPoly:
    """``Q^alpha(zbar, z; Y, -X)``: swap the roles of ``z, zb`` and substitute ``(X, Y) -> (Y, -X)``."""
    Q = build_Q_alpha(n, alpha)
    terms = {}
    for (ez, ezb), c in Q.terms.items():
        terms[(ezb, ez)] = rho_action(SWAP_XY, (Q.value_degree, 0), c)
    return MultiPoly(Z_VARS, Q.value_degree, terms)


def q_sign_identity_holds(n: int, alpha: int) -> bool:
    """Exact check of ``Q^alpha(zbar, z; Y, -X) = (-1)^(alpha+1) Q^alpha(z, zbar; X, Y)``."""
    sign = -1 if (alpha + 1) % 2 else 1
    return Q_alpha_conjugated(n, alpha) == build_Q_alpha(n, alpha).scale(sign)


def _mpc(v: GaussianRational) -> mpc:
    return mpc(mpf(v.re.numerator) / v.re.denominator, mpf(v.im.numerator) / v.im.denominator)


def _fourier_sum(Q: MultiPoly, t: object, prec: int) -> BallBiHom:
    deg = Q.value_degree
    acc = [BallComplex.from_mpc(0, 0, prec) for _ in range(deg + 1)]
    with mp.workprec(prec + GUARD):
        half_e = mpmath.exp(-4 * mpmath.pi) / 2
        for (A, B), c in Q.terms.items():
            f = complex_gaussian_fourier(A, B, t, prec)
            for x_exp in range(deg + 1):
                v = c.coefficient(x_exp)
                if v:
                    acc[x_exp] = acc[x_exp] + f * _mpc(v)
        scale = BallComplex.from_mpc(half_e, abs(half_e) * mpf(2) ** (-prec), prec)
        return BallBiHom(deg, tuple(a * scale for a in acc))


def compute_W0_alpha(n: int, alpha: int, t: object, prec: int = 128) -> BallBiHom:
    """``W^0_alpha(t)`` evaluated term by term with the closed Gaussian-Fourier integral."""
    _check(n, alpha)
    return _fourier_sum(build_Q_alpha(n, alpha), t, prec)


def compute_W1_alpha(n: int, alpha: int, t: object, prec: int = 128) -> BallBiHom:
    """``W^1_alpha(t)`` through the conjugated polynomial ``Q^alpha(zbar, z; Y, -X)``."""
    _check(n, alpha)
    return _fourier_sum(Q_alpha_conjugated(n, alpha), t, prec)


def W0_alpha_quadrature(n: int, alpha: int, t: object, x_exp: int, prec: int = 64) -> mpc:
    """Oracle: one coefficient of ``W^0_alpha(t)`` by 2-D quadrature over ``z``."""
    Q = build_Q_alpha(n, alpha)
    with mp.workprec(prec + GUARD):
        tm = mpc(t)
        coeffs = []
        for (A, B), c in Q.terms.items():
            v = c.coefficient(x_exp)
            if v:
                coeffs.append((A, B, _mpc(v)))

        def f(x: mpf, y: mpf) -> mpc:
            z = mpc(x, y)
            zb = mpc(x, -y)
            poly = mpmath.fsum(c * z**A * zb**B for A, B, c in coeffs)
            return poly * mpmath.exp(-4 * mpmath.pi * (x * x + y * y)) * mpmath.expjpi(4 * (z * tm).real)

        lim = mpmath.sqrt(mpf(prec) / 4)
        val = mpmath.quad(f, [-lim, 0, lim], [-lim, 0, lim])
        return val * mpmath.exp(-4 * mpmath.pi) / 2


# ---------------------------------------------------------------- closed forms

def B0_alpha_closed(n: int, alpha: int) -> ConstantExpr:
    """``-1/2 e^(-4 pi) i^(n-alpha+1) Gamma_C((n+2)/2)^2 * sum_c (-1)^c C(alpha, c) C(n-alpha, n/2-c)``."""
    _check(n, alpha)
    g = gamma_c_exact(Fraction(n + 2, 2))
    head = ConstantExpr(Fraction(-1, 2) * bessel_sign_sum(n, alpha), i_power=n - alpha + 1)
    return head * g * g * ConstantExpr.symbol(EXP_M4PI)


def weighted_sign_sum(n: int, alpha: int) -> Fraction:
    """``sum_w (-1)^(m+(w)) C(alpha, l+(w)) C(n-alpha, m+(w))`` before re-indexing by ``c = l+(w)``.

    With ``m+(w) = n/2 - alpha + c`` this is ``(-1)^(n/2)`` times the sign sum
    for even ``alpha``; the closed form as printed drops that factor.
    """
    _check(n, alpha)
    total = Fraction(0)
    for w in range(-n, n + 1):
        if (alpha + w) % 2:
            continue
        lp, mp_ = (alpha + w) // 2, (n - alpha + w) // 2
        total += (-1) ** (mp_ % 2) * binomial(alpha, lp) * binomial(n - alpha, mp_)
    return total


def B0_alpha_closed_corrected(n: int, alpha: int) -> ConstantExpr:
    """:func:`B0_alpha_closed` with the sign sum replaced by :func:`weighted_sign_sum`."""
    _check(n, alpha)
    g = gamma_c_exact(Fraction(n + 2, 2))
    head = ConstantExpr(Fraction(-1, 2) * weighted_sign_sum(n, alpha), i_power=n - alpha + 1)
    return head * g * g * ConstantExpr.symbol(EXP_M4PI)


def B1_alpha_closed(n: int, alpha: int) -> ConstantExpr:
    """``B^1_alpha = (-1)^(alpha+1) B^0_alpha``, the sign read off the conjugated ``Q`` exactly."""
    if not q_sign_identity_holds(n, alpha):
        raise ArithmeticError("the Q sign identity fails")
    return B0_alpha_closed(n, alpha) * (-1 if (alpha + 1) % 2 else 1)


def s_w(n: int, w: int, alpha: int | None = None) -> ConstantExpr:
    """``1/4 (2 pi)^-(n+2) (n/2)!^2``; see :func:`s_w_multisum` for the defining sum."""
    _require_even(n)
    h = math.factorial(n // 2)
    return ConstantExpr(Fraction(h * h, 4 * 2 ** (n + 2)), pi_power=Fraction(-(n + 2)))


def default_alpha_for(n: int, w: int) -> int:
    """Smallest ``alpha`` with ``alpha = w mod 2`` and ``|w| <= alpha, n - alpha``."""
    for alpha in range(n + 1):
        if (alpha - w) % 2 == 0 and abs(w) <= alpha and abs(w) <= n - alpha:
            return alpha
    raise ValueError(f"no admissible alpha for n={n}, w={w}")


def s_w_multisum(n: int, w: int, alpha: int | None = None, prec: int = 128) -> BallReal:
    """``s^w_lambda`` from its sum over ``u, v, a, b, j``.

    Each term is ``2^(-u-v-a-b) j! (-pi)^-j C(m+, a) C(l+, v) C(u+a, j) C(v+b, j)
    C(l- + 1, u) C(m-, b)`` times ``int t^(n+u+v+a+b+2-2j) exp(-pi t^2) K_(a-b+u-v)(4 pi t) dt/t``
    with ``l+- = (alpha +- w)/2`` and ``m+- = (n - alpha +- w)/2``.
    """
    _require_even(n)
    if alpha is None:
        alpha = default_alpha_for(n, w)
    _check(n, alpha)
    if (alpha + w) % 2:
        raise ValueError("alpha and w must have the same parity")
    lp, lm = (alpha + w) // 2, (alpha - w) // 2
    mp_, mm = (n - alpha + w) // 2, (n - alpha - w) // 2
    if min(lp, lm, mp_, mm) < 0:
        raise ValueError(f"w={w} is out of range for alpha={alpha}")
    mellin: Dict[Tuple[int, int], BallReal] = {}
    total = BallReal.exact(0, prec)
    with mp.workprec(prec + GUARD):
        pi = mpmath.pi
    for u in range(lm + 2):
        for v in range(lp + 1):
            for a in range(mp_ + 1):
                for b in range(mm + 1):
                    comb = (binomial(mp_, a) * binomial(lp, v) * binomial(lm + 1, u) * binomial(mm, b)
                            / 2 ** (u + v + a + b))
                    for j in range(min(u + a, v + b) + 1):
                        c = comb * binomial(u + a, j) * binomial(v + b, j) * math.factorial(j)
                        if not c:
                            continue
                        key = (n + u + v + a + b + 2 - 2 * j, a - b + u - v)
                        if key not in mellin:
                            mellin[key] = bessel_gauss_mellin(key[0], key[1], 1, prec)
                        with mp.workprec(prec + GUARD):
                            factor = mpf(c.numerator) / c.denominator * (-pi) ** (-j)
                        total = total + mellin[key] * BallReal(factor, abs(factor) * mpf(2) ** (-prec), prec)
    return total


# ---------------------------------------------------------------- numeric oracle

def _whittaker_coefficient(n: int, j: int, t: mpf) -> mpf:
    return 16 * t ** (n + 2) * mpmath.besselk(abs(j), 4 * mpmath.pi * t)


def B0_alpha_oracle(n: int, alpha: int, prec: int = 96, theta_nodes: int = 0) -> BallComplex:
    """``int_0^inf dt/t int dtheta/2pi <W^0_alpha(t e^(i theta)), W(diag(t e^(i theta), 1))>``.

    The Whittaker vector at ``diag(t e^(i theta), 1)`` is
    ``sum_j 2^4 i^j t^(n+2) K_j(4 pi t) e^(i j theta) (X^(n+1+j) Y^(n+1-j))^vee``.
    The theta-average uses the trapezoid rule, exact for trigonometric
    polynomials of degree below the node count.
    """
    _check(n, alpha)
    Q = build_Q_alpha(n, alpha)
    N = theta_nodes or 4 * n + 12
    terms = []
    for (A, B), c in Q.terms.items():
        for x_exp in range(2 * n + 3):
            v = c.coefficient(x_exp)
            if v:
                terms.append((A, B, x_exp - n - 1, v))

    def integrand_parts(t: mpf) -> mpc:
        with mp.workprec(prec + GUARD):
            acc = mpc(0)
            pi = mpmath.pi
            K = {j: _whittaker_coefficient(n, j, t) for j in range(-n - 1, n + 2)}
            for k in range(N):
                theta = 2 * pi * k / N
                tc = t * mpmath.expj(theta)
                tb = mpmath.conj(tc)
                gauss = mpmath.exp(-pi * t * t)
                for A, B, j, v in terms:
                    s = mpc(0)
                    for m in range(min(A, B) + 1):
                        s += (math.comb(A, m) * math.comb(B, m) * math.factorial(m)
                              * (-pi) ** (-m) * tb ** (A - m) * tc ** (B - m))
                    f = s * mpf(2) ** (-2 - A - B) * mpc(0, 1) ** (A + B) * gauss
                    acc += _mpc(v) * f * K[j] * mpc(0, 1) ** (j % 4) * mpmath.expj(j * theta)
            return acc * mpmath.exp(-4 * pi) / 2 / N / t

    upper = mpmath.sqrt(mpf(prec + 2 * GUARD) * mpmath.log(2) / mpmath.pi) + 2
    # both parts are integrated over the same nodes; evaluate each node once
    cache: Dict[mpf, mpc] = {}

    def part(which: str):
        def g(t: mpf) -> mpf:
            if t not in cache:
                cache[t] = integrand_parts(t)
            v = cache[t]
            return v.real if which == "re" else v.imag

        return g

    re = integrate(QuadratureTask(part("re"), (0, upper), target_precision_bits=prec, breakpoints=(1,)))
    im = integrate(QuadratureTask(part("im"), (0, upper), target_precision_bits=prec, breakpoints=(1,)))
    return BallComplex(re, im)


def compute_B0_alpha(n: int, alpha: int, prec: int = 96, theta_nodes: int = 0) -> BesselPeriodResult:
    """Closed form and numeric oracle for ``B^0_alpha``."""
    closed = B0_alpha_closed(n, alpha)
    cv = closed.evaluate(prec=prec)
    closed_ball = BallComplex.from_mpc(cv, abs(cv) * mpf(2) ** (-prec), prec)
    oracle = B0_alpha_oracle(n, alpha, prec, theta_nodes)
    with mp.workprec(prec + GUARD):
        diff = abs(oracle.mid() - cv)
        scale = abs(cv)
        if scale:
            rel = BallReal(diff / scale, oracle.rad() / scale, prec)
        else:
            rel = BallReal(diff, oracle.rad(), prec)
    return BesselPeriodResult(n, alpha, closed, closed_ball, oracle, rel)


# ---------------------------------------------------------------- assembled polynomial

def theorem_bessel_polynomial(n: int) -> BiHomPoly:
    """``sum_alpha i^(n-alpha) s(n, alpha) C(n, alpha) X^alpha Y^(n-alpha)``, with ``s`` the sign sum.

    Raises unless it equals ``(-1)^(n/2) C(n, n/2) (X^2 + Y^2)^(n/2)`` exactly.
    """
    lhs = bessel_polynomial_sum(n)
    rhs = bessel_polynomial_closed(n)
    if lhs != rhs:
        raise ArithmeticError(f"the two forms differ for n={n}")
    return lhs


def bessel_polynomial_sum(n: int) -> BiHomPoly:
    _require_even(n)
    out = BiHomPoly(n)
    for alpha in range(n + 1):
        c = i_pow(n - alpha) * bessel_sign_sum(n, alpha) * binomial(n, alpha)
        out = out + BiHomPoly.monomial(n, alpha, c)
    return out


def bessel_polynomial_closed(n: int) -> BiHomPoly:
    _require_even(n)
    sign = -1 if (n // 2) % 2 else 1
    return sum_of_squares_power(n // 2).scale(sign * binomial(n, n // 2))


def bessel_period_polynomial(n: int) -> Dict[int, ConstantExpr]:
    """Coefficients ``B^0_alpha C(n, alpha)`` of ``X^alpha Y^(n-alpha)``."""
    return {alpha: B0_alpha_closed(n, alpha) * binomial(n, alpha) for alpha in range(n + 1)}


def bessel_period_factorization(n: int) -> bool:
    """``sum_alpha B^0_alpha C(n, alpha) X^alpha Y^(n-alpha) = -i/2 e^(-4 pi) Gamma_C((n+2)/2)^2 * poly``."""
    g = gamma_c_exact(Fraction(n + 2, 2))
    unit = ConstantExpr(Fraction(-1, 2), i_power=1) * g * g * ConstantExpr.symbol(EXP_M4PI)
    poly = theorem_bessel_polynomial(n)
    for alpha, c in bessel_period_polynomial(n).items():
        expected = ExprSum.of(poly.coefficient(alpha)) * unit
        if ExprSum.of(c) != expected:
            return False
    return True
