"""The archimedean inner-product integral ``I_n`` and the constants built from it.

``I_n`` is an integral over ``a in (0, 1)`` (Cartan weight ``(a - 1/a)^2 da/a``),
over a pair of symmetric 2x2 matrices, and over ``t > 0``.  The matrix
integral is Gaussian.  With ``p`` the off-diagonal-free coordinate and
``q, r`` the two real coordinates of each matrix, the a-scaled matrix has
``t^a = (q/a + a r)/2`` while the unscaled one has ``t = (q + r)/2``.  Under the
weight ``exp(-pi(4|p|^2 + (1 + a^-2) q^2 + (1 + a^2) r^2))`` the pair
``(t^a, t)`` is a centred Gaussian with variances ``1/(8 pi)`` and covariance
``s/(4 pi)``, ``s = a/(1 + a^2)``, so every moment is an exact polynomial in
``s``.  The t-integral is a product of two K-Bessel functions in closed form,
which leaves a one-dimensional a-integral for quadrature.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

import mpmath
from mpmath import mp, mpc, mpf

from .config import InConfig, default_precision
from .constants import ConstantExpr, ExprSum, gamma_c_exact, gamma_r_exact
from .exact import GaussianRational, _require_even, binomial, i_pow
from .poly import (
    BiHomPoly,
    MultiPoly,
    build_P_alpha,
    dual_basis_vector,
    hermitian_B_W,
    tau_action,
)
from .quad import GaussianWeight, QuadratureTask, correlated_moment, integrate, reduce_gaussian_polynomial_integral
from .special import GUARD, BallReal, bessel_pair_mellin, k_bessel_square_mellin

MAX_N = 8
SPoly = Tuple[GaussianRational, ...]


@dataclass(frozen=True)
class InResult:
    n: int
    computed: BallReal
    conjectured: ConstantExpr
    conjectured_value: BallReal
    rel_error: BallReal
    method: str
    elapsed_ms: int = 0

    def agrees(self, tol: float) -> bool:
        return self.conjectured_value.mid != 0 and float(self.rel_error.mid) < tol

    def encloses(self) -> bool:
        return self.computed.contains(self.conjectured_value)


def conjectured_In(n: int) -> ConstantExpr:
    """``(-1)^(n/2) 2^(-4n-8) (n+1)!^2 n! pi^(-3n-6)``."""
    _require_even(n)
    sign = -1 if (n // 2) % 2 else 1
    r = Fraction(sign * math.factorial(n + 1) ** 2 * math.factorial(n), 2 ** (4 * n + 8))
    return ConstantExpr(r, pi_power=Fraction(-3 * n - 6))


# ---------------------------------------------------------------- Gaussian contraction

def _component(n: int, alpha: int, j: int) -> Dict[Tuple[int, ...], GaussianRational]:
    """Coefficient of ``X^(n+1+j) Y^(n+1-j)`` in ``P^alpha``, complex coordinates."""
    P = build_P_alpha(n, alpha, "complex")
    out = {}
    for e, c in P.terms.items():
        v = c.coefficient(n + 1 + j)
        if v:
            out[e] = v
    return out


def _charge(e: Tuple[int, ...]) -> Tuple[int, int]:
    return (e[0] - e[1], e[3] - e[4])


def _pair_moment(eL: Tuple[int, ...], eR: Tuple[int, ...]) -> Dict[int, Fraction]:
    """``pi^(n+2) E[m_L(t^a) conj(m_R(t))]`` as a polynomial in ``s``.

    Per matrix, ``z^A zbar^A`` has moment ``A!/(4 pi)^A``; the ``(t^a, t)`` pair
    uses :func:`correlated_moment` with variance ``1/8`` and covariance ``s/4``
    (both over ``pi``).
    """
    poly: Dict[int, Fraction] = {0: Fraction(1)}
    for k in (0, 3):
        A = eL[k] + eR[k + 1]
        if A != eL[k + 1] + eR[k]:
            return {}
        zf = Fraction(math.factorial(A), 4**A)
        cm = correlated_moment(eL[k + 2], eR[k + 2], Fraction(1, 8))
        new: Dict[int, Fraction] = {}
        for d, c in poly.items():
            for m, v in cm.items():
                new[d + m] = new.get(d + m, Fraction(0)) + c * zf * v / 4**m
        poly = new
    return poly


def gaussian_pairing_polynomial(n: int, alpha: int, j: int, jp: int) -> SPoly:
    """``16 pi^(n+2) s^-2 int P^alpha_j(x_a) conj(P^(n-alpha)_jp(x)) dG`` as coefficients in ``s``.

    ``dG`` is the Gaussian weight times Lebesgue measure; its total mass
    ``s^2/16`` is divided out.
    """
    left = _component(n, alpha, j)
    right = _component(n, n - alpha, jp)
    by_charge: Dict[Tuple[int, int], List[Tuple[Tuple[int, ...], GaussianRational]]] = {}
    for e, c in right.items():
        by_charge.setdefault(_charge(e), []).append((e, c.conj()))
    acc: Dict[int, GaussianRational] = {}
    for eL, cL in left.items():
        for eR, cR in by_charge.get(_charge(eL), ()):
            for d, v in _pair_moment(eL, eR).items():
                acc[d] = acc.get(d, GaussianRational()) + cL * cR * v
    deg = max(acc, default=-1)
    return tuple(acc.get(d, GaussianRational()) for d in range(deg + 1))


@lru_cache(maxsize=None)
def bessel_weighted_polynomials(n: int) -> Dict[Tuple[int, int], SPoly]:
    """``sum_alpha (-1)^alpha C(n, alpha) sum_{+-} i^(j - jp) G_{alpha, j, jp}`` grouped by ``(|j|, |jp|)``.

    The K-Bessel integral depends on ``j, jp`` only through their absolute values.
    """
    _require_even(n)
    out: Dict[Tuple[int, int], Dict[int, GaussianRational]] = {}
    for alpha in range(n + 1):
        w = binomial(n, alpha) * (-1 if alpha % 2 else 1)
        for j in range(-n - 1, n + 2):
            for jp in range(-n - 1, n + 2):
                poly = gaussian_pairing_polynomial(n, alpha, j, jp)
                if not poly:
                    continue
                phase = i_pow(j - jp) * w
                slot = out.setdefault((abs(j), abs(jp)), {})
                for d, c in enumerate(poly):
                    if c:
                        slot[d] = slot.get(d, GaussianRational()) + c * phase
    result: Dict[Tuple[int, int], SPoly] = {}
    for key, slot in out.items():
        deg = max((d for d, c in slot.items() if c), default=-1)
        if deg >= 0:
            result[key] = tuple(slot.get(d, GaussianRational()) for d in range(deg + 1))
    return result


def _mp(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator


def _eval_spoly(poly: SPoly, s: mpf) -> mpc:
    acc = mpc(0)
    for c in reversed(poly):
        acc = acc * s + mpc(_mp(c.re), _mp(c.im))
    return acc


def _node_precision(n: int, a: mpf, prec: int, guard: int) -> int:
    # terms of size a^-(n+1) cancel down to O(a); keep prec bits after the cancellation
    loss = 0 if a >= 1 else int(-mpmath.log(a, 2)) + 1
    return prec + (n + 4) * loss + guard


def In_integrand(n: int, a: mpf, prec: int | None = None, guard: int = 40) -> mpf:
    """Value at ``a`` of the function integrated over ``(0, 1)`` to give ``I_n``.

    ``2^8 (a - 1/a)^2/a * a^(n+2) * s^2/16 * pi^-(n+2) * sum M_{|j|,|jp|}(a) H_{|j|,|jp|}(s)``
    with ``M`` the K-Bessel pair integral with exponent ``2n + 4``.
    """
    prec = prec or default_precision()
    polys = bessel_weighted_polynomials(n)
    wp = _node_precision(n, a, prec, guard)
    with mp.workprec(wp):
        a = mpf(a)
        s = a / (1 + a * a)
        total = mpc(0)
        for (j, jp), poly in polys.items():
            M = bessel_pair_mellin(2 * n + 4, jp, j, a, wp).mid
            total += M * _eval_spoly(poly, s)
        pref = 16 * (a - 1 / a) ** 2 / a * a ** (n + 2) * s * s * mpmath.pi ** (-(n + 2))
        val = pref * total
        if abs(val.imag) > abs(val) * mpf(2) ** (-prec // 2) + mpf(2) ** (-wp):
            raise ArithmeticError(f"integrand is not real at a={mpmath.nstr(a, 8)}: {val}")
    return +val.real


def _tail_estimate(f, eps: mpf, prec: int) -> mpf:
    """Estimate ``int_0^eps f`` from a power-law fit ``f(a) ~ C a^k``."""
    with mp.workprec(prec + GUARD):
        f1 = f(eps)
        if not f1:
            return mpf(0)
        ratio = mpf(2) ** -16
        f2 = f(eps * ratio)
        if not f2:
            return mpf(0)
        k = mpmath.log(abs(f2 / f1)) / mpmath.log(ratio)
        if k <= -1:
            raise ArithmeticError("integrand not integrable at a = 0 by the fitted exponent")
        return eps * f1 / (k + 1)


def compute_In(n: int, prec: int | None = None, method: str = "semianalytic",
               config: InConfig | None = None) -> InResult:
    """Compute ``I_n`` by quadrature of the reduced a-integrand.

    ``method`` is ``semianalytic`` (full symbolic reduction for any even
    ``n <= 8``) or ``appendix_path`` (``n = 0`` only, two hard-coded K-Bessel
    terms with elementary Mellin transforms).
    """
    _require_even(n)
    if n > MAX_N:
        raise ValueError(f"n={n} is above the supported range (n <= {MAX_N})")
    config = config or InConfig(n=n, prec=prec or default_precision())
    prec = prec or config.prec
    if prec < 64:
        raise ValueError("compute_In needs at least 64 bits")
    start = time.perf_counter()
    if method == "semianalytic":
        bessel_weighted_polynomials(n)

        def f(a: mpf) -> mpf:
            return In_integrand(n, a, prec, config.guard_bits)
    elif method == "appendix_path":
        if n != 0:
            raise ValueError("the appendix path exists only for n = 0")

        def f(a: mpf) -> mpf:
            return appendix_I0_integrand(a, prec, config.guard_bits)
    else:
        raise ValueError(f"unknown method {method!r}")
    eps = mpf(2) ** (-config.cutoff())
    body = integrate(QuadratureTask(f, (eps, 1), ("log",), prec))
    tail = _tail_estimate(f, eps, prec)
    with mp.workprec(prec + GUARD):
        computed = BallReal(body.mid + tail, body.rad + 2 * abs(tail), prec)
    conj = conjectured_In(n)
    cv = conj.evaluate(prec=prec).real
    conj_ball = BallReal(cv, abs(cv) * mpf(2) ** (-prec), prec)
    with mp.workprec(prec + GUARD):
        diff = abs(computed.mid - cv)
        rel = BallReal(diff / abs(cv), computed.rad / abs(cv), prec)
    return InResult(n, computed, conj, conj_ball, rel, method,
                    int((time.perf_counter() - start) * 1000))


# ---------------------------------------------------------------- the n = 0 two-term path

# Gaussian coefficients of the K0K0 and K1K1 terms for n = 0, read off as
# a^4 / (2^5 (1+a^2)^2 pi^2) and a^5 / (2^4 (1+a^2)^3 pi^2); overall factor 2^6.
APPENDIX_K0K0 = (Fraction(1, 32), 4, 2)
APPENDIX_K1K1 = (Fraction(1, 16), 5, 3)
APPENDIX_PREFACTOR = 64


def appendix_mellin_forms(a: mpf, prec: int, printed: bool = False) -> Tuple[mpf, mpf]:
    """``int t^4 K_0(4 pi t) K_0(4 pi a t) dt/t`` and the ``K_1`` analogue in elementary form.

    With ``z = 1 - a^2``::

        K0K0 = 2^-7 pi^-4 (-2 z^-3 (log(1-z) + z + z^2/2) + z^-2 (log(1-z) + z))
        K1K1 = 2^-7 pi^-4 a (1/(1-z) + 2 z^-3 (log(1-z) + z + z^2/2))

    ``printed=True`` instead uses the variant with the signs of ``z`` and ``z^2/2``
    inside the brackets flipped, which does not match the series.
    """
    with mp.workprec(prec + GUARD):
        a = mpf(a)
        z_exact_bits = prec + GUARD + 6 * (int(-mpmath.log(1 - a, 2)) + 1 if a < 1 else 0)
    if a == 1:
        with mp.workprec(prec + GUARD):
            c = mpf(2) ** -7 * mpmath.pi ** -4
            # limits z -> 0 of the two series: 2/3 - 1/2 and 1 - 2/3
            return c * mpf(1) / 6, c * mpf(1) / 3
    with mp.workprec(z_exact_bits):
        z = 1 - a * a
        L = mpmath.log(a * a)
        if printed:
            b2 = L - z - z * z / 2
            b1 = L - z
            k00 = 2 / z**3 * b2 - b1 / z**2
            k11 = a * (1 / (1 - z) - 2 / z**3 * b2)
        else:
            b2 = L + z + z * z / 2
            b1 = L + z
            k00 = -2 / z**3 * b2 + b1 / z**2
            k11 = a * (1 / (1 - z) + 2 / z**3 * b2)
        c = mpf(2) ** -7 * mpmath.pi ** -4
        return +(c * k00), +(c * k11)


def appendix_I0_integrand(a: mpf, prec: int | None = None, guard: int = 40) -> mpf:
    """The n = 0 a-integrand from the two hard-coded Gaussian coefficients."""
    prec = prec or default_precision()
    with mp.workprec(prec + guard):
        a = mpf(a)
        k00, k11 = appendix_mellin_forms(a, prec + guard)
        g = []
        for r, ae, be in (APPENDIX_K0K0, APPENDIX_K1K1):
            g.append(_mp(r) * a**ae / (1 + a * a) ** be * mpmath.pi**-2)
        weight = (a - 1 / a) ** 2 / a
        return +(APPENDIX_PREFACTOR * weight * (k00 * g[0] + k11 * g[1]))


def appendix_reduced_integrand(a: mpf, sign: int = -1, prec: int | None = None) -> mpf:
    """``sign * 2^-11 pi^-6 a^4 log a / ((1 - a^2)(1 + a^2)^3)``.

    ``sign=-1`` is the value of the bracket in :func:`appendix_I0_integrand`
    before the Cartan weight; ``sign=+1`` is the sign-dropped variant.
    """
    prec = prec or default_precision()
    with mp.workprec(prec + GUARD):
        a = mpf(a)
        return sign * mpf(2) ** -11 * mpmath.pi ** -6 * a**4 * mpmath.log(a) / ((1 - a * a) * (1 + a * a) ** 3)


def appendix_bracket(a: mpf, prec: int | None = None) -> mpf:
    """``K0K0 * coeff + K1K1 * coeff`` for n = 0, without ``2^6`` and the Cartan weight."""
    prec = prec or default_precision()
    with mp.workprec(prec + GUARD):
        k00, k11 = appendix_mellin_forms(a, prec)
        a = mpf(a)
        g0 = a**4 / (32 * (1 + a * a) ** 2 * mpmath.pi**2)
        g1 = a**5 / (16 * (1 + a * a) ** 3 * mpmath.pi**2)
        return k00 * g0 + k11 * g1


# ---------------------------------------------------------------- independent reducer cross-check

REDUCER_VARS = ("x1", "y1", "q1", "r1", "x2", "y2", "q2", "r2")


def _substitute(P: MultiPoly, images: Dict[str, MultiPoly], variables: Tuple[str, ...]) -> MultiPoly:
    out = MultiPoly(variables, P.value_degree)
    cache: Dict[Tuple[str, int], MultiPoly] = {}

    def power(name: str, k: int) -> MultiPoly:
        if (name, k) not in cache:
            cache[(name, k)] = images[name] ** k
        return cache[(name, k)]

    for e, c in P.terms.items():
        term = MultiPoly.constant(variables, c)
        for name, k in zip(P.variables, e):
            if k:
                term = term * power(name, k)
        out = out + term
    return out


def gaussian_pairing_by_reducer(n: int, alpha: int, j: int, jp: int, a: Fraction) -> ConstantExpr:
    """``int P^alpha_j(x_a) conj(P^(n-alpha)_jp(x)) dG`` at rational ``a`` via the real-variable reducer.

    Independent of :func:`gaussian_pairing_polynomial`: the polynomial is
    expanded in the eight real coordinates and integrated monomial by monomial.
    """
    a = Fraction(a)
    V = {v: MultiPoly.variable(REDUCER_VARS, v) for v in REDUCER_VARS}
    half = Fraction(1, 2)
    I = GaussianRational(0, 1)

    def images(scaled: bool) -> Dict[str, MultiPoly]:
        out = {}
        for k in ("1", "2"):
            x, y, q, r = V["x" + k], V["y" + k], V["q" + k], V["r" + k]
            out["z" + k] = x + y.scale(I)
            out["zb" + k] = x - y.scale(I)
            out["t" + k] = (q.scale(1 / a) + r.scale(a)).scale(half) if scaled else (q + r).scale(half)
        return out

    left = _substitute(build_P_alpha(n, alpha, "complex").component(n + 1 + j), images(True), REDUCER_VARS)
    right = _substitute(build_P_alpha(n, n - alpha, "complex").component(n + 1 + jp), images(False), REDUCER_VARS)
    prod = left * right.conj_coefficients()
    cq, cr = 1 + 1 / (a * a), 1 + a * a
    weights = {"x1": 4, "y1": 4, "x2": 4, "y2": 4, "q1": cq, "q2": cq, "r1": cr, "r2": cr}
    return reduce_gaussian_polynomial_integral(prod, weights).scalar()


def appendix_gaussian_coefficients() -> Tuple[ConstantExpr, ConstantExpr]:
    """The two n = 0 Gaussian integrals with a-dependent weights, through the reducer."""
    V = {v: MultiPoly.variable(REDUCER_VARS, v) for v in REDUCER_VARS}
    I = GaussianRational(0, 1)
    p1 = V["x1"] + V["y1"].scale(I)
    p1b = V["x1"] - V["y1"].scale(I)
    p2 = V["x2"] + V["y2"].scale(I)
    p2b = V["x2"] - V["y2"].scale(I)
    k00 = (p1 * p2b - p1b * p2) * (p1b * p2 - p1 * p2b)
    k00 = k00.scale(4)
    # the explicit a and a^3 in front of q^2 and r^2 are multiplied in after reduction
    re1 = (p1 + p1b) ** 2
    re2 = (p2 + p2b) ** 2
    q_part = re1 * V["q2"] ** 2 + V["q1"] ** 2 * re2
    r_part = re1 * V["r2"] ** 2 + V["r1"] ** 2 * re2
    wq = GaussianWeight(Fraction(1), -2, 1)
    wr = GaussianWeight(Fraction(1), 0, 1)
    weights = {"x1": 4, "y1": 4, "x2": 4, "y2": 4, "q1": wq, "q2": wq, "r1": wr, "r2": wr}
    a = ConstantExpr.symbol("a")
    c00 = reduce_gaussian_polynomial_integral(k00, weights).scalar().single() * a**2
    cq = reduce_gaussian_polynomial_integral(q_part, weights).scalar().single() * a
    cr = reduce_gaussian_polynomial_integral(r_part, weights).scalar().single() * a**3
    return c00, ExprSum((cq, cr)).single()


# ---------------------------------------------------------------- pairing constants

def pairB0_constant(n: int) -> ConstantExpr:
    """``C = 2^-4 dim^2 C(2n+2, n+1) / Gamma_C(2n+4)`` with ``dim = 2n + 3``."""
    _require_even(n)
    dim = 2 * n + 3
    return ConstantExpr(Fraction(dim * dim * math.comb(2 * n + 2, n + 1), 16)) / gamma_c_exact(2 * n + 4)


def schur_factor(n: int, k: int, i: int, j: int) -> GaussianRational:
    """``dim^-1 B(u_k^vee, u_k^vee) conj(B(tau(w0^-1) u_i, tau(w0^-1) u_j))`` from the polynomials."""
    d = 2 * n + 2
    dim = d + 1
    uk = dual_basis_vector(d, n + 1 + k)
    w0inv = ((0, -1), (1, 0))
    ui = tau_action(w0inv, BiHomPoly.monomial(d, n + 1 + i))
    uj = tau_action(w0inv, BiHomPoly.monomial(d, n + 1 + j))
    return hermitian_B_W(uk, uk) * hermitian_B_W(ui, uj).conj() / dim


@dataclass(frozen=True)
class PairB0Value:
    n: int
    i: int
    j: int
    computed: BallReal
    expected: Fraction


def pairB0_value(n: int, i: int, j: int, prec: int | None = None) -> PairB0Value:
    """``C * sum_k schur(k, i, j) * 2^8 * int t^(2n+3) K_k(4 pi t)^2 dt``."""
    _require_even(n)
    if abs(i) > n + 1 or abs(j) > n + 1:
        raise ValueError(f"|i|, |j| must be at most {n + 1}")
    prec = prec or default_precision()
    C = pairB0_constant(n).evaluate(prec=prec).real
    total = BallReal.exact(0, prec)
    for k in range(-n - 1, n + 2):
        sf = schur_factor(n, k, i, j)
        if not sf:
            continue
        if sf.im:
            raise ArithmeticError("Schur factor is not real")
        total = total + k_bessel_square_mellin(n, k, prec) * sf.re
    with mp.workprec(prec + GUARD):
        c_ball = BallReal(C, abs(C) * mpf(2) ** (-prec), prec)
    computed = total * c_ball * 256
    expected = Fraction(1) / binomial(2 * n + 2, n + 1 + i) if i == j else Fraction(0)
    return PairB0Value(n, i, j, computed, expected)


def z_infty(n: int) -> ConstantExpr:
    """``(-1)^(n/2) 2^(-n-9) (2n+3)/(n+1) * L / (Gamma_R(2) Gamma_R(4))`` with ``L = Gamma_C(n+2) Gamma_R(2)^2``.

    Raises if the second route ``pi/2 * C * I_n`` (conjectured ``I_n``) differs.
    """
    route1 = z_infty_gamma_route(n)
    route2 = z_infty_pairing_route(n)
    if route1 != route2:
        raise ArithmeticError(f"the two routes differ: {route1} vs {route2}")
    return route1


def z_infty_gamma_route(n: int) -> ConstantExpr:
    _require_even(n)
    sign = -1 if (n // 2) % 2 else 1
    L = gamma_c_exact(n + 2) * gamma_r_exact(2) ** 2
    head = ConstantExpr(Fraction(sign * (2 * n + 3), 2 ** (n + 9) * (n + 1)))
    return head * L / (gamma_r_exact(2) * gamma_r_exact(4))


def z_infty_pairing_route(n: int) -> ConstantExpr:
    return ConstantExpr(Fraction(1, 2), pi_power=Fraction(1)) * pairB0_constant(n) * conjectured_In(n)
