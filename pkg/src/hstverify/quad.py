"""One-dimensional quadrature and exact Gaussian moment calculus.

:func:`integrate` wraps the double-exponential rules of :mod:`mpmath`.  The
reported radius is mpmath's level-difference error estimate plus rounding
and the propagated radii of ball-valued integrands; it is an a-posteriori
estimate, not a proof.

The Gaussian part is exact.  :func:`gaussian_moment_exact` gives
``int u^k exp(-c pi u^2) du`` as a :class:`ConstantExpr`, and
:func:`reduce_gaussian_polynomial_integral` integrates a polynomial in
independent real variables against a product of such weights, with the
weights allowed to depend on a parameter ``a`` through ``a^e (1 + a^2)^f``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Mapping, Tuple, Union

import mpmath
from mpmath import mp, mpc, mpf

from .constants import ConstantExpr, ExprSum, rational_power
from .poly import MultiPoly
from .special import GUARD, BallComplex, BallReal

A_SYMBOL = "a"
ONE_PLUS_A2 = "one_plus_a2"

DOMAINS = {
    "unit": (0, 1),
    "half_line": (0, mpmath.inf),
    "real_line": (-mpmath.inf, mpmath.inf),
}


class QuadratureError(ArithmeticError):
    """Raised when a quadrature task does not reach its target accuracy."""


Integrand = Callable[[mpf], Union[mpf, BallReal]]


@dataclass(frozen=True)
class QuadratureTask:
    """One integral: ``integrand`` over ``domain`` at ``target_precision_bits``.

    ``domain`` is a key of :data:`DOMAINS` or an explicit ``(lo, hi)`` pair.
    ``breakpoints`` are interior points where the integrand is not smooth.
    The integrand receives plain mpf nodes and may return an mpf or a ball.
    """

    integrand: Integrand
    domain: Union[str, Tuple[object, object]] = "unit"
    singularity_hints: Tuple[str, ...] = ()
    target_precision_bits: int = 128
    breakpoints: Tuple[object, ...] = ()
    max_degree: int | None = None
    tolerance_bits: int | None = None

    def interval(self) -> Tuple[object, object]:
        if isinstance(self.domain, str):
            if self.domain not in DOMAINS:
                raise ValueError(f"unknown domain {self.domain!r}")
            return DOMAINS[self.domain]
        return self.domain


def integrate(task: QuadratureTask) -> BallReal:
    """Tanh-sinh quadrature of a real integrand with an error radius.

    Raises :class:`QuadratureError` when the error estimate exceeds
    ``2^-tolerance_bits`` relative (default: half the target precision).
    """
    prec = task.target_precision_bits
    tol_bits = task.tolerance_bits if task.tolerance_bits is not None else prec // 2
    lo, hi = task.interval()
    rad_track = [mpf(0)]

    def f(x: mpf) -> mpf:
        v = task.integrand(x)
        if isinstance(v, BallReal):
            if v.mid:
                rad_track[0] = max(rad_track[0], v.rel_width())
            return v.mid
        if isinstance(v, mpc):
            return v.real
        return v

    with mp.workprec(prec + GUARD):
        pts = [lo, *task.breakpoints, hi]
        kwargs = {"method": "tanh-sinh", "error": True}
        if task.max_degree is not None:
            kwargs["maxdegree"] = task.max_degree
        value, err = mpmath.quad(f, pts, **kwargs)
        value = mpf(value)
        if not mpmath.isfinite(value):
            raise QuadratureError(f"quadrature produced a non-finite value over {task.domain!r}")
        scale = abs(value)
        if err > scale * mpf(2) ** (-tol_bits) and err > mpf(2) ** (-prec):
            raise QuadratureError(
                f"quadrature over {task.domain!r} did not converge: estimate {mpmath.nstr(err, 3)}"
                f" for value {mpmath.nstr(value, 10)}"
            )
        rad = err + scale * (rad_track[0] + mpf(2) ** (-prec))
    return BallReal(value, rad, prec)


def integrate_complex(task: QuadratureTask) -> BallComplex:
    """Real and imaginary parts of a complex-valued integrand as two tasks."""

    def part(which: str) -> Integrand:
        def g(x: mpf) -> mpf:
            v = mpmath.mpmathify(task.integrand(x))
            return v.real if which == "re" else v.imag

        return g

    re = integrate(_with(task, part("re")))
    im = integrate(_with(task, part("im")))
    return BallComplex(re, im)


def _with(task: QuadratureTask, fn: Integrand) -> QuadratureTask:
    return QuadratureTask(
        fn, task.domain, task.singularity_hints, task.target_precision_bits,
        task.breakpoints, task.max_degree, task.tolerance_bits,
    )


# ---------------------------------------------------------------- Gaussian moments

def double_factorial(m: int) -> int:
    """``m!!`` with ``(-1)!! = 0!! = 1``."""
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


@dataclass(frozen=True)
class GaussianWeight:
    """Weight ``exp(-c pi u^2)`` with ``c = scale * a^a_exp * (1 + a^2)^one_plus_a2_exp``."""

    scale: Fraction
    a_exp: int = 0
    one_plus_a2_exp: int = 0

    @classmethod
    def coerce(cls, c: "GaussianWeight | int | Fraction") -> "GaussianWeight":
        if isinstance(c, GaussianWeight):
            return c
        c = Fraction(c)
        if c <= 0:
            raise ValueError("Gaussian variance coefficient must be positive")
        return cls(c)

    def power(self, e: Fraction) -> ConstantExpr:
        """``c^e`` for a half-integer or integer ``e``."""
        r, root = rational_power(self.scale, e)
        out = ConstantExpr(r, root=root)
        if self.a_exp:
            out = out * ConstantExpr.symbol(A_SYMBOL, self.a_exp * e)
        if self.one_plus_a2_exp:
            out = out * ConstantExpr.symbol(ONE_PLUS_A2, self.one_plus_a2_exp * e)
        return out


def gaussian_moment_exact(k: int, c: "GaussianWeight | int | Fraction") -> ConstantExpr:
    """``int u^k exp(-c pi u^2) du = (k-1)!! / (2 pi)^(k/2) * c^(-(k+1)/2)``, zero for odd ``k``."""
    if k < 0:
        raise ValueError("moment order must be non-negative")
    w = GaussianWeight.coerce(c)
    if k % 2:
        return ConstantExpr(Fraction(0))
    head = ConstantExpr(Fraction(double_factorial(k - 1), 2 ** (k // 2)), pi_power=Fraction(-k, 2))
    return head * w.power(Fraction(-(k + 1), 2))


def gaussian_moment(k: int, c: int | Fraction, prec: int = 128) -> BallReal:
    """Numeric enclosure of :func:`gaussian_moment_exact` for rational ``c``."""
    val = gaussian_moment_exact(k, c).evaluate(prec=prec).real
    return BallReal(val, abs(val) * mpf(2) ** (-prec), prec)


def complex_gaussian_fourier(A: int, B: int, t: object, prec: int = 128) -> BallComplex:
    """``int z^A zbar^B exp(-4 pi |z|^2) psi(z t) dx dy`` in closed form.

    ``psi(w) = exp(2 pi i (w + wbar))``.  Equal to
    ``2^(-2-A-B) i^(A+B) sum_j C(A,j) C(B,j) j! (-pi)^(-j) tbar^(A-j) t^(B-j) exp(-pi |t|^2)``.
    """
    if A < 0 or B < 0:
        raise ValueError("A and B must be non-negative")
    with mp.workprec(prec + GUARD):
        tm = t.mid() if isinstance(t, BallComplex) else mpc(t)
        tb = mpmath.conj(tm)
        total = mpc(0)
        for j in range(min(A, B) + 1):
            total += (
                math.comb(A, j) * math.comb(B, j) * math.factorial(j)
                * (-mpmath.pi) ** (-j) * tb ** (A - j) * tm ** (B - j)
            )
        val = total * mpf(2) ** (-2 - A - B) * mpc(0, 1) ** (A + B) * mpmath.exp(-mpmath.pi * abs(tm) ** 2)
        rad = abs(val) * mpf(2) ** (-prec) * (A + B + 4)
    return BallComplex.from_mpc(val, rad, prec)


def complex_gaussian_fourier_quadrature(A: int, B: int, t: object, prec: int = 64) -> mpc:
    """Oracle for :func:`complex_gaussian_fourier` by tensor-product quadrature in ``(x, y)``."""
    with mp.workprec(prec + GUARD):
        tm = mpc(t)

        def f(x: mpf, y: mpf) -> mpc:
            z = mpc(x, y)
            w = z * tm
            return z**A * mpmath.conj(z) ** B * mpmath.exp(-4 * mpmath.pi * (x * x + y * y)) * mpmath.expjpi(
                4 * w.real
            )

        lim = mpmath.sqrt(mpf(prec) / 4)
        return mpmath.quad(f, [-lim, 0, lim], [-lim, 0, lim])


# ---------------------------------------------------------------- polynomial reduction

@dataclass(frozen=True)
class SymbolicBiHom:
    """Homogeneous ``(X, Y)`` polynomial with :class:`ExprSum` coefficients."""

    degree: int
    coeffs: Tuple[ExprSum, ...]

    def coefficient(self, x_exp: int) -> ExprSum:
        return self.coeffs[x_exp]

    def __add__(self, other: "SymbolicBiHom") -> "SymbolicBiHom":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return SymbolicBiHom(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c: object) -> "SymbolicBiHom":
        return SymbolicBiHom(self.degree, tuple(x * c for x in self.coeffs))

    def substitute(self, values: Mapping[str, object]) -> "SymbolicBiHom":
        return SymbolicBiHom(self.degree, tuple(x.substitute(values) for x in self.coeffs))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def scalar(self) -> ExprSum:
        if self.degree != 0:
            raise ValueError("not a scalar")
        return self.coeffs[0]


def reduce_gaussian_polynomial_integral(
    P: MultiPoly, variances: Mapping[str, "GaussianWeight | int | Fraction"]
) -> SymbolicBiHom:
    """Integrate ``P * prod_v exp(-c_v pi v^2)`` over all variables of ``P`` exactly.

    Every variable of ``P`` needs a weight.  Each monomial factors into
    one-dimensional moments.
    """
    missing = [v for v in P.variables if v not in variances]
    if missing:
        raise ValueError(f"no Gaussian weight for {missing}")
    weights = [GaussianWeight.coerce(variances[v]) for v in P.variables]
    cache: Dict[Tuple[int, int], ConstantExpr] = {}

    def moment(idx: int, k: int) -> ConstantExpr:
        key = (idx, k)
        if key not in cache:
            cache[key] = gaussian_moment_exact(k, weights[idx])
        return cache[key]

    acc = [ExprSum() for _ in range(P.value_degree + 1)]
    for exps, coeff in P.terms.items():
        if any(e % 2 for e in exps):
            continue
        m = ConstantExpr()
        for idx, e in enumerate(exps):
            m = m * moment(idx, e)
        for x_exp in range(P.value_degree + 1):
            c = coeff.coefficient(x_exp)
            if c:
                acc[x_exp] = acc[x_exp] + ExprSum.of(c) * m
    return SymbolicBiHom(P.value_degree, tuple(acc))


# ---------------------------------------------------------------- correlated pair moments

def correlated_moment(i: int, j: int, var: Fraction, cov_terms: int | None = None) -> Dict[int, Fraction]:
    """``E[T^i S^j]`` for a centred Gaussian pair with ``Var T = Var S = var / pi``.

    The covariance is ``kappa / pi`` with ``kappa`` left symbolic.  Returns the
    coefficients of ``kappa^m``; the total power of ``1/pi`` is ``(i + j)/2``.
    """
    out: Dict[int, Fraction] = {}
    for m in range(min(i, j) + 1):
        if (i - m) % 2 or (j - m) % 2:
            continue
        c = (
            math.comb(i, m) * math.comb(j, m) * math.factorial(m)
            * double_factorial(i - m - 1) * double_factorial(j - m - 1)
        )
        out[m] = Fraction(c) * var ** ((i - m) // 2 + (j - m) // 2)
    return out
