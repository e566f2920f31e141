"""Arbitrary-precision special functions returning midpoint-radius balls.

Numerics come from :mod:`mpmath`.  A :class:`BallReal` carries a midpoint and
an error radius; the radius tracks propagated input radii, rounding at the
working precision and, where a function is evaluated by a truncated process,
the truncation estimate.  Radii from library kernels (``besselk``,
``hyp2f1``, Gamma) are a few ulps at a raised internal precision rather than
proved bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

import mpmath
from mpmath import mp, mpf, mpc

from .config import default_precision

Real = Union[int, float, Fraction, mpf, "BallReal"]
GUARD = 20


def _to_mpf(x: object) -> mpf:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def _ulp(x: mpf, prec: int) -> mpf:
    return abs(x) * mpf(2) ** (-prec) if x else mpf(0)


@dataclass(frozen=True)
class BallReal:
    """Real number ``mid +/- rad`` tracked at ``prec`` bits."""

    mid: mpf
    rad: mpf
    prec: int

    @classmethod
    def exact(cls, x: object, prec: int | None = None) -> "BallReal":
        prec = prec or default_precision()
        with mp.workprec(prec + GUARD):
            m = _to_mpf(x)
        rad = mpf(0) if isinstance(x, (int, Fraction)) and _exact_binary(x) else _ulp(m, prec)
        return cls(m, rad, prec)

    @classmethod
    def from_mid_rad(cls, mid: object, rad: object, prec: int) -> "BallReal":
        with mp.workprec(prec + GUARD):
            return cls(_to_mpf(mid), abs(_to_mpf(rad)), prec)

    def _lift(self, other: Real) -> "BallReal":
        if isinstance(other, BallReal):
            return other
        return BallReal.exact(other, self.prec)

    def _round(self, mid: mpf, rad: mpf, prec: int) -> "BallReal":
        return BallReal(mid, rad + _ulp(mid, prec), prec)

    def __add__(self, other: Real) -> "BallReal":
        o = self._lift(other)
        p = min(self.prec, o.prec)
        with mp.workprec(p + GUARD):
            return self._round(self.mid + o.mid, self.rad + o.rad, p)

    __radd__ = __add__

    def __neg__(self) -> "BallReal":
        # mpf arithmetic rounds to the ambient context, so negation needs the ball's precision too
        with mp.workprec(self.prec + GUARD):
            return BallReal(-self.mid, self.rad, self.prec)

    def __sub__(self, other: Real) -> "BallReal":
        return self + (-self._lift(other))

    def __rsub__(self, other: Real) -> "BallReal":
        return self._lift(other) - self

    def __mul__(self, other: Real) -> "BallReal":
        o = self._lift(other)
        p = min(self.prec, o.prec)
        with mp.workprec(p + GUARD):
            rad = abs(self.mid) * o.rad + abs(o.mid) * self.rad + self.rad * o.rad
            return self._round(self.mid * o.mid, rad, p)

    __rmul__ = __mul__

    def __truediv__(self, other: Real) -> "BallReal":
        o = self._lift(other)
        p = min(self.prec, o.prec)
        with mp.workprec(p + GUARD):
            low = abs(o.mid) - o.rad
            if low <= 0:
                raise ZeroDivisionError("division by a ball containing zero")
            q = self.mid / o.mid
            rad = (self.rad + abs(q) * o.rad) / low
            return self._round(q, rad, p)

    def __rtruediv__(self, other: Real) -> "BallReal":
        return self._lift(other) / self

    def __pow__(self, k: int) -> "BallReal":
        if not isinstance(k, int):
            raise TypeError("only integer powers are supported")
        if k < 0:
            return BallReal.exact(1, self.prec) / self**(-k)
        out = BallReal.exact(1, self.prec)
        for _ in range(k):
            out = out * self
        return out

    def __abs__(self) -> "BallReal":
        with mp.workprec(self.prec + GUARD):
            return BallReal(abs(self.mid), self.rad, self.prec)

    def contains(self, x: object) -> bool:
        with mp.workprec(self.prec + GUARD):
            v = x.mid if isinstance(x, BallReal) else _to_mpf(x)
            extra = x.rad if isinstance(x, BallReal) else 0
            return abs(v - self.mid) <= self.rad + extra

    def overlaps(self, other: "BallReal") -> bool:
        return self.contains(other)

    def rel_width(self) -> mpf:
        if not self.mid:
            return mpf("inf") if self.rad else mpf(0)
        with mp.workprec(self.prec + GUARD):
            return self.rad / abs(self.mid)

    def lower(self) -> mpf:
        with mp.workprec(self.prec + GUARD):
            return self.mid - self.rad

    def upper(self) -> mpf:
        with mp.workprec(self.prec + GUARD):
            return self.mid + self.rad

    def __float__(self) -> float:
        return float(self.mid)

    def __str__(self) -> str:
        digits = max(5, int(self.prec * 0.30103))
        return f"{mpmath.nstr(self.mid, digits)} +/- {mpmath.nstr(self.rad, 3)}"


def _exact_binary(x: int | Fraction) -> bool:
    if isinstance(x, int):
        return True
    d = x.denominator
    return d & (d - 1) == 0


@dataclass(frozen=True)
class BallComplex:
    """Complex ball with independent real and imaginary parts."""

    re: BallReal
    im: BallReal

    @classmethod
    def from_mpc(cls, z: object, rad: object, prec: int) -> "BallComplex":
        with mp.workprec(prec + GUARD):
            z = mpc(z)
        return cls(BallReal.from_mid_rad(z.real, rad, prec), BallReal.from_mid_rad(z.imag, rad, prec))

    @property
    def prec(self) -> int:
        return min(self.re.prec, self.im.prec)

    def mid(self) -> mpc:
        with mp.workprec(self.prec + GUARD):
            return mpc(self.re.mid, self.im.mid)

    def rad(self) -> mpf:
        return max(self.re.rad, self.im.rad)

    def _lift(self, other: object) -> "BallComplex":
        if isinstance(other, BallComplex):
            return other
        if isinstance(other, BallReal):
            return BallComplex(other, BallReal.exact(0, other.prec))
        with mp.workprec(self.prec + GUARD):
            z = mpc(other)
        return BallComplex(BallReal.exact(z.real, self.prec), BallReal.exact(z.imag, self.prec))

    def __add__(self, other: object) -> "BallComplex":
        o = self._lift(other)
        return BallComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "BallComplex":
        return BallComplex(-self.re, -self.im)

    def __sub__(self, other: object) -> "BallComplex":
        return self + (-self._lift(other))

    def __mul__(self, other: object) -> "BallComplex":
        o = self._lift(other)
        return BallComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> "BallComplex":
        return BallComplex(self.re, -self.im)

    def contains(self, z: object) -> bool:
        with mp.workprec(self.prec + GUARD):
            z = mpc(z)
        return self.re.contains(z.real) and self.im.contains(z.imag)

    def __str__(self) -> str:
        return f"({self.re}) + ({self.im})*i"


def _ball(x: object, prec: int) -> BallReal:
    return x if isinstance(x, BallReal) else BallReal.exact(x, prec)


def _kernel_ball(value: mpf, prec: int, ulps: int = 8) -> BallReal:
    """Ball for a library kernel evaluated with ``GUARD`` extra bits."""
    return BallReal(value, abs(value) * ulps * mpf(2) ** (-prec - GUARD // 2), prec)


# ---------------------------------------------------------------- K-Bessel

def bessel_k(nu: int, z: Real, prec: int | None = None) -> BallReal:
    """Modified Bessel function of the second kind ``K_nu(z)`` for ``z > 0``.

    The input radius is propagated through ``|K_nu'| = (K_{nu-1} + K_{nu+1})/2``.
    """
    zb = _ball(z, prec or (z.prec if isinstance(z, BallReal) else default_precision()))
    prec = prec or zb.prec
    nu = abs(int(nu))
    with mp.workprec(prec + GUARD):
        if zb.mid - zb.rad <= 0:
            raise ValueError("bessel_k needs a positive argument")
        val = mpmath.besselk(nu, zb.mid)
        out = _kernel_ball(val, prec)
        if zb.rad:
            lo = zb.mid - zb.rad
            deriv = (mpmath.besselk(abs(nu - 1), lo) + mpmath.besselk(nu + 1, lo)) / 2
            out = BallReal(out.mid, out.rad + deriv * zb.rad, prec)
    return out


def bessel_k_integral(nu: int, z: Real, prec: int | None = None) -> BallReal:
    """``K_nu(z) = 1/2 int_0^inf exp(-z/2 (t + 1/t)) t^(nu-1) dt`` by quadrature.

    The substitution ``t = e^s`` turns the integral into one of
    ``exp(-z cosh s) cosh(nu s)`` over ``s >= 0``, which decays doubly exponentially.
    """
    from .quad import QuadratureTask, integrate

    prec = prec or default_precision()
    with mp.workprec(prec + GUARD):
        zz = _to_mpf(z.mid if isinstance(z, BallReal) else z)
        if zz <= 0:
            raise ValueError("bessel_k_integral needs a positive argument")
        # K_nu(z) = int_0^inf exp(-z cosh s) cosh(nu s) ds; cut where the integrand is below 2^-prec
        budget = (prec + 2 * GUARD) * mpmath.log(2)
        upper = mpmath.acosh(budget / zz + 1)
        for _ in range(4):
            upper = mpmath.acosh((budget + nu * upper) / zz + 1)

        def g(s: mpf) -> mpf:
            return mpmath.exp(-zz * mpmath.cosh(s)) * mpmath.cosh(nu * s)

        return integrate(QuadratureTask(g, (0, upper), target_precision_bits=prec))


# ---------------------------------------------------------------- Gamma factors

def _gamma_pole(s: Fraction) -> bool:
    return s.denominator == 1 and s <= 0


def gamma_ball(s: Fraction | int, prec: int | None = None) -> BallReal:
    prec = prec or default_precision()
    s = Fraction(s)
    if _gamma_pole(s):
        raise ValueError(f"Gamma has a pole at {s}")
    with mp.workprec(prec + GUARD):
        if s.denominator == 1:
            return BallReal.exact(math.factorial(int(s) - 1), prec)
        return _kernel_ball(mpmath.gamma(_to_mpf(s)), prec)


def gamma_r(s: Fraction | int, prec: int | None = None) -> BallReal:
    """``Gamma_R(s) = pi^(-s/2) Gamma(s/2)``."""
    prec = prec or default_precision()
    s = Fraction(s)
    g = gamma_ball(s / 2, prec)
    with mp.workprec(prec + GUARD):
        return g * _kernel_ball(mpmath.pi ** (-_to_mpf(s) / 2), prec)


def gamma_c(s: Fraction | int, prec: int | None = None) -> BallReal:
    """``Gamma_C(s) = 2 (2 pi)^(-s) Gamma(s)``."""
    prec = prec or default_precision()
    s = Fraction(s)
    g = gamma_ball(s, prec)
    with mp.workprec(prec + GUARD):
        return g * _kernel_ball(2 * (2 * mpmath.pi) ** (-_to_mpf(s)), prec)


# ---------------------------------------------------------------- 2F1

def gauss_2f1(a: Fraction | int, b: Fraction | int, c: Fraction | int, z: Real,
              prec: int | None = None, max_terms: int = 200000) -> BallReal:
    """Hypergeometric series ``2F1(a, b; c; z)`` for ``|z| < 1`` with a tail bound.

    Once ``k >= K0 > |c|`` the term ratio is at most
    ``rho = |z| (k + |a|)(k + |b|) / ((k - |c|) k)``, which decreases in ``k``,
    so the tail after term ``k`` is bounded by ``|t_k| rho / (1 - rho)``.
    """
    zb = _ball(z, prec or (z.prec if isinstance(z, BallReal) else default_precision()))
    prec = prec or zb.prec
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if _gamma_pole(c):
        raise ValueError(f"2F1 parameter c={c} is a non-positive integer")
    wp = prec + GUARD + 10
    with mp.workprec(wp):
        zm = zb.mid
        az = abs(zm) + zb.rad
        if az >= 1:
            raise ValueError("gauss_2f1 needs |z| < 1")
        A, B, C = _to_mpf(a), _to_mpf(b), _to_mpf(c)
        absA, absB, absC = abs(A), abs(B), abs(C)
        term = mpf(1)
        total = mpf(1)
        k = 0
        eps = mpf(2) ** (-prec - 8)
        while True:
            term = term * (A + k) * (B + k) / ((C + k) * (k + 1)) * zm
            total += term
            k += 1
            if k > absC + 1:
                rho = az * (k + absA) * (k + absB) / ((k - absC) * k)
                if rho < 1:
                    tail = abs(term) * rho / (1 - rho)
                    if tail <= eps * abs(total) or term == 0:
                        break
            if k > max_terms:
                raise ArithmeticError("2F1 series did not converge within the term budget")
        rad = tail + abs(total) * mpf(2) ** (-wp + 8) * k
        if zb.rad:
            # derivative is (ab/c) 2F1(a+1, b+1; c+1; z); bound it at |z| + rad
            d = abs(mpmath.hyp2f1(absA + 1, absB + 1, C + 1 if C > 0 else absC + 1, az))
            rad += abs(A * B / C) * d * zb.rad
        return BallReal(total, rad, prec)


def hyp2f1_one_minus(a: Fraction | int, b: Fraction | int, c: Fraction | int,
                     s: mpf, prec: int) -> BallReal:
    """``2F1(a, b; c; 1 - s^2)`` for ``0 < s <= 1`` at working precision large enough
    that ``1 - s^2`` is formed without cancellation (library kernel)."""
    with mp.workprec(prec + GUARD):
        s = _to_mpf(s)
        if not 0 < s <= 1:
            raise ValueError("need 0 < s <= 1")
        extra = max(0, -int(mpmath.floor(2 * mpmath.log(s, 2))))
    with mp.workprec(prec + GUARD + extra):
        z = 1 - s * s
        val = mpmath.hyp2f1(_to_mpf(Fraction(a)), _to_mpf(Fraction(b)), _to_mpf(Fraction(c)), z)
    with mp.workprec(prec + GUARD):
        return _kernel_ball(+val, prec, ulps=64)


# ---------------------------------------------------------------- zeta / omega

def zeta_integral(z: Real, alpha: Fraction | int, beta: Fraction | int,
                  prec: int | None = None) -> BallReal:
    """``zeta(z; alpha, beta) = int_0^inf (1 + x)^(alpha - 1) x^(beta - 1) e^(-z x) dx`` for ``beta > 0``."""
    from .quad import QuadratureTask, integrate

    prec = prec or default_precision()
    alpha, beta = Fraction(alpha), Fraction(beta)
    if beta <= 0:
        raise ValueError("zeta integral diverges for beta <= 0")
    with mp.workprec(prec + GUARD):
        zz = _to_mpf(z.mid if isinstance(z, BallReal) else z)
        am1, bm1 = _to_mpf(alpha - 1), _to_mpf(beta - 1)

        if beta >= 1:
            def f(x: mpf) -> mpf:
                return (1 + x) ** am1 * x ** bm1 * mpmath.exp(-zz * x)

            return integrate(QuadratureTask(f, "half_line", target_precision_bits=prec))

        # x = u^(1/beta) removes the x^(beta-1) endpoint singularity
        inv = _to_mpf(1 / beta)

        def g(u: mpf) -> mpf:
            x = u**inv
            return inv * (1 + x) ** am1 * mpmath.exp(-zz * x)

        return integrate(QuadratureTask(g, "half_line", singularity_hints=("power",), target_precision_bits=prec))


def omega(z: Real, alpha: Fraction | int, beta: Fraction | int, prec: int | None = None) -> BallReal:
    """``omega(z; alpha, beta) = z^beta Gamma(beta)^(-1) zeta(z; alpha, beta)``.

    ``beta == 0`` and ``alpha == 1`` give exactly 1; ``beta < 0`` goes through the
    reflection ``omega(z; alpha, beta) = omega(z; 1 - beta, 1 - alpha)`` when that
    lands in the convergent range.
    """
    prec = prec or (z.prec if isinstance(z, BallReal) else default_precision())
    alpha, beta = Fraction(alpha), Fraction(beta)
    if beta == 0 or alpha == 1:
        return BallReal.exact(1, prec)
    if beta < 0:
        if 1 - alpha > 0:
            return omega(z, 1 - beta, 1 - alpha, prec)
        raise ValueError(f"omega(z; {alpha}, {beta}) is outside the covered parameter range")
    zeta = zeta_integral(z, alpha, beta, prec)
    with mp.workprec(prec + GUARD):
        zz = _to_mpf(z.mid if isinstance(z, BallReal) else z)
        factor = _kernel_ball(zz ** _to_mpf(beta) / mpmath.gamma(_to_mpf(beta)), prec)
    return zeta * factor


def omega_hyperu(z: Real, alpha: Fraction | int, beta: Fraction | int, prec: int | None = None) -> mpf:
    """Oracle: ``omega = z^beta U(beta, alpha + beta, z)`` via the Tricomi function."""
    prec = prec or default_precision()
    with mp.workprec(prec + GUARD):
        zz = _to_mpf(z.mid if isinstance(z, BallReal) else z)
        b = _to_mpf(Fraction(beta))
        return zz**b * mpmath.hyperu(b, _to_mpf(Fraction(alpha)) + b, zz)


# ---------------------------------------------------------------- Mellin closed forms

def bessel_gauss_mellin(alpha: int, beta: int, c: Fraction | int, prec: int | None = None) -> BallReal:
    """``int_0^inf r^alpha K_beta(4 pi r) e^(-c pi r^2) dr/r`` in closed form.

    ``1/4 Gamma((alpha-beta)/2) Gamma((alpha+beta)/2) (2 pi)^(-alpha)
    omega(4 pi / c; (beta - alpha)/2 + 1, (alpha + beta)/2)``.
    """
    prec = prec or default_precision()
    c = Fraction(c)
    if c <= 0:
        raise ValueError("c must be positive")
    beta = abs(beta)
    if alpha <= beta:
        raise ValueError(f"integral diverges: alpha={alpha} <= |beta|={beta}")
    g = gamma_ball(Fraction(alpha - beta, 2), prec) * gamma_ball(Fraction(alpha + beta, 2), prec)
    with mp.workprec(prec + GUARD):
        zarg = 4 * mpmath.pi / _to_mpf(c)
        scale = _kernel_ball((2 * mpmath.pi) ** (-alpha) / 4, prec)
    w = omega(BallReal(zarg, _ulp(zarg, prec), prec), Fraction(beta - alpha, 2) + 1, Fraction(alpha + beta, 2), prec)
    return g * scale * w


def bessel_pair_mellin(rho: int, mu: int, nu: int, a: Real, prec: int | None = None) -> BallReal:
    """``int_0^inf t^rho K_mu(4 pi t) K_nu(4 pi a t) dt/t`` for ``0 < a <= 1``.

    Closed form ``2^(rho-3) (4 pi)^(-rho) a^nu / Gamma(rho) * prod Gamma((rho +- mu +- nu)/2)
    * 2F1((rho+mu+nu)/2, (rho-mu+nu)/2; rho; 1 - a^2)`` with ``mu, nu`` replaced by
    their absolute values.
    """
    prec = prec or (a.prec if isinstance(a, BallReal) else default_precision())
    mu, nu = abs(mu), abs(nu)
    if rho <= mu + nu:
        raise ValueError(f"integral diverges: rho={rho} <= |mu|+|nu|={mu + nu}")
    with mp.workprec(prec + GUARD):
        am = _to_mpf(a.mid if isinstance(a, BallReal) else a)
        if not 0 < am <= 1:
            raise ValueError("need 0 < a <= 1")
    gam = BallReal.exact(1, prec)
    for s1 in (1, -1):
        for s2 in (1, -1):
            gam = gam * gamma_ball(Fraction(rho + s1 * mu + s2 * nu, 2), prec)
    f = hyp2f1_one_minus(Fraction(rho + mu + nu, 2), Fraction(rho - mu + nu, 2), rho, am, prec)
    with mp.workprec(prec + GUARD):
        pref = mpf(2) ** (rho - 3) * (4 * mpmath.pi) ** (-rho) * am**nu / math.factorial(rho - 1)
    out = gam * _kernel_ball(pref, prec) * f
    if isinstance(a, BallReal) and a.rad:
        out = BallReal(out.mid, out.rad + _pair_mellin_lipschitz(rho, mu, nu, am, prec) * a.rad, prec)
    return out


def _pair_mellin_lipschitz(rho: int, mu: int, nu: int, a: mpf, prec: int) -> mpf:
    # |d/da| of the integral is bounded by 4 pi int t^rho K_mu(4 pi t) |K_nu'(4 pi a t)| dt
    # <= 4 pi * pair_mellin(rho + 1, mu, nu + 1, a), using |K_nu'| <= K_{nu+1}
    if rho + 1 <= mu + nu + 1:
        return mpf("inf")
    return 4 * mpmath.pi * bessel_pair_mellin(rho + 1, mu, nu + 1, a, prec).mid


def k_bessel_square_mellin(n: int, k: int, prec: int | None = None) -> BallReal:
    """``int_0^inf t^(2n+3) K_k(4 pi t)^2 dt`` in closed form.

    ``2^-4 Gamma_C(2n+4) / (dim^2 binom(2n+2, n+1)) / binom(2n+2, n+1+k)`` with
    ``dim = 2n + 3``.
    """
    prec = prec or default_precision()
    if abs(k) > n + 1:
        raise ValueError(f"|k| must be at most n+1={n + 1}")
    dim = 2 * n + 3
    rational = Fraction(1, 16) / (dim * dim * math.comb(2 * n + 2, n + 1) * math.comb(2 * n + 2, n + 1 + k))
    return gamma_c(2 * n + 4, prec) * rational


def bessel_tail_cutoff(rate: mpf, prec: int, power: int = 0) -> mpf:
    """Point ``T`` beyond which ``t^power exp(-rate t)`` is below ``2^-(prec + GUARD)`` relative to its peak."""
    budget = (prec + 2 * GUARD) * mpmath.log(2)
    T = budget / rate
    for _ in range(4):
        T = (budget + power * mpmath.log(max(T, mpf(1)))) / rate
    return T + 1


def quad_oracle(f: Callable[[mpf], mpf], upper: mpf, prec: int) -> BallReal:
    """Quadrature over ``(0, upper)`` with a breakpoint at 1, used by the Mellin oracles."""
    from .quad import QuadratureTask, integrate

    return integrate(QuadratureTask(f, (0, upper), target_precision_bits=prec, breakpoints=(1,)))


def bessel_pair_mellin_quadrature(rho: int, mu: int, nu: int, a: Real, prec: int | None = None) -> BallReal:
    """Oracle for :func:`bessel_pair_mellin` by direct quadrature."""
    prec = prec or default_precision()
    with mp.workprec(prec + GUARD):
        am = _to_mpf(a.mid if isinstance(a, BallReal) else a)
        fp = 4 * mpmath.pi

        def f(t: mpf) -> mpf:
            return t ** (rho - 1) * mpmath.besselk(mu, fp * t) * mpmath.besselk(nu, fp * am * t)

        upper = bessel_tail_cutoff(fp * (1 + am), prec, rho)
        return quad_oracle(f, upper, prec)


def bessel_gauss_mellin_quadrature(alpha: int, beta: int, c: Fraction | int, prec: int | None = None) -> BallReal:
    """Oracle for :func:`bessel_gauss_mellin` by direct quadrature."""
    prec = prec or default_precision()
    with mp.workprec(prec + GUARD):
        cm = _to_mpf(Fraction(c))
        fp = 4 * mpmath.pi

        def f(r: mpf) -> mpf:
            return r ** (alpha - 1) * mpmath.besselk(beta, fp * r) * mpmath.exp(-cm * mpmath.pi * r * r)

        upper = bessel_tail_cutoff(fp, prec, alpha)
        return quad_oracle(f, upper, prec)
