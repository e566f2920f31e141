"""Exact assembly of the global constants around the archimedean factors.

Everything automorphic (L-values, root numbers that are not supplied, volumes,
class numbers, unit indices) stays a named placeholder inside a
:class:`ConstantExpr`; what is checked is the rational and pi skeleton.

Placeholder names used here:

``L_As_plus``            L(1, As+(pi))
``L_half_pi_phi``        L(1/2, pi x phi)
``vol_UN1``              vol(U_{N,1}, dh_fin)
``vol_UN1_p{p}``         local volume at p
``L_ratio_p{p}``         local L-factor divided by its two local zeta factors
``exp_m4pi``             e^{-4 pi}
``eps0_phi_inv_p{p}``    epsilon(0, phi_p^{-1})
``one_plus_eps_p{p}``    (1 + eps_p) when eps_p is not supplied
``one_plus_eps_half_p{p}`` / ``one_plus_eps_half_inv_p{p}``
                         (1 + eps(1/2, pi_p x phi_p^{+-1})) when not supplied
``zeta_NF_ratio``        zeta_{N_F}(4) / zeta_{N_F}(1)
``unit_index_C``         [O_F^x : O_F^x(C)] (completed units)
``class_number_C``       #Cl^a_F(C)
``x2_plus_y2``           the polynomial X^2 + Y^2
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, FrozenSet, Mapping

from .constants import ConstantExpr, product
from .exact import hermitian_square_norm
from .bessel_period import EXP_M4PI, theorem_bessel_polynomial
from .poly import sum_of_squares_power

__all__ = [
    "ConstantExpr",
    "ArithmeticContext",
    "AssemblyError",
    "beta_exponent",
    "inner_product_constant",
    "adelic_inner_product_constant",
    "classical_from_adelic",
    "nonarch_inner_factor",
    "bessel_formula_constant",
    "fourier_bessel_constant",
    "prime_factors",
    "p_adic_abs",
]

SPLIT, INERT, RAMIFIED = "split", "inert", "ramified"
INFINITY = "inf"

L_AS_PLUS = ConstantExpr.symbol("L_As_plus")
L_HALF = ConstantExpr.symbol("L_half_pi_phi")
VOL = ConstantExpr.symbol("vol_UN1")


class AssemblyError(ValueError):
    """A context violates the hypotheses of the formula being assembled."""


def prime_factors(m: int) -> FrozenSet[int]:
    m = abs(m)
    out = set()
    p = 2
    while p * p <= m:
        while m % p == 0:
            out.add(p)
            m //= p
        p += 1
    if m > 1:
        out.add(m)
    return frozenset(out)


def ord_p(m: Fraction | int, p: int) -> int:
    q = Fraction(m)
    if q == 0:
        raise ValueError("ord of zero")
    k, num, den = 0, q.numerator, q.denominator
    while num % p == 0:
        num //= p
        k += 1
    while den % p == 0:
        den //= p
        k -= 1
    return k


def p_adic_abs(m: Fraction | int, p: int) -> Fraction:
    """``|m|_p = p^{-ord_p(m)}``."""
    return Fraction(1, p) ** ord_p(m, p)


@dataclass(frozen=True)
class ArithmeticContext:
    """Arithmetic data for one lifted form.

    ``prime_splitting`` needs entries for the primes of ``N`` and ``C``; the
    primes of ``Delta_F`` are ramified and filled in automatically.
    ``sigma1`` lists the finite places of Sigma_1 (the infinite place always
    belongs to it). ``delta`` maps a prime or ``"inf"`` to +-1 and defaults to
    delta(inf) = -1, delta(p) = 1. ``eps_half`` and ``eps_half_inv`` hold the
    root numbers eps(1/2, pi_p x phi_p^{+-1}) when they are known.
    """

    n: int
    N: int
    Delta_F: int
    prime_splitting: Mapping[int, str] = field(default_factory=dict)
    eps_p: Mapping[int, int] = field(default_factory=dict)
    P_set: FrozenSet[int] = frozenset()
    C: int = 1
    sigma1: FrozenSet[int] = frozenset()
    delta: Mapping[object, int] = field(default_factory=dict)
    eps_half: Mapping[int, int] = field(default_factory=dict)
    eps_half_inv: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n < 0 or self.n % 2:
            raise AssemblyError(f"n must be even and non-negative, got {self.n}")
        if self.N < 1 or self.Delta_F < 1 or self.C < 1:
            raise AssemblyError("N, Delta_F and C must be positive")
        splitting = {int(p): str(s) for p, s in dict(self.prime_splitting).items()}
        for p in prime_factors(self.Delta_F):
            if splitting.get(p, RAMIFIED) != RAMIFIED:
                raise AssemblyError(f"{p} divides Delta_F but is marked {splitting[p]}")
            splitting[p] = RAMIFIED
        for p, s in splitting.items():
            if s not in (SPLIT, INERT, RAMIFIED):
                raise AssemblyError(f"unknown splitting type {s!r} at {p}")
            if s == RAMIFIED and self.Delta_F % p:
                raise AssemblyError(f"{p} marked ramified but does not divide Delta_F")
        object.__setattr__(self, "prime_splitting", splitting)
        object.__setattr__(self, "P_set", frozenset(int(p) for p in self.P_set))
        object.__setattr__(self, "sigma1", frozenset(int(p) for p in self.sigma1))
        for p in self.P_set:
            if self.N % p or splitting.get(p) != SPLIT:
                raise AssemblyError(f"P_set prime {p} must divide N and split")
        for name in ("eps_p", "eps_half", "eps_half_inv"):
            table = {int(p): int(e) for p, e in dict(getattr(self, name)).items()}
            if any(e not in (1, -1) for e in table.values()):
                raise AssemblyError(f"{name} entries must be +1 or -1")
            object.__setattr__(self, name, table)
        delta = {INFINITY: -1}
        for k, v in dict(self.delta).items():
            delta[INFINITY if str(k) == INFINITY else int(k)] = int(v)
        if any(v not in (1, -1) for v in delta.values()):
            raise AssemblyError("delta takes values +1 or -1")
        object.__setattr__(self, "delta", delta)

    @property
    def N_F(self) -> int:
        return self.N * self.Delta_F // math.gcd(self.N, self.Delta_F)

    @property
    def ramified_primes(self) -> FrozenSet[int]:
        return prime_factors(self.Delta_F)

    @property
    def r_F(self) -> int:
        return len(self.ramified_primes)

    @property
    def r_F2(self) -> int:
        return 1 if self.Delta_F % 2 == 0 else 0

    def delta_at(self, v: object) -> int:
        return self.delta.get(v, 1)

    def splitting(self, p: int) -> str:
        try:
            return self.prime_splitting[p]
        except KeyError:
            raise AssemblyError(f"no splitting type for {p}") from None

    # -- file form

    @classmethod
    def from_mapping(cls, data: Mapping[str, object]) -> "ArithmeticContext":
        """Build from a flat mapping; prime tables are objects or ``"5:split,7:inert"`` strings."""

        def table(key: str) -> Dict[int, object]:
            raw = data.get(key, {})
            if isinstance(raw, str):
                items = [kv.split(":") for kv in raw.split(",") if kv.strip()]
                raw = {k.strip(): v.strip() for k, v in items}
            return dict(raw)  # type: ignore[arg-type]

        def primes(key: str) -> FrozenSet[int]:
            raw = data.get(key, [])
            if isinstance(raw, str):
                raw = [x for x in raw.replace(",", " ").split()]
            return frozenset(int(x) for x in raw)  # type: ignore[union-attr]

        known = {"n", "N", "Delta_F", "splitting", "eps", "P", "C", "sigma1", "delta",
                 "eps_half", "eps_half_inv"}
        unknown = set(data) - known
        if unknown:
            raise AssemblyError(f"unknown context keys: {sorted(unknown)}")
        return cls(
            n=int(data["n"]),  # type: ignore[arg-type]
            N=int(data.get("N", 1)),  # type: ignore[arg-type]
            Delta_F=int(data["Delta_F"]),  # type: ignore[arg-type]
            prime_splitting=table("splitting"),  # type: ignore[arg-type]
            eps_p=table("eps"),  # type: ignore[arg-type]
            P_set=primes("P"),
            C=int(data.get("C", 1)),  # type: ignore[arg-type]
            sigma1=primes("sigma1"),
            delta=table("delta"),  # type: ignore[arg-type]
            eps_half=table("eps_half"),  # type: ignore[arg-type]
            eps_half_inv=table("eps_half_inv"),  # type: ignore[arg-type]
        )

    @classmethod
    def load(cls, path: str | Path) -> "ArithmeticContext":
        return cls.from_mapping(json.loads(Path(path).read_text()))


def _two(k: int) -> ConstantExpr:
    return ConstantExpr(Fraction(2) ** k)


def _eps_product(ctx: ArithmeticContext) -> ConstantExpr:
    """``prod_{p | N} (1 + eps_p)``; unknown signs stay symbolic."""
    out = ConstantExpr()
    for p in sorted(prime_factors(ctx.N)):
        if p in ctx.eps_p:
            out = out * (1 + ctx.eps_p[p])
        else:
            out = out * ConstantExpr.symbol(f"one_plus_eps_p{p}")
    return out


def _ramified_product(ctx: ArithmeticContext) -> ConstantExpr:
    return ConstantExpr(product(ConstantExpr(1 + Fraction(1, p)) for p in ctx.ramified_primes).rational)


def beta_exponent(ctx: ArithmeticContext) -> int:
    return len(ctx.P_set) + 4 * ctx.r_F2 - 2 * ctx.n - 9 - ctx.r_F


def _require_coprime(ctx: ArithmeticContext) -> None:
    if math.gcd(ctx.N, ctx.Delta_F) != 1:
        raise AssemblyError(f"N = {ctx.N} and Delta_F = {ctx.Delta_F} are not coprime")


def inner_product_constant(ctx: ArithmeticContext) -> ConstantExpr:
    """Classical Petersson-norm ratio ``2^beta N_F Delta^-3 L prod(1+eps_p) prod(1+1/p)``."""
    _require_coprime(ctx)
    return (
        _two(beta_exponent(ctx))
        * ctx.N_F
        * ConstantExpr(Fraction(1, ctx.Delta_F**3))
        * L_AS_PLUS
        * _eps_product(ctx)
        * _ramified_product(ctx)
    )


def local_zeta_ratio(ctx: ArithmeticContext) -> ConstantExpr:
    """``zeta_{N_F}(4)/zeta_{N_F}(1)`` read as a product of local Euler factors."""
    r = Fraction(1)
    for p in prime_factors(ctx.N_F):
        r *= (1 - Fraction(1, p)) / (1 - Fraction(1, p**4))
    return ConstantExpr(r)


def zeta2_zeta4() -> ConstantExpr:
    # zeta(2) zeta(4) = pi^2/6 * pi^4/90
    return ConstantExpr(Fraction(1, 540), pi_power=6)


def adelic_prefactor(ctx: ArithmeticContext) -> ConstantExpr:
    """The middle fraction: sign, volume, ``(2n+3) 2^#P / (2^{n+9}(n+1) N_F^2 Delta^3 2^{-4 r_F2})``."""
    n = ctx.n
    r = Fraction((-1) ** (n // 2) * (2 * n + 3) * 2 ** len(ctx.P_set))
    r /= 2 ** (n + 9) * (n + 1) * ctx.N_F**2 * ctx.Delta_F**3
    r *= Fraction(2) ** (4 * ctx.r_F2)
    return VOL * r


def adelic_inner_product_constant(ctx: ArithmeticContext, zeta_ratio: str = "placeholder") -> ConstantExpr:
    """Adelic inner-product ratio.

    ``zeta_ratio="placeholder"`` keeps zeta_{N_F}(4)/zeta_{N_F}(1) as a named
    factor; ``"local"`` substitutes the product of local Euler factors.
    """
    _require_coprime(ctx)
    if zeta_ratio == "placeholder":
        zr = ConstantExpr.symbol("zeta_NF_ratio")
    elif zeta_ratio == "local":
        zr = local_zeta_ratio(ctx)
    else:
        raise ValueError(f"zeta_ratio must be 'placeholder' or 'local', got {zeta_ratio!r}")
    return (
        L_AS_PLUS / zeta2_zeta4()
        * adelic_prefactor(ctx)
        * zr
        * _eps_product(ctx)
        * _ramified_product(ctx)
    )


def classical_from_adelic(ctx: ArithmeticContext) -> ConstantExpr:
    """Push the adelic ratio through the classical normalisation steps.

    Steps, each an exact factor: the invariant pairing equals ``i^n/(n+1)``
    times the Hermitian one; Siegel's volume ``2 zeta(2) zeta(4)`` with
    Tamagawa number 2; the index ``N_F^3 prod (1-p^-4)/(1-p^-1)``; the volume
    ratio ``2^{-r_F}``; and division by ``dim W_{2n+2} = 2n+3`` as it appears
    in the displayed intermediate step.
    """
    n = ctx.n
    adelic = adelic_inner_product_constant(ctx, zeta_ratio="local")
    step = (
        ConstantExpr(Fraction(n + 1), i_power=-n)
        * ctx.N_F**3
        * local_zeta_ratio(ctx).inverse()
        * zeta2_zeta4()
        * _two(-ctx.r_F)
        / VOL
        / (2 * n + 3)
    )
    return adelic * step


def nonarch_inner_factor(ctx: ArithmeticContext, p: int) -> ConstantExpr:
    """Local integral at the finite prime ``p`` as an exact expression."""
    if p < 2 or prime_factors(p) != {p}:
        raise AssemblyError(f"{p} is not a prime")
    _require_coprime(ctx)
    vol = ConstantExpr.symbol(f"vol_UN1_p{p}")
    ratio = ConstantExpr.symbol(f"L_ratio_p{p}")
    if p in ctx.ramified_primes:
        absval = p_adic_abs(Fraction(ctx.Delta_F**3, 16), p)
        return vol * ratio * absval * (1 + Fraction(1, p))
    if ctx.N % p:
        return vol * ratio
    ctx.splitting(p)
    eps = ConstantExpr(Fraction(1 + ctx.eps_p[p])) if p in ctx.eps_p else ConstantExpr.symbol(f"one_plus_eps_p{p}")
    return vol * ratio * Fraction(1, p**2) * eps


def _one_plus(table: Mapping[int, int], p: int, name: str) -> ConstantExpr:
    if p in table:
        return ConstantExpr(Fraction(1 + table[p]))
    return ConstantExpr.symbol(f"{name}_p{p}")


def e_factor(ctx: ArithmeticContext) -> ConstantExpr:
    """``e(pi, phi, delta)``; Sigma_1 always contains the infinite place."""
    out = _two(-(len(ctx.sigma1) + 1)) * (1 - ctx.delta_at(INFINITY))
    for v in sorted(ctx.sigma1):
        out = out * (1 + ctx.delta_at(v))
    for p in sorted(prime_factors(ctx.N)):
        out = out * _one_plus(ctx.eps_half, p, "one_plus_eps_half")
    for p in sorted(ctx.P_set):
        out = out * _one_plus(ctx.eps_half_inv, p, "one_plus_eps_half_inv")
    return out


def _check_cf(ctx: ArithmeticContext) -> None:
    if math.gcd(ctx.C, ctx.N_F) != 1:
        raise AssemblyError(f"C = {ctx.C} is not prime to N_F = {ctx.N_F}")
    for p in prime_factors(ctx.C):
        if ctx.prime_splitting.get(p) != SPLIT:
            raise AssemblyError(f"prime {p} of C is not split")


def bessel_polynomial_coefficient(n: int) -> Fraction:
    """Scalar ``c`` with ``theorem_bessel_polynomial(n) = c (X^2+Y^2)^{n/2}``."""
    poly = theorem_bessel_polynomial(n)
    base = sum_of_squares_power(n // 2)
    c = poly.coeffs[n] / base.coeffs[n]
    if poly != base.scale(c) or not c.is_real():
        raise ArithmeticError("Bessel polynomial is not a multiple of (X^2+Y^2)^{n/2}")
    return c.re


def bessel_formula_constant(ctx: ArithmeticContext) -> ConstantExpr:
    """Right-hand side of the Bessel-period formula, polynomial as ``x2_plus_y2^{n/2}``."""
    _require_coprime(ctx)
    _check_cf(ctx)
    eps0 = product(ConstantExpr.symbol(f"eps0_phi_inv_p{p}") for p in sorted(prime_factors(ctx.C)))
    return (
        VOL
        * ConstantExpr.symbol(EXP_M4PI)
        * ConstantExpr(Fraction(-1, 2), i_power=1)
        * ConstantExpr(Fraction(1, ctx.C**2))
        * L_HALF
        * e_factor(ctx)
        * eps0
        * bessel_polynomial_coefficient(ctx.n)
        * ConstantExpr.symbol("x2_plus_y2", ctx.n // 2)
    )


def fourier_pairing_chain(n: int, Delta_F: int) -> ConstantExpr:
    """The Fourier-coefficient prefactor before simplification.

    ``(-1)^{n/2} (-Delta/4)^{(n+2)/2} / (2 i) * binom(n, n/2) <(X^2+Y^2)^{n/2}, (X^2+Y^2)^{n/2}>``.
    """
    k = (n + 2) // 2
    return (
        ConstantExpr(Fraction((-1) ** (n // 2)) * Fraction(-Delta_F, 4) ** k)
        / ConstantExpr(Fraction(2), i_power=1)
        * hermitian_square_norm(n)
    )


def fourier_bessel_constant(ctx: ArithmeticContext) -> ConstantExpr:
    """Prefactor ``2^-3 i Delta^{(n+2)/2} [index] C^{n+2} / #Cl`` of the Fourier-coefficient formula."""
    _check_cf(ctx)
    n = ctx.n
    scalar = ConstantExpr(Fraction(1, 8), i_power=1) * ctx.Delta_F ** ((n + 2) // 2)
    if fourier_pairing_chain(n, ctx.Delta_F) != scalar:
        raise ArithmeticError("pairing chain does not reduce to 2^-3 i Delta^{(n+2)/2}")
    return (
        scalar
        * ctx.C ** (n + 2)
        * ConstantExpr.symbol("unit_index_C")
        / ConstantExpr.symbol("class_number_C")
    )


def two_adic_valuation(c: ConstantExpr) -> int:
    if c.is_zero():
        raise ValueError("valuation of zero")
    return ord_p(c.rational, 2)

