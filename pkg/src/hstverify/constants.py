"""Exact multiplicative constants with named symbolic factors.

A :class:`ConstantExpr` is ``rational * i^e * sqrt(root) * pi^k * prod name^m``
with ``e`` in {0, 1}, ``root`` a squarefree positive integer, and rational
exponents ``k`` and ``m``.  Named factors stand for quantities the package
never computes (L-values, volumes, root numbers) or for transcendental
constants and parameters that have a registered numeric value.
:class:`ExprSum` is a finite sum of such products with like terms merged.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Tuple, Union

import mpmath
from mpmath import mp, mpc, mpf

from .exact import GaussianRational

Exponent = Union[int, Fraction]

# numeric values of named transcendental constants
NAMED_VALUES: Dict[str, Callable[[], mpf]] = {
    "exp_m4pi": lambda: mpmath.exp(-4 * mpmath.pi),
}


def squarefree_split(m: int) -> Tuple[int, int]:
    """Write ``m = s^2 * r`` with ``r`` squarefree; return ``(s, r)``."""
    if m <= 0:
        raise ValueError("squarefree_split needs a positive integer")
    s, r = 1, 1
    d = 2
    while d * d <= m:
        while m % (d * d) == 0:
            m //= d * d
            s *= d
        if m % d == 0:
            m //= d
            r *= d
        d += 1
    return s, r * m


def sqrt_rational(q: Fraction) -> Tuple[Fraction, int]:
    """``sqrt(q) = c * sqrt(r)`` with ``c`` rational and ``r`` squarefree."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("sqrt_rational needs a positive rational")
    s, r = squarefree_split(q.numerator * q.denominator)
    return Fraction(s, q.denominator), r


def rational_power(q: Fraction, e: Exponent) -> Tuple[Fraction, int]:
    """``q^e`` for ``e`` an integer or half-integer, as ``c * sqrt(r)``."""
    e = Fraction(e)
    if e.denominator == 1:
        return Fraction(q) ** int(e), 1
    if e.denominator != 2:
        raise ValueError(f"only integer and half-integer powers of rationals, got {e}")
    whole = (e.numerator - 1) // 2
    c, r = sqrt_rational(Fraction(q))
    return Fraction(q) ** whole * c, r


@dataclass(frozen=True)
class ConstantExpr:
    rational: Fraction = Fraction(1)
    i_power: int = 0
    pi_power: Fraction = Fraction(0)
    root: int = 1
    placeholders: Tuple[Tuple[str, Fraction], ...] = ()

    def __post_init__(self) -> None:
        r = Fraction(self.rational)
        ip = self.i_power % 4
        if ip >= 2:
            r, ip = -r, ip - 2
        object.__setattr__(self, "i_power", ip)
        if r == 0:
            object.__setattr__(self, "rational", Fraction(0))
            object.__setattr__(self, "i_power", 0)
            object.__setattr__(self, "pi_power", Fraction(0))
            object.__setattr__(self, "root", 1)
            object.__setattr__(self, "placeholders", ())
            return
        s, rt = squarefree_split(self.root)
        object.__setattr__(self, "rational", r * s)
        object.__setattr__(self, "root", rt)
        object.__setattr__(self, "pi_power", Fraction(self.pi_power))
        merged: Dict[str, Fraction] = {}
        for name, e in self.placeholders:
            merged[name] = merged.get(name, Fraction(0)) + Fraction(e)
        object.__setattr__(
            self, "placeholders", tuple(sorted((k, v) for k, v in merged.items() if v != 0))
        )

    # -- constructors

    @classmethod
    def of(cls, value: int | Fraction | GaussianRational) -> "ConstantExpr":
        if isinstance(value, GaussianRational):
            if value.im == 0:
                return cls(value.re)
            if value.re == 0:
                return cls(value.im, i_power=1)
            raise ValueError("a ConstantExpr carries a single Gaussian phase; use ExprSum")
        return cls(Fraction(value))

    @classmethod
    def symbol(cls, name: str, exponent: Exponent = 1) -> "ConstantExpr":
        return cls(placeholders=((name, Fraction(exponent)),))

    @classmethod
    def pi(cls, k: Exponent = 1) -> "ConstantExpr":
        return cls(pi_power=Fraction(k))

    @classmethod
    def sqrt(cls, q: int | Fraction) -> "ConstantExpr":
        c, r = sqrt_rational(Fraction(q))
        return cls(c, root=r)

    # -- algebra

    def is_zero(self) -> bool:
        return self.rational == 0

    def __mul__(self, other: "ConstantExpr | int | Fraction") -> "ConstantExpr":
        if isinstance(other, (int, Fraction)):
            other = ConstantExpr(Fraction(other))
        if not isinstance(other, ConstantExpr):
            return NotImplemented
        g = math.gcd(self.root, other.root)
        return ConstantExpr(
            self.rational * other.rational * g,
            self.i_power + other.i_power,
            self.pi_power + other.pi_power,
            (self.root // g) * (other.root // g),
            self.placeholders + other.placeholders,
        )

    __rmul__ = __mul__

    def __neg__(self) -> "ConstantExpr":
        return ConstantExpr(-self.rational, self.i_power, self.pi_power, self.root, self.placeholders)

    def inverse(self) -> "ConstantExpr":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero constant")
        # 1/(r i^e sqrt(m)) = i^-e sqrt(m) / (r m)
        return ConstantExpr(
            1 / (self.rational * self.root),
            -self.i_power,
            -self.pi_power,
            self.root,
            tuple((k, -v) for k, v in self.placeholders),
        )

    def __truediv__(self, other: "ConstantExpr | int | Fraction") -> "ConstantExpr":
        if isinstance(other, (int, Fraction)):
            other = ConstantExpr(Fraction(other))
        return self * other.inverse()

    def __pow__(self, k: int) -> "ConstantExpr":
        if k < 0:
            return self.inverse() ** (-k)
        out = ConstantExpr()
        for _ in range(k):
            out = out * self
        return out

    def conj(self) -> "ConstantExpr":
        """Complex conjugate, treating every named factor as real."""
        sign = -1 if self.i_power else 1
        return ConstantExpr(sign * self.rational, self.i_power, self.pi_power, self.root, self.placeholders)

    def exponent_of(self, name: str) -> Fraction:
        return dict(self.placeholders).get(name, Fraction(0))

    def monomial_key(self) -> Tuple:
        """Everything except the rational coefficient; like terms share a key."""
        return (self.i_power, self.pi_power, self.root, self.placeholders)

    def substitute(self, values: Mapping[str, "ConstantExpr | int | Fraction"]) -> "ConstantExpr":
        """Replace named factors by constants; exponents must then be integers."""
        out = ConstantExpr(self.rational, self.i_power, self.pi_power, self.root)
        for name, e in self.placeholders:
            if name in values:
                v = values[name]
                v = v if isinstance(v, ConstantExpr) else ConstantExpr(Fraction(v))
                if Fraction(e).denominator != 1:
                    raise ValueError(f"cannot substitute {name} with fractional exponent {e}")
                if v.is_zero() and e < 0:
                    raise ZeroDivisionError(f"{name} substituted by zero under a negative exponent")
                out = out * v ** int(e)
            else:
                out = out * ConstantExpr.symbol(name, e)
        return out

    def free_symbols(self) -> Tuple[str, ...]:
        return tuple(k for k, _ in self.placeholders)

    def evaluate(self, values: Mapping[str, object] | None = None, prec: int = 128) -> mpc:
        """Numeric value; named factors come from ``values`` or :data:`NAMED_VALUES`."""
        values = dict(values or {})
        with mp.workprec(prec + 20):
            out = mpc(mpf(self.rational.numerator) / self.rational.denominator)
            if self.i_power:
                out *= mpc(0, 1)
            if self.root != 1:
                out *= mpmath.sqrt(self.root)
            if self.pi_power:
                out *= mpmath.pi ** _mpf(self.pi_power)
            for name, e in self.placeholders:
                if name in values:
                    v = values[name]
                    v = v.evaluate(prec=prec) if isinstance(v, ConstantExpr) else v
                    v = _mpf(v) if isinstance(v, Fraction) else mpmath.mpmathify(v)
                elif name in NAMED_VALUES:
                    v = NAMED_VALUES[name]()
                else:
                    raise KeyError(f"no numeric value for placeholder {name!r}")
                out *= v ** _mpf(e)
            return out

    # -- canonical text

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        parts = [_frac_text(self.rational)]
        if self.i_power:
            parts.append("i")
        if self.root != 1:
            parts.append(f"sqrt({self.root})")
        if self.pi_power:
            parts.append(f"pi^{_exp_text(self.pi_power)}")
        for name, e in self.placeholders:
            parts.append(f"{name}^{_exp_text(e)}")
        return " * ".join(parts)

    __str__ = to_text

    @classmethod
    def parse(cls, text: str) -> "ConstantExpr":
        text = text.strip()
        if text == "0":
            return cls(Fraction(0))
        factors = [f.strip() for f in text.split("*")]
        out = cls(Fraction(factors[0]))
        for f in factors[1:]:
            if f == "i":
                out = out * cls(i_power=1)
                continue
            m = re.fullmatch(r"sqrt\((\d+)\)", f)
            if m:
                out = out * cls(root=int(m.group(1)))
                continue
            m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)\^\(?(-?\d+(?:/\d+)?)\)?", f)
            if not m:
                raise ValueError(f"cannot parse factor {f!r}")
            name, e = m.group(1), Fraction(m.group(2))
            out = out * (cls.pi(e) if name == "pi" else cls.symbol(name, e))
        return out


def _mpf(q: Fraction) -> mpf:
    q = Fraction(q)
    return mpf(q.numerator) / q.denominator


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _exp_text(e: Fraction) -> str:
    return str(e.numerator) if e.denominator == 1 else f"({e.numerator}/{e.denominator})"


@dataclass(frozen=True)
class ExprSum:
    """Finite sum of :class:`ConstantExpr` terms, like terms merged, zero terms dropped."""

    terms: Tuple[ConstantExpr, ...] = ()

    def __post_init__(self) -> None:
        acc: Dict[Tuple, Fraction] = {}
        for t in self.terms:
            if t.is_zero():
                continue
            k = t.monomial_key()
            acc[k] = acc.get(k, Fraction(0)) + t.rational
        merged = [
            ConstantExpr(c, k[0], k[1], k[2], k[3]) for k, c in acc.items() if c != 0
        ]
        object.__setattr__(self, "terms", tuple(sorted(merged, key=lambda t: _sort_key(t))))

    @classmethod
    def of(cls, x: "ExprSum | ConstantExpr | GaussianRational | int | Fraction") -> "ExprSum":
        if isinstance(x, ExprSum):
            return x
        if isinstance(x, ConstantExpr):
            return cls((x,))
        if isinstance(x, GaussianRational):
            return cls((ConstantExpr(x.re), ConstantExpr(x.im, i_power=1)))
        return cls((ConstantExpr(Fraction(x)),))

    def __add__(self, other: object) -> "ExprSum":
        return ExprSum(self.terms + ExprSum.of(other).terms)

    __radd__ = __add__

    def __neg__(self) -> "ExprSum":
        return ExprSum(tuple(-t for t in self.terms))

    def __sub__(self, other: object) -> "ExprSum":
        return self + (-ExprSum.of(other))

    def __mul__(self, other: object) -> "ExprSum":
        o = ExprSum.of(other)
        return ExprSum(tuple(a * b for a in self.terms for b in o.terms))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def single(self) -> ConstantExpr:
        """The unique term; raises unless the sum has at most one term."""
        if not self.terms:
            return ConstantExpr(Fraction(0))
        if len(self.terms) > 1:
            raise ValueError(f"expression has {len(self.terms)} terms")
        return self.terms[0]

    def substitute(self, values: Mapping[str, object]) -> "ExprSum":
        return ExprSum(tuple(t.substitute(values) for t in self.terms))

    def evaluate(self, values: Mapping[str, object] | None = None, prec: int = 128) -> mpc:
        with mp.workprec(prec + 20):
            return mpmath.fsum(t.evaluate(values, prec) for t in self.terms) if self.terms else mpc(0)

    def to_text(self) -> str:
        return " + ".join(f"({t.to_text()})" for t in self.terms) if self.terms else "0"

    __str__ = to_text

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (ConstantExpr, int, Fraction, GaussianRational)):
            other = ExprSum.of(other)
        if not isinstance(other, ExprSum):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)


def _sort_key(t: ConstantExpr) -> Tuple:
    return (t.i_power, t.pi_power, t.root, t.placeholders)


def product(items: Iterable[ConstantExpr]) -> ConstantExpr:
    out = ConstantExpr()
    for x in items:
        out = out * x
    return out


def gamma_exact(s: Fraction | int) -> ConstantExpr:
    """``Gamma(s)`` for positive integer or half-integer ``s``."""
    s = Fraction(s)
    if s <= 0 or s.denominator not in (1, 2):
        raise ValueError(f"exact Gamma needs a positive integer or half-integer, got {s}")
    if s.denominator == 1:
        return ConstantExpr(Fraction(math.factorial(int(s) - 1)))
    # Gamma(m + 1/2) = (2m)! / (4^m m!) sqrt(pi)
    m = int(s - Fraction(1, 2))
    return ConstantExpr(Fraction(math.factorial(2 * m), 4**m * math.factorial(m)), pi_power=Fraction(1, 2))


def gamma_r_exact(s: Fraction | int) -> ConstantExpr:
    """``Gamma_R(s) = pi^(-s/2) Gamma(s/2)``."""
    s = Fraction(s)
    return ConstantExpr.pi(-s / 2) * gamma_exact(s / 2)


def gamma_c_exact(s: Fraction | int) -> ConstantExpr:
    """``Gamma_C(s) = 2 (2 pi)^(-s) Gamma(s)``; ``s`` an integer or half-integer."""
    s = Fraction(s)
    two_pow, root = rational_power(Fraction(2), -s)
    return ConstantExpr(2 * two_pow, root=root, pi_power=-s) * gamma_exact(s)
