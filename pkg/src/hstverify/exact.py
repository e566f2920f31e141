"""Exact rational and Gaussian-rational arithmetic plus small combinatorial identities.

Rationals are plain :class:`fractions.Fraction` values.  Gaussian rationals
``a + b*i`` wrap a pair of them and are the coefficient ring of every symbolic
polynomial in the package.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Rational = Fraction
Number = Union[int, Fraction, "GaussianRational"]


class GaussianRational:
    """Exact element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0) -> None:
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x: Number) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    def __add__(self, other: Number) -> "GaussianRational":
        o = _co(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "GaussianRational":
        o = _co(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Number) -> "GaussianRational":
        o = _co(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: Number) -> "GaussianRational":
        o = _co(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "GaussianRational":
        o = _co(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational(o.re / n, -o.im / n)

    def __rtruediv__(self, other: Number) -> "GaussianRational":
        o = _co(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, k: int) -> "GaussianRational":
        if k < 0:
            return ONE / (self ** (-k))
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """``|x|^2`` as a rational."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self) -> str:
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re} {sign} {abs(self.im)}*i)"


def _co(x: object) -> GaussianRational | None:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x, 0)
    return None


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I = GaussianRational(0, 1)
_I_POWERS = (ONE, I, -ONE, -I)


def i_pow(k: int) -> GaussianRational:
    """``i**k`` for any integer k."""
    return _I_POWERS[k % 4]


def binomial(a: int, b: int) -> Fraction:
    """Binomial coefficient with the Gamma-pole convention.

    Returns 0 when ``b < 0`` or ``b > a``.  A negative top argument is rejected.
    """
    if a < 0:
        raise ValueError(f"binomial top must be non-negative, got {a}")
    if b < 0 or b > a:
        return Fraction(0)
    return Fraction(math.comb(a, b))


def falling_product(top: int, count: int) -> int:
    """``top * (top-1) * ... `` with ``count`` factors, i.e. ``top!/(top-count)!``."""
    out = 1
    for k in range(count):
        out *= top - k
    return out


def comb_identity_sum(A: int, B: int) -> Fraction:
    """``sum_j binom(A,j) (-1)^j (A-j+B)!/(B-j)!`` with terms ``j > B`` dropped."""
    if A < 0 or B < 0:
        raise ValueError("A and B must be non-negative")
    total = 0
    for j in range(0, min(A, B) + 1):
        # (A-j+B)!/(B-j)! has exactly A factors
        term = math.comb(A, j) * falling_product(A - j + B, A)
        total += -term if j % 2 else term
    return Fraction(total)


def verify_comb_identity(A: int, B: int) -> bool:
    """Check ``sum_j binom(A,j)(-1)^j (A-j+B)!/(B-j)! == A!`` exactly."""
    return comb_identity_sum(A, B) == math.factorial(A)


def _require_even(n: int) -> None:
    if n < 0 or n % 2:
        raise ValueError(f"n must be even and non-negative, got {n}")


def bessel_sign_sum(n: int, alpha: int) -> Fraction:
    """``sum_c (-1)^c binom(alpha,c) binom(n-alpha, n/2-c)`` evaluated directly."""
    _require_even(n)
    if not 0 <= alpha <= n:
        raise ValueError(f"alpha must lie in [0, {n}], got {alpha}")
    h = n // 2
    total = Fraction(0)
    for c in range(0, alpha + 1):
        term = binomial(alpha, c) * binomial(n - alpha, h - c)
        total += -term if c % 2 else term
    return total


def bessel_sign_sum_closed(n: int, alpha: int) -> Fraction:
    """Closed form of :func:`bessel_sign_sum`: zero for odd alpha."""
    _require_even(n)
    if alpha % 2:
        return Fraction(0)
    sign = -1 if (alpha // 2) % 2 else 1
    return sign * binomial(n // 2, alpha // 2) * binomial(n, n // 2) / binomial(n, alpha)


def hermitian_square_norm(n: int) -> Fraction:
    """``binom(n, n/2) * <(X^2+Y^2)^{n/2}, (X^2+Y^2)^{n/2}>_n``.

    The value is ``2^n``; it is computed by expanding the polynomial and pairing.
    """
    _require_even(n)
    from .poly import pairing_n, sum_of_squares_power

    q = sum_of_squares_power(n // 2)
    val = binomial(n, n // 2) * pairing_n(q, q)
    if not val.is_real():
        raise ArithmeticError("hermitian norm is not real")
    return val.re
