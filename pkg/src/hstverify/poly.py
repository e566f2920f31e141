"""Exact polynomial algebra in two layers.

:class:`BiHomPoly` is a homogeneous polynomial in (X, Y) of fixed degree with
Gaussian-rational coefficients.  :class:`MultiPoly` is a polynomial in named
coordinate variables whose coefficients are ``BiHomPoly`` values of one common
degree.  Exponents may be negative, which lets a scaling parameter such as
``a`` appear with ``a^{-1}``.

Coordinates on the pair of symmetric matrices
``((z1, i t1), (i t1, conj z1))``, ``((z2, i t2), (i t2, conj z2))`` come in two
flavours:

* ``real``: variables ``t1, x1, y1, t2, x2, y2`` with ``z = x + i y``;
* ``complex``: variables ``z1, zb1, t1, z2, zb2, t2`` where ``zb`` stands for the
  conjugate and is treated as an independent formal variable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .exact import ONE, ZERO, GaussianRational, I, Number, binomial

Exps = Tuple[int, ...]
Matrix2 = Tuple[Tuple[GaussianRational, GaussianRational], Tuple[GaussianRational, GaussianRational]]

REAL_COORDS = ("t1", "x1", "y1", "t2", "x2", "y2")
COMPLEX_COORDS = ("z1", "zb1", "t1", "z2", "zb2", "t2")


def _g(x: Number) -> GaussianRational:
    return GaussianRational.coerce(x)


class BiHomPoly:
    """Homogeneous polynomial of degree ``degree`` in X, Y.

    ``coeffs[i]`` is the coefficient of ``X^i Y^(degree-i)``.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Iterable[Number] | None = None) -> None:
        if degree < 0:
            raise ValueError("degree must be non-negative")
        self.degree = degree
        if coeffs is None:
            self.coeffs: Tuple[GaussianRational, ...] = (ZERO,) * (degree + 1)
        else:
            cs = tuple(_g(c) for c in coeffs)
            if len(cs) != degree + 1:
                raise ValueError(f"expected {degree + 1} coefficients, got {len(cs)}")
            self.coeffs = cs

    @classmethod
    def monomial(cls, degree: int, x_exp: int, coeff: Number = 1) -> "BiHomPoly":
        cs = [ZERO] * (degree + 1)
        cs[x_exp] = _g(coeff)
        return cls(degree, cs)

    @classmethod
    def constant(cls, c: Number) -> "BiHomPoly":
        return cls(0, (c,))

    def coefficient(self, x_exp: int) -> GaussianRational:
        if 0 <= x_exp <= self.degree:
            return self.coeffs[x_exp]
        return ZERO

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "BiHomPoly") -> None:
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "BiHomPoly") -> "BiHomPoly":
        self._check(other)
        return BiHomPoly(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "BiHomPoly") -> "BiHomPoly":
        self._check(other)
        return BiHomPoly(self.degree, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "BiHomPoly":
        return BiHomPoly(self.degree, [-a for a in self.coeffs])

    def scale(self, c: Number) -> "BiHomPoly":
        c = _g(c)
        return BiHomPoly(self.degree, [c * a for a in self.coeffs])

    def __mul__(self, other: "BiHomPoly | Number") -> "BiHomPoly":
        if not isinstance(other, BiHomPoly):
            return self.scale(other)
        out = [ZERO] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return BiHomPoly(self.degree + other.degree, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BiHomPoly":
        out = BiHomPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def conj(self) -> "BiHomPoly":
        return BiHomPoly(self.degree, [a.conj() for a in self.coeffs])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiHomPoly):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.degree, self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*X^{i}*Y^{self.degree - i}")
        return " + ".join(terms) if terms else "0"


def p_map(a: Number, b: Number, c: Number) -> BiHomPoly:
    """``a X^2 + 2 b XY + c Y^2``."""
    return BiHomPoly(2, (_g(c), 2 * _g(b), _g(a)))


def pairing_n(u: BiHomPoly, v: BiHomPoly) -> GaussianRational:
    """Bilinear pairing with ``<X^i Y^(n-i), X^(n-i) Y^i> = (-1)^i / binom(n, i)``."""
    if u.degree != v.degree:
        raise ValueError(f"degree mismatch: {u.degree} vs {v.degree}")
    n = u.degree
    total = ZERO
    for i in range(n + 1):
        a, b = u.coeffs[i], v.coeffs[n - i]
        if a and b:
            w = Fraction(-1 if i % 2 else 1) / binomial(n, i)
            total = total + a * b * w
    return total


def dual_basis_vector(degree: int, x_exp: int) -> BiHomPoly:
    """The element ``(X^e Y^(d-e))^vee`` with ``<X^k Y^(d-k), (X^e Y^(d-e))^vee> = delta_{k,e}``."""
    sign = -1 if x_exp % 2 else 1
    return BiHomPoly.monomial(degree, degree - x_exp, sign * binomial(degree, x_exp))


def mat_det(g: Matrix2) -> GaussianRational:
    return g[0][0] * g[1][1] - g[0][1] * g[1][0]


def as_matrix(rows: Sequence[Sequence[Number]]) -> Matrix2:
    return ((_g(rows[0][0]), _g(rows[0][1])), (_g(rows[1][0]), _g(rows[1][1])))


def rho_action(g: Sequence[Sequence[Number]], lam: Tuple[int, int], P: BiHomPoly) -> BiHomPoly:
    """``P((X, Y) g) * det(g)^b`` for ``lam = (n + b, b)``."""
    g = as_matrix(g)
    n = lam[0] - lam[1]
    b = lam[1]
    if P.degree != n:
        raise ValueError(f"polynomial degree {P.degree} does not match weight {lam}")
    d = mat_det(g)
    if b < 0 and not d:
        raise ValueError("negative determinant power of a singular matrix")
    # (X, Y) g = (g00 X + g10 Y, g01 X + g11 Y)
    new_x = BiHomPoly(1, (g[1][0], g[0][0]))
    new_y = BiHomPoly(1, (g[1][1], g[0][1]))
    out = BiHomPoly(n)
    xs = [BiHomPoly.constant(1)]
    ys = [BiHomPoly.constant(1)]
    for _ in range(n):
        xs.append(xs[-1] * new_x)
        ys.append(ys[-1] * new_y)
    for i, c in enumerate(P.coeffs):
        if c:
            out = out + (xs[i] * ys[n - i]).scale(c)
    return out.scale(d**b)


W0: Matrix2 = as_matrix(((0, 1), (-1, 0)))


def tau_action(g: Sequence[Sequence[Number]], P: BiHomPoly) -> BiHomPoly:
    """``tau_k = rho_(k, -k)`` on polynomials of degree ``2k``."""
    if P.degree % 2:
        raise ValueError(f"tau acts on even degree, got {P.degree}")
    k = P.degree // 2
    return rho_action(g, (k, -k), P)


def hermitian_B_W(u: BiHomPoly, v: BiHomPoly) -> GaussianRational:
    """``<u, tau(w0) conj(v)>``; diagonal on monomials with value ``1/binom(d, e)``."""
    if u.degree != v.degree:
        raise ValueError(f"degree mismatch: {u.degree} vs {v.degree}")
    return pairing_n(u, tau_action(W0, v.conj()))


def sum_of_squares_power(m: int) -> BiHomPoly:
    """``(X^2 + Y^2)^m``."""
    return p_map(1, 0, 1) ** m


class MultiPoly:
    """Polynomial in named coordinates with ``BiHomPoly`` coefficients."""

    __slots__ = ("variables", "value_degree", "terms")

    def __init__(
        self,
        variables: Sequence[str],
        value_degree: int,
        terms: Mapping[Exps, BiHomPoly] | None = None,
    ) -> None:
        self.variables = tuple(variables)
        self.value_degree = value_degree
        clean: Dict[Exps, BiHomPoly] = {}
        for e, c in (terms or {}).items():
            if len(e) != len(self.variables):
                raise ValueError("exponent vector length does not match variables")
            if c.degree != value_degree:
                raise ValueError("coefficient degree does not match value degree")
            if not c.is_zero():
                clean[tuple(e)] = c
        self.terms = clean

    # construction -------------------------------------------------------
    @classmethod
    def constant(cls, variables: Sequence[str], c: Number | BiHomPoly) -> "MultiPoly":
        bp = c if isinstance(c, BiHomPoly) else BiHomPoly.constant(c)
        return cls(variables, bp.degree, {(0,) * len(variables): bp})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str, power: int = 1) -> "MultiPoly":
        e = [0] * len(variables)
        e[tuple(variables).index(name)] = power
        return cls(variables, 0, {tuple(e): BiHomPoly.constant(1)})

    def _same(self, other: "MultiPoly") -> None:
        if other.variables != self.variables:
            raise ValueError("variable sets differ")

    def _lift(self, other: "MultiPoly | Number") -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._same(other)
            return other
        return MultiPoly.constant(self.variables, other)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: "MultiPoly | Number") -> "MultiPoly":
        o = self._lift(other)
        if o.value_degree != self.value_degree:
            raise ValueError("value degree mismatch")
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiPoly(self.variables, self.value_degree, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.variables, self.value_degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly | Number") -> "MultiPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other: Number) -> "MultiPoly":
        return self._lift(other) - self

    def scale(self, c: Number) -> "MultiPoly":
        c = _g(c)
        return MultiPoly(self.variables, self.value_degree, {e: v.scale(c) for e, v in self.terms.items()})

    def __mul__(self, other: "MultiPoly | Number") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._same(other)
        out: Dict[Exps, BiHomPoly] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                out[e] = out[e] + prod if e in out else prod
        return MultiPoly(self.variables, self.value_degree + other.value_degree, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.value_degree == other.value_degree
            and self.terms == other.terms
        )

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    # calculus and substitution ------------------------------------------
    def derivative(self, name: str) -> "MultiPoly":
        k = self.variables.index(name)
        out: Dict[Exps, BiHomPoly] = {}
        for e, c in self.terms.items():
            if e[k] == 0:
                continue
            ne = list(e)
            ne[k] -= 1
            out[tuple(ne)] = c.scale(e[k])
        return MultiPoly(self.variables, self.value_degree, out)

    def conj_coefficients(self) -> "MultiPoly":
        return MultiPoly(self.variables, self.value_degree, {e: c.conj() for e, c in self.terms.items()})

    def rename(self, mapping: Mapping[str, str]) -> "MultiPoly":
        """Rename variables in place of order."""
        new_vars = tuple(mapping.get(v, v) for v in self.variables)
        if len(set(new_vars)) != len(new_vars):
            raise ValueError("renaming is not injective")
        return MultiPoly(new_vars, self.value_degree, self.terms)

    def reorder(self, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        if sorted(variables) != sorted(self.variables):
            raise ValueError("reorder needs the same variable set")
        idx = [self.variables.index(v) for v in variables]
        return MultiPoly(
            variables, self.value_degree, {tuple(e[i] for i in idx): c for e, c in self.terms.items()}
        )

    def evaluate(self, point: Mapping[str, Number]) -> BiHomPoly:
        vals = [_g(point[v]) for v in self.variables]
        out = BiHomPoly(self.value_degree)
        for e, c in self.terms.items():
            w = ONE
            for v, k in zip(vals, e):
                if k:
                    w = w * v**k
            out = out + c.scale(w)
        return out

    def component(self, x_exp: int) -> "MultiPoly":
        """Scalar polynomial given by the coefficient of ``X^x_exp``."""
        out = {}
        for e, c in self.terms.items():
            v = c.coefficient(x_exp)
            if v:
                out[e] = BiHomPoly.constant(v)
        return MultiPoly(self.variables, 0, out)

    def scalar_terms(self) -> Dict[Exps, GaussianRational]:
        if self.value_degree != 0:
            raise ValueError("not a scalar polynomial")
        return {e: c.coeffs[0] for e, c in self.terms.items()}

    def total_degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def __repr__(self) -> str:
        return f"MultiPoly({len(self.terms)} terms in {self.variables}, value degree {self.value_degree})"


def p_map_poly(a: MultiPoly, b: MultiPoly, c: MultiPoly) -> MultiPoly:
    """:func:`p_map` with scalar polynomial entries."""
    vs = a.variables
    out = MultiPoly(vs, 2)
    for entry, x_exp, mult in ((a, 2, 1), (b, 1, 2), (c, 0, 1)):
        if entry.value_degree != 0:
            raise ValueError("p_map entries must be scalar polynomials")
        out = out + MultiPoly(
            vs, 2, {e: BiHomPoly.monomial(2, x_exp, mult * v.coeffs[0]) for e, v in entry.terms.items()}
        )
    return out


def _coordinates(coords: str) -> Tuple[Tuple[str, ...], Dict[str, MultiPoly]]:
    if coords == "real":
        vs = REAL_COORDS
        var = {v: MultiPoly.variable(vs, v) for v in vs}
        out = {"t1": var["t1"], "t2": var["t2"]}
        for k in ("1", "2"):
            out["z" + k] = var["x" + k] + var["y" + k].scale(I)
            out["zb" + k] = var["x" + k] - var["y" + k].scale(I)
        return vs, out
    if coords == "complex":
        vs = COMPLEX_COORDS
        return vs, {v: MultiPoly.variable(vs, v) for v in vs}
    raise ValueError(f"unknown coordinate system {coords!r}")


_P_CACHE: Dict[Tuple[int, int, str], MultiPoly] = {}


def build_P_alpha(n: int, alpha: int, coords: str = "real") -> MultiPoly:
    """The polynomial ``P^alpha`` from its explicit three-factor form.

    The first factor is ``p`` of the symmetrised ``x1 w0 x2``; the others are
    ``p(x1)^alpha`` and ``p(x2)^(n - alpha)``.
    """
    if n < 0 or not 0 <= alpha <= n:
        raise ValueError(f"need 0 <= alpha <= n, got n={n}, alpha={alpha}")
    key = (n, alpha, coords)
    if key in _P_CACHE:
        return _P_CACHE[key]
    vs, c = _coordinates(coords)
    z1, zb1, t1, z2, zb2, t2 = c["z1"], c["zb1"], c["t1"], c["z2"], c["zb2"], c["t2"]
    half = Fraction(1, 2)
    first = p_map_poly(
        (z1 * t2 - t1 * z2).scale(I),
        (z1 * zb2 - zb1 * z2).scale(half),
        (zb1 * t2 - t1 * zb2).scale(-I),
    )
    px1 = p_map_poly(z1, t1.scale(I), zb1)
    px2 = p_map_poly(z2, t2.scale(I), zb2)
    out = first * px1**alpha * px2 ** (n - alpha)
    _P_CACHE[key] = out
    return out


def evaluate_P_alpha_direct(n: int, alpha: int, x1: Matrix2, x2: Matrix2) -> BiHomPoly:
    """Evaluate ``P^alpha`` at symmetric matrices by literal matrix arithmetic.

    Independent of :func:`build_P_alpha`: it forms ``x1 w0 x2`` and its transpose
    directly instead of using the expanded entries.
    """
    x1 = as_matrix(x1)
    x2 = as_matrix(x2)

    def mul(a: Matrix2, b: Matrix2) -> Matrix2:
        return tuple(
            tuple(sum((a[i][k] * b[k][j] for k in range(2)), ZERO) for j in range(2)) for i in range(2)
        )  # type: ignore[return-value]

    m = mul(mul(x1, W0), x2)
    half = Fraction(1, 2)
    s = [[(m[i][j] + m[j][i]) * half for j in range(2)] for i in range(2)]

    def pm(x: Sequence[Sequence[GaussianRational]]) -> BiHomPoly:
        if x[0][1] != x[1][0]:
            raise ValueError("p is only defined on symmetric matrices")
        return p_map(x[0][0], x[0][1], x[1][1])

    return pm(s) * pm(x1) ** alpha * pm(x2) ** (n - alpha)


def wirtinger(P: MultiPoly, k: int, bar: bool) -> MultiPoly:
    """``d/dz_k`` (or ``d/dzbar_k``) as ``(d/dx -+ i d/dy) / 2`` in real coordinates."""
    dx = P.derivative(f"x{k}")
    dy = P.derivative(f"y{k}").scale(I)
    return (dx + dy if bar else dx - dy).scale(Fraction(1, 2))


def apply_pluriharmonic_ops(P: MultiPoly) -> Tuple[MultiPoly, MultiPoly, MultiPoly]:
    """The three second-order operators whose common kernel defines pluri-harmonicity.

    ``D11 = d^2/dt1^2 + 4 d^2/dz1 dzb1``,
    ``D12 = d^2/dt1 dt2 + 2 (d^2/dz1 dzb2 + d^2/dz2 dzb1)``,
    ``D22 = d^2/dt2^2 + 4 d^2/dz2 dzb2``.
    """
    if set(P.variables) != set(REAL_COORDS):
        raise ValueError(f"expected variables {REAL_COORDS}, got {P.variables}")
    P = P.reorder(REAL_COORDS)
    d11 = P.derivative("t1").derivative("t1") + wirtinger(wirtinger(P, 1, True), 1, False).scale(4)
    d22 = P.derivative("t2").derivative("t2") + wirtinger(wirtinger(P, 2, True), 2, False).scale(4)
    cross = wirtinger(wirtinger(P, 2, True), 1, False) + wirtinger(wirtinger(P, 1, True), 2, False)
    d12 = P.derivative("t1").derivative("t2") + cross.scale(2)
    return d11, d12, d22


def real_point(t1: Number, z1: Number, t2: Number, z2: Number) -> Dict[str, GaussianRational]:
    """Real-coordinate point for given ``t_k`` and complex ``z_k``."""
    z1, z2 = _g(z1), _g(z2)
    return {
        "t1": _g(t1), "x1": _g(z1.re), "y1": _g(z1.im),
        "t2": _g(t2), "x2": _g(z2.re), "y2": _g(z2.im),
    }


def coordinate_matrix(t: Number, z: Number) -> Matrix2:
    """``((z, i t), (i t, conj z))``."""
    z = _g(z)
    it = I * _g(t)
    return ((z, it), (it, z.conj()))
