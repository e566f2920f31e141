"""Verification tasks behind the CLI.

A task is a module-level function returning a list of
:class:`~hstverify.report.VerificationReport`; :class:`TaskSpec` names it with
keyword arguments so a process pool can run it.  :func:`build_tasks` maps a
CLI command onto its task list.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Sequence, Tuple

import mpmath
from mpmath import mp, mpf

from . import assembly as asm
from .bessel_period import (
    B0_alpha_closed,
    B0_alpha_closed_corrected,
    B0_alpha_oracle,
    B1_alpha_closed,
    W0_alpha_quadrature,
    compute_W0_alpha,
    default_alpha_for,
    q_sign_identity_holds,
    s_w,
    s_w_multisum,
    theorem_bessel_polynomial,
    bessel_polynomial_closed,
)
from .config import TOLERANCES, default_precision
from .constants import ConstantExpr
from .exact import comb_identity_sum, verify_comb_identity
from .inner_product import (
    appendix_bracket,
    appendix_gaussian_coefficients,
    appendix_mellin_forms,
    appendix_reduced_integrand,
    compute_In,
    pairB0_value,
    z_infty_gamma_route,
    z_infty_pairing_route,
)
from .poly import apply_pluriharmonic_ops, build_P_alpha
from .quad import QuadratureTask, integrate
from .report import VerificationReport, fmt_ball, fmt_num, fmt_value, rel_err, sort_reports, tolerance_text
from .special import (
    GUARD,
    BallReal,
    bessel_gauss_mellin,
    bessel_gauss_mellin_quadrature,
    bessel_pair_mellin,
    bessel_pair_mellin_quadrature,
    gauss_2f1,
    omega,
    omega_hyperu,
)


@dataclass(frozen=True)
class TaskSpec:
    name: str
    kwargs: Tuple[Tuple[str, Any], ...] = field(default_factory=tuple)

    @classmethod
    def of(cls, name: str, **kwargs: Any) -> "TaskSpec":
        return cls(name, tuple(sorted(kwargs.items())))

    def run(self) -> List[VerificationReport]:
        return TASKS[self.name](**dict(self.kwargs))


class _Clock:
    def __init__(self) -> None:
        self.start = time.perf_counter()

    def ms(self) -> int:
        return int((time.perf_counter() - self.start) * 1000)


def _numeric(task_id: str, anchor: str, kind: str, computed: object, expected: object,
             prec: int, clock: _Clock, computed_text: str | None = None,
             extra_ok: bool = True, tol: float | None = None) -> VerificationReport:
    """Record for a numeric comparison; pass iff the relative error is below tolerance."""
    tol = TOLERANCES[kind] if tol is None else tol
    with mp.workprec(prec + GUARD):
        c = computed.mid if isinstance(computed, BallReal) else mpmath.mpmathify(computed)
        e = mpmath.mpmathify(expected)
        ae = abs(c - e)
        re = rel_err(c, e)
    ok = extra_ok and re < tol
    return VerificationReport(
        task_id=task_id,
        paper_anchor=anchor,
        computed=computed_text or (fmt_ball(computed) if isinstance(computed, BallReal) else fmt_value(c)),
        expected=fmt_value(e),
        abs_error=fmt_num(ae),
        rel_error=fmt_num(re),
        precision_bits=prec,
        elapsed_ms=clock.ms(),
        status="pass" if ok else "fail",
        tolerance=tolerance_text(kind) if tol == TOLERANCES[kind] else f"{tol:.0e}",
    )


def _exact(task_id: str, anchor: str, kind: str, computed: object, expected: object,
           clock: _Clock, ok: bool | None = None) -> VerificationReport:
    """Record for a symbolic comparison; pass iff the two sides are equal."""
    ok = (computed == expected) if ok is None else ok
    return VerificationReport(
        task_id=task_id,
        paper_anchor=anchor,
        computed=str(computed),
        expected=str(expected),
        abs_error="0" if ok else "nonzero",
        rel_error="0" if ok else "nonzero",
        precision_bits=0,
        elapsed_ms=clock.ms(),
        status="pass" if ok else "fail",
        tolerance=tolerance_text(kind),
    )


# ---------------------------------------------------------------- inner product

def task_in(n: int, prec: int) -> List[VerificationReport]:
    clock = _Clock()
    res = compute_In(n, prec)
    return [_numeric(f"in/n={n}", "conj:arint", "in", res.computed, res.conjectured_value.mid, prec, clock)]


def task_appendix_i0(prec: int) -> List[VerificationReport]:
    out = []
    for method in ("semianalytic", "appendix_path"):
        clock = _Clock()
        res = compute_In(0, prec, method=method)
        width_ok = res.computed.rel_width() < TOLERANCES["appendix-i0"]
        out.append(_numeric(f"appendix-i0/{method.replace('_', '-')}", "appendix", "appendix-i0",
                            res.computed, res.conjectured_value.mid, prec, clock,
                            extra_ok=res.encloses() and width_ok))
    return out


def task_a_integral(prec: int) -> List[VerificationReport]:
    """``int_0^1 a (1 - a^2) log a / (1 + a^2)^3 da = -1/8``."""
    clock = _Clock()

    def f(a: mpf) -> mpf:
        return a * (1 - a * a) * mpmath.log(a) / (1 + a * a) ** 3

    val = integrate(QuadratureTask(f, "unit", ("log",), prec))
    return [_numeric("appendix-i0/a-integral", "appendix", "a-integral", val, Fraction(-1, 8), prec, clock,
                     extra_ok=val.contains(mpf(-1) / 8))]


def task_appendix_exact() -> List[VerificationReport]:
    clock = _Clock()
    a, s = ConstantExpr.symbol("a"), ConstantExpr.symbol("one_plus_a2")
    pi2 = ConstantExpr.pi(-2)
    expected = (Fraction(1, 32) * pi2 * a**4 / s**2, Fraction(1, 16) * pi2 * a**5 / s**3)
    got = appendix_gaussian_coefficients()
    return [
        _exact(f"appendix-i0/gaussian-{name}", "appendix", "assembly", g, e, clock)
        for name, g, e in zip(("k0k0", "k1k1"), got, expected)
    ]


def task_appendix_forms(prec: int) -> List[VerificationReport]:
    """Elementary K0K0 / K1K1 Mellin forms against the hypergeometric closed form at a = 1/2."""
    out = []
    for a in (Fraction(1, 2), Fraction(1, 5)):
        clock = _Clock()
        with mp.workprec(prec + GUARD):
            am = mpf(a.numerator) / a.denominator
            k00, k11 = appendix_mellin_forms(am, prec)
        for name, val, nu in (("k0k0", k00, 0), ("k1k1", k11, 1)):
            ref = bessel_pair_mellin(4, nu, nu, am, prec)
            out.append(_numeric(f"appendix-i0/mellin-{name}/a={a}", "appendix", "appendix-i0",
                                val, ref.mid, prec, clock))
    return out


# ---------------------------------------------------------------- exact suites

def task_pluri(n: int, alpha: int) -> List[VerificationReport]:
    clock = _Clock()
    ops = apply_pluriharmonic_ops(build_P_alpha(n, alpha))
    sizes = [len(op.terms) for op in ops]
    ok = all(op.is_zero() for op in ops)
    return [_exact(f"pluriharmonic/n={n}/alpha={alpha:02d}", "pluri", "pluriharmonic",
                   "terms " + ",".join(map(str, sizes)), "terms 0,0,0", clock, ok)]


def task_comb_row(A: int, max_b: int) -> List[VerificationReport]:
    out = []
    for B in range(max_b + 1):
        clock = _Clock()
        out.append(_exact(f"comb/A={A:02d}/B={B:02d}", "comb", "comb",
                          comb_identity_sum(A, B), math.factorial(A), clock, verify_comb_identity(A, B)))
    return out


def task_theorem_polynomial(n: int) -> List[VerificationReport]:
    clock = _Clock()
    try:
        poly = theorem_bessel_polynomial(n)
        ok = True
    except ArithmeticError:
        poly, ok = None, False
    return [_exact(f"bessel-period/n={n}/theorem-polynomial", "th:bessel", "theorem-polynomial",
                   poly, bessel_polynomial_closed(n), clock, ok)]


# ---------------------------------------------------------------- special functions

HYPGEOM_CHECKS = ("omega-degenerate", "omega-reflection", "omega-recurrence", "omega-oracle",
                  "2f1-zero", "2f1-appendix-22-4", "2f1-appendix-32-4")
OMEGA_ORACLE_GRID = ((Fraction(1), Fraction(5)), (Fraction(-1), Fraction(2)), (Fraction(-2), Fraction(3)),
                     (Fraction(1, 2), Fraction(3, 2)), (Fraction(-3), Fraction(4)), (Fraction(2), Fraction(1)))


def task_hypgeom(check: str, prec: int) -> List[VerificationReport]:
    z = 4 * mpmath.pi
    anchor = "hypgeom"
    clock = _Clock()
    with mp.workprec(prec + GUARD):
        z = 4 * mpmath.pi
    if check == "omega-degenerate":
        v = omega(z, 1, 5, prec)
        return [_numeric("hypgeom/omega-degenerate", anchor, "hypgeom", v, 1, prec, clock)]
    if check == "omega-reflection":
        # (-1, 2) is a fixed point of the reflection, so a second pair is checked too
        out = []
        for al, be in ((Fraction(-1), Fraction(2)), (Fraction(1, 2), Fraction(5, 2))):
            clock = _Clock()
            lhs = omega(z, al, be, prec)
            rhs = omega(z, 1 - be, 1 - al, prec)
            ref = omega_hyperu(z, al, be, prec)
            out.append(_numeric(f"hypgeom/omega-reflection/alpha={al}/beta={be}", anchor, "hypgeom", lhs,
                                rhs.mid, prec, clock, extra_ok=rel_err(lhs.mid, ref) < TOLERANCES["hypgeom"]))
        return out
    if check == "omega-recurrence":
        # omega(z; -alpha, beta) = sum_b C(n, b) ((b + alpha)!/alpha!) z^-b omega(z; -alpha - b, beta + n)
        n, alpha, beta = 2, 1, 3
        lhs = omega(z, -alpha, beta, prec)
        rhs = BallReal.exact(0, prec)
        for b in range(n + 1):
            c = math.comb(n, b) * Fraction(math.factorial(b + alpha), math.factorial(alpha))
            with mp.workprec(prec + GUARD):
                f = mpf(c.numerator) / c.denominator * z ** (-b)
            rhs = rhs + omega(z, -alpha - b, beta + n, prec) * f
        return [_numeric("hypgeom/omega-recurrence", anchor, "hypgeom", lhs, rhs.mid, prec, clock)]
    if check == "omega-oracle":
        out = []
        for al, be in OMEGA_ORACLE_GRID:
            clock = _Clock()
            v = omega(z, al, be, prec)
            out.append(_numeric(f"hypgeom/omega-oracle/alpha={al}/beta={be}", anchor, "hypgeom",
                                v, omega_hyperu(z, al, be, prec), prec, clock))
        return out
    if check == "2f1-zero":
        v = gauss_2f1(2, 3, 5, 0, prec)
        return [_numeric("hypgeom/2f1-zero", "appendix", "hypgeom", v, 1, prec, clock)]
    if check == "2f1-appendix-22-4":
        with mp.workprec(prec + GUARD):
            zz = mpf(1) / 2
            L = mpmath.log(1 - zz)
            ref = 6 * (-2 / zz**3 * (L + zz + zz * zz / 2) + (L + zz) / zz**2)
        v = gauss_2f1(2, 2, 4, zz, prec)
        return [_numeric("hypgeom/2f1-appendix-22-4", "appendix", "hypgeom", v, ref, prec, clock)]
    if check == "2f1-appendix-32-4":
        with mp.workprec(prec + GUARD):
            zz = mpf(1) / 3
            # the series carries the 3^-1 stripped from the prefactor
            ref = 3 * mpmath.nsum(lambda k: (1 - 2 / mpf(k + 3)) * zz**k, [0, mpmath.inf])
        v = gauss_2f1(3, 2, 4, zz, prec)
        return [_numeric("hypgeom/2f1-appendix-32-4", "appendix", "hypgeom", v, ref, prec, clock)]
    raise ValueError(f"unknown hypgeom check {check!r}")


PAIR_MELLIN_GRID: Tuple[Tuple[int, int, int, Fraction], ...] = (
    (4, 0, 0, Fraction(1, 2)), (4, 1, 1, Fraction(1, 2)), (4, 0, 0, Fraction(1, 4)),
    (4, 1, 1, Fraction(3, 4)), (5, 1, 0, Fraction(1, 2)), (6, 2, 2, Fraction(1, 3)),
    (6, 1, 1, Fraction(1)), (8, 3, 1, Fraction(1, 2)), (7, 2, 1, Fraction(2, 3)),
    (4, 0, 0, Fraction(1)), (6, 0, 2, Fraction(1, 2)),
)
GAUSS_MELLIN_GRID: Tuple[Tuple[int, int, Fraction], ...] = (
    (4, 0, Fraction(1)), (3, 1, Fraction(2)), (2, 0, Fraction(1)), (5, 1, Fraction(1)),
    (6, 2, Fraction(1)), (4, 2, Fraction(3)), (7, 3, Fraction(1, 2)), (3, 0, Fraction(1)),
    (5, 3, Fraction(2)), (6, 0, Fraction(1, 3)), (8, 4, Fraction(1)),
)


def _frac_mpf(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator


def task_pair_mellin(rho: int, mu: int, nu: int, a: Fraction, prec: int) -> List[VerificationReport]:
    clock = _Clock()
    with mp.workprec(prec + GUARD):
        am = _frac_mpf(a)
    closed = bessel_pair_mellin(rho, mu, nu, am, prec)
    oracle = bessel_pair_mellin_quadrature(rho, mu, nu, am, prec)
    return [_numeric(f"mellin/pair/rho={rho}/mu={mu}/nu={nu}/a={a}", "l:pairB0", "mellin-oracle",
                     closed, oracle.mid, prec, clock)]


def task_gauss_mellin(alpha: int, beta: int, c: Fraction, prec: int) -> List[VerificationReport]:
    clock = _Clock()
    closed = bessel_gauss_mellin(alpha, beta, c, prec)
    oracle = bessel_gauss_mellin_quadrature(alpha, beta, c, prec)
    return [_numeric(f"mellin/gauss/alpha={alpha}/beta={beta}/c={c}", "hypgeom", "mellin-oracle",
                     closed, oracle.mid, prec, clock)]


# ---------------------------------------------------------------- pairing normalisation

def task_pairb0(n: int, i: int, j: int, prec: int) -> List[VerificationReport]:
    clock = _Clock()
    v = pairB0_value(n, i, j, prec)
    tid = f"pairb0/n={n}/i={i:+d}/j={j:+d}"
    if i == j:
        return [_numeric(tid, "l:pairB0", "pairb0-diagonal", v.computed, v.expected, prec, clock)]
    tol = TOLERANCES["pairb0-offdiagonal"]
    mag = abs(v.computed.mid) + v.computed.rad
    return [VerificationReport(tid, "l:pairB0", fmt_ball(v.computed), "0", fmt_num(abs(v.computed.mid)),
                               fmt_num(abs(v.computed.mid)), prec, clock.ms(),
                               "pass" if mag < tol else "fail", tolerance_text("pairb0-offdiagonal"))]


# ---------------------------------------------------------------- Bessel period

def _closed_scale(n: int, prec: int) -> mpf:
    return max(abs(B0_alpha_closed(n, a).evaluate(prec=prec)) for a in range(0, n + 1, 2))


def task_bessel_alpha(n: int, alpha: int, prec: int) -> List[VerificationReport]:
    out: List[VerificationReport] = []
    clock = _Clock()
    oracle = B0_alpha_oracle(n, alpha, prec)
    om = oracle.mid()
    base = f"bessel-period/n={n}/alpha={alpha:02d}"
    for label, closed in (("oracle", B0_alpha_closed(n, alpha)),
                          ("oracle-corrected-sign", B0_alpha_closed_corrected(n, alpha))):
        if label != "oracle" and closed == B0_alpha_closed(n, alpha):
            continue
        cv = closed.evaluate(prec=prec)
        with mp.workprec(prec + GUARD):
            scale = abs(cv) if cv != 0 else _closed_scale(n, prec)
            ae = abs(om - cv)
            re = ae / scale
        tol = TOLERANCES["bessel-period-oracle"]
        out.append(VerificationReport(
            f"{base}/{label}", "lem:arbessel", fmt_value(om), f"{closed} = {fmt_value(cv)}",
            fmt_num(ae), fmt_num(re), prec, clock.ms(), "pass" if re < tol else "fail",
            tolerance_text("bessel-period-oracle")))
    clock = _Clock()
    sign = -1 if (alpha + 1) % 2 else 1
    out.append(_exact(f"{base}/b1-sign", "lem:arbessel", "bessel-period-exact",
                      B1_alpha_closed(n, alpha), B0_alpha_closed(n, alpha) * sign, clock,
                      q_sign_identity_holds(n, alpha) and B1_alpha_closed(n, alpha) == B0_alpha_closed(n, alpha) * sign))
    if alpha % 2:
        out.append(_exact(f"{base}/odd-zero", "th:bessel", "bessel-period-exact",
                          B0_alpha_closed(n, alpha), 0, _Clock(), B0_alpha_closed(n, alpha).is_zero()))
    return out


def task_s_w(n: int, w: int, prec: int) -> List[VerificationReport]:
    clock = _Clock()
    ms = s_w_multisum(n, w, prec=prec)
    cf = s_w(n, w)
    return [_numeric(f"bessel-period/n={n}/s_w/w={w:+d}", "lem:arbessel", "hypgeom", ms,
                     cf.evaluate(prec=prec).real, prec, clock)]


def task_w0_quadrature(prec: int) -> List[VerificationReport]:
    """``W^0_0(1)`` at n = 0 against 2-D quadrature, every coefficient."""
    out = []
    w = compute_W0_alpha(0, 0, 1, prec)
    for x_exp in range(3):
        clock = _Clock()
        ref = W0_alpha_quadrature(0, 0, 1, x_exp, 64)
        out.append(_numeric(f"bessel-period/n=0/w0-quadrature/x={x_exp}", "lem:arbessel", "bessel-period-oracle",
                            w.coeffs[x_exp].mid(), ref, 64, clock, tol=1e-12))
    return out


# ---------------------------------------------------------------- assembly

def task_z_infty(n: int) -> List[VerificationReport]:
    clock = _Clock()
    return [_exact(f"assembly/z-infty/n={n}", "lem:arintInn", "z-infty",
                   z_infty_pairing_route(n), z_infty_gamma_route(n), clock)]


def _ctx(**kw: Any) -> asm.ArithmeticContext:
    return asm.ArithmeticContext(**kw)


def assembly_examples() -> List[Tuple[str, str, Callable[[], object], object]]:
    """Hand-substituted examples: ``(id, anchor, thunk, expected)``."""
    L, vol = asm.L_AS_PLUS, asm.VOL
    return [
        ("beta/n=0/delta=3", "thm:alginnprd", lambda: asm.beta_exponent(_ctx(n=0, N=1, Delta_F=3)), -10),
        ("beta/n=0/delta=8", "thm:alginnprd", lambda: asm.beta_exponent(_ctx(n=0, N=1, Delta_F=8)), -6),
        ("beta/n=2/P=1/delta=3", "thm:alginnprd",
         lambda: asm.beta_exponent(_ctx(n=2, N=5, Delta_F=3, prime_splitting={5: "split"}, P_set={5})), -13),
        ("inner-product/n=0/N=5/delta=3", "thm:alginnprd",
         lambda: asm.inner_product_constant(_ctx(n=0, N=5, Delta_F=3, prime_splitting={5: "split"}, eps_p={5: 1})),
         ConstantExpr(Fraction(1, 2**10) * 15 * Fraction(1, 27) * 2 * Fraction(4, 3)) * L),
        ("inner-product/eps=-1", "cor:nonvan",
         lambda: asm.inner_product_constant(_ctx(n=0, N=5, Delta_F=3, prime_splitting={5: "split"}, eps_p={5: -1})),
         ConstantExpr(0)),
        ("adelic-prefactor/n=0/N=1/delta=3", "HSTInnprd",
         lambda: asm.adelic_prefactor(_ctx(n=0, N=1, Delta_F=3)), vol * Fraction(3, 2**9 * 9 * 27)),
        ("adelic-sign/n=2", "HSTInnprd",
         lambda: asm.adelic_prefactor(_ctx(n=2, N=1, Delta_F=3)).rational < 0, True),
        ("classical-chain/n=0/N=5/delta=3", "thm:alginnprd",
         lambda: asm.classical_from_adelic(_ctx(n=0, N=5, Delta_F=3, prime_splitting={5: "split"}, eps_p={5: 1})),
         asm.inner_product_constant(_ctx(n=0, N=5, Delta_F=3, prime_splitting={5: "split"}, eps_p={5: 1}))),
        ("nonarch/p=5/unramified", "lem:nonarint",
         lambda: asm.nonarch_inner_factor(_ctx(n=0, N=1, Delta_F=3), 5),
         ConstantExpr.symbol("vol_UN1_p5") * ConstantExpr.symbol("L_ratio_p5")),
        ("nonarch/p=5/eps=-1", "lem:nonarint",
         lambda: asm.nonarch_inner_factor(_ctx(n=0, N=5, Delta_F=3, prime_splitting={5: "split"}, eps_p={5: -1}), 5),
         ConstantExpr(0)),
        ("nonarch/p=3/ramified", "lem:nonarint",
         lambda: asm.nonarch_inner_factor(_ctx(n=0, N=1, Delta_F=3), 3),
         ConstantExpr(Fraction(1, 27) * Fraction(4, 3)) * ConstantExpr.symbol("vol_UN1_p3")
         * ConstantExpr.symbol("L_ratio_p3")),
        ("bessel/trivial", "th:bessel", lambda: asm.bessel_formula_constant(_ctx(n=0, N=1, Delta_F=3)),
         vol * ConstantExpr.symbol("exp_m4pi") * ConstantExpr(Fraction(-1, 2), i_power=1) * asm.L_HALF),
        ("bessel/delta-inf=+1", "th:bessel",
         lambda: asm.bessel_formula_constant(_ctx(n=0, N=1, Delta_F=3, delta={"inf": 1})), ConstantExpr(0)),
        ("fourier/n=0/delta=3", "cor:Bess", lambda: asm.fourier_bessel_constant(_ctx(n=0, N=1, Delta_F=3)),
         ConstantExpr(Fraction(3, 8), i_power=1) * ConstantExpr.symbol("unit_index_C")
         / ConstantExpr.symbol("class_number_C")),
        ("fourier/n=2/delta=4", "cor:Bess", lambda: asm.fourier_bessel_constant(_ctx(n=2, N=1, Delta_F=4)),
         ConstantExpr(Fraction(16, 8), i_power=1) * ConstantExpr.symbol("unit_index_C")
         / ConstantExpr.symbol("class_number_C")),
    ]


def task_assembly_example(index: int) -> List[VerificationReport]:
    clock = _Clock()
    tid, anchor, thunk, expected = assembly_examples()[index]
    return [_exact(f"assembly/{tid}", anchor, "assembly", thunk(), expected, clock)]


def task_assemble(kind: str, ctx: Dict[str, Any]) -> List[VerificationReport]:
    """Assemble the constants for one context; symbolic consistency checks pass or fail."""
    c = asm.ArithmeticContext.from_mapping(ctx)
    out: List[VerificationReport] = []

    def info(tid: str, anchor: str, value: object) -> None:
        out.append(_exact(f"assemble/{kind}/{tid}", anchor, "assembly", value, value, clock))

    clock = _Clock()
    if kind == "inner-product":
        info("beta", "thm:alginnprd", asm.beta_exponent(c))
        info("classical", "thm:alginnprd", asm.inner_product_constant(c))
        info("adelic", "HSTInnprd", asm.adelic_inner_product_constant(c))
        for p in sorted(asm.prime_factors(c.N_F)):
            info(f"local/p={p}", "lem:nonarint", asm.nonarch_inner_factor(c, p))
        info("z-infty", "lem:arintInn", task_z_infty(c.n)[0].computed)
        clock = _Clock()
        out.append(_exact(f"assemble/{kind}/classical-chain", "thm:alginnprd", "assembly",
                          asm.classical_from_adelic(c), asm.inner_product_constant(c), clock))
    elif kind == "bessel":
        info("e-factor", "th:bessel", asm.e_factor(c))
        info("formula", "th:bessel", asm.bessel_formula_constant(c))
        info("fourier", "cor:Bess", asm.fourier_bessel_constant(c))
    else:
        raise ValueError(f"unknown assembly kind {kind!r}")
    return out


# ---------------------------------------------------------------- printed variants known to disagree

def task_printed(check: str, prec: int) -> List[VerificationReport]:
    """Printed forms that disagree with an independent evaluation; these are expected to fail."""
    clock = _Clock()
    with mp.workprec(prec + GUARD):
        half = mpf(1) / 2
    if check in ("mellin-k0k0", "mellin-k1k1"):
        k00, k11 = appendix_mellin_forms(half, prec, printed=True)
        val, nu = (k00, 0) if check == "mellin-k0k0" else (k11, 1)
        ref = bessel_pair_mellin(4, nu, nu, half, prec)
        return [_numeric(f"printed-forms/appendix-{check}/a=1/2", "appendix", "appendix-i0", val, ref.mid, prec, clock)]
    if check == "reduced-integrand-sign":
        val = appendix_reduced_integrand(half, sign=+1, prec=prec)
        ref = appendix_bracket(half, prec)
        return [_numeric("printed-forms/appendix-reduced-integrand/a=1/2", "appendix", "appendix-i0",
                         val, ref, prec, clock)]
    if check == "pair-mellin-prefactor":
        # 2^(rho-2) (4 pi)^-rho / Gamma(rho) * Gamma products * 2F1, without a^|nu|
        rho, mu, nu = 4, 1, 1
        with mp.workprec(prec + GUARD):
            g = [mpmath.gamma(mpf(rho + s1 * mu + s2 * nu) / 2) for s1 in (1, -1) for s2 in (1, -1)]
            val = (mpf(2) ** (rho - 2) * (4 * mpmath.pi) ** (-rho) / mpmath.gamma(rho) * g[0] * g[1] * g[2] * g[3]
                   * mpmath.hyp2f1(mpf(rho + mu + nu) / 2, mpf(rho - mu + nu) / 2, rho, 1 - half**2))
        ref = bessel_pair_mellin_quadrature(rho, mu, nu, half, prec)
        return [_numeric("printed-forms/pair-mellin-prefactor/rho=4/mu=1/nu=1/a=1/2", "l:pairB0",
                         "mellin-oracle", val, ref.mid, prec, clock)]
    if check == "classical-chain-n2":
        c = asm.ArithmeticContext(n=2, N=1, Delta_F=3)
        return [_exact("printed-forms/classical-chain/n=2", "thm:alginnprd", "assembly",
                       asm.classical_from_adelic(c), asm.inner_product_constant(c), clock)]
    raise ValueError(f"unknown printed-form check {check!r}")


PRINTED_CHECKS = ("mellin-k0k0", "mellin-k1k1", "reduced-integrand-sign", "pair-mellin-prefactor",
                  "classical-chain-n2")


TASKS: Dict[str, Callable[..., List[VerificationReport]]] = {
    "in": task_in,
    "appendix-i0": task_appendix_i0,
    "a-integral": task_a_integral,
    "appendix-exact": task_appendix_exact,
    "appendix-forms": task_appendix_forms,
    "pluri": task_pluri,
    "comb-row": task_comb_row,
    "theorem-polynomial": task_theorem_polynomial,
    "hypgeom": task_hypgeom,
    "pair-mellin": task_pair_mellin,
    "gauss-mellin": task_gauss_mellin,
    "pairb0": task_pairb0,
    "bessel-alpha": task_bessel_alpha,
    "s-w": task_s_w,
    "w0-quadrature": task_w0_quadrature,
    "z-infty": task_z_infty,
    "assembly-example": task_assembly_example,
    "assemble": task_assemble,
    "printed": task_printed,
}


def _require_even(n: int) -> None:
    if n % 2 or n < 0:
        raise ValueError("n must be even")


def build_tasks(command: str, *, n: int | None = None, prec: int | None = None, max_ab: int = 30,
                ctx: Dict[str, Any] | None = None) -> List[TaskSpec]:
    """Task list for one CLI command."""
    prec = prec or default_precision()
    T = TaskSpec.of
    if command in ("in", "pluriharmonic", "pairb0", "bessel-period"):
        if n is None:
            raise ValueError("--n is required")
        _require_even(n)
    if command == "in":
        return [T("in", n=n, prec=prec)]
    if command == "pluriharmonic":
        return [T("pluri", n=n, alpha=a) for a in range(n + 1)]
    if command == "comb":
        return [T("comb-row", A=A, max_b=max_ab) for A in range(max_ab + 1)]
    if command == "hypgeom":
        return [T("hypgeom", check=c, prec=prec) for c in HYPGEOM_CHECKS]
    if command == "mellin":
        return ([T("pair-mellin", rho=r, mu=m, nu=v, a=a, prec=prec) for r, m, v, a in PAIR_MELLIN_GRID]
                + [T("gauss-mellin", alpha=al, beta=b, c=c, prec=prec) for al, b, c in GAUSS_MELLIN_GRID])
    if command == "pairb0":
        r = range(-n - 1, n + 2)
        return [T("pairb0", n=n, i=i, j=j, prec=prec) for i in r for j in r]
    if command == "bessel-period":
        oracle_prec = min(prec, 96)
        tasks = [T("bessel-alpha", n=n, alpha=a, prec=oracle_prec) for a in range(n + 1)]
        tasks += [T("s-w", n=n, w=w, prec=prec) for w in range(-n, n + 1) if _admissible(n, w)]
        tasks.append(T("theorem-polynomial", n=n))
        if n == 0:
            tasks.append(T("w0-quadrature", prec=prec))
        return tasks
    if command == "appendix-i0":
        return [T("appendix-i0", prec=prec), T("a-integral", prec=prec), T("appendix-exact"),
                T("appendix-forms", prec=prec)]
    if command == "assembly":
        return ([T("z-infty", n=k) for k in range(0, 9, 2)]
                + [T("assembly-example", index=i) for i in range(len(assembly_examples()))]
                + [T("theorem-polynomial", n=k) for k in range(0, 9, 2)])
    if command == "printed-forms":
        return [T("printed", check=c, prec=prec) for c in PRINTED_CHECKS]
    if command in ("assemble-inner-product", "assemble-bessel"):
        return [T("assemble", kind=command.removeprefix("assemble-"), ctx=_freeze(ctx or {}))]
    raise ValueError(f"unknown command {command!r}")


def _admissible(n: int, w: int) -> bool:
    try:
        default_alpha_for(n, w)
        return True
    except ValueError:
        return False


class _FrozenDict(dict):
    def __hash__(self) -> int:  # TaskSpec is frozen and hashed
        return hash(tuple(sorted((k, str(v)) for k, v in self.items())))


def _freeze(d: Dict[str, Any]) -> Dict[str, Any]:
    return _FrozenDict(d)


def _run_spec(spec: TaskSpec) -> List[VerificationReport]:
    return spec.run()


def run_tasks(specs: Sequence[TaskSpec], workers: int = 1) -> List[VerificationReport]:
    """Run the tasks and return reports sorted by ``task_id``, independent of ``workers``."""
    if workers <= 1 or len(specs) <= 1:
        results = [_run_spec(s) for s in specs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_spec, specs))
    return sort_reports(r for batch in results for r in batch)
