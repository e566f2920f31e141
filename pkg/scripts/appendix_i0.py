"""Reproduce I_0 = 2^-8 pi^-6 by both routes and show where the printed elementary forms go wrong."""

import mpmath
from mpmath import mpf

from hstverify.inner_product import appendix_mellin_forms, compute_In
from hstverify.special import bessel_pair_mellin

PREC = 128


def main() -> None:
    for method in ("semianalytic", "appendix_path"):
        res = compute_In(0, PREC, method=method)
        print(f"{method:>14}: {mpmath.nstr(res.computed.mid, 30)} +/- {mpmath.nstr(res.computed.rad, 3)}"
              f"  encloses 2^-8 pi^-6: {res.encloses()}")
    print("\nelementary Mellin forms at a = 1/2 (order 0 and order 1):")
    with mpmath.mp.workprec(PREC + 20):
        a = mpf(1) / 2
        fixed = appendix_mellin_forms(a, PREC)
        printed = appendix_mellin_forms(a, PREC, printed=True)
        for k in (0, 1):
            ref = bessel_pair_mellin(4, k, k, a, PREC).mid
            print(f"  K{k}K{k}: closed {mpmath.nstr(ref, 20)}  corrected {mpmath.nstr(fixed[k], 20)}"
                  f"  as printed {mpmath.nstr(printed[k], 20)}")


if __name__ == "__main__":
    main()
