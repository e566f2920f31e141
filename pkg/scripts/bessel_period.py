"""Compare the B^0_alpha closed form, with and without the (-1)^(n/2) sign, against the numeric oracle.

    python3 scripts/bessel_period.py --n 0 2 --prec 64
"""

import argparse

import mpmath

from hstverify.bessel_period import B0_alpha_closed, B0_alpha_closed_corrected, B0_alpha_oracle


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[0, 2])
    ap.add_argument("--prec", type=int, default=64)
    args = ap.parse_args()
    for n in args.n:
        for alpha in range(0, n + 1, 2):
            with mpmath.mp.workprec(args.prec + 20):
                oracle = B0_alpha_oracle(n, alpha, args.prec).mid()
                printed = B0_alpha_closed(n, alpha).evaluate(prec=args.prec)
                fixed = B0_alpha_closed_corrected(n, alpha).evaluate(prec=args.prec)
                print(f"n={n} alpha={alpha}: oracle {mpmath.nstr(oracle, 15)}")
                print(f"    printed   {mpmath.nstr(printed, 15)}  rel {mpmath.nstr(abs(oracle - printed) / abs(oracle), 3)}")
                print(f"    corrected {mpmath.nstr(fixed, 15)}  rel {mpmath.nstr(abs(oracle - fixed) / abs(oracle), 3)}")


if __name__ == "__main__":
    main()
