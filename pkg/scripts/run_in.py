"""Compute I_n for a range of even n and compare with the conjectured closed form.

    python3 scripts/run_in.py --n 0 2 4 6 8 --prec 128
"""

import argparse
import time

import mpmath

from hstverify.inner_product import compute_In


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[0, 2, 4])
    ap.add_argument("--prec", type=int, default=128)
    args = ap.parse_args()
    print(f"{'n':>2}  {'I_n':>40}  {'conjectured':>28}  {'rel err':>9}  {'secs':>6}")
    for n in args.n:
        start = time.perf_counter()
        res = compute_In(n, args.prec)
        secs = time.perf_counter() - start
        print(f"{n:>2}  {mpmath.nstr(res.computed.mid, 30):>40}  {str(res.conjectured):>28}  "
              f"{mpmath.nstr(res.rel_error.mid, 3):>9}  {secs:6.1f}")


if __name__ == "__main__":
    main()
