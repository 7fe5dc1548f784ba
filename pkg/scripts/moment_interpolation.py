"""Even moments of nu_lambda (family 2) as lambda runs from 1 (arcsine) to infinity (Wigner).

    python scripts/moment_interpolation.py --n 6 --lambdas 1 1.5 2 3 10 inf
"""

import argparse
import math
from fractions import Fraction

from markovcst.moments import moment_polynomial, poly_eval


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=6, help="largest half-order (m_2n)")
    ap.add_argument("--lambdas", nargs="+", default=["1", "3/2", "2", "3", "10", "inf"])
    ap.add_argument("--exact", action="store_true", help="print rationals instead of decimals")
    args = ap.parse_args()

    ys = [Fraction(0) if s == "inf" else 1 / Fraction(s) for s in args.lambdas]
    header = ["2n"] + [f"lam={s}" for s in args.lambdas] + ["arcsine", "wigner"]
    print("\t".join(header))
    for n in range(args.n + 1):
        p = moment_polynomial(n)
        vals = [poly_eval(p, y) for y in ys]
        cells = [str(v) if args.exact else f"{float(v):.10g}" for v in vals]
        cells += [str(math.comb(2 * n, n)), str(math.comb(2 * n, n) // (n + 1))]
        print("\t".join([str(2 * n)] + cells))


if __name__ == "__main__":
    main()
