"""Density of nu_lambda by three routes: closed form, Stieltjes inversion of the
factorized transform, and the Markov-transform formula from tau_lambda alone.

    python scripts/density_routes.py --family 3 --lambda 0.7 --points 9
"""

import argparse

import numpy as np

from markovcst.measures import family, nu_density
from markovcst.transforms import family_transform, markov_density, stieltjes_invert


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", type=int, default=2, choices=(1, 2, 3, 4))
    ap.add_argument("--lambda", dest="lam", type=float, default=2.0)
    ap.add_argument("--points", type=int, default=9)
    args = ap.parse_args()

    spec = family(args.family, args.lam)
    T = family_transform(spec)
    xs = np.linspace(-2, 2, args.points + 2)[1:-1]
    print("x\tclosed\tstieltjes\tmarkov\tmax_rel_dev")
    worst = 0.0
    for x in xs:
        c = nu_density(spec, x)
        s = stieltjes_invert(T, float(x))
        m = markov_density(spec, float(x))
        dev = max(abs(s - c), abs(m - c)) / c
        worst = max(worst, dev)
        print(f"{x:+.4f}\t{c:.12f}\t{s:.12f}\t{m:.12f}\t{dev:.1e}")
    print(f"# worst relative deviation {worst:.2e}")


if __name__ == "__main__":
    main()
