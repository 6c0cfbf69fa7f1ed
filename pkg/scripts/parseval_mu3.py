"""Parseval partial sums sum_{n<=k} |<e_j, g_n>|^2 on mu3 for a few test exponentials.

The attained fraction at each order is printed next to the rule used.
"""
import argparse

import numpy as np

from kaczmarz_rkhs.kaczmarz import alpha, expand, g_from_alpha
from kaczmarz_rkhs.measures import atoms, cantor, fourier_table, sample_exponential


def main():
    ap = argparse.ArgumentParser(description="Parseval fractions on mu3")
    ap.add_argument("--orders", type=int, nargs="+", default=[64, 128, 256, 512])
    ap.add_argument("--depth", type=int, default=12)
    ap.add_argument("--exponents", type=int, nargs="+", default=[0, 1, 2, 5])
    ap.add_argument("--anchor", choices=("left", "barycenter"), default="barycenter")
    args = ap.parse_args()
    mu = cantor(3)
    rule = atoms(mu, args.depth, args.anchor)
    print("N     " + "".join(f"  e_{j:<10d}" for j in args.exponents))
    for N in args.orders:
        table = fourier_table(mu, N)
        g = g_from_alpha(alpha(table))
        fracs = []
        for j in args.exponents:
            f = sample_exponential(j, rule)
            ex = expand(f, g)
            fracs.append(np.sum(np.abs(ex.coeffs) ** 2) / f.norm() ** 2)
        print(f"{N:<6d}" + "".join(f"  {x:<12.8f}" for x in fracs))


if __name__ == "__main__":
    main()
