"""How the mu3 Wold identities depend on the truncation order of b.

For f = k_lam, T_{conj b} k_lam = conj(b(lam)) k_lam, so the layers are
phi_n = conj(b(lam))^n k^b_lam with exact squared norms
|b(lam)|^(2n) (1 - |b(lam)|^2) / (1 - |lam|^2).  The table compares these
with the coefficient-space norms and shows the Pythagoras gap and the
membership error next to the tail energy 1 - sum |b_k|^2.
"""
import argparse

import numpy as np

from kaczmarz_rkhs.measures import cantor, fourier_table
from kaczmarz_rkhs.series import PowerSeries
from kaczmarz_rkhs.transforms import inner_from_measure
from kaczmarz_rkhs.wold import wold_layers


def main():
    ap = argparse.ArgumentParser(description="Wold identities on mu3 against the order N")
    ap.add_argument("--orders", type=int, nargs="+", default=[128, 512, 2048, 8192])
    ap.add_argument("--point", type=float, default=0.4)
    ap.add_argument("-M", type=int, default=8)
    args = ap.parse_args()
    lam = args.point
    print(f"{'N':>6} {'tail':>10} {'pyth/|f|^2':>11} {'member':>10} {'phi0 rel':>10}")
    for N in args.orders:
        b = inner_from_measure(fourier_table(cantor(3), N))
        f = PowerSeries(lam ** np.arange(N + 1))
        w = wold_layers(f, b, args.M)
        bl = b(lam)
        exact0 = np.sqrt((1 - abs(bl) ** 2) / (1 - lam**2))
        rel0 = abs(w.layer_norms()[0] - exact0) / exact0
        print(f"{N:6d} {w.b_tail_energy():10.3e} {w.pythagoras_gap() / f.norm() ** 2:11.3e} "
              f"{w.membership_errors().max():10.3e} {rel0:10.3e}")


if __name__ == "__main__":
    main()
