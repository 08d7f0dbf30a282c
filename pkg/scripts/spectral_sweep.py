"""Smallest singular values of Q^gamma sections under N-doubling, plus kernel counts.

Writes a CSV with columns alpha,quantity,N,value (same layout as ``hb-lab spectral``).
"""
import argparse

from hb_lab.disk import make_grid
from hb_lab.serialize import csv_text, write_text
from hb_lab.space import alpha_index
from hb_lab.toeplitz import kernel_dimension_for_alpha, sigma_min_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alphas", default="0.25,0.5,0.75,1.2,1.5,2.2,2.5")
    ap.add_argument("--max-n", type=int, default=1024)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    sizes = [n for n in (32, 64, 128, 256, 512, 1024, 2048) if n <= args.max_n]
    grid = make_grid(max(4096, 4 * args.max_n))
    rows = []
    for a in (float(x) for x in args.alphas.split(",")):
        gamma = a - alpha_index(a)
        rows += [(a, "sigma_min", n, s) for n, s in sigma_min_sweep(gamma, sizes, grid)]
        est = kernel_dimension_for_alpha(a, args.max_n, grid=grid)
        rows += [(a, "kernel_dimension", args.max_n, est.dimension), (a, "kernel_gap", args.max_n, est.gap)]
    write_text(csv_text(("alpha", "quantity", "N", "value"), rows), args.out)


if __name__ == "__main__":
    main()
