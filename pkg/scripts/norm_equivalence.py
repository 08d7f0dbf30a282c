"""Measured ratios ||f||_{b_alpha} / ||f||_{M(a_alpha)} for alpha < 1/2.

Here f = a_alpha h with random polynomial h, so the range norm of f in M(a_alpha)
is ||h||_2. The spaces coincide for alpha < 1/2; the ratios give empirical
equivalence constants.
"""
import argparse

import numpy as np

from hb_lab.disk import CoeffSeries, cauchy_product, make_grid
from hb_lab.pairs import pair_alpha
from hb_lab.serialize import csv_text, write_text
from hb_lab.space import hb_norm


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alphas", default="0.1,0.25,0.4")
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    grid = make_grid(8192)
    rows = []
    for a in (float(x) for x in args.alphas.split(",")):
        pair = pair_alpha(a, grid)
        M = pair.M
        ratios = []
        for _ in range(args.trials):
            h = rng.normal(size=int(rng.integers(1, 17))) + 1j * rng.normal(size=1)
            f = cauchy_product(pair.a_series, CoeffSeries(h), M)
            ratios.append(hb_norm(pair, f) / np.linalg.norm(h))
        rows.append((a, min(ratios), float(np.median(ratios)), max(ratios)))
    write_text(csv_text(("alpha", "min_ratio", "median_ratio", "max_ratio"), rows), args.out)


if __name__ == "__main__":
    main()
