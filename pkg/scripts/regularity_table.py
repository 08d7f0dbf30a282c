"""Verdict table of the truncated boundary log-integral over an alpha x n grid."""
import argparse

from hb_lab.config import parallel_map
from hb_lab.serialize import csv_text, write_text
from hb_lab.space import regularity_integral


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha-min", type=float, default=0.3)
    ap.add_argument("--alpha-max", type=float, default=2.7)
    ap.add_argument("--step", type=float, default=0.1)
    ap.add_argument("--orders", default="1,2,3")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    count = int(round((args.alpha_max - args.alpha_min) / args.step)) + 1
    alphas = [round(args.alpha_min + i * args.step, 10) for i in range(count)]
    cells = [(a, int(n)) for a in alphas for n in args.orders.split(",")]
    results = parallel_map(lambda c: regularity_integral(*c), cells)
    rows = [(r.alpha, r.n, r.verdict, r.increment_exponent, 2 * r.alpha + 1 - 2 * r.n) for r in results]
    write_text(csv_text(("alpha", "n", "verdict", "increment_exponent", "predicted_exponent"), rows), args.out)


if __name__ == "__main__":
    main()
