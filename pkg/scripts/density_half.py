"""Distance in H(b_1/2) from f = 1 to (1-z)^(1/2) P_k as k grows.

For each k the best approximation is the least-squares solution in the range
norm ||g||^2 + ||T_conj(phi) g||^2, computed on M Taylor coefficients. No rate
is predicted; the script records the observed decrease.
"""
import argparse

import numpy as np

from hb_lab.disk import binomial_series
from hb_lab.serialize import csv_text, write_text
from hb_lab.space import conj_toeplitz_apply, phi_source_for


def hb_stack(g, phi):
    return np.concatenate([g, conj_toeplitz_apply(phi, g)])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--M", type=int, default=2048)
    ap.add_argument("--degrees", default="1,2,4,8,16,32,64")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    M = args.M
    phi = phi_source_for(0.5)(M)
    root = binomial_series(0.5, M).coeffs
    target = np.zeros(M, dtype=complex)
    target[0] = 1
    rhs = hb_stack(target, phi)
    rows = []
    for k in (int(x) for x in args.degrees.split(",")):
        cols = []
        for j in range(k):
            v = np.zeros(M, dtype=complex)
            v[j:] = root[: M - j]
            cols.append(hb_stack(v, phi))
        design = np.column_stack(cols)
        coef, *_ = np.linalg.lstsq(design, rhs, rcond=None)
        rows.append((k, float(np.linalg.norm(design @ coef - rhs))))
    write_text(csv_text(("k", "distance"), rows), args.out)


if __name__ == "__main__":
    main()
