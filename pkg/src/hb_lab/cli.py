"""Command-line front end.

Every subcommand writes one document to ``--out`` (stdout by default). JSON
is canonical; ``--format csv`` emits the flat table described in each
subcommand's help. Exit codes: 0 success, 1 a check failed, 2 usage error,
3 numerical instability (non-member input, singular section, non-integrable
logarithm).
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .config import DEFAULT_RESOLUTIONS, DEFAULT_TOLERANCES, RunConfig
from .disk import CoeffSeries, NotLogIntegrable, make_grid
from .fspec import FSpecError, parse_fspec
from .serialize import csv_text, dumps, write_text

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_UNSTABLE = 0, 1, 2, 3

DEFAULT_REGULARITY_ALPHAS = tuple(round(0.3 + 0.1 * i, 10) for i in range(25))
DEFAULT_SPECTRAL_ALPHAS = (0.25, 0.5, 1.2, 1.5, 2.5)


class UsageError(Exception):
    pass


def _alpha_list(text: str) -> list:
    """Comma- or space-separated reals; an empty string gives an empty list."""
    parts = [p for p in text.replace(",", " ").split() if p]
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}") from None


def _int_list(text: str) -> list:
    try:
        return [int(p) for p in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


def _common(parser: argparse.ArgumentParser, alpha_list: bool = False) -> None:
    if alpha_list:
        parser.add_argument("--alpha", type=_alpha_list, default=None,
                            help="comma-separated exponents")
    else:
        parser.add_argument("--alpha", type=float, default=1.0, help="exponent alpha > 0 (default 1)")
    parser.add_argument("--n-points", type=int, default=4096, help="boundary grid size (default 4096)")
    parser.add_argument("--degree", type=int, default=None, help="coefficient count (default n_points/4)")
    parser.add_argument("--resolutions", type=_int_list, default=list(DEFAULT_RESOLUTIONS),
                        help="comma-separated grid sizes for refinement sweeps (default 1024,2048,4096)")
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized sample points")
    for name, value in DEFAULT_TOLERANCES.items():
        parser.add_argument(f"--tol-{name.replace('_', '-')}", dest=f"tol_{name}", type=float,
                            default=value, metavar="TOL",
                            help=f"tolerance override (default {value:g})")


def build_parser() -> argparse.ArgumentParser:
    tol_names = ", ".join(f"--tol-{k.replace('_', '-')}" for k in DEFAULT_TOLERANCES)
    parser = argparse.ArgumentParser(
        prog="hb-lab",
        description="Numerical lab for de Branges-Rovnyak spaces of b with b/a = (1-z)^-alpha.",
        epilog=f"Tolerance overrides (all subcommands): {tol_names}. "
               "Exit codes: 0 ok, 1 check failed, 2 usage error, 3 numerical instability.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.RawDescriptionHelpFormatter

    p = sub.add_parser("pair", formatter_class=fmt, help="build the pair (b_alpha, a_alpha)",
                       description="Build the pair and report diagnostics.\n\n"
                                   "CSV columns: k,a_re,a_im,b_re,b_im (Taylor coefficients).")
    _common(p)

    p = sub.add_parser("norm", formatter_class=fmt, help="H(b) norm and membership sweep",
                       description="Norm of f in H(b_alpha) and the refinement verdict.\n\n"
                                   "CSV columns: resolution,norm.\n"
                                   "f grammar: numbers, z, + - * ^, parentheses; real powers of c0 + c1 z.")
    _common(p)
    p.add_argument("--f", dest="fspec", required=True, help='function of z, e.g. "(1-z)^0.1"')

    p = sub.add_parser("decompose", formatter_class=fmt, help="split f into its structural parts",
                       description="Decompose f in H(b_alpha).\n\n"
                                   "CSV columns: part,k,re,im with part in {poly, ma, an}.")
    _common(p)
    p.add_argument("--f", dest="fspec", required=True, help="function of z")

    p = sub.add_parser("spectral", formatter_class=fmt, help="Toeplitz section sweeps",
                       description="Smallest singular values of Q^(alpha-n) sections and kernel "
                                   "dimensions of the conj((1-z)^alpha)/(1-z)^alpha section of size --degree.\n\n"
                                   "CSV columns: alpha,quantity,N,value with quantity in "
                                   "{sigma_min, kernel_dimension, kernel_gap}.")
    _common(p, alpha_list=True)

    p = sub.add_parser("regularity", formatter_class=fmt, help="boundary regularity verdict table",
                       description="Truncated log-integral verdicts over an alpha x n grid.\n\n"
                                   "CSV columns: alpha,n,verdict,increment_exponent,predicted_exponent,"
                                   "fitted_exponent,last_value.")
    _common(p, alpha_list=True)
    p.add_argument("--orders", type=_int_list, default=[1, 2], help="comma-separated n values (default 1,2)")

    p = sub.add_parser("check-all", formatter_class=fmt, help="run the acceptance checks",
                       description="Run every acceptance check; one PASS/FAIL line per criterion on stderr.\n\n"
                                   "CSV columns: index,name,passed,value,tolerance.")
    _common(p)
    p.add_argument("--only", type=_int_list, default=None, help="comma-separated criterion numbers")
    return parser


def _config(args) -> RunConfig:
    tolerances = {k: getattr(args, f"tol_{k}") for k in DEFAULT_TOLERANCES}
    try:
        return RunConfig(alpha=args.alpha, n_points=args.n_points, degree_bound=args.degree,
                         resolutions=args.resolutions, tolerances=tolerances,
                         output_path=args.out, format=args.format, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _positive_alpha(alpha: float) -> float:
    if not (math.isfinite(alpha) and alpha > 0):
        raise UsageError("alpha must be positive")
    return alpha


def _fspec(text: str):
    try:
        return parse_fspec(text)
    except FSpecError as exc:
        raise UsageError(f"bad --f: {exc}") from None


def _emit(cfg: RunConfig, doc, header=None, rows=None) -> None:
    text = dumps(doc) if cfg.format == "json" else csv_text(header, rows)
    write_text(text, cfg.output_path)


def cmd_pair(cfg: RunConfig) -> int:
    from .pairs import corona_bound, pair_alpha, pair_to_dict, sandwich_check

    alpha = _positive_alpha(cfg.alpha)
    if cfg.degree_bound > cfg.n_points // 2:
        raise UsageError("degree must be at most n_points / 2")
    pair = pair_alpha(alpha, make_grid(cfg.n_points), cfg.degree_bound)
    doc = pair_to_dict(pair)
    diag = doc["diagnostics"]
    bound = corona_bound(alpha)
    diag["corona_bound"] = bound
    rng = np.random.default_rng(cfg.seed)
    z = np.sqrt(rng.uniform(size=20)) * np.exp(2j * np.pi * rng.uniform(size=20))
    reports = [sandwich_check(pair, zi, cfg.tol("sandwich")) for zi in z]
    diag["sandwich"] = [{"z": r.z, "lower": r.lower, "value": r.value, "upper": r.upper, "ok": r.ok}
                        for r in reports]
    ok = (diag["pyth_residual"] <= cfg.tol("pyth") and diag["corona_min"] >= bound - cfg.tol("corona")
          and all(r.ok for r in reports))
    a, b = pair.a_series.coeffs, pair.b_series.coeffs
    _emit(cfg, doc, ("k", "a_re", "a_im", "b_re", "b_im"),
          ((k, a[k].real, a[k].imag, b[k].real, b[k].imag) for k in range(a.size)))
    return EXIT_OK if ok else EXIT_CHECK


def cmd_norm(cfg: RunConfig, text: str) -> int:
    from .pairs import pair_alpha
    from .space import hb_norm, membership_test

    alpha = _positive_alpha(cfg.alpha)
    spec = _fspec(text)
    pair = pair_alpha(alpha, make_grid(cfg.n_points), cfg.degree_bound)
    f = CoeffSeries(spec(cfg.degree_bound))
    report = membership_test(alpha, spec, cfg.resolutions, rel_tol=cfg.tol("member"))
    doc = {"alpha": alpha, "f": text, "degree": cfg.degree_bound, "h2_norm": f.h2_norm(),
           "hb_norm": hb_norm(pair, f), "membership": report.to_dict()}
    _emit(cfg, doc, ("resolution", "norm"), report.norms_by_resolution)
    return EXIT_OK


def cmd_decompose(cfg: RunConfig, text: str) -> int:
    from .space import decompose

    alpha = _positive_alpha(cfg.alpha)
    spec = _fspec(text)
    dec = decompose(alpha, spec, M=cfg.degree_bound, resolutions=cfg.resolutions)
    doc = {"f": text, **dec.to_dict()}
    rows = [(part, k, c.real, c.imag)
            for part, series in (("poly", dec.poly_part), ("ma", dec.ma_factor), ("an", dec.an_part))
            for k, c in enumerate(series.coeffs)]
    _emit(cfg, doc, ("part", "k", "re", "im"), rows)
    return EXIT_OK


def cmd_spectral(cfg: RunConfig) -> int:
    from .space import alpha_index
    from .toeplitz import kernel_dimension_for_alpha, sigma_min_sweep

    alphas = DEFAULT_SPECTRAL_ALPHAS if cfg.alpha is None else cfg.alpha
    if not alphas:
        raise UsageError("alpha list is empty")
    for a in alphas:
        _positive_alpha(a)
    N = cfg.degree_bound
    sizes = [s for s in (64, 128, 256, 512, 1024, 2048) if s <= N] or [N]
    grid = make_grid(max(cfg.n_points, 2 * N))
    entries, rows = [], []
    for a in alphas:
        gamma = a - alpha_index(a)
        sweep = sigma_min_sweep(gamma, sizes, grid)
        est = kernel_dimension_for_alpha(a, N, cfg.tol("kernel"), grid)
        entries.append({"alpha": a, "gamma": gamma,
                        "sigma_min": [{"N": s, "value": v} for s, v in sweep],
                        "kernel": {"N": N, "dimension": est.dimension, "gap": est.gap,
                                   "trusted": est.trusted}})
        rows += [(a, "sigma_min", s, v) for s, v in sweep]
        rows += [(a, "kernel_dimension", N, est.dimension), (a, "kernel_gap", N, est.gap)]
    _emit(cfg, {"threshold": cfg.tol("kernel"), "alphas": entries}, ("alpha", "quantity", "N", "value"), rows)
    return EXIT_OK


def cmd_regularity(cfg: RunConfig, orders) -> int:
    from .config import parallel_map
    from .space import regularity_integral

    alphas = DEFAULT_REGULARITY_ALPHAS if cfg.alpha is None else cfg.alpha
    if not alphas or not orders:
        raise UsageError("alpha and order lists must be non-empty")
    for a in alphas:
        _positive_alpha(a)
    if any(n < 1 for n in orders):
        raise UsageError("orders must be positive integers")
    cells = [(a, n) for a in alphas for n in orders]
    results = parallel_map(lambda c: regularity_integral(*c), cells)
    table = [{"alpha": r.alpha, "n": r.n, "verdict": r.verdict,
              "increment_exponent": r.increment_exponent, "predicted_exponent": 2 * r.alpha + 1 - 2 * r.n,
              "fitted_exponent": r.fitted_exponent, "last_value": r.values[-1]} for r in results]
    _emit(cfg, {"table": table}, tuple(table[0]), (tuple(row.values()) for row in table))
    return EXIT_OK


def cmd_check_all(cfg: RunConfig, only) -> int:
    from .checks import run_checks

    results = run_checks(cfg.seed, cfg.tolerances, cfg.n_points, only)
    for r in results:
        print(r.line(), file=sys.stderr)
    doc = {"seed": cfg.seed, "criteria": [r.to_dict() for r in results]}
    _emit(cfg, doc, ("index", "name", "passed", "value", "tolerance"),
          ((r.index, r.name, r.passed, r.value, r.tolerance) for r in results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    from .space import NotAMember

    try:
        cfg = _config(args)
        if args.command == "pair":
            return cmd_pair(cfg)
        if args.command == "norm":
            return cmd_norm(cfg, args.fspec)
        if args.command == "decompose":
            return cmd_decompose(cfg, args.fspec)
        if args.command == "spectral":
            return cmd_spectral(cfg)
        if args.command == "regularity":
            return cmd_regularity(cfg, args.orders)
        return cmd_check_all(cfg, args.only)
    except UsageError as exc:
        print(f"hb-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotAMember, NotLogIntegrable, np.linalg.LinAlgError) as exc:
        print(f"hb-lab: numerical instability: {exc}", file=sys.stderr)
        return EXIT_UNSTABLE
    except OSError as exc:
        print(f"hb-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
