"""The acceptance checks, shared by ``hb-lab check-all`` and the test suite.

Each check returns a ``CheckResult`` carrying the measured worst-case value,
the tolerance it is compared with and a JSON-ready ``detail`` mapping.
Randomised checks draw from a generator derived from ``(seed, check index)``
so every check is reproducible on its own.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .config import DEFAULT_TOLERANCES, parallel_map
from .disk import CoeffSeries, binomial_series, cauchy_product, make_grid
from .fspec import parse_fspec
from .pairs import corona_bound, pair_alpha, radial_limit_at_one, sandwich_check
from .space import (
    alpha_index,
    blaschke_equiv_check,
    decompose,
    decompose_mabar,
    division_diagnostic,
    hb_norm,
    membership_test,
    regularity_integral,
    reproducing_check,
)
from .toeplitz import kernel_dimension_estimate, kernel_vector_residual, toeplitz_section, unimodular_power_symbol

PAIR_ALPHAS = (0.25, 0.5, 1.0, 1.5, 2.0, 2.5)
BLASCHKE_SUITE = ("1", "z", "z^2", "1+2z-z^3", "(1-z)^1.5", "z(1-z)^2",
                  "(1-z)^0.1", "z(1-z)^0.2", "(1-z)^1.2", "(1-z)^-0.2")


@dataclass
class CheckResult:
    index: int
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.index:2d} {self.name}: value={self.value:.3e} tol={self.tolerance:.1e}"

    def to_dict(self) -> dict:
        return {"index": self.index, "name": self.name, "passed": self.passed,
                "value": self.value, "tolerance": self.tolerance, "detail": self.detail}


class PairCache:
    """Builds each alpha-pair once per check run."""

    def __init__(self, n_points: int = 4096):
        self.grid = make_grid(n_points)
        self._pairs = {}

    def __call__(self, alpha: float):
        if alpha not in self._pairs:
            self._pairs[alpha] = pair_alpha(alpha, self.grid)
        return self._pairs[alpha]


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def _tol(tolerances, name):
    return (tolerances or DEFAULT_TOLERANCES)[name]


def _disk_points(rng, count, radius=1.0):
    r = radius * np.sqrt(rng.uniform(size=count))
    return r * np.exp(2j * np.pi * rng.uniform(size=count))


def check_pythagorean(pairs: PairCache, seed=0, tolerances=None) -> CheckResult:
    tol = _tol(tolerances, "pyth")
    per_alpha = {a: pairs(a).pyth_residual() for a in PAIR_ALPHAS}
    worst = max(per_alpha.values())
    return CheckResult(1, "pythagorean identity", worst <= tol, worst, tol,
                       {"residual_by_alpha": per_alpha})


def check_corona(pairs: PairCache, seed=0, tolerances=None) -> CheckResult:
    tol = _tol(tolerances, "corona")
    slack = {a: pairs(a).corona_min() - corona_bound(a) for a in PAIR_ALPHAS}
    worst = min(slack.values())
    return CheckResult(2, "corona lower bound", worst >= -tol, worst, tol, {"margin_by_alpha": slack})


def check_sandwich(pairs: PairCache, seed=0, tolerances=None) -> CheckResult:
    tol = _tol(tolerances, "sandwich")
    rng = _rng(seed, 3)
    failures, worst = 0, math.inf
    for a in PAIR_ALPHAS:
        for z in _disk_points(rng, 50):
            rep = sandwich_check(pairs(a), z, tol)
            failures += not rep.ok
            worst = min(worst, rep.value / rep.lower - 1, 1 - rep.value / rep.upper)
    return CheckResult(3, "two-sided bound for |a|", failures == 0, worst, tol,
                       {"points_per_alpha": 50, "failures": failures, "min_relative_margin": worst})


def check_boundary_value(pairs: PairCache, seed=0, tolerances=None) -> CheckResult:
    tol, tol_arg = _tol(tolerances, "boundary"), _tol(tolerances, "arg")
    errs, stable = {}, {}
    for a in (0.5, 1.0, 2.5):
        lim = radial_limit_at_one(pairs(a), tol=_tol(tolerances, "lim"))
        errs[a] = abs(lim.value - 1)
        stable[a] = lim.stable
    radii = np.round(np.arange(1, 10) / 10, 1)
    arg = max(abs(np.angle(pairs(a).b(r))) for a in PAIR_ALPHAS for r in radii)
    worst = max(errs.values())
    return CheckResult(4, "b(1) = 1 and real on (0,1)", worst <= tol and arg <= tol_arg, worst, tol,
                       {"limit_error_by_alpha": errs, "limit_stable": stable, "max_arg_on_radius": arg,
                        "arg_tolerance": tol_arg})


def check_golden(pairs: PairCache, seed=0, tolerances=None) -> CheckResult:
    tol = _tol(tolerances, "golden")
    closed = ((3 + math.sqrt(5)) / 2) ** -0.5
    integral = quad(lambda t: math.log(3 - 2 * math.cos(t)), 0, 2 * math.pi, limit=200)[0]
    quad_oracle = math.exp(-integral / (4 * math.pi))
    value = pairs(1.0).b(0)
    err = max(abs(value - closed), abs(value - quad_oracle))
    return CheckResult(5, "b_1(0) golden-ratio value", err <= tol, err, tol,
                       {"b1_at_0": value.real, "closed_form": closed, "quadrature_oracle": quad_oracle})


def check_norm(pairs: PairCache, seed=0, tolerances=None) -> CheckResult:
    tol = _tol(tolerances, "norm")
    one = CoeffSeries([1.0])
    errs = {a: abs(hb_norm(pairs(a), one) - math.sqrt(2)) for a in (0.25, 1.0, 1.5)}
    rng = _rng(seed, 6)
    violations = 0
    for i in range(100):
        a = PAIR_ALPHAS[i % len(PAIR_ALPHAS)]
        deg = int(rng.integers(0, 40))
        f = CoeffSeries(rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1))
        violations += not hb_norm(pairs(a), f) >= f.h2_norm()
    worst = max(errs.values())
    return CheckResult(6, "norm of 1 and dominance", worst <= tol and violations == 0, worst, tol,
                       {"norm_error_by_alpha": errs, "dominance_violations": violations})


def check_reproducing(pairs: PairCache, seed=0, tolerances=None) -> CheckResult:
    tol = _tol(tolerances, "repro")
    rng = _rng(seed, 7)
    alphas = (0.25, 1.0, 1.5, 2.0)
    draws = []
    for i in range(20):
        a = alphas[int(rng.integers(len(alphas)))]
        deg = int(rng.integers(0, 17))
        f = CoeffSeries(rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1))
        w = complex(_disk_points(rng, 1, 0.9)[0])
        draws.append((a, f, w))
    for a in alphas:
        pairs(a)
    errs = parallel_map(lambda d: reproducing_check(pairs(d[0]), d[1], d[2]), draws)
    worst = max(errs)
    return CheckResult(7, "reproducing kernel", worst <= tol, worst, tol,
                       {"draws": len(draws), "errors": errs})


def _taylor_one_minus(alpha, p_monomial, h):
    def source(M):
        out = cauchy_product(binomial_series(alpha, M), CoeffSeries(h), M).coeffs.copy()
        out[: len(p_monomial)] += p_monomial
        return out
    return source


def check_decomposition(pairs=None, seed=0, tolerances=None, trials: int = 50) -> CheckResult:
    tol_poly, tol_res, tol_tay = (_tol(tolerances, k) for k in ("poly", "dec", "taylor"))
    rng = _rng(seed, 8)
    jobs = []
    for a in (0.75, 1.0, 1.3, 2.0, 2.4):
        n = alpha_index(a)
        for _ in range(trials):
            p = rng.normal(size=n)
            h = rng.normal(size=int(rng.integers(1, 34)))
            jobs.append((a, p, h))

    def run(job):
        a, p, h = job
        n = alpha_index(a)
        src = _taylor_one_minus(a, p, h)
        dec = decompose(a, src)
        poly_err = float(np.max(np.abs(dec.poly_part.coeffs[:n] - p)))
        series = CoeffSeries(src(2 ** 17))
        radial = [radial_limit_at_one(series, k).value / math.factorial(k) for k in range(n)]
        tay_err = float(np.max(np.abs(dec.taylor_at_one - np.asarray(radial))))
        return poly_err, dec.residual_norm, tay_err

    out = np.array(parallel_map(run, jobs))
    by_alpha = {}
    for (a, _, _), row in zip(jobs, out):
        cur = by_alpha.setdefault(a, [0.0, 0.0, 0.0])
        by_alpha[a] = [max(x, y) for x, y in zip(cur, row)]
    worst_poly, worst_res, worst_tay = out.max(axis=0)
    ok = worst_poly <= tol_poly and worst_res <= tol_res and worst_tay <= tol_tay
    return CheckResult(8, "Taylor-part decomposition round trip", bool(ok), float(worst_res), tol_res,
                       {"trials_per_alpha": trials, "max_poly_error": worst_poly, "poly_tolerance": tol_poly,
                        "max_taylor_vs_radial": worst_tay, "taylor_tolerance": tol_tay,
                        "worst_by_alpha": {a: {"poly": v[0], "residual": v[1], "taylor": v[2]}
                                           for a, v in by_alpha.items()}})


def check_mabar_split(pairs=None, seed=0, tolerances=None) -> CheckResult:
    tol = _tol(tolerances, "split")
    rng = _rng(seed, 9)
    gs = []
    for _ in range(20):
        deg = int(rng.integers(0, 17))
        g = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        gs.append(CoeffSeries(g / np.linalg.norm(g)))
    detail, worst, decreasing = {}, 0.0, True
    for a in (1.0, 1.3, 2.2):
        at512 = parallel_map(lambda g: decompose_mabar(a, g, 512).residual, gs)
        at1024 = parallel_map(lambda g: decompose_mabar(a, g, 1024).residual, gs)
        exact = max(decompose_mabar(a, g, 512, method="factorized").residual for g in gs)
        dec = all(r2 <= max(r1, 1e-13) for r1, r2 in zip(at512, at1024))
        decreasing &= dec
        worst = max(worst, max(at512))
        detail[a] = {"max_residual_512": max(at512), "max_residual_1024": max(at1024),
                     "decreasing": dec, "factorized_residual_512": exact}
    return CheckResult(9, "splitting of the conjugate-multiplier range", worst <= tol and decreasing,
                       worst, tol, {"by_alpha": detail})


def check_kernel(pairs=None, seed=0, tolerances=None) -> CheckResult:
    tol_rel, tol_res = _tol(tolerances, "kernel"), _tol(tolerances, "kernel_residual")
    expected = {0.25: 0, 0.5: 0, 1.5: 1, 2.5: 2}
    N = 1024
    grid = make_grid(4096)
    detail, ok, worst_res = {}, True, 0.0
    for a, want in expected.items():
        T = toeplitz_section(unimodular_power_symbol(grid, a), N)
        est = kernel_dimension_estimate(T, tol_rel)
        res = []
        for k in range(alpha_index(a) if want else 0):
            v = np.zeros(N, dtype=complex)
            v[k:] = binomial_series(0.5, N - k).coeffs
            res.append(kernel_vector_residual(T, CoeffSeries(v)))
        worst_res = max([worst_res] + res)
        ok &= est.dimension == want and est.trusted and all(r <= tol_res for r in res)
        detail[a] = {"dimension": est.dimension, "expected": want, "gap": est.gap,
                     "candidate_residuals": res}
    return CheckResult(10, "Toeplitz kernel dimensions", bool(ok), worst_res, tol_res, {"by_alpha": detail})


def regularity_expected(alpha: float, n: int) -> str:
    if abs(alpha - (n - 0.5)) < 0.05:
        return "inconclusive"
    return "converges" if alpha > n - 0.5 else "diverges"


def check_regularity(pairs=None, seed=0, tolerances=None) -> CheckResult:
    tol = _tol(tolerances, "regularity")
    alphas = [round(0.3 + 0.1 * i, 10) for i in range(25)]
    cells = [(a, n) for a in alphas for n in (1, 2)]
    results = parallel_map(lambda c: regularity_integral(*c), cells)
    mismatches, worst = [], 0.0
    table = []
    for (a, n), r in zip(cells, results):
        want = regularity_expected(a, n)
        if r.verdict != want:
            mismatches.append([a, n])
        if want == "diverges":
            worst = max(worst, abs(r.fitted_exponent - (2 * a + 1 - 2 * n)))
        table.append({"alpha": a, "n": n, "verdict": r.verdict, "fitted_exponent": r.fitted_exponent})
    return CheckResult(11, "boundary regularity criterion", not mismatches and worst <= tol, worst, tol,
                       {"mismatches": mismatches, "table": table})


def check_strict_inclusion(pairs=None, seed=0, tolerances=None) -> CheckResult:
    tol = _tol(tolerances, "growth")
    one = CoeffSeries([1.0])
    member = membership_test(0.5, one)
    division = division_diagnostic(0.5, one)
    ok = member.verdict == "member" and division.strictly_increasing and division.growth_exponent > tol
    return CheckResult(12, "strict inclusion at alpha 1/2", bool(ok), division.growth_exponent, tol,
                       {"membership": member.to_dict(), "division_norms": division.norms_by_resolution,
                        "division_strictly_increasing": division.strictly_increasing,
                        "division_tail_ratio": division.tail_ratio})


def check_blaschke(pairs=None, seed=0, tolerances=None) -> CheckResult:
    rows, disagreements = [], 0
    for zeros in ((0j,), (0.5 + 0j,)):
        for text in BLASCHKE_SUITE:
            rep = blaschke_equiv_check(1.0, zeros, parse_fspec(text))
            disagreements += not rep.agree
            rows.append({"zeros": list(zeros), "f": text, "plain": rep.plain.verdict,
                         "with_inner": rep.with_inner.verdict})
    return CheckResult(13, "inner factor leaves the space unchanged", disagreements == 0,
                       float(disagreements), 0.0, {"suite": rows})


CHECKS: tuple[Callable, ...] = (
    check_pythagorean, check_corona, check_sandwich, check_boundary_value, check_golden,
    check_norm, check_reproducing, check_decomposition, check_mabar_split, check_kernel,
    check_regularity, check_strict_inclusion, check_blaschke,
)


def run_checks(seed: int = 0, tolerances=None, n_points: int = 4096, only=None) -> list:
    pairs = PairCache(n_points)
    out = []
    for i, check in enumerate(CHECKS, start=1):
        if only and i not in only:
            continue
        out.append(check(pairs, seed=seed, tolerances=tolerances))
    return out
