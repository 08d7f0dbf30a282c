"""Norms, kernels, membership and structural decompositions in H(b).

The norm is ``||f||_b^2 = ||f||_2^2 + ||T_{conj(phi)} f||_2^2`` with ``phi = b / a``.
``T_{conj(phi)}`` acts on Taylor coefficients as

    (T_{conj(phi)} f)_k = sum_j conj(phi_j) f_{j+k},

which equals ``P_+(conj(phi_M) f)`` for the degree-``M`` truncation ``phi_M`` of
``phi`` evaluated on any grid of at least ``2M`` points. It is exact whenever
``f`` is a polynomial of degree below ``M``. Sampling ``conj(phi)`` itself on the
grid instead would alias the boundary pole of ``(1 - z)^(-alpha)`` into the
low frequencies, so the coefficient route is used throughout.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.linalg import lu_factor, lu_solve
from scipy.signal import fftconvolve

from .config import DEFAULT_RESOLUTIONS, parallel_map
from .disk import (
    BoundarySamples,
    CoeffSeries,
    binomial_series,
    cauchy_product,
    evaluate,
    make_grid,
    project_minus,
    project_plus,
    synthesize,
)
from .pairs import (
    PythagoreanPair,
    blaschke_series,
    expansion_exponents,
    radial_limit_at_one,
)
from .toeplitz import q_power_coefficients, section_from_coefficients

SeriesSource = Callable[[int], np.ndarray]

SIGMA_MIN_FLOOR = 1e-10
RADIAL_TERMS = 2 ** 19
RADIAL_LEVELS = 14
DECOMPOSE_M = 1024
AN_BASIS_GRID = 2 ** 16
MEMBER_REL_TOL = 1e-3


def as_source(f) -> SeriesSource:
    """Turn a series, coefficient array or ``M -> coeffs`` callable into a callable."""
    if callable(f):
        return f
    series = f if isinstance(f, CoeffSeries) else CoeffSeries(f)

    def source(M):
        return series.resized(M).coeffs
    return source


def alpha_index(alpha: float) -> int:
    """The integer ``n`` with ``n - 1/2 < alpha <= n + 1/2``."""
    return int(math.ceil(alpha - 0.5))


def is_half_integer(alpha: float, tol: float = 1e-12) -> bool:
    return abs(alpha - (alpha_index(alpha) + 0.5)) < tol


def conj_toeplitz_apply(symbol_coeffs: np.ndarray, f: np.ndarray) -> np.ndarray:
    """``(T_{conj(c)} f)_k = sum_j conj(c_j) f_{j+k}`` for ``k < len(f)``."""
    f = np.asarray(f, dtype=complex)
    M = f.size
    c = np.conj(np.asarray(symbol_coeffs, dtype=complex)[:M])
    full = fftconvolve(f[::-1], c)
    return full[:M][::-1]


def phi_source_for(alpha: float, zeros: Sequence[complex] = ()) -> SeriesSource:
    """Coefficients of ``u (1 - z)^(-alpha)`` for the Blaschke product ``u`` of ``zeros``."""
    zeros = tuple(zeros)

    def source(M):
        base = binomial_series(-alpha, M)
        if zeros:
            base = cauchy_product(base, blaschke_series(zeros, M), M)
        return base.coeffs
    return source


def t_phibar_apply(pair: PythagoreanPair | SeriesSource, f: CoeffSeries) -> CoeffSeries:
    """``T_{conj(phi)} f`` with ``phi`` band-limited to the length of ``f``."""
    phi = pair.phi_coeffs if isinstance(pair, PythagoreanPair) else pair
    return CoeffSeries(conj_toeplitz_apply(phi(len(f)), f.coeffs))


def t_phibar_grid(pair: PythagoreanPair, f: CoeffSeries, grid_points: int | None = None) -> CoeffSeries:
    """Same operator evaluated as ``P_+(conj(phi_M) f)`` on a boundary grid of ``>= 2M`` points."""
    M = len(f)
    grid = make_grid(grid_points or 2 * M)
    if grid.n_points < 2 * M:
        raise ValueError("grid must have at least 2M points")
    phi_m = synthesize(CoeffSeries(pair.phi_coeffs(M)), grid)
    return project_plus(phi_m.conj() * synthesize(f, grid), M)


def _norm_length(pair, f: CoeffSeries) -> CoeffSeries:
    if isinstance(pair, PythagoreanPair):
        return f.resized(max(len(f), pair.M))
    return f


def hb_norm(pair, f: CoeffSeries) -> float:
    f = _norm_length(pair, f)
    g = t_phibar_apply(pair, f)
    return float(math.hypot(f.h2_norm(), g.h2_norm()))


def hb_inner(pair, f: CoeffSeries, g: CoeffSeries) -> complex:
    """``<f, g>_2 + <T f, T g>_2`` (linear in ``f``)."""
    M = max(len(f), len(g))
    f, g = f.resized(M), g.resized(M)
    tf, tg = t_phibar_apply(pair, f), t_phibar_apply(pair, g)
    return complex(np.vdot(g.coeffs, f.coeffs) + np.vdot(tg.coeffs, tf.coeffs))


@dataclass(frozen=True, eq=False)
class HbElement:
    f: CoeffSeries
    pair: PythagoreanPair = field(repr=False)
    tphibar_f: CoeffSeries
    hb_norm_sq: float


def hb_element(pair: PythagoreanPair, f: CoeffSeries) -> HbElement:
    f = _norm_length(pair, f)
    g = t_phibar_apply(pair, f)
    return HbElement(f, pair, g, f.h2_norm() ** 2 + g.h2_norm() ** 2)


# Membership by refinement.

@dataclass(frozen=True)
class MembershipReport:
    """Norm estimates under grid refinement.

    ``verdict`` is ``"member"`` when the last refinement changed the norm by at
    most ``rel_tol`` relatively, ``"non-member"`` when the increments do not
    shrink and the norms grow, and ``"inconclusive"`` otherwise.
    """

    norms_by_resolution: tuple
    verdict: str
    growth_exponent: float

    def to_dict(self) -> dict:
        return {
            "norms_by_resolution": [list(p) for p in self.norms_by_resolution],
            "verdict": self.verdict,
            "growth_exponent": self.growth_exponent,
        }


def log_slope(xs, ys) -> float:
    xs, ys = np.asarray(xs, float), np.asarray(ys, float)
    if np.any(ys <= 0):
        return 0.0
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def classify_norms(resolutions, norms, rel_tol: float = MEMBER_REL_TOL) -> tuple[str, float]:
    growth = log_slope(resolutions, norms)
    last = norms[-1]
    if last == 0 or abs(norms[-1] - norms[-2]) <= rel_tol * abs(last):
        return "member", growth
    incs = np.diff(norms)
    if np.all(incs > 0) and incs[-1] >= incs[-2] and growth > 0:
        return "non-member", growth
    return "inconclusive", growth


def _check_resolutions(resolutions) -> list:
    res = [int(r) for r in resolutions]
    if len(res) < 3:
        raise ValueError("membership needs at least three resolutions")
    if any(b <= a for a, b in zip(res, res[1:])):
        raise ValueError("resolutions must be strictly increasing")
    return res


def membership_test(alpha: float, f, resolutions: Sequence[int] = DEFAULT_RESOLUTIONS,
                    zeros: Sequence[complex] = (), phi: SeriesSource | None = None,
                    rel_tol: float = MEMBER_REL_TOL) -> MembershipReport:
    """H(b) norm of ``f`` at degree ``N // 4`` for each grid size ``N``.

    Parameters
    ----------
    alpha : float
        Exponent of ``b_alpha``.
    f : CoeffSeries, array or callable ``M -> coefficients``
    resolutions : sequence of int
        At least three strictly increasing grid sizes.
    zeros : sequence of complex
        Zeros of a finite Blaschke factor ``u``; membership is then tested in ``H(u b_alpha)``.
    phi : callable, optional
        Overrides the quotient coefficients entirely.
    """
    res = _check_resolutions(resolutions)
    source = as_source(f)
    phi = phi or phi_source_for(alpha, zeros)

    def norm_at(N):
        M = N // 4
        fc = CoeffSeries(source(M))
        g = conj_toeplitz_apply(phi(M), fc.coeffs)
        return float(math.hypot(fc.h2_norm(), np.linalg.norm(g)))

    norms = parallel_map(norm_at, res)
    verdict, growth = classify_norms(res, norms, rel_tol)
    return MembershipReport(tuple(zip(res, norms)), verdict, growth)


@dataclass(frozen=True)
class DivisionReport:
    """``||f / (1-z)^alpha||_2`` truncated to ``N // 4`` terms, per resolution."""

    norms_by_resolution: tuple
    strictly_increasing: bool
    growth_exponent: float
    tail_ratio: float

    @property
    def unbounded(self) -> bool:
        return self.strictly_increasing and self.growth_exponent > 0


def quartile_tail_ratio(coeffs: np.ndarray) -> float:
    """l2 mass of the last quarter over that of the first quarter."""
    q = max(coeffs.size // 4, 1)
    head = np.linalg.norm(coeffs[:q])
    tail = np.linalg.norm(coeffs[-q:])
    return float(tail / head) if head > 0 else (math.inf if tail > 0 else 0.0)


def division_diagnostic(alpha: float, f, resolutions: Sequence[int] = DEFAULT_RESOLUTIONS) -> DivisionReport:
    res = _check_resolutions(resolutions)
    source = as_source(f)
    quotients = [cauchy_product(CoeffSeries(source(N // 4)), binomial_series(-alpha, N // 4)).coeffs for N in res]
    norms = [float(np.linalg.norm(q)) for q in quotients]
    increasing = all(b > a for a, b in zip(norms, norms[1:]))
    return DivisionReport(tuple(zip(res, norms)), increasing, log_slope(res, norms),
                          quartile_tail_ratio(quotients[-1]))


# Reproducing kernels.

def kernel_kwb(pair: PythagoreanPair, w, z) -> complex:
    w, z = complex(w), complex(z)
    return (1 - np.conj(pair.b(w)) * pair.b(z)) / (1 - np.conj(w) * z)


def kernel_series(pair: PythagoreanPair, w, M: int) -> CoeffSeries:
    """Taylor coefficients of ``k_w^b``: ``conj(w)^k - conj(b(w)) (b * geometric)_k``."""
    w = complex(w)
    geo = np.conj(w) ** np.arange(M)
    bw = pair.b(w)
    prod = fftconvolve(pair.b_coeffs(M), geo)[:M]
    return CoeffSeries(geo - np.conj(bw) * prod)


def t_phibar_kernel(pair: PythagoreanPair, w, head: int, M: int = 4096) -> np.ndarray:
    """First ``head`` coefficients of ``T_{conj(phi)} k_w^b``.

    For alpha-pairs the truncation error at length ``m`` behaves like
    ``c_1 m^-(alpha+1) + c_2 m^-(alpha+2)``; two Richardson steps on the
    lengths ``M/4, M/2, M`` remove both terms.
    """
    def image(m):
        k = kernel_series(pair, w, m)
        return t_phibar_apply(pair, k).coeffs[:head]

    if pair.alpha is None:
        return image(M)
    levels = [image(M // 4), image(M // 2), image(M)]
    for p in (pair.alpha + 1, pair.alpha + 2):
        gain = 2.0 ** p
        levels = [(gain * fine - coarse) / (gain - 1) for coarse, fine in zip(levels, levels[1:])]
    return levels[0]


def t_phibar_kernel_closed_form(pair: PythagoreanPair, w, head: int, M: int = 8192) -> np.ndarray:
    """``conj(b(w)) a k_w`` with ``k_w = 1/(1 - conj(w) z)``; independent of ``phi``."""
    w = complex(w)
    geo = np.conj(w) ** np.arange(M)
    a = cauchy_product(binomial_series(pair.alpha, M), CoeffSeries(pair.b_coeffs(M)), M).coeffs \
        if pair.alpha is not None else pair.a_series.resized(M).coeffs
    return (np.conj(pair.b(w)) * fftconvolve(a, geo)[:M])[:head]


def reproducing_check(pair: PythagoreanPair, f: CoeffSeries, w, M: int = 4096) -> float:
    """``|<f, k_w^b>_b - f(w)|`` for a polynomial ``f``."""
    w = complex(w)
    if not np.any(f.coeffs):
        return 0.0
    deg = int(np.max(np.nonzero(f.coeffs)[0]))
    if deg > 32:
        raise ValueError("reproducing check expects a polynomial of degree <= 32")
    head = deg + 1
    fc = f.coeffs[:head]
    k = kernel_series(pair, w, head)
    tf = conj_toeplitz_apply(pair.phi_coeffs(head), fc)
    tk = t_phibar_kernel(pair, w, head, M)
    inner = np.vdot(k.coeffs, fc) + np.vdot(tk, tf)
    return float(abs(inner - evaluate(CoeffSeries(fc), w)))


# Backward-shift span and the splitting of M(conj((1-z)^alpha)).

def sstar_basis(alpha: float, M: int = 64, n: int | None = None) -> list:
    """``S*^k (1-z)^alpha`` for ``k = 1..n`` with ``n = alpha_index(alpha)``."""
    n = alpha_index(alpha) if n is None else n
    if n < 1:
        raise ValueError("the backward-shift span is empty for alpha < 1/2")
    c = binomial_series(alpha, M + n).coeffs
    return [CoeffSeries(c[k:k + M]) for k in range(1, n + 1)]


@dataclass(frozen=True)
class MabarSplit:
    """``T_{conj((1-z)^alpha)} g = (1-z)^alpha h + sum_k coeffs[k-1] S*^k (1-z)^alpha``."""

    h: CoeffSeries
    coeffs: np.ndarray
    residual: float
    sigma_min: float
    method: str


@functools.lru_cache(maxsize=16)
def _section_factor(beta: float, N: int):
    # One SVD and LU per (beta, N); the sections are reused across right-hand sides.
    A = section_from_coefficients(q_power_coefficients(beta), N).matrix
    sigma = float(np.linalg.svd(A, compute_uv=False)[-1])
    return (lu_factor(A) if sigma >= SIGMA_MIN_FLOOR else None), sigma


def decompose_mabar(alpha: float, g: CoeffSeries, N: int = 512, method: str = "section") -> MabarSplit:
    """Split ``f = T_{conj((1-z)^alpha)} g`` for ``n - 1/2 < alpha < n + 1/2``, ``n >= 1``.

    ``g0`` solves ``T_{Q^(alpha-n)} g0 = (-1)^n g``. ``method="section"`` uses
    the ``N x N`` finite section; ``method="factorized"`` uses the exact
    inverse ``(1-z)^(-beta) T_{conj((1-z)^beta)}``, ``beta = alpha - n``.
    The residual is measured over the first ``N // 2`` coefficients, where the
    truncation of the section does not reach.

    Raises
    ------
    ValueError
        For ``alpha`` outside the admissible range.
    numpy.linalg.LinAlgError
        If the section is numerically singular (``sigma_min < 1e-10``).
    """
    n = alpha_index(alpha)
    if n < 1 or is_half_integer(alpha):
        raise ValueError("decompose_mabar needs n - 1/2 < alpha < n + 1/2 with n >= 1")
    beta = alpha - n
    gv = g.resized(N).coeffs
    c = binomial_series(alpha, N).coeffs
    f = conj_toeplitz_apply(c, gv)
    rhs = (-1) ** n * gv
    if method == "section":
        factor, sigma = _section_factor(float(beta), N)
        if sigma < SIGMA_MIN_FLOOR:
            raise np.linalg.LinAlgError(f"section is singular: sigma_min = {sigma:.3e}")
        g0 = lu_solve(factor, rhs)
    elif method == "factorized":
        sigma = math.nan
        inner = conj_toeplitz_apply(binomial_series(beta, N).coeffs, rhs)
        g0 = cauchy_product(CoeffSeries(inner), binomial_series(-beta, N), N).coeffs
    else:
        raise ValueError(f"unknown method {method!r}")

    h = g0[n:]
    recon = np.zeros(N, dtype=complex)
    recon[: N - n] = fftconvolve(c, h)[: N - n]
    for k in range(n):
        tail = c[n - k:]
        recon[: tail.size] += g0[k] * tail
    residual = float(np.linalg.norm((recon - f)[: N // 2]))
    return MabarSplit(CoeffSeries(h), g0[:n].copy(), residual, sigma, method)


def an_basis(alpha: float, M: int = 256, grid_points: int = AN_BASIS_GRID) -> list:
    """Images of ``p = z^k``, ``k < n``, under ``p P_+(w) + P_+(p P_-(w))``.

    Here ``w = conj((1-z)^alpha) (1-z)^(1/2)`` is sampled on a fine grid and
    ``alpha = n + 1/2`` with ``n >= 1``.
    """
    n = alpha_index(alpha)
    if n < 1 or not is_half_integer(alpha):
        raise ValueError("an_basis needs alpha = n + 1/2 with n >= 1")
    grid = make_grid(grid_points)
    one_minus = 1 - grid.points
    w = BoundarySamples(grid, np.conj(one_minus ** alpha) * np.sqrt(one_minus))
    plus = project_plus(w, M).coeffs
    minus = project_minus(w)
    out = []
    for k in range(n):
        first = np.zeros(M, dtype=complex)
        first[k:] = plus[: M - k]
        second = project_plus(BoundarySamples(grid, grid.points ** k) * minus, M).coeffs
        out.append(CoeffSeries(first + second))
    return out


def an_basis_oracle(alpha: float, M: int = 256, length: int = 2 ** 16) -> list:
    """``T_{conj((1-z)^alpha)} ((1-z)^(1/2) z^k)`` computed on Taylor coefficients."""
    n = alpha_index(alpha)
    c = binomial_series(alpha, length).coeffs
    half = binomial_series(0.5, length).coeffs
    out = []
    for k in range(n):
        v = np.zeros(length, dtype=complex)
        v[k:] = half[: length - k]
        out.append(CoeffSeries(conj_toeplitz_apply(c, v)[:M]))
    return out


# Constructive decomposition.

@dataclass(frozen=True)
class HbDecomposition:
    """``f = poly_part + (1-z)^alpha ma_factor + an_part`` up to ``residual_norm``.

    ``poly_part`` holds monomial coefficients (degree at most ``n - 1``) and
    ``taylor_at_one`` the same polynomial in powers of ``(z - 1)``.
    ``poly_claimed`` is false in the half-integer case, where the boundary
    derivatives of order ``n`` need not exist. ``stable`` reports whether the
    quotient coefficients decay (last quarter lighter than the first).
    """

    alpha: float
    n: int
    case: str
    poly_part: CoeffSeries
    taylor_at_one: np.ndarray
    ma_factor: CoeffSeries
    an_part: CoeffSeries
    an_coeffs: np.ndarray
    residual_norm: float
    stable: bool
    tail_ratio: float
    poly_claimed: bool
    limits_stable: bool

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "n": self.n,
            "case": self.case,
            "poly_coeffs": self.poly_part.coeffs,
            "ma_coeffs": self.ma_factor.coeffs,
            "an_coeffs": self.an_part.coeffs,
            "residual_norm": self.residual_norm,
            "stable": self.stable,
            "poly_claimed": self.poly_claimed,
        }


class NotAMember(ValueError):
    """The function failed the membership refinement test."""


def shifted_to_monomial(taylor_at_one: np.ndarray) -> np.ndarray:
    """Monomial coefficients of ``sum_k a_k (z - 1)^k``."""
    n = len(taylor_at_one)
    out = np.zeros(max(n, 1), dtype=complex)
    for k, ak in enumerate(taylor_at_one):
        for j in range(k + 1):
            out[j] += ak * math.comb(k, j) * (-1) ** (k - j)
    return out


def taylor_at_one(f, n: int, alpha: float, terms: int = RADIAL_TERMS) -> tuple[np.ndarray, bool]:
    """``f^(k)(1)/k!`` for ``k < n`` by radial extrapolation with known exponents."""
    series = CoeffSeries(as_source(f)(terms))
    vals, stable = [], True
    for k in range(n):
        lim = radial_limit_at_one(series, k, exponents=expansion_exponents(alpha, k), levels=RADIAL_LEVELS)
        vals.append(lim.value / math.factorial(k))
        stable &= lim.stable
    return np.asarray(vals, dtype=complex), stable


def decompose(alpha: float, f, M: int = DECOMPOSE_M, check_membership: bool = True,
              resolutions: Sequence[int] = DEFAULT_RESOLUTIONS, radial_terms: int = RADIAL_TERMS) -> HbDecomposition:
    """Split ``f`` in ``H(b_alpha)`` according to the position of ``alpha``.

    * ``alpha < 1/2``: ``f = (1-z)^alpha h``.
    * ``n - 1/2 < alpha < n + 1/2``: ``f = p + (1-z)^alpha h`` with ``p`` the
      Taylor polynomial of ``f`` at 1 of degree ``n - 1``.
    * ``alpha = n + 1/2``: ``f = (1-z)^alpha h + A_n`` part, where the ``A_n``
      coefficients come from projecting ``T_{conj(phi)} f`` on ``(1-z)^(1/2) z^k``.

    ``ma_factor`` keeps the first ``M // 2`` quotient coefficients and the
    residual is measured over ``M`` coefficients, so a quotient that does not
    decay shows up in ``residual_norm`` and ``stable``.
    """
    source = as_source(f)
    if check_membership:
        report = membership_test(alpha, source, resolutions)
        if report.verdict != "member":
            raise NotAMember(f"membership test returned {report.verdict!r} "
                             f"(growth exponent {report.growth_exponent:.3g})")
    n = alpha_index(alpha)
    half = is_half_integer(alpha)
    fc = CoeffSeries(source(M)).coeffs
    taylor = np.zeros(0, dtype=complex)
    poly = np.zeros(1, dtype=complex)
    an_coeffs = np.zeros(0, dtype=complex)
    an_part = np.zeros(M, dtype=complex)
    limits_stable = True

    if half:
        case = "half-integer"
        if n >= 1:
            g = conj_toeplitz_apply(binomial_series(-alpha, M).coeffs, fc)
            half_root = binomial_series(0.5, M).coeffs
            design = np.column_stack([np.concatenate([np.zeros(k), half_root[: M - k]]) for k in range(n)])
            an_coeffs = np.linalg.lstsq(design, g, rcond=None)[0]
            basis = an_basis(alpha, M)
            an_part = sum(ck * v.coeffs for ck, v in zip(an_coeffs, basis))
    elif n == 0:
        case = "division"
    else:
        case = "taylor"
        taylor, limits_stable = taylor_at_one(source, n, alpha, radial_terms)
        poly = shifted_to_monomial(taylor)

    rest = fc - an_part
    rest[: poly.size] -= poly
    quotient = cauchy_product(CoeffSeries(rest), binomial_series(-alpha, M), M).coeffs
    ma = quotient[: M // 2]
    recon = cauchy_product(CoeffSeries(ma), binomial_series(alpha, M), M).coeffs + an_part
    recon[: poly.size] += poly
    residual = float(np.linalg.norm(recon - fc))
    tail = quartile_tail_ratio(quotient)
    poly_len = max(n, 1)
    return HbDecomposition(
        alpha=float(alpha),
        n=n,
        case=case,
        poly_part=CoeffSeries(poly).resized(poly_len),
        taylor_at_one=taylor,
        ma_factor=CoeffSeries(ma),
        an_part=CoeffSeries(an_part),
        an_coeffs=an_coeffs,
        residual_norm=residual,
        stable=bool(tail <= 1.0),
        tail_ratio=tail,
        poly_claimed=not half,
        limits_stable=limits_stable,
    )


# Inclusions and inner factors.

@dataclass(frozen=True)
class InclusionReport:
    smaller: MembershipReport
    larger: MembershipReport
    consistent: bool


def inclusion_check(alpha: float, beta: float, f, resolutions=DEFAULT_RESOLUTIONS) -> InclusionReport:
    """Membership in ``H(b_beta)`` must imply membership in ``H(b_alpha)`` for ``alpha <= beta``."""
    if alpha > beta:
        raise ValueError("inclusion check needs alpha <= beta")
    in_beta = membership_test(beta, f, resolutions)
    in_alpha = membership_test(alpha, f, resolutions)
    consistent = in_beta.verdict != "member" or in_alpha.verdict == "member"
    return InclusionReport(in_beta, in_alpha, consistent)


@dataclass(frozen=True)
class BlaschkeReport:
    plain: MembershipReport
    with_inner: MembershipReport

    @property
    def agree(self) -> bool:
        return self.plain.verdict == self.with_inner.verdict


def blaschke_equiv_check(alpha: float, zeros: Sequence[complex], f, resolutions=DEFAULT_RESOLUTIONS) -> BlaschkeReport:
    """Compare membership of ``f`` in ``H(b_alpha)`` and ``H(u b_alpha)``."""
    plain = membership_test(alpha, f, resolutions)
    inner = membership_test(alpha, f, resolutions, zeros=zeros)
    return BlaschkeReport(plain, inner)


# Boundary regularity integral.

@dataclass(frozen=True)
class RegularityResult:
    """Truncated integrals of ``|log|b_alpha|| / |1 - e^{it}|^{2n}`` over ``[eps, 2 pi - eps]``.

    ``increment_exponent`` is the power of ``eps`` fitted to the contributions
    of successive shells ``[eps_{i+1}, eps_i]``; it approaches ``2 alpha + 1 - 2n``
    for divergent integrals and is positive for convergent ones.
    """

    alpha: float
    n: int
    cutoffs: tuple
    values: tuple
    increment_exponent: float
    fitted_exponent: float
    verdict: str


def _regularity_integrand(alpha: float, n: int):
    def integrand(t):
        s = 4 * math.sin(t / 2) ** 2
        return 0.5 * math.log1p(s ** alpha) / s ** n
    return integrand


def _log_panel(fn, lo: float, hi: float, nodes: int = 24) -> float:
    """Gauss-Legendre in ``log t`` on ``[lo, hi]``."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    a, b = math.log(lo), math.log(hi)
    u = 0.5 * (b - a) * x + 0.5 * (b + a)
    t = np.exp(u)
    return float(0.5 * (b - a) * np.sum(w * t * np.array([fn(ti) for ti in t])))


DEFAULT_CUTOFFS = tuple(2.0 ** -np.arange(3, 31, 3))


def regularity_integral(alpha: float, n: int, cutoffs: Sequence[float] = DEFAULT_CUTOFFS,
                        decisive: float = 0.1) -> RegularityResult:
    if n < 1:
        raise ValueError("n must be >= 1")
    eps = np.asarray(cutoffs, dtype=float)
    if eps.size < 3 or np.any(np.diff(eps) >= 0) or eps[-1] <= 0 or eps[0] >= math.pi:
        raise ValueError("cutoffs must be at least three decreasing values in (0, pi)")
    fn = _regularity_integrand(alpha, n)
    outer = quad(fn, eps[0], math.pi, limit=200)[0]
    shells = []
    for hi, lo in zip(eps[:-1], eps[1:]):
        pieces = max(1, int(math.ceil(math.log2(hi / lo))))
        edges = np.geomspace(lo, hi, pieces + 1)
        shells.append(sum(_log_panel(fn, a, b) for a, b in zip(edges[:-1], edges[1:])))
    values = 2 * (outer + np.concatenate([[0.0], np.cumsum(shells)]))
    density = np.asarray(shells) / np.log(eps[:-1] / eps[1:])
    mid = np.sqrt(eps[:-1] * eps[1:])
    tail = slice(-4, None)
    # Shell mass per unit log-length scales like eps^p with p = 2 alpha + 1 - 2n.
    p_hat = float(np.polyfit(np.log(mid[tail]), np.log(density[tail]), 1)[0])
    if p_hat < -decisive:
        verdict = "diverges"
        fitted = p_hat
    elif p_hat > decisive:
        verdict = "converges"
        fitted = log_slope(eps[-4:], values[-4:])
    else:
        verdict = "inconclusive"
        fitted = p_hat
    return RegularityResult(float(alpha), int(n), tuple(eps.tolist()), tuple(values.tolist()),
                            p_hat, fitted, verdict)
