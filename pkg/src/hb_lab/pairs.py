"""Pythagorean pairs ``(b, a)`` with ``|a|^2 + |b|^2 = 1`` on the circle.

The central family is ``b_alpha / a_alpha = (1 - z)^(-alpha)``. Both functions
are outer, with boundary moduli

    |b|^2 = 1 / (1 + s^alpha),   |a|^2 = s^alpha / (1 + s^alpha),   s = |1 - e^{it}|^2.

``log|b|`` has a non-smooth point at ``t = 0`` (it behaves like ``-s^alpha / 2``),
so a plain discrete Fourier transform of it converges only algebraically. We
subtract the leading terms ``-(1/2) sum_m (-1)^(m+1) s^(m alpha)/m`` of its
expansion, whose Fourier coefficients are known in closed form, and transform
only the smooth remainder. The resulting Taylor coefficients of ``log b`` are
accurate to rounding level independently of the grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .disk import (
    BoundaryGrid,
    BoundarySamples,
    CoeffSeries,
    NotLogIntegrable,
    abs_power_fourier,
    binomial_series,
    cauchy_product,
    evaluate,
    exp_taylor,
    fourier_coefficients,
    herglotz_series,
    make_grid,
    series_exp,
    series_log,
    synthesize,
    taylor_at,
)

LOG_SERIES_LENGTH = 2 ** 18
REMAINDER_GRID = 8192
# Subtract singular terms until the remainder behaves like s^6.5 near t = 0.
SMOOTHNESS_ORDER = 6.5
TOL_PYTH = 1e-8
TOL_LIM = 1e-4
LADDER_LEVELS = 12
# Radial evaluation at r = 1 - 2^-j needs at least this many multiples of 1/(1-r) terms.
TERMS_PER_SCALE = 32


def corona_bound(alpha: float) -> float:
    """Lower bound ``(1 + 4^alpha)^(-1/2)`` of ``|b_alpha|`` on the closed disk."""
    return (1.0 + 4.0 ** alpha) ** -0.5


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (alpha > 0 and math.isfinite(alpha)):
        raise ValueError("alpha must be positive")
    return alpha


def blaschke_value(zeros: Sequence[complex], z) -> np.ndarray | complex:
    """Finite Blaschke product with factors ``(|c|/c)(c - z)/(1 - conj(c) z)`` (``z`` when ``c = 0``)."""
    z = np.asarray(z, dtype=complex)
    out = np.ones_like(z)
    for c in zeros:
        if c == 0:
            out = out * z
        else:
            out = out * (abs(c) / c) * (c - z) / (1 - np.conj(c) * z)
    return out


def blaschke_series(zeros: Sequence[complex], M: int) -> CoeffSeries:
    out = CoeffSeries(np.eye(1, M, 0)[0])
    for c in zeros:
        if c == 0:
            factor = np.zeros(M, dtype=complex)
            if M > 1:
                factor[1] = 1
        else:
            geo = np.conj(c) ** np.arange(M)
            factor = c * geo
            factor[1:] -= geo[:-1]
            factor *= abs(c) / c
        out = cauchy_product(out, CoeffSeries(factor), M)
    return out


@dataclass(frozen=True, eq=False)
class PythagoreanPair:
    """A pair ``(b, a)`` with its quotient ``phi = b / a``.

    Boundary traces hold the exact moduli; analytic values in the disk come
    from the long ``log_a`` / ``log_b`` series (outer parts) times the finite
    Blaschke product of ``inner_zeros``. ``phi_source(M)`` returns the first
    ``M`` Taylor coefficients of ``phi``.
    """

    alpha: float | None
    grid: BoundaryGrid
    a_boundary: BoundarySamples
    b_boundary: BoundarySamples
    phi_boundary: BoundarySamples
    a_series: CoeffSeries
    b_series: CoeffSeries
    log_a_series: CoeffSeries
    log_b_series: CoeffSeries
    phi_source: Callable[[int], np.ndarray] = field(repr=False)
    inner_zeros: tuple = ()
    _b_cache: dict = field(default_factory=dict, repr=False)

    @property
    def M(self) -> int:
        return len(self.b_series)

    @property
    def n_points(self) -> int:
        return self.grid.n_points

    def a(self, z):
        return np.exp(evaluate(self.log_a_series, z))

    def b(self, z):
        val = np.exp(evaluate(self.log_b_series, z))
        if self.inner_zeros:
            val = val * blaschke_value(self.inner_zeros, z)
        return complex(val) if np.ndim(z) == 0 else val

    def phi(self, z):
        return self.b(z) / self.a(z)

    def b_coeffs(self, M: int) -> np.ndarray:
        """First ``M`` Taylor coefficients of ``b``, extending ``b_series`` when needed."""
        if M <= self.M:
            return self.b_series.coeffs[:M]
        if M not in self._b_cache:
            out = series_exp(self.log_b_series, M)
            if self.inner_zeros:
                out = cauchy_product(out, blaschke_series(self.inner_zeros, M), M)
            self._b_cache[M] = out.coeffs
        return self._b_cache[M]

    def phi_coeffs(self, M: int) -> np.ndarray:
        return np.asarray(self.phi_source(M), dtype=complex)

    def b_taylor(self, z0: complex, order: int) -> np.ndarray:
        """Local Taylor coefficients of ``b`` at ``z0`` (outer part only)."""
        if self.inner_zeros:
            raise ValueError("local Taylor expansion is only available for outer b")
        return exp_taylor(taylor_at(self.log_b_series, z0, order))

    def pyth_residual(self) -> float:
        total = np.abs(self.a_boundary.values) ** 2 + np.abs(self.b_boundary.values) ** 2
        return float(np.max(np.abs(total - 1)))

    def corona_min(self) -> float:
        return float(np.min(np.abs(self.b_boundary.values)))

    def quotient_residual(self) -> float:
        """Nodewise ``max |phi a - b|`` on the grid."""
        diff = self.phi_boundary.values * self.a_boundary.values - self.b_boundary.values
        return float(np.max(np.abs(diff)))

    def with_blaschke_factor(self, zeros: Sequence[complex]) -> PythagoreanPair:
        """The pair ``(u b, a)`` for the finite Blaschke product ``u`` with these zeros."""
        zeros = tuple(complex(c) for c in zeros)
        for c in zeros:
            if not abs(c) < 1:
                raise ValueError(f"Blaschke zero {c} is not in the open unit disk")
        if not zeros:
            return self
        pts = self.grid.points
        u_bd = blaschke_value(zeros, pts)
        M = self.M
        base_phi = self.phi_source

        def phi_source(m, base_phi=base_phi):
            return cauchy_product(CoeffSeries(base_phi(m)), blaschke_series(zeros, m), m).coeffs

        return replace(
            self,
            b_boundary=self.b_boundary * u_bd,
            phi_boundary=self.phi_boundary * u_bd,
            b_series=cauchy_product(self.b_series, blaschke_series(zeros, M), M),
            phi_source=phi_source,
            inner_zeros=self.inner_zeros + zeros,
            _b_cache={},
        )


def _singular_terms(alpha: float) -> np.ndarray:
    return np.arange(1, int(math.ceil(SMOOTHNESS_ORDER / alpha)))


def log_b_alpha_coefficients(alpha: float, n_terms: int = LOG_SERIES_LENGTH,
                             remainder_points: int = REMAINDER_GRID) -> CoeffSeries:
    """Taylor coefficients of ``log b_alpha``.

    Fourier coefficients of ``-(1/2) log(1 + s^alpha)`` are assembled from the
    closed-form coefficients of the powers ``s^(m alpha)`` plus a discrete
    transform of the smooth remainder, then doubled (Herglotz series).
    """
    alpha = _check_alpha(alpha)
    grid = make_grid(remainder_points)
    s = 2 - 2 * np.cos(grid.nodes)
    terms = _singular_terms(alpha)
    weights = -0.5 * (-1.0) ** (terms + 1) / terms
    smooth = -0.5 * np.log1p(s ** alpha) - sum(w * s ** (m * alpha) for m, w in zip(terms, weights))
    n_rem = min(n_terms, remainder_points // 2)
    u = np.zeros(n_terms)
    u[:n_rem] = fourier_coefficients(BoundarySamples(grid, smooth), np.arange(n_rem)).real
    for m, w in zip(terms, weights):
        u += w * abs_power_fourier(m * alpha, n_terms)
    H = 2 * u
    H[0] = u[0]
    return CoeffSeries(H)


def _log_one_minus_z(M: int) -> np.ndarray:
    out = np.zeros(M)
    out[1:] = -1.0 / np.arange(1, M)
    return out


def _boundary_from_log_modulus(log_mod: np.ndarray, herglotz: CoeffSeries, grid: BoundaryGrid) -> np.ndarray:
    """Boundary trace with the exact modulus and the spectral harmonic conjugate as phase."""
    half = grid.n_points // 2
    phase = synthesize(herglotz.resized(half), grid).values.imag
    return np.exp(log_mod + 1j * phase)


def pair_alpha(alpha: float, grid: BoundaryGrid | None = None, M: int | None = None) -> PythagoreanPair:
    """The pair ``(b_alpha, a_alpha)`` with ``b_alpha / a_alpha = (1 - z)^(-alpha)``.

    Parameters
    ----------
    alpha : float
        Positive exponent.
    grid : BoundaryGrid, optional
        Boundary grid for the traces; 4096 points by default.
    M : int, optional
        Length of ``a_series`` and ``b_series``; ``n_points // 4`` by default.
    """
    alpha = _check_alpha(alpha)
    grid = grid or make_grid()
    M = M or grid.n_points // 4
    log_b = log_b_alpha_coefficients(alpha)
    log_a_coeffs = log_b.coeffs.copy()
    log_a_coeffs += alpha * _log_one_minus_z(log_a_coeffs.size)
    log_a = CoeffSeries(log_a_coeffs)

    s = 2 - 2 * np.cos(grid.nodes)
    one_minus = 1 - grid.points
    log_mod_b = -0.5 * np.log1p(s ** alpha)
    b_bd = _boundary_from_log_modulus(log_mod_b, log_b, grid)
    phi_bd = one_minus ** (-alpha)
    a_bd = b_bd * one_minus ** alpha

    b_series = series_exp(log_b, M)
    a_series = cauchy_product(binomial_series(alpha, M), b_series, M)
    return PythagoreanPair(
        alpha=alpha,
        grid=grid,
        a_boundary=BoundarySamples(grid, a_bd),
        b_boundary=BoundarySamples(grid, b_bd),
        phi_boundary=BoundarySamples(grid, phi_bd),
        a_series=a_series,
        b_series=b_series,
        log_a_series=log_a,
        log_b_series=log_b,
        phi_source=lambda m: binomial_series(-alpha, m).coeffs,
    )


def _check_finite_log(values: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise NotLogIntegrable(f"{what} is not log-integrable on the grid")
    quad = float(np.mean(values))
    if not math.isfinite(quad):
        raise NotLogIntegrable(f"{what} quadrature diverged")
    return values


def pair_from_phi(phi_modulus: BoundarySamples, phi_analytic: CoeffSeries | Callable[[int], np.ndarray],
                  grid: BoundaryGrid | None = None, M: int | None = None, route: str = "auto") -> PythagoreanPair:
    """The unique pair ``(b, a)`` with ``b / a = phi`` and ``a`` outer, ``a(0) > 0``.

    ``route="a"`` builds ``a`` from ``log|a| = -(1/2) log(1 + |phi|^2)`` and sets
    ``b = phi a``. ``route="b"`` builds the outer ``b`` from
    ``log|b| = -(1/2) log(1 + |phi|^-2)`` and sets ``a = b / phi``; it needs an
    outer ``phi`` and is better conditioned when ``phi`` blows up on the circle.
    ``"auto"`` picks ``"b"`` when ``max |phi| > 1e3``.
    """
    grid = grid or phi_modulus.grid
    M = M or grid.n_points // 4
    mod = phi_modulus.values.real
    if np.any(phi_modulus.values.imag != 0) or np.any(mod < 0):
        raise ValueError("phi modulus must be real and nonnegative")
    if not np.any(mod > 0):
        raise ValueError("phi must be a nonzero function")

    if isinstance(phi_analytic, CoeffSeries):
        fixed = phi_analytic

        def phi_source(m):
            return fixed.resized(m).coeffs
    else:
        phi_source = phi_analytic
    n_log = grid.n_points // 2
    phi_head = CoeffSeries(phi_source(max(M, n_log)))
    if phi_head.coeffs[0] == 0:
        raise ValueError("phi(0) must be nonzero")

    if route == "auto":
        route = "b" if np.max(mod) > 1e3 else "a"
    if route == "a":
        log_mod_a = _check_finite_log(-0.5 * np.log1p(mod ** 2), "1 + |phi|^2")
        log_a = herglotz_series(log_mod_a, n_log, grid)
        a_series = series_exp(log_a, M)
        b_series = cauchy_product(phi_head, a_series, M)
        log_b = series_log(cauchy_product(phi_head, series_exp(log_a, n_log), n_log))
        log_mod_b = log_mod_a + np.log(mod)
    elif route == "b":
        with np.errstate(divide="ignore"):
            log_mod_b = _check_finite_log(-0.5 * np.log1p(mod ** -2.0), "1 + |phi|^-2")
        log_b = herglotz_series(log_mod_b, n_log, grid)
        log_a = CoeffSeries(log_b.coeffs - series_log(phi_head, n_log).coeffs)
        b_series = series_exp(log_b, M)
        a_series = series_exp(log_a, M)
        log_mod_a = log_mod_b - np.log(mod)
    else:
        raise ValueError(f"unknown route {route!r}")

    # Normalise a(0) > 0; the common unimodular factor also rotates b.
    rot = np.exp(-1j * log_a.coeffs[0].imag)
    log_a = CoeffSeries(np.concatenate([[log_a.coeffs[0].real], log_a.coeffs[1:]]))
    log_b = CoeffSeries(np.concatenate([[log_b.coeffs[0] + np.log(rot)], log_b.coeffs[1:]]))
    a_bd = _boundary_from_log_modulus(log_mod_a, log_a, grid)
    b_bd = _boundary_from_log_modulus(log_mod_b, CoeffSeries(log_b.coeffs), grid)
    phi_bd = b_bd / a_bd
    return PythagoreanPair(
        alpha=None,
        grid=grid,
        a_boundary=BoundarySamples(grid, a_bd),
        b_boundary=BoundarySamples(grid, b_bd),
        phi_boundary=BoundarySamples(grid, phi_bd),
        a_series=a_series * rot,
        b_series=b_series * rot,
        log_a_series=log_a,
        log_b_series=log_b,
        phi_source=phi_source,
    )


def mate_of_outer(a_modulus: BoundarySamples, grid: BoundaryGrid | None = None, M: int | None = None,
                  a_series: CoeffSeries | None = None) -> PythagoreanPair:
    """Complete an outer ``a`` with ``|a| <= 1`` to a pair by the outer mate ``b``, ``b(0) > 0``.

    ``|b|^2 = 1 - |a|^2`` on the circle. When the Taylor series of ``a`` is
    known in closed form it can be passed as ``a_series``; otherwise it is
    reconstructed from the boundary modulus.
    """
    grid = grid or a_modulus.grid
    M = M or grid.n_points // 4
    mod = a_modulus.values.real
    if np.any(a_modulus.values.imag != 0) or np.any(mod <= 0):
        raise ValueError("modulus of a must be real and strictly positive")
    if np.any(mod > 1):
        raise ValueError("modulus of a exceeds 1 at a grid node")
    with np.errstate(divide="ignore"):
        log_mod_b = _check_finite_log(0.5 * np.log1p(-mod ** 2), "1 - |a|^2")
    log_mod_a = np.log(mod)
    n_log = grid.n_points // 2
    log_b = herglotz_series(log_mod_b, n_log, grid)
    log_a = herglotz_series(log_mod_a, n_log, grid)
    b_series = series_exp(log_b, M)
    if a_series is None:
        a_series = series_exp(log_a, M)
    else:
        a_series = a_series.resized(M)
    b_bd = _boundary_from_log_modulus(log_mod_b, log_b, grid)
    a_bd = _boundary_from_log_modulus(log_mod_a, log_a, grid)
    quotient = CoeffSeries(log_b.coeffs - log_a.coeffs)
    return PythagoreanPair(
        alpha=None,
        grid=grid,
        a_boundary=BoundarySamples(grid, a_bd),
        b_boundary=BoundarySamples(grid, b_bd),
        phi_boundary=BoundarySamples(grid, b_bd / a_bd),
        a_series=a_series,
        b_series=b_series,
        log_a_series=log_a,
        log_b_series=log_b,
        phi_source=lambda m: series_exp(quotient, m).coeffs,
    )


def tilde_pair(alpha: float, grid: BoundaryGrid | None = None, M: int | None = None) -> PythagoreanPair:
    """The pair whose outer part is ``((1 - z)/2)^alpha``."""
    alpha = _check_alpha(alpha)
    grid = grid or make_grid()
    M = M or grid.n_points // 4
    s = 2 - 2 * np.cos(grid.nodes)
    mod = (s / 4) ** (alpha / 2)
    pair = mate_of_outer(BoundarySamples(grid, mod), grid, M, a_series=binomial_series(alpha, M) * 2.0 ** -alpha)
    return replace(pair, alpha=alpha, _b_cache={})


@dataclass(frozen=True)
class SandwichReport:
    z: complex
    lower: float
    value: float
    upper: float
    ok: bool


def sandwich_check(pair: PythagoreanPair, z, rel_slack: float = 1e-9) -> SandwichReport:
    """Compare ``|a(z)|`` with ``corona_bound(alpha) |1-z|^alpha`` and ``|1-z|^alpha``."""
    if pair.alpha is None:
        raise ValueError("sandwich check needs an alpha-pair")
    z = complex(z)
    upper = abs(1 - z) ** pair.alpha
    lower = corona_bound(pair.alpha) * upper
    value = abs(pair.a(z))
    ok = lower * (1 - rel_slack) <= value <= upper * (1 + rel_slack)
    return SandwichReport(z, lower, value, upper, bool(ok))


@dataclass(frozen=True)
class RadialLimit:
    """Extrapolated limit at ``z = 1`` along the ladder ``r_j = 1 - 2^-j``.

    ``estimates`` holds the successive extrapolants whose agreement decides
    ``stable``; ``levels`` is the ladder length actually used, shorter than
    requested when the series is too short to resolve points near 1.
    """

    value: complex
    stable: bool
    estimates: tuple
    levels: int
    truncated_ladder: bool


def wynn_epsilon(seq: Sequence[complex]) -> list:
    """Even columns ``eps_2, eps_4, ...`` of Wynn's epsilon table (last entries)."""
    prev = [0j] * (len(seq) + 1)
    cur = [complex(x) for x in seq]
    out = []
    for k in range(1, len(seq)):
        nxt = []
        for i in range(len(cur) - 1):
            d = cur[i + 1] - cur[i]
            if k % 2 == 1 and d == 0:
                # An estimate column is exactly constant; later columns would divide by zero.
                return out or [cur[-1]]
            nxt.append(prev[i + 1] + (1 / d if abs(d) > 1e-300 else 1e300))
        prev, cur = cur, nxt
        if k % 2 == 0 and cur:
            out.append(cur[-1])
    return out


def fit_known_exponents(values: np.ndarray, eps: np.ndarray, exponents: Sequence[float]) -> complex:
    """Least-squares constant term of ``v(eps) = c_0 + sum_e c_e eps^e``."""
    design = np.column_stack([np.ones_like(eps)] + [eps ** e for e in exponents])
    sol = np.linalg.lstsq(design, np.asarray(values, dtype=complex), rcond=None)[0]
    return complex(sol[0])


def expansion_exponents(alpha: float, order: int, count: int = 6) -> list:
    """Leading positive exponents of ``(1-r)`` in ``f^(order)(r)`` for ``f = p + (1-z)^alpha h``."""
    cands = {round(alpha - order + i, 12) for i in range(count)} | {1.0, 2.0, 3.0, 4.0, 5.0}
    return sorted(e for e in cands if e > 0)[:count]


def radial_limit_at_one(source, order: int = 0, *, exponents: Sequence[float] | None = None,
                        levels: int = LADDER_LEVELS, tol: float = TOL_LIM) -> RadialLimit:
    """Limit of the ``order``-th derivative of ``source`` as ``r -> 1^-``.

    Parameters
    ----------
    source : CoeffSeries or PythagoreanPair
        A pair contributes its function ``b``.
    order : int
        Derivative order ``k >= 0``.
    exponents : sequence of float, optional
        Known exponents of ``(1 - r)`` in the expansion at 1. When given the
        limit is the constant term of a least-squares fit on the last ``len(exponents) + 1``
        ladder points; otherwise Wynn's epsilon algorithm is used.
    levels : int
        Ladder ``r_j = 1 - 2^-j``, ``j = 1..levels``.
    tol : float
        Stability threshold on the last two extrapolants.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if isinstance(source, PythagoreanPair):
        if order == 0:
            fn = source.b
            n_terms = len(source.log_b_series)
        else:
            def fn(r):
                return source.b_taylor(r, order)[order] * math.factorial(order)
            n_terms = len(source.log_b_series)
    else:
        series = source

        def fn(r):
            return evaluate(series, r, order)
        n_terms = len(series)

    usable = int(math.floor(math.log2(max(n_terms / TERMS_PER_SCALE, 1.0))))
    used = max(min(levels, usable), 3)
    eps = 2.0 ** -np.arange(1, used + 1)
    if isinstance(source, PythagoreanPair):
        vals = np.array([fn(1 - e) for e in eps], dtype=complex)
    else:
        vals = np.asarray(fn(1 - eps), dtype=complex)

    if exponents is not None:
        exps = list(exponents)
        width = min(used - 1, len(exps) + 1)
        first = fit_known_exponents(vals[-width:], eps[-width:], exps)
        second = fit_known_exponents(vals[-width - 1:-1], eps[-width - 1:-1], exps)
        estimates = (second, first)
    else:
        cols = wynn_epsilon(vals)
        estimates = tuple(cols[:3]) if cols else (vals[-1],)
        if len(estimates) < 2:
            estimates = (vals[-2], vals[-1])
    value = estimates[-1]
    stable = bool(np.isfinite(value) and abs(estimates[-1] - estimates[-2]) <= tol)
    return RadialLimit(complex(value), stable, tuple(complex(e) for e in estimates), used, used < levels)


def pair_diagnostics(pair: PythagoreanPair) -> dict:
    out = {"pyth_residual": pair.pyth_residual(), "corona_min": pair.corona_min()}
    out["b_at_one"] = radial_limit_at_one(pair).value
    return out


def pair_to_dict(pair: PythagoreanPair) -> dict:
    """JSON-ready mapping with the fixed field order of the pair document."""
    return {
        "alpha": pair.alpha,
        "n_points": pair.n_points,
        "M": pair.M,
        "a_coeffs": pair.a_series.coeffs,
        "b_coeffs": pair.b_series.coeffs,
        "diagnostics": pair_diagnostics(pair),
    }
