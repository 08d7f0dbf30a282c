"""Boundary grids, discrete Fourier projections and power series on the unit disk.

Everything here works on two representations of a function:

* ``BoundarySamples``: values at the midpoint nodes ``t_j = 2*pi*(j + 1/2)/N``
  of the unit circle. The node ``t = 0`` is never sampled, so integrands with
  an integrable singularity at ``z = 1`` stay finite.
* ``CoeffSeries``: a truncated Taylor coefficient vector ``c_0 .. c_{M-1}``.

Discrete Fourier coefficients carry the midpoint phase ``exp(-i*pi*k/N)`` so
that a trigonometric polynomial of degree below ``N/2`` is recovered exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import math

import numpy as np
from scipy.signal import fftconvolve
from scipy.special import gammaln

DEFAULT_N_POINTS = 4096
MIN_N_POINTS = 8


class NotLogIntegrable(ValueError):
    """Raised when a log-modulus quadrature diverges on the grid."""


@dataclass(frozen=True)
class BoundaryGrid:
    n_points: int

    def __post_init__(self):
        if int(self.n_points) != self.n_points or self.n_points < MIN_N_POINTS:
            raise ValueError(f"n_points must be an integer >= {MIN_N_POINTS}, got {self.n_points}")

    @property
    def nodes(self) -> np.ndarray:
        return 2 * np.pi * (np.arange(self.n_points) + 0.5) / self.n_points

    @property
    def spacing(self) -> float:
        return 2 * np.pi / self.n_points

    @property
    def points(self) -> np.ndarray:
        """The nodes as points ``e^{it}`` on the circle."""
        return np.exp(1j * self.nodes)


def make_grid(n_points: int = DEFAULT_N_POINTS) -> BoundaryGrid:
    return BoundaryGrid(n_points)


@dataclass(frozen=True, eq=False)
class BoundarySamples:
    grid: BoundaryGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex).copy()
        if values.shape != (self.grid.n_points,):
            raise ValueError(
                f"expected {self.grid.n_points} samples, got array of shape {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, grid: BoundaryGrid, fn: Callable[[np.ndarray], np.ndarray]):
        """Sample ``fn(t)`` at the grid angles."""
        return cls(grid, np.broadcast_to(fn(grid.nodes), (grid.n_points,)))

    def __mul__(self, other):
        if isinstance(other, BoundarySamples):
            _same_grid(self, other)
            return BoundarySamples(self.grid, self.values * other.values)
        return BoundarySamples(self.grid, self.values * other)

    __rmul__ = __mul__

    def __add__(self, other):
        _same_grid(self, other)
        return BoundarySamples(self.grid, self.values + other.values)

    def __sub__(self, other):
        _same_grid(self, other)
        return BoundarySamples(self.grid, self.values - other.values)

    def conj(self) -> BoundarySamples:
        return BoundarySamples(self.grid, np.conj(self.values))


def _same_grid(a: BoundarySamples, b: BoundarySamples):
    if a.grid.n_points != b.grid.n_points:
        raise ValueError(f"grid mismatch: {a.grid.n_points} vs {b.grid.n_points}")


@dataclass(frozen=True, eq=False)
class CoeffSeries:
    """Truncated Taylor series ``sum_k c_k z^k`` of an H^2 element."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficient vector must be one-dimensional and non-empty")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree_bound(self) -> int:
        return self.coeffs.size

    def __len__(self):
        return self.coeffs.size

    def h2_norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def resized(self, M: int) -> CoeffSeries:
        """Truncate or zero-pad to exactly ``M`` coefficients."""
        out = np.zeros(M, dtype=complex)
        m = min(M, self.coeffs.size)
        out[:m] = self.coeffs[:m]
        return CoeffSeries(out)

    def __add__(self, other):
        M = max(len(self), len(other))
        return CoeffSeries(self.resized(M).coeffs + other.resized(M).coeffs)

    def __sub__(self, other):
        M = max(len(self), len(other))
        return CoeffSeries(self.resized(M).coeffs - other.resized(M).coeffs)

    def __mul__(self, scalar):
        return CoeffSeries(self.coeffs * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return CoeffSeries(-self.coeffs)


def disk_point(z) -> complex:
    z = complex(z)
    if not abs(z) < 1:
        raise ValueError(f"point {z} is not in the open unit disk")
    return z


def _midpoint_phase(n_points: int, freqs: np.ndarray) -> np.ndarray:
    return np.exp(-1j * np.pi * freqs / n_points)


def fourier_coefficients(samples: BoundarySamples, freqs) -> np.ndarray:
    """Discrete Fourier coefficients of the samples at integer frequencies.

    Frequencies are reduced modulo ``N``; callers keep ``|k| < N/2``.
    """
    N = samples.grid.n_points
    freqs = np.asarray(freqs, dtype=int)
    spectrum = np.fft.fft(samples.values) / N
    return spectrum[np.mod(freqs, N)] * _midpoint_phase(N, freqs)


def project_plus(samples: BoundarySamples, degree_bound: int) -> CoeffSeries:
    """Nonnegative-frequency coefficients ``c_0 .. c_{M-1}`` of the samples."""
    N = samples.grid.n_points
    if degree_bound < 1 or degree_bound > N // 2:
        raise ValueError(f"degree_bound must lie in [1, {N // 2}] for a grid of {N} points")
    return CoeffSeries(fourier_coefficients(samples, np.arange(degree_bound)))


def synthesize(series: CoeffSeries | np.ndarray, grid: BoundaryGrid) -> BoundarySamples:
    """Boundary values of a polynomial on the grid (exact for degree < N)."""
    c = series.coeffs if isinstance(series, CoeffSeries) else np.asarray(series, dtype=complex)
    N = grid.n_points
    if c.size > N:
        raise ValueError(f"series of length {c.size} does not fit a grid of {N} points")
    k = np.arange(c.size)
    padded = np.zeros(N, dtype=complex)
    padded[: c.size] = c * np.exp(1j * np.pi * k / N)
    return BoundarySamples(grid, np.fft.ifft(padded) * N)


def project_minus(samples: BoundarySamples) -> BoundarySamples:
    """Strictly-negative-frequency part ``(I - P_+) samples`` on the grid."""
    N = samples.grid.n_points
    plus = synthesize(project_plus(samples, N // 2), samples.grid)
    return samples - plus


def _log_modulus(w: BoundarySamples) -> np.ndarray:
    vals = w.values
    if np.any(np.abs(vals.imag) > 1e-12 * np.maximum(1.0, np.abs(vals.real))):
        raise ValueError("modulus samples must be real")
    mod = vals.real
    if np.any(~(mod > 0)):
        raise ValueError("modulus samples must be strictly positive")
    logw = np.log(mod)
    if not np.all(np.isfinite(logw)):
        raise NotLogIntegrable("log-modulus is not finite on the grid")
    return logw


def outer_from_log_modulus(w: BoundarySamples, z) -> complex | np.ndarray:
    """Outer function with boundary modulus ``w`` evaluated at ``z`` in the disk.

    Midpoint quadrature of the Herglotz integral
    ``exp{(1/2pi) int (e^{it}+z)/(e^{it}-z) log w(t) dt}``; real positive at 0.
    """
    logw = _log_modulus(w)
    zs = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(np.abs(zs) >= 1):
        raise ValueError("evaluation points must lie in the open unit disk")
    pts = w.grid.points
    out = np.empty(zs.shape, dtype=complex)
    for i, zi in enumerate(zs):
        integral = np.mean((pts + zi) / (pts - zi) * logw)
        if not np.isfinite(integral):
            raise NotLogIntegrable("Herglotz quadrature diverged")
        out[i] = np.exp(integral)
    if np.ndim(z) == 0:
        return complex(out[0])
    return out


def herglotz_series(log_modulus: BoundarySamples | np.ndarray, M: int, grid: BoundaryGrid | None = None) -> CoeffSeries:
    """Taylor coefficients of the analytic function whose real part is ``log_modulus``.

    ``H = u_0 + 2 sum_{k>=1} u_k z^k`` with ``u_k`` the discrete Fourier
    coefficients; ``exp(H)`` is then the outer function with that log-modulus.
    """
    if isinstance(log_modulus, BoundarySamples):
        samples = log_modulus
    else:
        samples = BoundarySamples(grid, np.asarray(log_modulus, dtype=float))
    u = fourier_coefficients(samples, np.arange(M))
    H = 2 * u
    H[0] = u[0].real
    return CoeffSeries(H)


def conjugate_function(log_modulus: np.ndarray, grid: BoundaryGrid) -> np.ndarray:
    """Spectral harmonic conjugate of real samples on the grid."""
    N = grid.n_points
    H = herglotz_series(np.asarray(log_modulus, dtype=float), N // 2, grid)
    return synthesize(H, grid).values.imag


def binomial_series(alpha: float, M: int) -> CoeffSeries:
    """Coefficients of ``(1 - z)^alpha`` (principal branch): ``c_k = (-1)^k C(alpha, k)``."""
    if M < 1:
        raise ValueError("M must be at least 1")
    c = np.ones(M)
    if M > 1:
        k = np.arange(M - 1)
        c[1:] = np.cumprod((k - alpha) / (k + 1))
    return CoeffSeries(c)


def abs_power_fourier(beta: float, K: int) -> np.ndarray:
    """Fourier coefficients ``k = 0..K-1`` of ``|1 - e^{it}|^{2 beta}``, ``beta > -1/2``.

    Closed form ``(-1)^k Gamma(1+2b) / (Gamma(1+b+k) Gamma(1+b-k))`` via the
    ratio ``c_{k+1}/c_k = (k - b)/(k + 1 + b)``; the series is even in ``k``.
    """
    c = np.empty(K)
    c[0] = np.exp(gammaln(1 + 2 * beta) - 2 * gammaln(1 + beta))
    if K > 1:
        k = np.arange(K - 1)
        c[1:] = c[0] * np.cumprod((k - beta) / (k + 1 + beta))
    return c


def _trim_zeros(c: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(c)
    return c[: nz[-1] + 1] if nz.size else c[:1]


def cauchy_product(a: CoeffSeries, b: CoeffSeries, M: int | None = None) -> CoeffSeries:
    M = M or max(len(a), len(b))
    x, y = _trim_zeros(a.coeffs[:M]), _trim_zeros(b.coeffs[:M])
    if min(x.size, y.size) <= 64:
        prod = np.convolve(x, y)
    else:
        prod = fftconvolve(x, y)
    return CoeffSeries(prod[:M]).resized(M)


def series_exp(H: CoeffSeries, M: int | None = None) -> CoeffSeries:
    """Power-series exponential, exact recursion ``k e_k = sum_j j H_j e_{k-j}``."""
    M = M or len(H)
    h = H.resized(M).coeffs
    if not np.any(h.imag):
        h = h.real  # real arithmetic is several times faster in the recursion
    jh = np.arange(M) * h
    e = np.zeros(M, dtype=h.dtype)
    e[0] = np.exp(h[0])
    for k in range(1, M):
        e[k] = np.dot(jh[1:k + 1], e[k - 1::-1]) / k
    return CoeffSeries(e)


def series_reciprocal(f: CoeffSeries, M: int | None = None) -> CoeffSeries:
    M = M or len(f)
    c = f.resized(M).coeffs
    if c[0] == 0:
        raise ZeroDivisionError("series with vanishing constant term has no reciprocal")
    r = np.zeros(M, dtype=complex)
    r[0] = 1 / c[0]
    for k in range(1, M):
        r[k] = -np.dot(c[1:k + 1], r[k - 1::-1]) / c[0]
    return CoeffSeries(r)


def series_log(f: CoeffSeries, M: int | None = None) -> CoeffSeries:
    """Power-series logarithm (principal log of the constant term)."""
    M = M or len(f)
    c = f.resized(M).coeffs
    deriv = CoeffSeries(np.arange(1, M + 1) * np.append(c[1:], 0))
    q = cauchy_product(deriv, series_reciprocal(f, M), M).coeffs
    out = np.zeros(M, dtype=complex)
    out[0] = np.log(c[0])
    out[1:] = q[: M - 1] / np.arange(1, M)
    return CoeffSeries(out)


def _falling_weights(n_terms: int, derivative: int) -> np.ndarray:
    k = np.arange(n_terms, dtype=float)
    out = np.ones(n_terms)
    for i in range(derivative):
        out *= k - i
    return out


def evaluate(series: CoeffSeries, z, derivative: int = 0):
    """``sum_k c_k z^k`` (or its ``derivative``-th derivative) at points of the disk."""
    zs = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(np.abs(zs) >= 1):
        raise ValueError("evaluation points must lie in the open unit disk")
    c = series.coeffs[derivative:] * _falling_weights(series.coeffs.size, derivative)[derivative:]
    if c.size == 0:
        return 0j if np.ndim(z) == 0 else np.zeros(zs.shape, dtype=complex)
    m = np.arange(c.size)
    c_re, c_im = np.ascontiguousarray(c.real), np.ascontiguousarray(c.imag)
    out = np.empty(zs.shape, dtype=complex)
    log_cmax = math.log(max(float(np.max(np.abs(c))), 1.0))
    for i, zi in enumerate(zs):
        # Drop the tail once max|c| |z|^k / (1 - |z|) falls below exp(-40).
        rho = abs(zi)
        size = c.size
        if rho < 1e-300:
            size = 1
        else:
            need = (40.0 + log_cmax - math.log1p(-rho)) / -math.log(rho)
            if need < c.size:
                size = int(need) + 1
        if zi.imag == 0 and zi.real > 0:
            powers = np.exp(m[:size] * np.log(zi.real))
            out[i] = np.dot(c_re[:size], powers) + 1j * np.dot(c_im[:size], powers)
        else:
            out[i] = np.dot(c[:size], np.power(zi, m[:size]))
    return complex(out[0]) if np.ndim(z) == 0 else out


def taylor_at(series: CoeffSeries, z0: complex, order: int) -> np.ndarray:
    """Local Taylor coefficients ``f^{(m)}(z0)/m!`` for ``m = 0..order``."""
    fact = 1.0
    out = np.empty(order + 1, dtype=complex)
    for m in range(order + 1):
        if m:
            fact *= m
        out[m] = evaluate(series, z0, m) / fact
    return out


def exp_taylor(local_log: np.ndarray) -> np.ndarray:
    """Taylor coefficients of ``exp(h)`` from those of ``h`` at the same point."""
    return series_exp(CoeffSeries(local_log)).coeffs


def shift_star(series: CoeffSeries, k: int = 1) -> CoeffSeries:
    """Backward shift applied ``k`` times: drop the first ``k`` coefficients."""
    if k < 1:
        raise ValueError("k must be >= 1")
    rest = series.coeffs[k:]
    return CoeffSeries(rest if rest.size else np.zeros(1))


def divide_by_one_minus_z_power(f: CoeffSeries, alpha: float, M: int | None = None) -> CoeffSeries:
    """Taylor coefficients of ``f / (1 - z)^alpha`` (exact for the first ``M`` terms)."""
    M = M or len(f)
    return cauchy_product(f.resized(M), binomial_series(-alpha, M), M)


def polynomial(coeffs, M: int | None = None) -> CoeffSeries:
    c = CoeffSeries(coeffs)
    return c.resized(M) if M else c


def next_pow2(n: int) -> int:
    return 1 << max(int(n) - 1, 1).bit_length()
