"""Finite sections of Toeplitz operators and singular-value diagnostics."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .disk import BoundaryGrid, BoundarySamples, CoeffSeries, fourier_coefficients, make_grid

DEFAULT_REL_THRESHOLD = 1e-6
MIN_TRUSTED_GAP = 10.0


@dataclass(frozen=True, eq=False)
class FiniteToeplitz:
    """``N x N`` section ``A[j, k] = c_{j-k}`` of ``T_symbol`` in the monomial basis."""

    matrix: np.ndarray
    symbol: BoundarySamples | None = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _from_fourier(coeff_at, N: int, symbol=None) -> FiniteToeplitz:
    col = coeff_at(np.arange(N))
    row = coeff_at(-np.arange(N))
    return FiniteToeplitz(sla.toeplitz(col, row), symbol)


def toeplitz_section(symbol: BoundarySamples, N: int) -> FiniteToeplitz:
    """Finite section built from the discrete Fourier coefficients of the samples.

    Raises
    ------
    ValueError
        If ``N > n_points / 2``, where frequencies ``N - 1`` and ``-(N - 1)``
        would alias onto each other.
    """
    n_points = symbol.grid.n_points
    if N < 1 or N > n_points // 2:
        raise ValueError(f"section size {N} exceeds n_points/2 = {n_points // 2}")
    return _from_fourier(lambda k: fourier_coefficients(symbol, k), N, symbol)


def section_from_coefficients(coeff_fn, N: int) -> FiniteToeplitz:
    """Finite section from an exact coefficient function ``k -> c_k`` (vectorised)."""
    return _from_fourier(coeff_fn, N)


def apply(T: FiniteToeplitz, f: CoeffSeries) -> CoeffSeries:
    return CoeffSeries(T.matrix @ f.resized(T.dim).coeffs)


def singular_values(T: FiniteToeplitz) -> np.ndarray:
    """All singular values, ascending."""
    return np.sort(sla.svd(T.matrix, compute_uv=False, lapack_driver="gesdd"))


def smallest_singular_values(T: FiniteToeplitz, count: int) -> np.ndarray:
    if count < 1 or count > T.dim:
        raise ValueError(f"count must lie in [1, {T.dim}]")
    return singular_values(T)[:count]


@dataclass(frozen=True)
class KernelEstimate:
    """Numerical kernel dimension with the spectral gap that backs it.

    ``gap`` is the ratio of the first singular value above the threshold to
    the largest one below it (``inf`` when the count is 0 and nothing is
    small). The count is trusted when ``gap >= 10``.
    """

    dimension: int
    gap: float
    threshold: float
    sigma_max: float
    smallest: tuple

    @property
    def trusted(self) -> bool:
        return self.gap >= MIN_TRUSTED_GAP


def kernel_dimension_estimate(T: FiniteToeplitz, rel_threshold: float = DEFAULT_REL_THRESHOLD) -> KernelEstimate:
    if not 0 < rel_threshold < 1:
        raise ValueError("rel_threshold must lie in (0, 1)")
    s = singular_values(T)
    sigma_max = float(s[-1])
    cut = rel_threshold * sigma_max
    dim = int(np.sum(s < cut))
    above = float(s[dim]) if dim < s.size else np.inf
    if dim:
        gap = above / max(float(s[dim - 1]), np.finfo(float).tiny)
    else:
        gap = above / cut
    return KernelEstimate(dim, gap, cut, sigma_max, tuple(float(x) for x in s[: dim + 3]))


def kernel_vector_residual(T: FiniteToeplitz, candidate: CoeffSeries) -> float:
    """``||T v|| / ||v||`` for a nonzero candidate ``v``."""
    v = candidate.resized(T.dim).coeffs
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValueError("candidate must be nonzero")
    return float(np.linalg.norm(T.matrix @ v) / norm)


def to_csv(T: FiniteToeplitz) -> str:
    """Row-major CSV with each complex entry written as two columns ``re, im``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    for row in T.matrix:
        flat = np.column_stack([row.real, row.imag]).ravel()
        writer.writerow([format(float(x), ".17g") for x in flat])
    return buf.getvalue()


def from_csv(text: str) -> np.ndarray:
    rows = [list(map(float, r)) for r in csv.reader(io.StringIO(text)) if r]
    arr = np.asarray(rows)
    return arr[:, 0::2] + 1j * arr[:, 1::2]


# Symbols used throughout.

def shift_symbol(grid: BoundaryGrid, power: int = 1) -> BoundarySamples:
    return BoundarySamples(grid, grid.points ** power)


def q_power_symbol(grid: BoundaryGrid, gamma: float) -> BoundarySamples:
    """``Q^gamma`` with ``Q = (1 - z)/conj(1 - z)``, i.e. ``exp(i gamma (t - pi))`` on the circle."""
    return BoundarySamples(grid, np.exp(1j * gamma * (grid.nodes - np.pi)))


def q_power_coefficients(gamma: float):
    """Exact Fourier coefficients ``(-1)^k sinc(gamma - k)`` of ``Q^gamma``."""
    def coeff(k):
        k = np.asarray(k)
        return ((-1.0) ** np.abs(k) * np.sinc(gamma - k)).astype(complex)
    return coeff


def unimodular_power_symbol(grid: BoundaryGrid, alpha: float) -> BoundarySamples:
    """``conj((1 - z)^alpha) / (1 - z)^alpha`` on the circle, equal to ``Q^(-alpha)``."""
    w = (1 - grid.points) ** alpha
    return BoundarySamples(grid, np.conj(w) / w)


def sigma_min_sweep(gamma: float, sizes=(64, 128, 256, 512), grid: BoundaryGrid | None = None) -> list:
    """``(N, sigma_min)`` of the ``Q^gamma`` section for each ``N``."""
    grid = grid or make_grid(max(4096, 2 * max(sizes)))
    sym = q_power_symbol(grid, gamma)
    return [(N, float(smallest_singular_values(toeplitz_section(sym, N), 1)[0])) for N in sizes]


def kernel_dimension_for_alpha(alpha: float, N: int = 1024, rel_threshold: float = DEFAULT_REL_THRESHOLD,
                               grid: BoundaryGrid | None = None) -> KernelEstimate:
    grid = grid or make_grid(max(4096, 2 * N))
    return kernel_dimension_estimate(toeplitz_section(unimodular_power_symbol(grid, alpha), N), rel_threshold)
