"""Run configuration, default tolerances and the thread cap."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

DEFAULT_TOLERANCES = {
    "pyth": 1e-8,
    "corona": 1e-9,
    "sandwich": 1e-9,
    "lim": 1e-4,
    "boundary": 1e-3,
    "arg": 1e-8,
    "golden": 1e-6,
    "norm": 1e-4,
    "repro": 1e-6,
    "poly": 1e-5,
    "dec": 1e-6,
    "taylor": 1e-4,
    "split": 1e-6,
    "kernel": 1e-6,
    "kernel_residual": 1e-3,
    "regularity": 0.1,
    "growth": 0.1,
    "member": 1e-3,
}

DEFAULT_RESOLUTIONS = (1024, 2048, 4096)


def thread_cap() -> int:
    """Worker count from ``HB_LAB_THREADS`` (default: CPU count, at most 8)."""
    raw = os.environ.get("HB_LAB_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"HB_LAB_THREADS must be an integer, got {raw!r}") from None
    return max(1, min(8, os.cpu_count() or 1))


def parallel_map(fn: Callable, items: Iterable) -> list:
    """Order-preserving map over a thread pool capped by ``thread_cap()``."""
    items = list(items)
    workers = min(thread_cap(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass
class RunConfig:
    alpha: float | list = 1.0
    n_points: int = 4096
    degree_bound: int | None = None
    resolutions: Sequence[int] = DEFAULT_RESOLUTIONS
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    output_path: str | None = None
    format: str = "json"
    seed: int = 0

    def __post_init__(self):
        bad = [k for k, v in self.tolerances.items() if not v > 0]
        if bad:
            raise ValueError(f"tolerances must be positive: {', '.join(bad)}")
        res = list(self.resolutions)
        if any(b <= a for a, b in zip(res, res[1:])):
            raise ValueError("resolutions must be strictly increasing")
        if self.format not in ("json", "csv"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.n_points < 8:
            raise ValueError("n_points must be at least 8")
        if self.degree_bound is None:
            self.degree_bound = self.n_points // 4

    def tol(self, name: str) -> float:
        return self.tolerances[name]
