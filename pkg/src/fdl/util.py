"""Shared numeric plumbing: power-of-two grids, log-log fits, seeded RNG streams."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

DEFAULT_SEED = 20127


def is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def next_pow2(n: int) -> int:
    """Smallest power of two >= max(n, 1)."""
    n = int(n)
    if n <= 1:
        return 1
    return 1 << (n - 1).bit_length()


def grid_for_degree(degree: int, factor: int = 8, minimum: int = 16) -> int:
    """Grid size for sampling a polynomial of the given degree.

    Uses factor * degree rounded up to a power of two, so quadrature of
    |f|^2 stays exact and sup norms are resolved well past the Nyquist rate.
    """
    return max(next_pow2(factor * max(int(degree), 1)), minimum)


def loglog_fit(logx, logy) -> tuple[float, float]:
    """Least-squares slope and r^2 for already-logged data.

    Degenerate inputs get the fixed-point conventions used throughout:
    constant y fits perfectly with slope 0 (r^2 = 1), fewer than two
    distinct x values yield slope 0.
    """
    x = np.asarray(logx, dtype=float)
    y = np.asarray(logy, dtype=float)
    if x.size != y.size:
        raise ValueError("mismatched fit inputs")
    if x.size < 2:
        return 0.0, 1.0
    vx = x - x.mean()
    vy = y - y.mean()
    sxx = float(vx @ vx)
    syy = float(vy @ vy)
    if sxx < 1e-30:
        return 0.0, 1.0 if syy < 1e-30 else 0.0
    slope = float(vx @ vy) / sxx
    if syy < 1e-30:
        return slope, 1.0
    resid = vy - slope * vx
    r2 = 1.0 - float(resid @ resid) / syy
    return slope, float(r2)


def trial_rng(seed: int, index: int = 0) -> np.random.Generator:
    """Independent generator for one trial, derived from a master seed."""
    return np.random.default_rng(np.random.SeedSequence(entropy=int(seed), spawn_key=(int(index),)))


def indexed_map(fn, items, threads: int = 1) -> list:
    """Map preserving order; optional thread pool for embarrassingly parallel trials."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def round_sig(x: float, digits: int = 12) -> float:
    """Round to a fixed number of significant digits (stable serialization)."""
    if x == 0 or not np.isfinite(x):
        return float(x)
    return float(format(float(x), f".{digits}g"))
