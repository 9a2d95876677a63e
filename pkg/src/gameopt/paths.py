"""Risk-neutral GBM path simulation with thread-count independent output.

Paths are generated in fixed-size blocks. Each block owns a Philox stream keyed
by ``(seed, block_index)``, so any path's normals depend only on the seed and
its index. Parallel workers take whole blocks, which keeps the matrix
bit-identical for every worker count.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from gameopt.core import MarketParams

BLOCK_SIZE = 4096
_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class PathSet:
    prices: np.ndarray  # (n_paths, n_steps + 1); column 0 is the spot
    dt: float
    seed: int | None
    maturity: float
    rate: float

    @property
    def n_paths(self) -> int:
        return self.prices.shape[0]

    @property
    def n_steps(self) -> int:
        return self.prices.shape[1] - 1


def block_normals(seed: int, block: int, n_rows: int, n_steps: int) -> np.ndarray:
    """Standard normals for one block via the inverse CDF of open-interval uniforms."""
    bitgen = np.random.Philox(key=np.array([seed & _SEED_MASK, block], dtype=np.uint64))
    raw = bitgen.random_raw(n_rows * n_steps)
    u = ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53
    return ndtri(u).reshape(n_rows, n_steps)


def paths_from_normals(params: MarketParams, maturity: float, normals: np.ndarray) -> np.ndarray:
    """Exact GBM transition applied to a (n_paths, n_steps) matrix of normals."""
    n_paths, n_steps = normals.shape
    dt = maturity / n_steps
    drift = (params.rate - 0.5 * params.vol**2) * dt
    log_inc = drift + params.vol * math.sqrt(dt) * normals
    prices = np.empty((n_paths, n_steps + 1))
    prices[:, 0] = params.spot
    prices[:, 1:] = params.spot * np.exp(np.cumsum(log_inc, axis=1))
    return prices


def simulate_paths(
    params: MarketParams,
    maturity: float,
    n_paths: int,
    n_steps: int,
    seed: int,
    workers: int = 1,
) -> PathSet:
    """Simulate `n_paths` risk-neutral stock paths on `n_steps` equal time steps.

    The result is a pure function of the arguments other than `workers`.
    """
    if n_paths < 2:
        raise ValueError(f"n_paths must be >= 2, got {n_paths}")
    if n_steps < 1:
        raise ValueError(f"n_steps must be >= 1, got {n_steps}")
    if maturity <= 0:
        raise ValueError(f"maturity must be positive, got {maturity}")
    seed = int(seed)

    normals = np.empty((n_paths, n_steps))
    n_blocks = -(-n_paths // BLOCK_SIZE)

    def fill(block: int) -> None:
        lo = block * BLOCK_SIZE
        hi = min(lo + BLOCK_SIZE, n_paths)
        normals[lo:hi] = block_normals(seed, block, hi - lo, n_steps)

    if workers <= 1 or n_blocks == 1:
        for b in range(n_blocks):
            fill(b)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, range(n_blocks)))

    prices = paths_from_normals(params, maturity, normals)
    return PathSet(prices=prices, dt=maturity / n_steps, seed=seed,
                   maturity=maturity, rate=params.rate)


def write_paths_csv(paths: PathSet, fh) -> None:
    """Dump one row per path: path_id, t_0 ... t_n."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["path_id"] + [f"t_{k}" for k in range(paths.n_steps + 1)])
    for i, row in enumerate(paths.prices):
        writer.writerow([i] + [repr(float(v)) for v in row])
