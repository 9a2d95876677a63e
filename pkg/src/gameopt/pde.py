"""Crank-Nicolson solver for the Black-Scholes PDE with the game-put projection.

Grid nodes sit at S_j = j * ds, j = 0..n_space. Each backward step solves the
unconstrained CN system for the interior nodes, pins V(0) = K and V(s_max) = 0,
then projects onto [max(K-S, 0), max(K-S, 0) + penalty] via the game recursion.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import solve_banded

from gameopt.core import GameContract, MarketParams, Method, PriceEstimate, exercise_payoff, game_value


class SingularSystemError(ArithmeticError):
    pass


@dataclass(frozen=True)
class GridSpec:
    s_max: float
    n_space: int
    n_time: int
    maturity: float

    def __post_init__(self):
        if self.n_space < 3:
            raise ValueError(f"n_space must be >= 3, got {self.n_space}")
        if self.n_time < 1:
            raise ValueError(f"n_time must be >= 1, got {self.n_time}")
        if not self.s_max > 0:
            raise ValueError(f"s_max must be positive, got {self.s_max}")
        if not self.maturity > 0:
            raise ValueError(f"maturity must be positive, got {self.maturity}")

    @property
    def ds(self) -> float:
        return self.s_max / self.n_space

    @property
    def dt(self) -> float:
        return self.maturity / self.n_time

    @property
    def nodes(self) -> np.ndarray:
        return self.ds * np.arange(self.n_space + 1)

    @classmethod
    def for_contract(cls, params: MarketParams, contract: GameContract, n_space: int = 2000,
                     n_time: int = 2000, smax_factor: float = 4.0) -> "GridSpec":
        s_max = smax_factor * max(params.spot, contract.strike)
        if s_max <= contract.strike:
            raise ValueError("s_max must exceed the strike; raise smax_factor")
        return cls(s_max=s_max, n_space=n_space, n_time=n_time, maturity=contract.maturity)


@dataclass
class TridiagonalSystem:
    lower: np.ndarray  # sub-diagonal, length n - 1
    diag: np.ndarray
    upper: np.ndarray  # super-diagonal, length n - 1
    rhs: np.ndarray

    def __post_init__(self):
        n = len(self.diag)
        if n < 1:
            raise ValueError("system dimension must be >= 1")
        if len(self.lower) != n - 1 or len(self.upper) != n - 1 or len(self.rhs) != n:
            raise ValueError("inconsistent tridiagonal lengths")

    def matvec(self, x: np.ndarray) -> np.ndarray:
        out = self.diag * x
        out[1:] += self.lower * x[:-1]
        out[:-1] += self.upper * x[1:]
        return out


def thomas_solve(sys: TridiagonalSystem) -> np.ndarray:
    """Tridiagonal elimination without pivoting (Thomas algorithm)."""
    a = np.asarray(sys.lower, dtype=float)
    b = np.asarray(sys.diag, dtype=float)
    c = np.asarray(sys.upper, dtype=float)
    d = np.asarray(sys.rhs, dtype=float)
    n = b.size
    cp = np.empty(max(n - 1, 0))
    dp = np.empty(n)
    if b[0] == 0.0:
        raise SingularSystemError("zero pivot in row 0")
    if n > 1:
        cp[0] = c[0] / b[0]
    dp[0] = d[0] / b[0]
    for i in range(1, n):
        denom = b[i] - a[i - 1] * cp[i - 1]
        if denom == 0.0:
            raise SingularSystemError(f"zero pivot in row {i}")
        if i < n - 1:
            cp[i] = c[i] / denom
        dp[i] = (d[i] - a[i - 1] * dp[i - 1]) / denom
    x = np.empty(n)
    x[-1] = dp[-1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x


def banded_solve(sys: TridiagonalSystem) -> np.ndarray:
    """LAPACK banded solve of the same system; used on the hot path."""
    n = len(sys.diag)
    ab = np.zeros((3, n))
    ab[0, 1:] = sys.upper
    ab[1] = sys.diag
    ab[2, :-1] = sys.lower
    try:
        return solve_banded((1, 1), ab, sys.rhs, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(str(exc)) from exc


SOLVERS: dict[str, Callable[[TridiagonalSystem], np.ndarray]] = {
    "banded": banded_solve,
    "thomas": thomas_solve,
}


def cn_coefficients(grid: GridSpec, params: MarketParams):
    """Interior stencil weights (alpha, beta, gamma) for j = 1..n_space-1."""
    j = np.arange(1, grid.n_space, dtype=float)
    s2 = params.vol**2 * j * j
    rj = params.rate * j
    alpha = 0.25 * grid.dt * (s2 - rj)
    beta = 0.5 * grid.dt * (s2 + params.rate)
    gamma = 0.25 * grid.dt * (s2 + rj)
    return alpha, beta, gamma


def cn_system(v_next: np.ndarray, grid: GridSpec, params: MarketParams, strike: float) -> TridiagonalSystem:
    """Assemble the interior CN system for one step back from `v_next`."""
    alpha, beta, gamma = cn_coefficients(grid, params)
    rhs = alpha * v_next[:-2] + (1.0 - beta) * v_next[1:-1] + gamma * v_next[2:]
    # boundary values at the earlier time level move to the right-hand side
    rhs[0] += alpha[0] * strike
    rhs[-1] += gamma[-1] * 0.0
    return TridiagonalSystem(lower=-alpha[1:], diag=1.0 + beta, upper=-gamma[:-1], rhs=rhs)


def cn_step(v_next: np.ndarray, grid: GridSpec, params: MarketParams, contract: GameContract,
            solver: str = "banded") -> np.ndarray:
    """One Crank-Nicolson step back in time followed by the game projection."""
    if v_next.shape != (grid.n_space + 1,):
        raise ValueError(f"expected {grid.n_space + 1} nodes, got {v_next.shape}")
    K = contract.strike
    v = np.empty_like(v_next)
    v[0] = K
    v[-1] = 0.0
    v[1:-1] = SOLVERS[solver](cn_system(v_next, grid, params, K))
    exercise = exercise_payoff(K, grid.nodes)
    return game_value(exercise, v, contract.penalty)


def solve_game_cn(params: MarketParams, contract: GameContract, grid: GridSpec, solver: str = "banded",
                  on_layer: Callable[[int, np.ndarray], None] | None = None) -> np.ndarray:
    """Roll the terminal payoff back to t = 0; returns the value curve on `grid.nodes`."""
    if not math.isclose(grid.maturity, contract.maturity, rel_tol=1e-12):
        raise ValueError("grid maturity does not match the contract")
    if grid.s_max <= contract.strike:
        raise ValueError(f"s_max={grid.s_max} must exceed strike={contract.strike}")
    v = exercise_payoff(contract.strike, grid.nodes)
    if on_layer is not None:
        on_layer(grid.n_time, v)
    for i in range(grid.n_time - 1, -1, -1):
        v = cn_step(v, grid, params, contract, solver)
        if on_layer is not None:
            on_layer(i, v)
    return v


def price_game_cn(params: MarketParams, contract: GameContract, grid: GridSpec | None = None,
                  solver: str = "banded") -> PriceEstimate:
    if grid is None:
        grid = GridSpec.for_contract(params, contract)
    if params.spot > grid.s_max:
        raise ValueError(f"spot {params.spot} lies beyond s_max {grid.s_max}")
    curve = solve_game_cn(params, contract, grid, solver)
    price = float(np.interp(params.spot, grid.nodes, curve))
    return PriceEstimate(
        price=price,
        method=Method.CN_PDE,
        settings={"grid_space": grid.n_space, "grid_time": grid.n_time, "s_max": grid.s_max},
    )


def write_value_curve_csv(grid: GridSpec, values: np.ndarray, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["S", "V"])
    for s, v in zip(grid.nodes, values):
        writer.writerow([f"{s:.6f}", f"{v:.6f}"])
