"""Cox-Ross-Rubinstein binomial lattice for game and American puts."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from gameopt.core import GameContract, MarketParams, Method, PriceEstimate, exercise_payoff, game_value


@dataclass(frozen=True)
class TreeSpec:
    n_steps: int
    u: float
    d: float
    p: float
    dt: float
    discount: float


def build_tree_spec(params: MarketParams, maturity: float, n_steps: int) -> TreeSpec:
    """CRR calibration: u = exp(vol*sqrt(dt)), d = 1/u, p = (exp(r*dt) - d) / (u - d)."""
    if n_steps < 1:
        raise ValueError(f"n_steps must be >= 1, got {n_steps}")
    if maturity <= 0:
        raise ValueError(f"maturity must be positive, got {maturity}")
    dt = maturity / n_steps
    u = math.exp(params.vol * math.sqrt(dt))
    d = 1.0 / u
    growth = math.exp(params.rate * dt)
    p = (growth - d) / (u - d)
    if not 0.0 < p < 1.0:
        raise ValueError(
            f"risk-neutral probability p={p:.6g} outside (0, 1): need d < exp(r*dt) < u, "
            f"got d={d:.6g}, exp(r*dt)={growth:.6g}, u={u:.6g}"
        )
    return TreeSpec(n_steps=n_steps, u=u, d=d, p=p, dt=dt, discount=math.exp(-params.rate * dt))


def _price_table(spot: float, log_u: float, n_steps: int) -> np.ndarray:
    # entry n_steps + k holds spot * u**k for k in [-n_steps, n_steps]
    return spot * np.exp(log_u * np.arange(-n_steps, n_steps + 1, dtype=float))


def _layer(table: np.ndarray, n_steps: int, i: int) -> np.ndarray:
    # node j at layer i has i - j up moves and j down moves: index n_steps + i - 2j
    return table[n_steps - i:n_steps + i + 1:2][::-1]


def _rollback(params, strike, maturity, n_steps, penalty):
    spec = build_tree_spec(params, maturity, n_steps)
    log_u = math.log(spec.u)
    p, q, disc = spec.p, 1.0 - spec.p, spec.discount
    table = exercise_payoff(strike, _price_table(params.spot, log_u, n_steps))
    values = _layer(table, n_steps, n_steps)
    for i in range(n_steps - 1, -1, -1):
        exercise = _layer(table, n_steps, i)
        holding = disc * (p * values[:-1] + q * values[1:])
        if penalty is None:
            values = np.maximum(exercise, holding)
        else:
            values = game_value(exercise, holding, penalty)
    return float(values[0]), spec


def price_game_crr(params: MarketParams, contract: GameContract, n_steps: int = 10_000) -> PriceEstimate:
    """Game put on a CRR lattice; the recall cap is applied at every layer including the root."""
    price, _ = _rollback(params, contract.strike, contract.maturity, n_steps, contract.penalty)
    return PriceEstimate(price=price, method=Method.CRR_TREE, settings={"tree_steps": n_steps})


def price_american_crr(params: MarketParams, strike: float, maturity: float,
                       n_steps: int = 10_000) -> PriceEstimate:
    """American put on the same lattice (the game recursion without the cap)."""
    if strike < 0:
        raise ValueError("strike must be >= 0")
    price, _ = _rollback(params, strike, maturity, n_steps, None)
    return PriceEstimate(price=price, method=Method.CRR_TREE, settings={"tree_steps": n_steps})
