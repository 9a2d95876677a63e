"""Game (Israeli) put option pricing: LSMC, two-step LSMC, CRR tree and Crank-Nicolson."""

from gameopt.core import (
    GameContract,
    MarketParams,
    Method,
    PriceEstimate,
    exercise_payoff,
    game_value,
    recall_payoff,
)
from gameopt.crr import build_tree_spec, price_american_crr, price_game_crr
from gameopt.lsmc import price_lsmc_std, price_lsmc_two_step
from gameopt.paths import PathSet, simulate_paths
from gameopt.pde import GridSpec, price_game_cn
from gameopt.regress import RegressionModel, fit, predict

__all__ = [
    "GameContract",
    "GridSpec",
    "MarketParams",
    "Method",
    "PathSet",
    "PriceEstimate",
    "RegressionModel",
    "build_tree_spec",
    "exercise_payoff",
    "fit",
    "game_value",
    "predict",
    "price_american_crr",
    "price_game_cn",
    "price_game_crr",
    "price_lsmc_std",
    "price_lsmc_two_step",
    "recall_payoff",
    "simulate_paths",
]

__version__ = "0.1.0"
