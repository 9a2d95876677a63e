"""Domain types and the game-option value recursion shared by every pricer."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np


class Method(str, Enum):
    LSMC_STD = "LsmcStd"
    LSMC_TWO_STEP = "LsmcTwoStep"
    CRR_TREE = "CrrTree"
    CN_PDE = "CnPde"


@dataclass(frozen=True)
class MarketParams:
    """Black-Scholes market: spot, continuously compounded rate, volatility."""

    spot: float
    rate: float
    vol: float

    def __post_init__(self):
        if not (math.isfinite(self.spot) and self.spot > 0):
            raise ValueError(f"spot must be positive, got {self.spot}")
        if not (math.isfinite(self.vol) and self.vol > 0):
            raise ValueError(f"vol must be positive, got {self.vol}")
        if not math.isfinite(self.rate):
            raise ValueError(f"rate must be finite, got {self.rate}")


@dataclass(frozen=True)
class GameContract:
    """Game put: holder may exercise for max(K-S, 0), issuer may recall for that plus `penalty`."""

    strike: float
    maturity: float
    penalty: float

    def __post_init__(self):
        if not (math.isfinite(self.strike) and self.strike > 0):
            raise ValueError(f"strike must be positive, got {self.strike}")
        if not (math.isfinite(self.maturity) and self.maturity > 0):
            raise ValueError(f"maturity must be positive, got {self.maturity}")
        # inf is allowed: it turns the contract into a plain American put
        if math.isnan(self.penalty) or self.penalty < 0:
            raise ValueError(f"penalty must be >= 0, got {self.penalty}")


@dataclass(frozen=True)
class PriceEstimate:
    price: float
    method: Method
    std_error: float | None = None
    settings: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.std_error is not None and self.std_error < 0:
            raise ValueError("std_error must be non-negative")


def exercise_payoff(strike, s):
    """Put intrinsic value max(K - S, 0). Works elementwise on arrays."""
    return np.maximum(strike - s, 0.0)


def recall_payoff(strike, s, penalty):
    """What the issuer pays on recall: intrinsic value plus the penalty.

    The recall amount is floored at the penalty for out-of-the-money S.
    """
    return exercise_payoff(strike, s) + penalty


def game_value(exercise, holding, penalty):
    """min(exercise + penalty, max(exercise, holding)).

    The holder's max sits inside the issuer's min, so the cap always wins.
    """
    return np.minimum(exercise + penalty, np.maximum(exercise, holding))
