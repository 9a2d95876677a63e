"""Longstaff-Schwartz pricers for the game put.

Both variants share the same backward induction over a running cashflow
vector. They differ only in which paths enter the continuation regression:

* standard: every path, since an out-of-the-money path may still be recalled;
* two-step: in-the-money paths plus the out-of-the-money paths that a first,
  OTM-only regression flags as worth more than the penalty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from gameopt.core import GameContract, MarketParams, Method, PriceEstimate, exercise_payoff
from gameopt.paths import PathSet
from gameopt.regress import fit, predict


@dataclass
class StepRecord:
    """Per-step decision sets, handed to an optional observer (diagnostics and tests)."""

    step: int
    itm: np.ndarray
    regression_set: np.ndarray
    relevant: np.ndarray | None
    screen_values: np.ndarray | None
    holder: np.ndarray
    issuer: np.ndarray


Observer = Callable[[StepRecord], None]


def _check_inputs(paths: PathSet, contract: GameContract, params: MarketParams) -> None:
    if not math.isclose(paths.rate, params.rate, rel_tol=0, abs_tol=1e-15):
        raise ValueError(f"paths simulated at rate {paths.rate}, pricing at {params.rate}")
    if not math.isclose(paths.maturity, contract.maturity, rel_tol=1e-12):
        raise ValueError(f"paths span {paths.maturity} years, contract matures at {contract.maturity}")
    if paths.n_steps < 1:
        raise ValueError("paths need at least one time step")


def _apply_decisions(cf, exercise, recall, holder, issuer, disc):
    cf *= disc
    cf[holder] = exercise[holder]
    cf[issuer] = recall[issuer]


def cashflows_std(paths, contract, params, degree=3, observer: Observer | None = None) -> np.ndarray:
    """Cashflow vector valued at the first time step (t = dt) for the standard variant."""
    _check_inputs(paths, contract, params)
    K, delta = contract.strike, contract.penalty
    disc = math.exp(-params.rate * paths.dt)
    S = paths.prices
    cf = exercise_payoff(K, S[:, -1])
    for t in range(paths.n_steps - 1, 0, -1):
        s_t = S[:, t]
        y = disc * cf
        cont = predict(fit(s_t, y, degree), s_t)
        exercise = exercise_payoff(K, s_t)
        recall = exercise + delta
        itm = exercise > 0
        holder = itm & (cont < exercise)
        issuer = ~holder & (cont > recall)
        _apply_decisions(cf, exercise, recall, holder, issuer, disc)
        if observer is not None:
            observer(StepRecord(t, itm, np.ones_like(itm), None, None, holder, issuer))
    return cf


def cashflows_two_step(paths, contract, params, degree=3, observer: Observer | None = None) -> np.ndarray:
    """Cashflow vector valued at t = dt for the two-step variant."""
    _check_inputs(paths, contract, params)
    K, delta = contract.strike, contract.penalty
    disc = math.exp(-params.rate * paths.dt)
    S = paths.prices
    cf = exercise_payoff(K, S[:, -1])
    for t in range(paths.n_steps - 1, 0, -1):
        s_t = S[:, t]
        y = disc * cf
        exercise = exercise_payoff(K, s_t)
        recall = exercise + delta
        itm = exercise > 0
        otm = ~itm

        relevant = np.zeros_like(itm)
        screen = None
        if otm.any():
            screen = predict(fit(s_t[otm], y[otm], degree), s_t[otm])
            relevant[otm] = screen > delta

        reg = itm | relevant
        holder = np.zeros_like(itm)
        issuer = np.zeros_like(itm)
        if reg.any():
            cont = predict(fit(s_t[reg], y[reg], degree), s_t[reg])
            holder[reg] = itm[reg] & (cont < exercise[reg])
            issuer[reg] = ~holder[reg] & (cont > recall[reg])
        _apply_decisions(cf, exercise, recall, holder, issuer, disc)
        if observer is not None:
            observer(StepRecord(t, itm, reg, relevant, screen, holder, issuer))
    return cf


def cashflows_american(paths, contract, params, degree=3, itm_only=True) -> np.ndarray:
    """Plain American-put LSMC (no recall), regressing on ITM paths or on all paths."""
    _check_inputs(paths, contract, params)
    K = contract.strike
    disc = math.exp(-params.rate * paths.dt)
    S = paths.prices
    cf = exercise_payoff(K, S[:, -1])
    for t in range(paths.n_steps - 1, 0, -1):
        s_t = S[:, t]
        y = disc * cf
        exercise = exercise_payoff(K, s_t)
        itm = exercise > 0
        cf *= disc
        if itm_only:
            if not itm.any():
                continue
            cont = np.zeros_like(y)
            cont[itm] = predict(fit(s_t[itm], y[itm], degree), s_t[itm])
        else:
            cont = predict(fit(s_t, y, degree), s_t)
        holder = itm & (cont < exercise)
        cf[holder] = exercise[holder]
    return cf


def _estimate(cf, paths, params, method, degree) -> PriceEstimate:
    disc = math.exp(-params.rate * paths.dt)
    n = cf.size
    return PriceEstimate(
        price=float(disc * cf.mean()),
        std_error=float(disc * cf.std(ddof=1) / math.sqrt(n)),
        method=method,
        settings={"paths": n, "mc_steps": paths.n_steps, "seed": paths.seed, "degree": degree},
    )


def price_lsmc_std(paths: PathSet, contract: GameContract, params: MarketParams,
                   degree: int = 3, observer: Observer | None = None) -> PriceEstimate:
    cf = cashflows_std(paths, contract, params, degree, observer)
    return _estimate(cf, paths, params, Method.LSMC_STD, degree)


def price_lsmc_two_step(paths: PathSet, contract: GameContract, params: MarketParams,
                        degree: int = 3, observer: Observer | None = None) -> PriceEstimate:
    cf = cashflows_two_step(paths, contract, params, degree, observer)
    return _estimate(cf, paths, params, Method.LSMC_TWO_STEP, degree)


def price_american_lsmc(paths: PathSet, contract: GameContract, params: MarketParams,
                        degree: int = 3, itm_only: bool = True) -> PriceEstimate:
    cf = cashflows_american(paths, contract, params, degree, itm_only)
    return _estimate(cf, paths, params, Method.LSMC_STD, degree)
