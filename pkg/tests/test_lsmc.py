import math

import numpy as np
import pytest

from gameopt.core import GameContract, MarketParams
from gameopt.lsmc import (
    cashflows_american,
    cashflows_std,
    cashflows_two_step,
    price_american_lsmc,
    price_lsmc_std,
    price_lsmc_two_step,
)
from gameopt.paths import simulate_paths

PRICERS = [price_lsmc_std, price_lsmc_two_step]


@pytest.fixture(scope="module")
def paths():
    return simulate_paths(MarketParams(100, 0.03, 0.2), 1.0, 20_000, 25, seed=3)


@pytest.fixture(scope="module")
def big_paths():
    return simulate_paths(MarketParams(100, 0.03, 0.2), 1.0, 100_000, 50, seed=42)


@pytest.mark.parametrize("pricer", PRICERS)
def test_single_step_is_european(pricer, market, contract):
    ps = simulate_paths(market, 1.0, 5000, 1, seed=9)
    est = pricer(ps, contract, market)
    euro = math.exp(-0.03) * np.maximum(100 - ps.prices[:, 1], 0)
    assert est.price == pytest.approx(euro.mean(), rel=1e-14)
    assert est.std_error == pytest.approx(euro.std(ddof=1) / math.sqrt(5000), rel=1e-12)


def test_std_with_unreachable_cap_is_all_path_american(paths, market):
    game = cashflows_std(paths, GameContract(100, 1.0, 1e3), market)
    american = cashflows_american(paths, GameContract(100, 1.0, 0.0), market, itm_only=False)
    assert game.tobytes() == american.tobytes()


@pytest.mark.parametrize("penalty", [100.0, 1e3])
def test_two_step_reduces_to_itm_american(paths, market, penalty):
    records = []
    game = cashflows_two_step(paths, GameContract(100, 1.0, penalty), market, observer=records.append)
    american = cashflows_american(paths, GameContract(100, 1.0, 0.0), market, itm_only=True)
    assert game.tobytes() == american.tobytes()
    assert records and all(not r.issuer.any() and not r.relevant.any() for r in records)


def test_screening_soundness(paths, market, contract):
    records = []
    price_lsmc_two_step(paths, contract, market, observer=records.append)
    assert [r.step for r in records] == list(range(paths.n_steps - 1, 0, -1))
    for r in records:
        assert not (r.relevant & r.itm).any()
        assert (r.regression_set[r.itm]).all()
        assert (r.regression_set == (r.itm | r.relevant)).all()
        assert (r.screen_values[r.relevant[~r.itm]] > contract.penalty).all()
        assert not (r.holder & r.issuer).any()
        assert (r.holder <= r.itm).all()
        assert (r.issuer <= r.regression_set).all()


def test_std_decisions_are_disjoint(paths, market, contract):
    records = []
    price_lsmc_std(paths, contract, market, observer=records.append)
    assert any(r.issuer.any() for r in records)
    for r in records:
        assert not (r.holder & r.issuer).any()
        assert (r.holder <= r.itm).all()


@pytest.mark.parametrize("fn", [cashflows_std, cashflows_two_step])
@pytest.mark.parametrize("penalty", [0.0, 2.0, 10.0])
def test_cashflow_bounds(paths, market, fn, penalty):
    c = GameContract(100, 1.0, penalty)
    cf = fn(paths, c, market)
    assert (cf >= 0).all()
    assert (cf <= c.strike + penalty).all()


@pytest.mark.parametrize("pricer", PRICERS)
def test_price_bounds(paths, market, contract, pricer):
    est = pricer(paths, contract, market)
    assert 0 <= est.price <= max(contract.strike - market.spot, 0) + contract.penalty + 4 * est.std_error


@pytest.mark.parametrize("pricer", PRICERS)
def test_penalty_monotone_within_noise(paths, market, pricer):
    ests = [pricer(paths, GameContract(100, 1.0, d), market) for d in (0.0, 2.0, 5.0, 10.0)]
    for lo, hi in zip(ests, ests[1:]):
        assert lo.price <= hi.price + 4 * math.hypot(lo.std_error, hi.std_error)


@pytest.mark.parametrize("pricer", PRICERS)
def test_zero_penalty_below_european(paths, market, pricer):
    est = pricer(paths, GameContract(100, 1.0, 0.0), market)
    euro = math.exp(-0.03) * np.maximum(100 - paths.prices[:, -1], 0).mean()
    assert est.price <= euro + 4 * est.std_error


@pytest.mark.parametrize("pricer", PRICERS)
def test_game_below_american(paths, market, contract, pricer):
    game = pricer(paths, contract, market)
    american = price_american_lsmc(paths, contract, market)
    assert game.price <= american.price + 4 * math.hypot(game.std_error, american.std_error)


@pytest.mark.parametrize("pricer", PRICERS)
def test_deterministic(paths, market, contract, pricer):
    assert pricer(paths, contract, market) == pricer(paths, contract, market)


@pytest.mark.parametrize("pricer", PRICERS)
@pytest.mark.parametrize("strike", [1000.0, 1.0])
def test_one_sided_moneyness_does_not_break(market, pricer, strike):
    # every path ITM (strike 1000) or every path OTM (strike 1) at every step
    ps = simulate_paths(market, 1.0, 2000, 10, seed=1)
    est = pricer(ps, GameContract(strike, 1.0, 5.0), market)
    assert math.isfinite(est.price) and est.price >= 0


def test_rejects_mismatched_market(paths, contract):
    with pytest.raises(ValueError, match="rate"):
        price_lsmc_std(paths, contract, MarketParams(100, 0.05, 0.2))
    with pytest.raises(ValueError, match="matures"):
        price_lsmc_two_step(paths, GameContract(100, 2.0, 10.0), MarketParams(100, 0.03, 0.2))


def test_settings_echo(paths, market, contract):
    est = price_lsmc_two_step(paths, contract, market, degree=2)
    assert est.settings == {"paths": 20_000, "mc_steps": 25, "seed": 3, "degree": 2}
    assert est.method.value == "LsmcTwoStep"


def test_paper_cell_delta10(big_paths, market, contract):
    tree = 6.74290
    std = price_lsmc_std(big_paths, contract, market)
    two = price_lsmc_two_step(big_paths, contract, market)
    assert abs(std.price - tree) <= 4 * std.std_error
    assert abs(two.price - tree) <= 4 * two.std_error


def test_paper_cell_delta5():
    # printed as "sigma = 0.2, K = 110" in the delta = 5 table; its values belong to sigma = 0.15, K = 105
    m = MarketParams(100, 0.03, 0.15)
    ps = simulate_paths(m, 1.0, 100_000, 50, seed=42)
    two = price_lsmc_two_step(ps, GameContract(105, 1.0, 5.0), m)
    assert abs(two.price - 7.56807) <= 4 * two.std_error
