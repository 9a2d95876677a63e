import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gameopt.core import GameContract, MarketParams, PriceEstimate, Method, exercise_payoff, game_value, recall_payoff

money = st.floats(0, 1e4, allow_nan=False)


@pytest.mark.parametrize("s, expected", [(90, 10), (100, 0), (130, 0)])
def test_exercise_payoff(s, expected):
    assert exercise_payoff(100.0, s) == expected


@pytest.mark.parametrize("s, delta, expected", [(90, 10, 20), (130, 10, 10), (100, 0, 0)])
def test_recall_payoff(s, delta, expected):
    assert recall_payoff(100.0, s, delta) == expected


@pytest.mark.parametrize("e, h, d, expected", [(10, 8, 5, 10), (10, 20, 5, 15), (0, 3, 5, 3)])
def test_game_value(e, h, d, expected):
    assert game_value(e, h, d) == expected


def test_payoffs_vectorise():
    s = np.array([80.0, 100.0, 120.0])
    np.testing.assert_array_equal(recall_payoff(100.0, s, 5.0), [25.0, 5.0, 5.0])


@given(money, money, money, money)
def test_game_value_monotone(e, h, d, bump):
    base = game_value(e, h, d)
    assert game_value(e + bump, h, d) >= base
    assert game_value(e, h + bump, d) >= base
    assert game_value(e, h, d + bump) >= base


@given(money, money, money)
def test_cap_inactive_when_penalty_dominates(e, h, d):
    if d >= h:
        assert game_value(e, h, d) == max(e, h)


@given(money, money)
def test_zero_penalty_collapses_to_exercise(e, h):
    assert game_value(e, h, 0.0) == e


@given(st.floats(1, 500), st.floats(0, 1000), st.just(0.0) | st.floats(1e-6, 100))
def test_recall_dominates_exercise(k, s, d):
    ex, rc = exercise_payoff(k, s), recall_payoff(k, s, d)
    assert ex <= rc
    assert (ex == rc) == (d == 0.0)


@pytest.mark.parametrize("kwargs", [dict(spot=0, rate=0.0, vol=0.2), dict(spot=100, rate=0.0, vol=0.0),
                                    dict(spot=100, rate=math.nan, vol=0.2)])
def test_market_rejects_bad_values(kwargs):
    with pytest.raises(ValueError):
        MarketParams(**kwargs)


def test_market_allows_negative_rate():
    assert MarketParams(100, -0.01, 0.2).rate == -0.01


@pytest.mark.parametrize("kwargs", [dict(strike=0, maturity=1, penalty=1), dict(strike=1, maturity=0, penalty=1),
                                    dict(strike=1, maturity=1, penalty=-1)])
def test_contract_rejects_bad_values(kwargs):
    with pytest.raises(ValueError):
        GameContract(**kwargs)


def test_price_estimate_rejects_negative_se():
    with pytest.raises(ValueError):
        PriceEstimate(price=1.0, method=Method.LSMC_STD, std_error=-1.0)
