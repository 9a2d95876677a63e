import io
import math

import numpy as np
import pytest

from gameopt.core import MarketParams
from gameopt.paths import BLOCK_SIZE, paths_from_normals, simulate_paths, write_paths_csv


def test_zero_noise_step_is_deterministic_drift(market):
    prices = paths_from_normals(market, 1.0, np.zeros((3, 1)))
    expected = 100.0 * math.exp((0.03 - 0.5 * 0.04) * 1.0)
    np.testing.assert_allclose(prices[:, 1], expected, rtol=1e-15)
    assert (prices[:, 0] == 100.0).all()


def test_shape_and_metadata(market):
    ps = simulate_paths(market, 2.0, 10, 8, seed=1)
    assert ps.prices.shape == (10, 9)
    assert ps.n_paths == 10 and ps.n_steps == 8
    assert ps.dt * ps.n_steps == pytest.approx(2.0, rel=1e-15)
    assert (ps.prices[:, 0] == market.spot).all()
    assert (ps.prices > 0).all()


@pytest.mark.parametrize("n_paths, n_steps", [(1, 5), (0, 5), (10, 0)])
def test_rejects_degenerate_sizes(market, n_paths, n_steps):
    with pytest.raises(ValueError):
        simulate_paths(market, 1.0, n_paths, n_steps, seed=0)


def test_martingale_mean():
    m = MarketParams(100.0, 0.03, 0.2)
    ps = simulate_paths(m, 1.0, 100_000, 50, seed=7)
    st = ps.prices[:, -1]
    se = st.std(ddof=1) / math.sqrt(st.size)
    assert abs(st.mean() - 100 * math.exp(0.03)) <= 3 * se


def test_log_increment_variance():
    m = MarketParams(100.0, 0.03, 0.25)
    ps = simulate_paths(m, 1.0, 100_000, 10, seed=11)
    inc = np.diff(np.log(ps.prices), axis=1)
    assert np.var(inc, ddof=1) == pytest.approx(0.25**2 * ps.dt, rel=0.05)


def test_thread_count_does_not_change_output(market):
    n = 3 * BLOCK_SIZE + 17
    a = simulate_paths(market, 1.0, n, 12, seed=123, workers=1)
    b = simulate_paths(market, 1.0, n, 12, seed=123, workers=8)
    assert a.prices.tobytes() == b.prices.tobytes()


def test_path_depends_only_on_seed_and_index(market):
    # growing the path count must not disturb the paths already there
    small = simulate_paths(market, 1.0, 100, 6, seed=5)
    big = simulate_paths(market, 1.0, BLOCK_SIZE + 100, 6, seed=5)
    np.testing.assert_array_equal(small.prices, big.prices[:100])


def test_different_seeds_differ(market):
    a = simulate_paths(market, 1.0, 50, 4, seed=1)
    b = simulate_paths(market, 1.0, 50, 4, seed=2)
    assert not np.array_equal(a.prices, b.prices)


def test_csv_dump(market):
    ps = simulate_paths(market, 1.0, 3, 2, seed=0)
    buf = io.StringIO()
    write_paths_csv(ps, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "path_id,t_0,t_1,t_2"
    assert len(lines) == 4
    assert float(lines[2].split(",")[3]) == ps.prices[1, 2]
