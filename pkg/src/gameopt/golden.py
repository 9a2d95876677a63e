"""Published benchmark cells (S0 = 100, r = 0.03, T = 1).

Each cell keeps the row label as printed next to the parameters that actually
reproduce its tree/PDE values. For the delta = 10 table the two coincide. For
the delta = 5 table the printed labels cannot be right: at S0 = K = 100 the
recall cap pins the value at exactly 5, yet the printed entries are 4.82,
2.93 and 3.87. Every entry of that table is reproduced (to < 0.004) by
vol in {0.15, 0.10, 0.125} and strike in {100, 105, 95} instead, in the
printed row order.
"""

from __future__ import annotations

from dataclasses import dataclass

SPOT = 100.0
RATE = 0.03
MATURITY = 1.0


@dataclass(frozen=True)
class Cell:
    table: int
    penalty: float
    vol: float
    strike: float
    printed_vol: float
    printed_strike: float
    lsmc_std: float
    lsmc_two_step: float
    crr: float
    pde: float


_T1 = [
    (0.20, 100, 6.52313, 6.75100, 6.74290, 6.74006),
    (0.20, 110, 12.55097, 12.73824, 12.72614, 12.72369),
    (0.20, 90, 2.67519, 2.86182, 2.86320, 2.86109),
    (0.25, 100, 8.37909, 8.66110, 8.67473, 8.67252),
    (0.25, 110, 14.36542, 14.57393, 14.57888, 14.57688),
    (0.25, 90, 4.20261, 4.44813, 4.42916, 4.42726),
    (0.15, 100, 4.63753, 4.82596, 4.82058, 4.81675),
    (0.15, 110, 11.91566, 11.02133, 11.04919, 11.04612),
    (0.15, 90, 1.35713, 1.46590, 1.46258, 1.46014),
]

# (vol, strike) that reproduce each row, then the printed label and values
_T2 = [
    (0.15, 100, 0.20, 100, 4.63699, 4.81565, 4.82058, 4.81675),
    (0.15, 105, 0.20, 110, 7.42106, 7.55843, 7.56807, 7.56345),
    (0.15, 95, 0.20, 90, 2.65930, 2.79413, 2.80641, 2.80303),
    (0.10, 100, 0.25, 100, 2.78096, 2.91380, 2.92587, 2.92006),
    (0.10, 105, 0.25, 110, 5.69741, 5.80393, 5.80730, 5.79815),
    (0.10, 95, 0.25, 90, 1.14396, 1.23007, 1.22526, 1.22093),
    (0.125, 100, 0.15, 100, 3.73737, 3.87273, 3.86775, 3.86313),
    (0.125, 105, 0.15, 110, 6.52621, 6.65710, 6.65279, 6.64865),
    (0.125, 95, 0.15, 90, 1.89164, 1.99905, 1.98590, 1.98217),
]

CELLS: tuple[Cell, ...] = tuple(
    [Cell(1, 10.0, v, float(k), v, float(k), *vals) for v, k, *vals in _T1]
    + [Cell(2, 5.0, v, float(k), pv, float(pk), *vals) for v, k, pv, pk, *vals in _T2]
)


def cells_for_table(table: int) -> list[Cell]:
    return [c for c in CELLS if c.table == table]
