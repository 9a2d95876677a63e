"""Slow, independent reference implementations used only by the test suite.

Everything here is written with scalar loops and dense matrices on purpose:
it must not share code paths with the production pricers it checks. The CLI
never imports this module.
"""

from __future__ import annotations

import math

import numpy as np

MAX_BRUTE_STEPS = 12


def gaussian_elimination(A, b) -> np.ndarray:
    """Dense Gaussian elimination with partial pivoting."""
    M = [list(map(float, row)) for row in A]
    v = list(map(float, b))
    n = len(v)
    for k in range(n):
        piv = max(range(k, n), key=lambda r: abs(M[r][k]))
        if M[piv][k] == 0.0:
            raise ZeroDivisionError("singular matrix")
        M[k], M[piv] = M[piv], M[k]
        v[k], v[piv] = v[piv], v[k]
        for r in range(k + 1, n):
            f = M[r][k] / M[k][k]
            if f == 0.0:
                continue
            for c in range(k, n):
                M[r][c] -= f * M[k][c]
            v[r] -= f * v[k]
    x = [0.0] * n
    for k in range(n - 1, -1, -1):
        acc = v[k]
        for c in range(k + 1, n):
            acc -= M[k][c] * x[c]
        x[k] = acc / M[k][k]
    return np.array(x)


def dense_least_squares(x, y, degree: int, center: float = 0.0, half_width: float = 1.0) -> np.ndarray:
    """Normal-equations polynomial fit in the coordinate (x - center) / half_width."""
    z = [(float(xi) - center) / half_width for xi in x]
    m = degree + 1
    G = [[sum(zi ** (a + b) for zi in z) for b in range(m)] for a in range(m)]
    rhs = [sum(float(yi) * zi**a for zi, yi in zip(z, y)) for a in range(m)]
    return gaussian_elimination(G, rhs)


def brute_force_game_value(spot, rate, vol, strike, maturity, penalty, n_steps) -> float:
    """Game put on a full 2-d CRR lattice, evaluated node by node."""
    if not 1 <= n_steps <= MAX_BRUTE_STEPS:
        raise ValueError(f"n_steps must be in [1, {MAX_BRUTE_STEPS}]")
    dt = maturity / n_steps
    a = vol * math.sqrt(dt)
    u, d = math.exp(a), math.exp(-a)
    p = (math.exp(rate * dt) - d) / (u - d)
    disc = math.exp(-rate * dt)
    stock = [[spot * math.exp(a * (i - 2 * j)) for j in range(i + 1)] for i in range(n_steps + 1)]
    G = [[0.0] * (i + 1) for i in range(n_steps + 1)]
    for j in range(n_steps + 1):
        G[n_steps][j] = max(strike - stock[n_steps][j], 0.0)
    for i in range(n_steps - 1, -1, -1):
        for j in range(i + 1):
            ex = max(strike - stock[i][j], 0.0)
            hold = disc * (p * G[i + 1][j] + (1.0 - p) * G[i + 1][j + 1])
            G[i][j] = min(ex + penalty, max(ex, hold))
    return G[0][0]


def implicit_euler_game_put(spot, rate, vol, strike, maturity, penalty, s_max, n_space, n_time) -> float:
    """Fully implicit finite differences with the same boundary values and game projection."""
    ds = s_max / n_space
    dt = maturity / n_time
    S = [j * ds for j in range(n_space + 1)]
    ex = [max(strike - s, 0.0) for s in S]
    V = ex[:]
    n = n_space - 1
    A = [[0.0] * n for _ in range(n)]
    for row in range(n):
        j = row + 1
        lo = 0.5 * dt * (vol**2 * j * j - rate * j)
        up = 0.5 * dt * (vol**2 * j * j + rate * j)
        A[row][row] = 1.0 + dt * (vol**2 * j * j + rate)
        if row > 0:
            A[row][row - 1] = -lo
        if row < n - 1:
            A[row][row + 1] = -up
    lo1 = 0.5 * dt * (vol**2 - rate)
    for _ in range(n_time):
        b = V[1:-1]
        b[0] += lo1 * strike
        inner = gaussian_elimination(A, b)
        V = [strike] + list(inner) + [0.0]
        V = [min(e + penalty, max(e, v)) for e, v in zip(ex, V)]
    return float(np.interp(spot, S, V))
