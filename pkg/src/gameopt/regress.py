"""Polynomial least-squares fits of continuation values."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RegressionModel:
    degree: int
    coefficients: np.ndarray
    n_samples: int
    center: float
    half_width: float
    rank_deficient: bool = False

    @property
    def x_scale(self) -> tuple[float, float]:
        return self.center, self.half_width


def _scale(x: np.ndarray) -> tuple[float, float]:
    lo, hi = float(x.min()), float(x.max())
    half = 0.5 * (hi - lo)
    if half == 0.0:
        half = 1.0
    return 0.5 * (lo + hi), half


def design_matrix(x: np.ndarray, degree: int, center: float, half_width: float) -> np.ndarray:
    z = (np.asarray(x, dtype=float) - center) / half_width
    return np.vander(z, degree + 1, increasing=True)


def fit(x, y, degree: int = 3) -> RegressionModel:
    """Least-squares fit of y on monomials 1, z, ..., z**degree with z = (x - center) / half_width.

    Solved by SVD-based lstsq, which returns the minimum-norm solution when the
    design is rank deficient (including fewer samples than coefficients).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d arrays of equal length")
    if x.size == 0:
        raise ValueError("cannot fit a regression on an empty sample")
    if degree < 0:
        raise ValueError("degree must be >= 0")
    center, half = _scale(x)
    A = design_matrix(x, degree, center, half)
    coef, _, rank, _ = np.linalg.lstsq(A, y, rcond=None)
    return RegressionModel(
        degree=degree,
        coefficients=coef,
        n_samples=x.size,
        center=center,
        half_width=half,
        rank_deficient=bool(rank < degree + 1),
    )


def predict(model: RegressionModel, x) -> np.ndarray:
    A = design_matrix(x, model.degree, model.center, model.half_width)
    return A @ model.coefficients
