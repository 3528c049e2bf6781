"""Dense linear algebra and rank statistics for the indicators and harness."""

from __future__ import annotations

import numpy as np
from scipy import linalg
from scipy import stats

from .errors import DimensionError, EmptyInput, SingularMatrix

#: LU pivots below this magnitude flag the matrix as singular. The value is
#: what coincident points in the Solow-Polasky kernel produce in practice.
PIVOT_THRESHOLD = 1e-12


def invert(mat: np.ndarray) -> np.ndarray:
    """Invert a square matrix via LU with partial pivoting.

    Raises SingularMatrix when any pivot magnitude falls below
    ``PIVOT_THRESHOLD`` after pivoting.
    """
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {mat.shape}")
    lu, piv = linalg.lu_factor(mat, check_finite=True)
    pivots = np.abs(np.diag(lu))
    if np.any(pivots < PIVOT_THRESHOLD):
        raise SingularMatrix(
            f"pivot magnitude {pivots.min():.3e} below {PIVOT_THRESHOLD:.0e}"
        )
    return linalg.lu_solve((lu, piv), np.eye(mat.shape[0]))


def mean_std(values) -> tuple[float, float]:
    """Arithmetic mean and population standard deviation (divide by count)."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise EmptyInput("mean_std needs at least one value")
    return float(values.mean()), float(values.std(ddof=0))


def kendall_tau(rank_a, rank_b) -> float:
    """Tie-corrected Kendall tau-b between two value sequences, in [-1, 1].

    A fully tied argument makes tau-b undefined; that case is reported
    as 0, matching the "no detectable ordering" reading used by the
    experiment reports.
    """
    a = np.asarray(rank_a, dtype=float)
    b = np.asarray(rank_b, dtype=float)
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch: {a.shape} vs {b.shape}")
    if a.size < 2:
        raise EmptyInput("kendall_tau needs at least two observations")
    tau = stats.kendalltau(a, b).statistic
    if np.isnan(tau):
        return 0.0
    return float(tau)
