"""Dense Phase-I simplex for equality-form feasibility.

Solves: does x >= 0 with A x = b exist?  One artificial variable per row is
added and their sum is minimized on a dense tableau.  Entering columns are
chosen by Bland's rule (lowest eligible index), which rules out cycling, so
the iteration guard should never trip.

Tableau layout: rows are the m constraints (right-hand sides flipped
nonnegative), columns are [original variables | artificials | rhs]; one extra
reduced-cost row is carried underneath and updated by the same pivots.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CyclingGuard


@dataclass(frozen=True)
class PhaseOneResult:
    """Feasibility verdict with the basic solution and Phase-I objective."""

    feasible: bool
    x: np.ndarray
    objective: float
    iterations: int


def phase_one_feasible(
    A: np.ndarray,
    b: np.ndarray,
    *,
    tol: float = 1e-9,
    pivot_tol: float = 1e-11,
    max_iter: int = 20000,
) -> PhaseOneResult:
    """Minimize the artificial-variable sum; feasible iff it reaches ~0.

    ``tol`` is the acceptance on the final objective, ``pivot_tol`` the
    threshold below which reduced costs and pivot candidates count as zero.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float).reshape(-1)
    m, n = A.shape
    if b.size != m:
        raise ValueError(f"rhs length {b.size} does not match {m} rows")

    flip = b < 0
    A = np.where(flip[:, None], -A, A)
    b = np.where(flip, -b, b)

    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n : n + m] = np.eye(m)
    T[:m, -1] = b
    # reduced costs for the artificial basis: c_j - sum of column entries
    T[m, :n] = -A.sum(axis=0)
    T[m, -1] = -b.sum()

    basis = list(range(n, n + m))
    iterations = 0
    while True:
        costs = T[m, : n + m]
        eligible = np.flatnonzero(costs < -pivot_tol)
        if eligible.size == 0:
            break
        enter = int(eligible[0])  # Bland: lowest index
        col = T[:m, enter]
        rows = np.flatnonzero(col > pivot_tol)
        if rows.size == 0:
            # phase-1 objective is bounded below by zero, so this cannot
            # happen with consistent arithmetic; bail out loudly
            raise CyclingGuard("no pivot row for an improving column")
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        ties = rows[np.flatnonzero(ratios <= best + pivot_tol)]
        leave = int(min(ties, key=lambda r: basis[r]))  # Bland tie-break
        piv = T[leave, enter]
        T[leave, :] /= piv
        for r in range(m + 1):
            if r != leave and T[r, enter] != 0.0:
                T[r, :] -= T[r, enter] * T[leave, :]
        basis[leave] = enter
        iterations += 1
        if iterations > max_iter:
            raise CyclingGuard(f"simplex exceeded {max_iter} pivots")

    objective = float(-T[m, -1])
    x = np.zeros(n)
    for r, j in enumerate(basis):
        if j < n:
            x[j] = T[r, -1]
    x = np.maximum(x, 0.0)  # clip roundoff-negative basics
    return PhaseOneResult(
        feasible=bool(objective <= tol), x=x, objective=objective, iterations=iterations
    )
