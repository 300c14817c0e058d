"""Dense phase-one simplex for equality-form feasibility problems.

Solves: does there exist x >= 0 with A x = b? The answer comes from
minimizing the sum of artificial variables; a zero optimum certifies
feasibility and the x part of the optimal vertex is a feasible point.

Bland's anti-cycling rule keeps pivoting deterministic and guarantees
termination, which matters more here than speed: the systems are tiny
(tens of rows) but get solved inside bisection loops whose output must be
bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PIVOT_TOL = 1e-11
COST_TOL = 1e-10


class SimplexError(RuntimeError):
    """Raised when pivoting stalls; not expected for well-posed inputs."""


@dataclass(frozen=True)
class PhaseOneResult:
    x: np.ndarray          # candidate solution of the original system
    objective: float        # optimal sum of artificials (0 => feasible)
    iterations: int


def phase_one(a: np.ndarray, b: np.ndarray, max_iterations: int = 10000) -> PhaseOneResult:
    """Minimize the sum of artificial variables for A x = b, x >= 0.

    The tableau starts from the artificial identity basis after flipping
    rows so b >= 0. Entering variable: lowest index with a reduced cost
    below -COST_TOL. Leaving variable: minimum ratio, ties broken by the
    lowest basic variable index (Bland).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    m, n = a.shape
    if b.shape != (m,):
        raise ValueError("b must match the row count of A")

    flip = b < 0
    t = np.empty((m, n + m + 1))
    t[:, :n] = np.where(flip[:, None], -a, a)
    t[:, n : n + m] = np.eye(m)
    t[:, -1] = np.where(flip, -b, b)

    basis = list(range(n, n + m))
    # cost row for minimizing the artificial sum, reduced against the basis
    cost = np.zeros(n + m + 1)
    cost[n : n + m] = 1.0
    cost = cost - t.sum(axis=0)  # basic costs are all 1 initially

    iterations = 0
    while iterations < max_iterations:
        entering = -1
        for j in range(n + m):
            if cost[j] < -COST_TOL:
                entering = j
                break
        if entering < 0:
            break

        ratios = np.full(m, np.inf)
        col = t[:, entering]
        ok = col > PIVOT_TOL
        ratios[ok] = t[ok, -1] / col[ok]
        best = np.inf
        leaving = -1
        for i in range(m):
            if not ok[i]:
                continue
            if ratios[i] < best - PIVOT_TOL or (
                abs(ratios[i] - best) <= PIVOT_TOL
                and (leaving < 0 or basis[i] < basis[leaving])
            ):
                best = ratios[i]
                leaving = i
        if leaving < 0:
            raise SimplexError("phase-one objective unbounded; inputs are malformed")

        piv = t[leaving, entering]
        t[leaving] /= piv
        for i in range(m):
            if i != leaving and abs(t[i, entering]) > 0.0:
                t[i] -= t[i, entering] * t[leaving]
        cost = cost - cost[entering] * t[leaving]
        basis[leaving] = entering
        iterations += 1
    else:
        raise SimplexError(f"no convergence within {max_iterations} pivots")

    x = np.zeros(n)
    artificial = 0.0
    for i, var in enumerate(basis):
        value = t[i, -1]
        if var < n:
            x[var] = value
        else:
            artificial += value
    return PhaseOneResult(x=x, objective=float(artificial), iterations=iterations)
