"""Dense two-phase primal simplex with Bland's rule, plus an l1 front end.

Small, deterministic, and self-contained: the optimization instances built
from chain-complex constraints stay tiny once the locality filter is applied,
so a dense tableau beats anything fancier here.  All numerical tolerances
live in this module.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PIVOT_TOL = 1e-12     # entries below this never pivot
FEAS_TOL = 1e-9       # |Ax - b| feasibility slack, relative to 1 + |b|
COST_TOL = 1e-9       # reduced-cost threshold for optimality
SUPPORT_TOL = 1e-7    # coefficient pruning threshold used by chain outputs

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
NUMERICAL_FAILURE = "numerical_failure"

MAX_ITER = 200_000


@dataclass
class LinearProgram:
    """minimize c.x subject to a_eq x = b_eq, with per-variable lower bound 0 or -inf."""

    c: np.ndarray
    a_eq: np.ndarray
    b_eq: np.ndarray
    nonneg: np.ndarray | None = None  # bool per variable; default all True

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=np.float64)
        self.a_eq = np.atleast_2d(np.asarray(self.a_eq, dtype=np.float64))
        self.b_eq = np.asarray(self.b_eq, dtype=np.float64)
        n = self.c.shape[0]
        if self.a_eq.size == 0:
            self.a_eq = self.a_eq.reshape(0, n)
        if self.a_eq.shape[1] != n or self.a_eq.shape[0] != self.b_eq.shape[0]:
            raise ValueError("inconsistent LP shapes")
        if not (np.all(np.isfinite(self.c)) and np.all(np.isfinite(self.a_eq))
                and np.all(np.isfinite(self.b_eq))):
            raise ValueError("LP data must be finite")
        if self.nonneg is None:
            self.nonneg = np.ones(n, dtype=bool)
        else:
            self.nonneg = np.asarray(self.nonneg, dtype=bool)


@dataclass
class LpSolution:
    status: str
    x: np.ndarray | None = None
    objective: float | None = None
    iterations: int = 0


def _bland_simplex(tableau: np.ndarray, basis: list[int], ncols: int, iterations: int):
    """Run Bland-rule pivoting in place; returns (status, iterations).

    tableau rows: m constraint rows then the objective row; last column is rhs.
    Entering: smallest column index with reduced cost < -COST_TOL.  Leaving:
    minimum ratio, ties broken by smallest basis variable (Bland).
    """
    m = tableau.shape[0] - 1
    while True:
        if iterations > MAX_ITER:
            return NUMERICAL_FAILURE, iterations
        cost_row = tableau[m, :ncols]
        entering = -1
        for j in range(ncols):
            if cost_row[j] < -COST_TOL:
                entering = j
                break
        if entering < 0:
            return OPTIMAL, iterations
        col = tableau[:m, entering]
        best_ratio = None
        leave = -1
        for i in range(m):
            if col[i] > PIVOT_TOL:
                ratio = tableau[i, -1] / col[i]
                if best_ratio is None or ratio < best_ratio - PIVOT_TOL or (
                    abs(ratio - best_ratio) <= PIVOT_TOL and basis[i] < basis[leave]
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            return UNBOUNDED, iterations
        piv = tableau[leave, entering]
        tableau[leave] /= piv
        for i in range(tableau.shape[0]):
            if i != leave and abs(tableau[i, entering]) > PIVOT_TOL:
                tableau[i] -= tableau[i, entering] * tableau[leave]
        basis[leave] = entering
        iterations += 1


def solve(lp: LinearProgram) -> LpSolution:
    """Two-phase simplex; free variables are split into positive parts first."""
    n = lp.c.shape[0]
    free = ~lp.nonneg
    # split x_i = u_i - w_i for free variables; u columns keep original slots
    extra = int(free.sum())
    a = lp.a_eq
    c = lp.c
    if extra:
        a = np.hstack([a, -a[:, free]])
        c = np.concatenate([c, -c[free]])
    x = _solve_standard(a, lp.b_eq, c)
    if x.status != OPTIMAL or extra == 0:
        if x.x is not None:
            x.x = x.x[:n]
        return x
    merged = x.x[:n].copy()
    merged[free] -= x.x[n:]
    x.x = merged
    x.objective = float(lp.c @ merged)
    bad = np.abs(lp.a_eq @ merged - lp.b_eq)
    if bad.size and bad.max() > FEAS_TOL * (1.0 + np.abs(lp.b_eq).max(initial=0.0)):
        return LpSolution(NUMERICAL_FAILURE, iterations=x.iterations)
    return x


def _solve_standard(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> LpSolution:
    """minimize c.x s.t. a x = b, x >= 0 via phase-1 artificials."""
    m, n = a.shape
    a = a.copy()
    b = b.copy()
    neg = b < 0
    a[neg] *= -1
    b[neg] *= -1
    if m == 0:
        return LpSolution(OPTIMAL, np.zeros(n), 0.0, 0)

    # phase 1 tableau: [A | I | b], objective = sum of artificials
    tab = np.zeros((m + 1, n + m + 1))
    tab[:m, :n] = a
    tab[:m, n : n + m] = np.eye(m)
    tab[:m, -1] = b
    tab[m, n : n + m] = 1.0
    tab[m] -= tab[:m].sum(axis=0)
    basis = list(range(n, n + m))
    status, iters = _bland_simplex(tab, basis, n + m, 0)
    if status != OPTIMAL:
        return LpSolution(NUMERICAL_FAILURE if status == NUMERICAL_FAILURE else INFEASIBLE,
                          iterations=iters)
    phase1_value = -tab[m, -1]
    if phase1_value > FEAS_TOL * (1.0 + np.abs(b).max(initial=0.0)):
        return LpSolution(INFEASIBLE, iterations=iters)

    # drive artificials out of the basis or drop their rows
    keep_rows = []
    for i in range(m):
        if basis[i] >= n:
            pivot_col = -1
            for j in range(n):
                if abs(tab[i, j]) > 1e-9:
                    pivot_col = j
                    break
            if pivot_col < 0:
                continue  # redundant constraint
            piv = tab[i, pivot_col]
            tab[i] /= piv
            for r in range(m + 1):
                if r != i and abs(tab[r, pivot_col]) > PIVOT_TOL:
                    tab[r] -= tab[r, pivot_col] * tab[i]
            basis[i] = pivot_col
        keep_rows.append(i)

    rows = [i for i in keep_rows if basis[i] < n]
    tab2 = np.zeros((len(rows) + 1, n + 1))
    basis2 = []
    for out_i, i in enumerate(rows):
        tab2[out_i, :n] = tab[i, :n]
        tab2[out_i, -1] = tab[i, -1]
        basis2.append(basis[i])
    tab2[-1, :n] = c
    for out_i, bv in enumerate(basis2):
        if abs(tab2[-1, bv]) > PIVOT_TOL:
            tab2[-1] -= tab2[-1, bv] * tab2[out_i]
    status, iters = _bland_simplex(tab2, basis2, n, iters)
    if status != OPTIMAL:
        return LpSolution(status, iterations=iters)
    x = np.zeros(n)
    for i, bv in enumerate(basis2):
        x[bv] = tab2[i, -1]
    x[np.abs(x) < PIVOT_TOL] = 0.0
    resid = np.abs(a @ x - b)
    if resid.size and resid.max() > FEAS_TOL * (1.0 + np.abs(b).max(initial=0.0)):
        return LpSolution(NUMERICAL_FAILURE, iterations=iters)
    return LpSolution(OPTIMAL, x, float(c @ x), iters)


@dataclass
class L1Solution:
    status: str
    x: np.ndarray | None = None
    objective: float | None = None
    iterations: int = 0


def minimize_l1(a_eq: np.ndarray, b_eq: np.ndarray, penalty: np.ndarray | None = None) -> L1Solution:
    """minimize sum_i penalty_i * |x_i| subject to a_eq x = b_eq, x free.

    Every variable is split into a positive and a negative part, both with
    the same cost, which linearises the absolute value exactly.
    """
    a_eq = np.atleast_2d(np.asarray(a_eq, dtype=np.float64))
    b_eq = np.asarray(b_eq, dtype=np.float64)
    n = a_eq.shape[1]
    if penalty is None:
        penalty = np.ones(n)
    penalty = np.asarray(penalty, dtype=np.float64)
    a = np.hstack([a_eq, -a_eq])
    c = np.concatenate([penalty, penalty])
    sol = _solve_standard(a, b_eq, c)
    if sol.status != OPTIMAL:
        return L1Solution(sol.status, iterations=sol.iterations)
    x = sol.x[:n] - sol.x[n:]
    return L1Solution(OPTIMAL, x, float(np.abs(x) @ penalty), sol.iterations)
