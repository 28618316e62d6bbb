"""Small exact linear programs.

A dense two-phase simplex over ``Fraction`` with Bland's rule, enough for
feasibility questions with a few hundred variables.  Larger instances go to
scipy's HiGHS in floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass
class LPResult:
    status: str  # optimal | infeasible | unbounded
    x: list | None = None
    value: object = None
    exact: bool = True


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    p = T[r][c]
    if p != 1:
        T[r] = [v / p for v in T[r]]
    row = T[r]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _optimize(T, basis, cost, allowed) -> str:
    """Maximise ``cost . x`` over the tableau in place (Bland's rule)."""
    ncols = len(T[0]) - 1
    while True:
        enter = None
        for j in range(ncols):
            if j not in allowed or j in basis:
                continue
            reduced = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(len(T)) if T[i][j])
            if reduced > 0:
                enter = j
                break
        if enter is None:
            return "optimal"
        best = None
        for i, row in enumerate(T):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        _pivot(T, basis, best[1], enter)


def maximize_exact(c: Sequence, A_eq: Sequence[Sequence], b_eq: Sequence) -> LPResult:
    """Maximise ``c.x`` subject to ``A_eq x = b_eq`` and ``x >= 0``."""
    n = len(c)
    m = len(A_eq)
    rows = []
    for a, b in zip(A_eq, b_eq):
        a = [Fraction(v) for v in a]
        b = Fraction(b)
        if b < 0:
            a, b = [-v for v in a], -b
        rows.append((a, b))
    # phase 1: artificial columns n .. n+m-1
    T = []
    for i, (a, b) in enumerate(rows):
        T.append(a + [Fraction(int(i == k)) for k in range(m)] + [b])
    basis = list(range(n, n + m))
    cost1 = [Fraction(0)] * n + [Fraction(-1)] * m
    _optimize(T, basis, cost1, set(range(n + m)))
    if sum(T[i][-1] for i in range(m) if basis[i] >= n) != 0:
        return LPResult("infeasible")
    # drive remaining (zero-level) artificials out of the basis
    keep = []
    for i in range(m):
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0 and j not in basis), None)
            if j is None:
                continue  # redundant row
            _pivot(T, basis, i, j)
        keep.append(i)
    T = [T[i][:n] + [T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    cost = [Fraction(v) for v in c]
    status = _optimize(T, basis, cost, set(range(n)))
    if status != "optimal":
        return LPResult(status)
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    return LPResult("optimal", x, sum(ci * xi for ci, xi in zip(cost, x)))


def maximize_float(c, A_eq, b_eq) -> LPResult:
    from scipy.optimize import linprog

    res = linprog([-float(v) for v in c], A_eq=[[float(v) for v in r] for r in A_eq],
                  b_eq=[float(v) for v in b_eq], bounds=[(0, None)] * len(c), method="highs")
    if res.status == 2:
        return LPResult("infeasible", exact=False)
    if res.status == 3:
        return LPResult("unbounded", exact=False)
    if res.status != 0:
        raise RuntimeError(f"linprog failed: {res.message}")
    return LPResult("optimal", list(res.x), -res.fun, exact=False)
