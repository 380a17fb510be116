"""Exact two-phase simplex over Q with Bland's rule.

Solves  maximize c.x  subject to  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import ONE, ZERO, Q

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: list | None = None
    value: object = None


def _pivot(T, basis, r, c):
    row = T[r]
    inv = ONE / row[c]
    T[r] = row = [v * inv for v in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _simplex(T, basis, ncols, allowed):
    """Maximize the objective stored in the last row as (-c | -value).
    Returns False when unbounded."""
    obj = T[-1]
    while True:
        obj = T[-1]
        enter = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        leave = None
        for i in range(len(T) - 1):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return False
        _pivot(T, basis, leave, enter)


def linprog_exact(c, A_ub=(), b_ub=(), A_eq=(), b_eq=()) -> LPResult:
    c = [Q(v) for v in c]
    n = len(c)
    rows = []
    for a, b in zip(A_ub, b_ub):
        rows.append(([Q(v) for v in a], Q(b), True))
    for a, b in zip(A_eq, b_eq):
        rows.append(([Q(v) for v in a], Q(b), False))
    for a, _, _ in rows:
        if len(a) != n:
            raise ValueError("constraint width does not match objective")
    n_slack = sum(1 for r in rows if r[2])
    m = len(rows)
    ncols = n + n_slack + m  # structural, slack, artificial
    T = []
    basis = []
    s = 0
    for i, (a, b, ub) in enumerate(rows):
        row = a + [ZERO] * (n_slack + m) + [b]
        if ub:
            row[n + s] = ONE
            s += 1
        if b < 0:
            row = [-v for v in row]
        row[n + n_slack + i] = ONE
        T.append(row)
        basis.append(n + n_slack + i)
    # phase 1: maximize -sum(artificials)
    obj = [ZERO] * (ncols + 1)
    for row in T:
        obj = [o - v for o, v in zip(obj, row)]
    for i in range(m):
        obj[n + n_slack + i] = ZERO
    T.append(obj)
    _simplex(T, basis, ncols, [True] * ncols)
    if T[-1][-1] != 0:
        return LPResult(INFEASIBLE)
    # drive artificials out of the basis
    for i in range(m):
        if basis[i] >= n + n_slack:
            j = next((j for j in range(n + n_slack) if T[i][j] != 0), None)
            if j is not None:
                _pivot(T, basis, i, j)
    allowed = [j < n + n_slack for j in range(ncols)]
    obj = [-v for v in c] + [ZERO] * (n_slack + m) + [ZERO]
    for i, b in enumerate(basis):
        if b < n and obj[b] != 0:
            f = obj[b]
            obj = [o - f * v for o, v in zip(obj, T[i])]
    T[-1] = obj
    if not _simplex(T, basis, ncols, allowed):
        return LPResult(UNBOUNDED)
    x = [ZERO] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = T[i][-1]
    return LPResult(OPTIMAL, x, sum((ci * xi for ci, xi in zip(c, x)), ZERO))
