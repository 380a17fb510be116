"""Small exact dense linear algebra over Q or a single extension field."""

from __future__ import annotations

from math import lcm

from .arith import ExtElement, Q, Rational, scalar_inverse


def _all_rational(rows) -> bool:
    return all(not isinstance(v, ExtElement) for row in rows for v in row)


def _integer_rows(rows):
    out = []
    for row in rows:
        qs = [Q(v) for v in row]
        den = lcm(*(int(v.denominator) for v in qs)) if qs else 1
        out.append([int(v.numerator) * (den // int(v.denominator)) for v in qs])
    return out


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, nrows):
            for j in range(col + 1, ncols):
                a[i][j] = (p * a[i][j] - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def rank(rows) -> int:
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    if _all_rational(rows):
        return bareiss_rank(_integer_rows(rows))
    return len(row_echelon(rows)[1])


def row_echelon(rows):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    a = [list(r) for r in rows]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = scalar_inverse(a[r][col])
        a[r] = [v * inv for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return a, pivots


def kernel(rows, ncols: int | None = None):
    """Basis of the right null space {v : A v = 0}."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[Q(1) if i == j else Q(0) for i in range(ncols)] for j in range(ncols)]
    a, pivots = row_echelon(rows)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for fcol in free:
        v = [Q(0)] * ncols
        v[fcol] = Q(1)
        for i, pcol in enumerate(pivots):
            v[pcol] = -a[i][fcol]
        basis.append(v)
    return basis


def det(rows):
    a = [list(r) for r in rows]
    n = len(a)
    d = Q(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return Q(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            d = -d
        d = d * a[col][col]
        inv = scalar_inverse(a[col][col])
        for i in range(col + 1, n):
            if a[i][col] != 0:
                f = a[i][col] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return d


def inverse(rows):
    n = len(rows)
    aug = [list(r) + [Q(1) if i == j else Q(0) for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in red]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Q(0)) for col in bt] for row in a]


def identity(n: int):
    return [[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)]


def solve(rows, rhs):
    """One solution x of A x = rhs, or None if inconsistent."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = row_echelon(aug)
    if ncols in pivots:
        return None
    x = [Q(0)] * ncols
    for i, pcol in enumerate(pivots):
        x[pcol] = red[i][ncols]
    return x


def is_rational_matrix(rows) -> bool:
    return all(isinstance(v, (int, Rational)) for row in rows for v in row)
