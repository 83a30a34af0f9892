"""Independent dense-arithmetic oracles for cross-checking.

Deliberately shares no code with the package: plain Gaussian
elimination over Fraction on dense row lists.  Slow but obviously
correct, which is the point.
"""

from fractions import Fraction


def dense_rank(rows):
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    cols = len(m[0])
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, len(m)):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = m[rank][col]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                factor = m[r][col] / inv
                for c in range(col, cols):
                    m[r][c] -= factor * m[rank][c]
        rank += 1
    return rank


def dense_nullity(rows, cols):
    return cols - dense_rank(rows)


def dense_solve(rows, rhs):
    """Any solution of rows * x = rhs, or None."""
    if not rows:
        return None if any(rhs) else []
    cols = len(rows[0])
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots = []
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, len(m)):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = m[rank][col]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                factor = m[r][col] / inv
                for c in range(col, cols + 1):
                    m[r][c] -= factor * m[rank][c]
        pivots.append(col)
        rank += 1
    for r in range(rank, len(m)):
        if m[r][cols]:
            return None
    x = [Fraction(0)] * cols
    for r, col in enumerate(pivots):
        x[col] = m[r][cols] / m[r][col]
    return x
