"""Dense exact-rational matrix helpers shared by the engine.

Matrices are lists of Fraction rows.  Sizes stay at desk scale (dimensions
up to a few dozen), so plain Gaussian elimination over Fraction is used for
solving and inversion, and fraction-free (Bareiss) elimination over the
integers for rank computations on larger Hankel matrices.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def zeros(rows: int, cols: int):
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def copy_matrix(m):
    return [row[:] for row in m]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            c = ai[k]
            if c:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        oi[j] += c * bk[j]
    return out

def mat_vec(m, v):
    return [sum((row[j] * v[j] for j in range(len(v)) if v[j]), Fraction(0)) for row in m]


def invert(m):
    """Inverse over Q, or None when singular."""
    n = len(m)
    a = copy_matrix(m)
    inv = identity(n)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = a[col][col]
        if f != 1:
            a[col] = [x / f for x in a[col]]
            inv[col] = [x / f for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def solve_free_zero(a, b):
    """One exact solution of a x = b with free variables pinned to 0.

    Returns None when the system is inconsistent.  Pivot columns are chosen
    left to right, so the result is deterministic.
    """
    rows = [row[:] + [rhs] for row, rhs in zip(a, b)]
    nrows = len(rows)
    ncols = len(a[0]) if a else 0
    piv_rows = []  # (row, col)
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        f = rows[r][c]
        if f != 1:
            rows[r] = [x / f for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                g = rows[i][c]
                rows[i] = [x - g * y for x, y in zip(rows[i], rows[r])]
        piv_rows.append((r, c))
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if rows[i][ncols]:
            return None
    x = [Fraction(0)] * ncols
    for row, col in piv_rows:
        x[col] = rows[row][ncols]
    return x


def nullspace(m):
    """Basis of the right kernel of a Fraction matrix."""
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rows = copy_matrix(m)
    piv_cols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        f = rows[r][c]
        if f != 1:
            rows[r] = [x / f for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                g = rows[i][c]
                rows[i] = [x - g * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    basis = []
    piv_set = set(piv_cols)
    for free in range(ncols):
        if free in piv_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, col in zip(range(len(piv_cols)), piv_cols):
            vec[col] = -rows[row][free]
        basis.append(vec)
    return basis


def rank(m) -> int:
    """Exact rank of a Fraction matrix via fraction-free elimination."""
    if not m or not m[0]:
        return 0
    rows = []
    for row in m:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        rows.append([int(x * den) for x in row])
    return integer_rank(rows)


def integer_rank(m) -> int:
    """Rank of an integer matrix by Bareiss fraction-free elimination."""
    rows = [row[:] for row in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pivot = rows[r][c]
        # Bareiss update of every remaining row keeps entries integral.
        for i in range(r + 1, nrows):
            ric = rows[i][c]
            ri = rows[i]
            rr = rows[r]
            for j in range(c + 1, ncols):
                ri[j] = (ri[j] * pivot - ric * rr[j]) // prev
            ri[c] = 0
        prev = pivot
        r += 1
        if r == nrows:
            break
    return r
