"""Exact linear algebra over Z and Q on plain nested lists.

Matrices are lists of rows.  Entries are ``int`` or ``Fraction``; nothing
here ever touches floating point.
"""

from fractions import Fraction
from math import isqrt


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a, b):
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def ldl(gram):
    """Rational LDL^T factorisation of a symmetric matrix.

    Returns ``(lower, pivots)`` with ``lower`` unit lower triangular and
    ``gram == lower * diag(pivots) * lower^T``.  Stops at the first
    non-positive pivot and returns only the pivots computed so far, so the
    caller can name the failing leading minor.
    """
    n = len(gram)
    lower = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    pivots = []
    for j in range(n):
        d = Fraction(gram[j][j]) - sum(lower[j][k] ** 2 * pivots[k] for k in range(j))
        if d <= 0:
            pivots.append(d)
            return lower, pivots
        pivots.append(d)
        for i in range(j + 1, n):
            s = Fraction(gram[i][j]) - sum(lower[i][k] * lower[j][k] * pivots[k] for k in range(j))
            lower[i][j] = s / d
    return lower, pivots


def bareiss_det(a):
    """Determinant of an integer matrix by fraction-free elimination."""
    m = [list(map(int, row)) for row in a]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse(a):
    """Exact inverse by Gauss-Jordan elimination over Q."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def rank(rows):
    """Rank of a rational matrix (list of rows) by exact row reduction."""
    m = [[Fraction(x) for x in row] for row in rows if any(row)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][col] != 0:
                f = m[i][col] / m[r][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def smith_normal_form(a):
    """Smith normal form of a square nonsingular integer matrix.

    Returns ``(left, diag, right)`` with ``left * a * right == diag``, both
    transforms unimodular and ``diag[i][i]`` dividing ``diag[i+1][i+1]``.
    """
    n = len(a)
    m = [list(map(int, row)) for row in a]
    left = identity(n)
    right = identity(n)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for mat in (m, right):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        # row dst += f * row src
        m[dst] = [x + f * y for x, y in zip(m[dst], m[src])]
        left[dst] = [x + f * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, f):
        for mat in (m, right):
            for row in mat:
                row[dst] += f * row[src]

    for s in range(n):
        while True:
            entries = [(abs(m[i][j]), i, j) for i in range(s, n) for j in range(s, n) if m[i][j]]
            if not entries:
                return left, m, right
            _, pi, pj = min(entries)
            swap_rows(s, pi)
            swap_cols(s, pj)
            done = True
            for i in range(s + 1, n):
                q = m[i][s] // m[s][s]
                if q:
                    add_row(i, s, -q)
                if m[i][s]:
                    done = False
            for j in range(s + 1, n):
                q = m[s][j] // m[s][s]
                if q:
                    add_col(j, s, -q)
                if m[s][j]:
                    done = False
            if not done:
                continue
            # pivot must divide the whole trailing block
            bad = next(((i, j) for i in range(s + 1, n) for j in range(s + 1, n)
                        if m[i][j] % m[s][s]), None)
            if bad is None:
                break
            add_row(s, bad[0], 1)
        if m[s][s] < 0:
            m[s] = [-x for x in m[s]]
            left[s] = [-x for x in left[s]]
    return left, m, right


def int_sqrt_floor(q):
    """floor(sqrt(q)) for a nonnegative rational q."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative argument")
    # floor(sqrt(p/r)) = floor(sqrt(p*r)/r) = isqrt(p*r) // r
    return isqrt(q.numerator * q.denominator) // q.denominator
