"""Exact dense linear algebra over the rationals (or a quadratic extension).

Matrices are lists of row lists.  Entries may be Fraction or QuadExt; all
routines only use field operations, so they work uniformly over either.
Dimensions here never exceed a few dozen, so plain Gaussian elimination is
both exact and fast.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

Matrix = list


def mat_copy(m) -> Matrix:
    return [list(row) for row in m]


def identity(n: int) -> Matrix:
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def zeros(nrows: int, ncols: int) -> Matrix:
    return [[Fraction(0)] * ncols for _ in range(nrows)]


def transpose(m) -> Matrix:
    return [list(col) for col in zip(*m)]


def mat_mul(a, b) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def mat_vec(a, v) -> list:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def mat_add(a, b) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c) -> Matrix:
    return [[c * x for x in row] for row in a]


def rref(m) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = mat_copy(m)
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def rank(m) -> int:
    return len(rref(m)[1])


def nullspace(m, ncols: int | None = None) -> list[list]:
    """Basis of the right nullspace, one vector per free column."""
    if not m:
        return [[Fraction(1) if i == j else Fraction(0) for i in range(ncols)] for j in range(ncols)] if ncols else []
    ncols = len(m[0]) if ncols is None else ncols
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(v)
    return basis


def solve(a, b) -> list | None:
    """One solution of a x = b, or None if inconsistent."""
    nrows, ncols = len(a), len(a[0])
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    red, pivots = rref(aug)
    for row in red:
        if all(x == 0 for x in row[:ncols]) and row[ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        if c == ncols:
            return None
        x[c] = red[r][ncols]
    return x


def inverse(a) -> Matrix:
    n = len(a)
    aug = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def det(a):
    """Determinant by fraction-free elimination with row pivoting."""
    n = len(a)
    m = mat_copy(a)
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0) * result
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            result = -result
        pv = m[c][c]
        result = result * pv
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / pv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def inertia(sym) -> tuple[int, int, int]:
    """Signature (n_pos, n_neg, n_zero) of a rational symmetric matrix.

    Exact congruence diagonalization; when every remaining diagonal entry is
    zero but an off-diagonal one is not, a row+column addition creates a
    usable pivot (the standard hyperbolic-block trick).
    """
    n = len(sym)
    a = mat_copy(sym)
    alive = list(range(n))
    pos = neg = zero = 0
    while alive:
        k = next((i for i in alive if a[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in alive for j in alive if i < j and a[i][j] != 0), None)
            if pair is None:
                zero += len(alive)
                break
            i, j = pair
            # congruence by (row_i += row_j, col_i += col_j): diagonal gains 2 a_ij
            for c in range(n):
                a[i][c] = a[i][c] + a[j][c]
            for r in range(n):
                a[r][i] = a[r][i] + a[r][j]
            continue
        piv = a[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        alive.remove(k)
        for i in alive:
            if a[i][k] != 0:
                f = a[i][k] / piv
                for j in alive:
                    a[i][j] = a[i][j] - f * a[k][j]
        for i in alive:
            a[i][k] = Fraction(0)
            a[k][i] = Fraction(0)
    return pos, neg, zero


def gram_schmidt_floats(gram: Sequence[Sequence[float]]) -> list[list[float]]:
    """Orthonormal frame columns for a positive definite float Gram matrix.

    Returns vectors (as lists) f_1..f_n with f_i^T G f_j = delta_ij, built
    from the standard basis in order.
    """
    import math

    n = len(gram)
    frame: list[list[float]] = []
    for i in range(n):
        v = [1.0 if j == i else 0.0 for j in range(n)]
        for f in frame:
            c = _bilinear(gram, v, f)
            v = [x - c * y for x, y in zip(v, f)]
        nrm = _bilinear(gram, v, v)
        if nrm <= 0:
            raise ValueError("Gram matrix is not positive definite")
        s = 1.0 / math.sqrt(nrm)
        frame.append([x * s for x in v])
    return frame


def _bilinear(gram, u, v) -> float:
    return sum(u[i] * gram[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))
