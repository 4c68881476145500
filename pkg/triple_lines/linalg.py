"""
Exact dense linear algebra over Q(w)

Matrices are lists of rows of FieldElements. Everything is Gaussian
elimination with exact pivots, there are no tolerances.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from .field import ONE, ZERO, FieldElement
from .poly import MPoly

Vector = List[FieldElement]
Matrix = List[List[FieldElement]]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[FieldElement.coerce(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            s = ZERO
            for x, y in zip(row, col):
                if x and y:
                    s = s + x * y
            out_row.append(s)
        out.append(out_row)
    return out


def mat_vec(m: Matrix, v: Sequence[FieldElement]) -> Vector:
    out = []
    for row in m:
        s = ZERO
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns"""
    rows = [list(r) for r in m]
    if not rows:
        return rows, []
    n_rows, n_cols = len(rows), len(rows[0])
    pivots: List[int] = []
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            break
        for i_row in range(piv_r, n_rows):
            if rows[i_row][piv_c]:
                break
        else:
            continue
        rows[piv_r], rows[i_row] = rows[i_row], rows[piv_r]
        inv = rows[piv_r][piv_c].inverse()
        rows[piv_r] = [x * inv for x in rows[piv_r]]
        for r in range(n_rows):
            if r != piv_r and rows[r][piv_c]:
                factor = rows[r][piv_c]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[piv_r])]
        pivots.append(piv_c)
        piv_r += 1
    return rows, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def normalize_leading(v: Sequence[FieldElement]) -> Vector:
    """Scale so the first nonzero entry is 1"""
    for x in v:
        if x:
            inv = x.inverse()
            return [y * inv for y in v]
    return list(v)


def kernel(m: Matrix, n_cols: Optional[int] = None) -> List[Vector]:
    """Basis of {v : m v = 0}, one vector per free column, each with leading entry 1"""
    if not m:
        n = n_cols or 0
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    reduced, pivots = rref(m)
    n = len(m[0])
    basis = []
    for free in range(n):
        if free in pivots:
            continue
        v = [ZERO] * n
        v[free] = ONE
        for row, piv in zip(reduced, pivots):
            v[piv] = -row[free]
        basis.append(normalize_leading(v))
    return basis


def determinant(m: Matrix) -> FieldElement:
    rows = [list(r) for r in m]
    n = len(rows)
    det = ONE
    for c in range(n):
        pivot = next((r for r in range(c, n) if rows[r][c]), None)
        if pivot is None:
            return ZERO
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = rows[c][c].inverse()
        for r in range(c + 1, n):
            if rows[r][c]:
                factor = rows[r][c] * inv
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[c])]
    return det


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    augmented = [list(row) + ident for row, ident in zip(m, identity(n))]
    reduced, pivots = rref(augmented)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in reduced]


def poly_det(m: Sequence[Sequence[MPoly]]) -> MPoly:
    """Determinant of a small square matrix of polynomials by cofactor expansion"""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * poly_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else m[0][0].ring.zero()


def random_invertible_matrix(rng: np.random.Generator, n: int, bound: int = 5) -> Matrix:
    """Integer matrix with entries in [-bound, bound] and nonzero determinant"""
    while True:
        entries = rng.integers(-bound, bound + 1, size=(n, n))
        m = [[FieldElement(int(x)) for x in row] for row in entries]
        if determinant(m):
            return m
