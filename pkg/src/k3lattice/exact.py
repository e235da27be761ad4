"""Exact integer and rational linear algebra on dense row-major matrices.

Matrices are plain sequences of rows.  Every routine works with Python's
arbitrary-precision integers or with ``fractions.Fraction``; nothing in this
package ever touches floating point.  All functions return fresh objects and
never mutate their arguments, so values can be shared freely between threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

IntMatrix = list[list[int]]
IntVector = list[int]
RatMatrix = list[list[Fraction]]
RatVector = list[Fraction]


def copy_matrix(m: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(row) for row in m]


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)] if m else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    if a and b and len(a[0]) != len(b):
        raise ValueError("dimension mismatch in matmul")
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(m: Sequence[Sequence], v: Sequence) -> list:
    if m and len(m[0]) != len(v):
        raise ValueError("dimension mismatch in mat_vec")
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def dot(v: Sequence, w: Sequence) -> object:
    if len(v) != len(w):
        raise ValueError("dimension mismatch in dot")
    return sum(x * y for x, y in zip(v, w))


def require_square(m: Sequence[Sequence]) -> int:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    return n


def is_symmetric(m: Sequence[Sequence]) -> bool:
    n = len(m)
    if any(len(row) != n for row in m):
        return False
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i))


def require_symmetric(m: Sequence[Sequence]) -> int:
    if not is_symmetric(m):
        raise ValueError("matrix is not symmetric")
    return len(m)


def det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant via Bareiss fraction-free elimination."""
    n = require_square(m)
    if n == 0:
        return 1
    a = copy_matrix(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            aik = a[i][k]
            akk = a[k][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                # Bareiss: the division is exact.
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _swap_rows(m: IntMatrix, i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: IntMatrix, i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def smith_normal_form(
    m: Sequence[Sequence[int]],
) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``d`` with unimodular ``u``, ``v``: u*m*v = d.

    The diagonal of ``d`` is nonnegative with d1 | d2 | ... ; pivots are
    chosen by minimal absolute value.  Works for any rectangular matrix.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(row) != cols for row in m):
        raise ValueError("ragged matrix")
    a = copy_matrix(m)
    u = identity(rows)
    v = identity(cols)

    def row_op(i: int, k: int, q: int) -> None:
        # row_i -= q * row_k
        for mat in (a, u):
            ri, rk = mat[i], mat[k]
            for j in range(len(ri)):
                ri[j] -= q * rk[j]

    def col_op(j: int, k: int, q: int) -> None:
        # col_j -= q * col_k
        for mat in (a, v):
            for row in mat:
                row[j] -= q * row[k]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # locate the smallest nonzero entry of the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            _swap_rows(a, t, bi)
            _swap_rows(u, t, bi)
        if bj != t:
            _swap_cols(a, t, bj)
            _swap_cols(v, t, bj)
        # clear row and column t; restarts pull smaller pivots into place
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t] != 0:
                        _swap_rows(a, t, i)
                        _swap_rows(u, t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j] != 0:
                        _swap_cols(a, t, j)
                        _swap_cols(v, t, j)
                        dirty = True
        # enforce divisibility of the trailing block by the pivot
        p = a[t][t]
        fix = next(
            (
                (i, j)
                for i in range(t + 1, rows)
                for j in range(t + 1, cols)
                if a[i][j] % p != 0
            ),
            None,
        )
        if fix is not None:
            row_op(t, fix[0], -1)  # add row fix[0] to row t
            continue
        t += 1

    for i in range(min(rows, cols)):
        if a[i][i] < 0:
            for j in range(cols):
                a[i][j] = -a[i][j]
            for j in range(rows):
                u[i][j] = -u[i][j]
    return a, u, v


def kernel_basis(m: Sequence[Sequence[int]]) -> list[IntVector]:
    """Basis of the integer kernel {x : m*x = 0}, saturated in Z^cols."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return identity(cols)
    d, _, v = smith_normal_form(m)
    rank = sum(1 for i in range(min(rows, cols)) if d[i][i] != 0)
    return [[v[i][j] for i in range(cols)] for j in range(rank, cols)]


def signature(m: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """Exact inertia (positive, zero, negative) of a symmetric matrix.

    Symmetric elimination over the rationals; a fully degenerate diagonal is
    handled by splitting off a hyperbolic 2x2 block, which contributes one
    eigenvalue of each sign.
    """
    n = require_symmetric(m)
    a = [[Fraction(x) for x in row] for row in m]
    active = list(range(n))
    pos = neg = zero = 0
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is not None:
            if a[piv][piv] > 0:
                pos += 1
            else:
                neg += 1
            active.remove(piv)
            p = a[piv][piv]
            for r in active:
                if a[r][piv] == 0:
                    continue
                f = a[r][piv] / p
                for s in active:
                    a[r][s] -= f * a[piv][s]
            for r in active:
                a[r][piv] = a[piv][r] = Fraction(0)
            continue
        pair = next(
            ((i, j) for i in active for j in active if i < j and a[i][j] != 0),
            None,
        )
        if pair is None:
            zero += len(active)
            break
        i, j = pair
        pos += 1
        neg += 1
        active.remove(i)
        active.remove(j)
        p = a[i][j]
        for r in active:
            ci, cj = a[r][i], a[r][j]
            if ci == 0 and cj == 0:
                continue
            for s in active:
                # Schur complement of the block [[0,p],[p,0]]
                a[r][s] -= (ci * a[j][s] + cj * a[i][s]) / p
        for r in active:
            a[r][i] = a[i][r] = a[r][j] = a[j][r] = Fraction(0)
    return pos, zero, neg


def solve(a: Sequence[Sequence], b: Sequence) -> RatVector | None:
    """Exact solution of a*x = b, or None when the system is inconsistent.

    Underdetermined systems return one particular solution (free variables
    set to zero).
    """
    rows = len(a)
    if rows != len(b):
        raise ValueError("dimension mismatch in solve")
    cols = len(a[0]) if rows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pr = aug[r]
        inv = 1 / pr[c]
        for j in range(c, cols + 1):
            pr[j] *= inv
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                for j in range(c, cols + 1):
                    aug[i][j] -= f * pr[j]
        pivots.append((r, c))
        r += 1
        if r == rows:
            break
    if any(aug[i][cols] != 0 for i in range(r, rows)):
        return None
    x = [Fraction(0)] * cols
    for i, c in pivots:
        x[c] = aug[i][cols]
    return x


def solve_matrix(a: Sequence[Sequence], b: Sequence[Sequence]) -> RatMatrix | None:
    """Solve a*X = b column by column; None if any column is inconsistent."""
    cols_b = transpose(b)
    sols = []
    for col in cols_b:
        s = solve(a, col)
        if s is None:
            return None
        sols.append(s)
    return transpose(sols)


def inverse_unimodular(u: Sequence[Sequence[int]]) -> IntMatrix:
    """Inverse of a matrix with determinant +-1; entries stay integral."""
    n = require_square(u)
    inv = solve_matrix(u, identity(n))
    if inv is None:
        raise ValueError("matrix is singular")
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def hermite_row_basis(rows: Sequence[Sequence[int]]) -> list[IntVector]:
    """Canonical basis (row-style Hermite form) of the lattice spanned by rows.

    Pivots are positive and entries above each pivot are reduced to lie in
    [0, pivot), so the result is a deterministic function of the row span.
    """
    if not rows:
        return []
    cols = len(rows[0])
    basis: list[IntVector] = []  # kept in echelon order by pivot column
    piv_col: list[int] = []

    def first_nonzero(v: Sequence[int]) -> int | None:
        return next((j for j, x in enumerate(v) if x != 0), None)

    for row in rows:
        v = list(row)
        if len(v) != cols:
            raise ValueError("ragged matrix")
        while True:
            j = first_nonzero(v)
            if j is None:
                break
            k = next((idx for idx, pc in enumerate(piv_col) if pc == j), None)
            if k is None:
                insert = next(
                    (idx for idx, pc in enumerate(piv_col) if pc > j), len(piv_col)
                )
                basis.insert(insert, v)
                piv_col.insert(insert, j)
                break
            p = basis[k][j]
            q = v[j] // p
            if q:
                v = [x - q * y for x, y in zip(v, basis[k])]
            if v[j] != 0:
                # remainder became the smaller pivot: swap and keep reducing
                basis[k], v = v, basis[k]
            elif first_nonzero(v) == j:
                raise AssertionError("reduction failed")
    # normalize: positive pivots, reduce entries above each pivot
    for k in range(len(basis)):
        if basis[k][piv_col[k]] < 0:
            basis[k] = [-x for x in basis[k]]
    for k in range(len(basis) - 1, -1, -1):
        j = piv_col[k]
        p = basis[k][j]
        for i in range(k):
            q = basis[i][j] // p
            if q:
                basis[i] = [x - q * y for x, y in zip(basis[i], basis[k])]
    return basis


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else 0


def gcd_vector(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def isqrt_exact(n: int) -> int:
    """Integer square root of a perfect square; raises otherwise."""
    if n < 0:
        raise ValueError("negative argument")
    r = isqrt(n)
    if r * r != n:
        raise ValueError(f"{n} is not a perfect square")
    return r
