"""Tests for the exact linear algebra kernel.

Determinants are cross-checked against naive Laplace expansion, signatures
against Descartes' rule applied to the (real-rooted) characteristic
polynomial computed by division-free Faddeev-LeVerrier.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from k3lattice import exact

# ---------------------------------------------------------------------------
# oracles


def laplace_det(m):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * laplace_det(minor)
    return total


def charpoly(m):
    """Coefficients of det(xI - m), highest degree first (Faddeev-LeVerrier)."""
    n = len(m)
    coeffs = [Fraction(1)]
    a = [[Fraction(x) for x in row] for row in m]
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A * M_{k-1} + c_{k-1} I
        mk = exact.matmul(a, mk)
        for i in range(n):
            mk[i][i] += coeffs[-1]
        trace = sum(sum(a[i][j] * mk[j][i] for j in range(n)) for i in range(n))
        coeffs.append(-trace / k)
    return coeffs


def signature_by_descartes(m):
    """Inertia from sign changes in the characteristic polynomial, which is
    exact because symmetric matrices have real spectra."""
    coeffs = charpoly(m)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    zero = len(m) + 1 - len(coeffs)
    signs = [c for c in coeffs if c != 0]
    pos = sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))
    return pos, zero, len(m) - zero - pos


small_square = st.integers(1, 5).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n
    )
)


def symmetric(n, lo=-6, hi=6):
    return st.lists(
        st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n
    ).map(lambda m: [[m[i][j] if i <= j else m[j][i] for j in range(n)] for i in range(n)])


# ---------------------------------------------------------------------------
# det


def test_det_examples():
    assert exact.det([[2, 1], [1, 2]]) == 3
    assert exact.det([[5]]) == 5
    assert exact.det([]) == 1
    assert exact.det([[0, 1], [1, 0]]) == -1


def test_det_requires_square():
    with pytest.raises(ValueError):
        exact.det([[1, 2, 3], [4, 5, 6]])


@settings(max_examples=60, deadline=None)
@given(small_square)
def test_det_matches_laplace(m):
    assert exact.det(m) == laplace_det(m)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3),
    st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3),
)
def test_det_multiplicative_on_blocks(a, b):
    block = [row + [0, 0, 0] for row in a] + [[0, 0, 0] + row for row in b]
    assert exact.det(block) == exact.det(a) * exact.det(b)


def test_det_huge_entries_exact():
    big = 10**40
    m = [[big, 1], [1, big]]
    assert exact.det(m) == big * big - 1


# ---------------------------------------------------------------------------
# Smith normal form


def check_snf(m):
    d, u, v = exact.smith_normal_form(m)
    assert exact.matmul(exact.matmul(u, m), v) == d
    assert abs(exact.det(u)) == 1
    assert abs(exact.det(v)) == 1
    diag = [d[i][i] for i in range(min(len(m), len(m[0])))]
    for a, b in zip(diag, diag[1:]):
        assert a >= 0 and b >= 0
        if b != 0:
            assert a != 0 and b % a == 0
        for i, row in enumerate(d):
            for j, x in enumerate(row):
                if i != j:
                    assert x == 0
    return diag


def test_snf_identity():
    d, u, v = exact.smith_normal_form(exact.identity(3))
    assert d == u == v == exact.identity(3)


def test_snf_rank_one_negative():
    d, u, v = exact.smith_normal_form([[-2]])
    assert d == [[2]]
    assert exact.matmul(exact.matmul(u, [[-2]]), v) == [[2]]


@settings(max_examples=80, deadline=None)
@given(
    st.integers(1, 4),
    st.integers(1, 4),
    st.data(),
)
def test_snf_random(rows, cols, data):
    m = data.draw(
        st.lists(
            st.lists(st.integers(-12, 12), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    check_snf(m)


def test_snf_det_consistency():
    m = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    diag = check_snf(m)
    prod = 1
    for x in diag:
        prod *= x
    assert prod == abs(exact.det(m))


# ---------------------------------------------------------------------------
# kernels


def test_kernel_zero_matrix():
    assert exact.kernel_basis([[0, 0], [0, 0]]) == [[1, 0], [0, 1]]


def test_kernel_row():
    (v,) = exact.kernel_basis([[1, 1]])
    assert v in ([1, -1], [-1, 1])


def test_kernel_saturated():
    # the kernel of [[2, 4]] is generated by (2, -1), not (4, -2)
    (v,) = exact.kernel_basis([[2, 4]])
    assert sorted(map(abs, v)) == [1, 2]
    assert exact.gcd_vector(v) == 1


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=2, max_size=2
    )
)
def test_kernel_annihilates(m):
    for v in exact.kernel_basis(m):
        assert exact.mat_vec(m, v) == [0, 0]


# ---------------------------------------------------------------------------
# signature


def test_signature_examples():
    assert exact.signature([[0, 1], [1, 0]]) == (1, 0, 1)
    assert exact.signature([[2]]) == (1, 0, 0)
    assert exact.signature([[0]]) == (0, 1, 0)


def test_signature_non_symmetric_rejected():
    with pytest.raises(ValueError):
        exact.signature([[0, 1], [2, 0]])


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5).flatmap(symmetric))
def test_signature_matches_charpoly(m):
    assert exact.signature(m) == signature_by_descartes(m)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(symmetric))
def test_signature_counts_rank(m):
    pos, zero, neg = exact.signature(m)
    assert pos + zero + neg == len(m)
    assert zero == len(exact.kernel_basis(m))


# ---------------------------------------------------------------------------
# solve


def test_solve_identity():
    assert exact.solve(exact.identity(3), [1, 2, 3]) == [1, 2, 3]


def test_solve_inconsistent():
    assert exact.solve([[1, 1], [1, 1]], [1, 2]) is None


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        exact.solve([[1, 2]], [1, 2])


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(-8, 8), min_size=3, max_size=3), min_size=3, max_size=3
    ),
    st.lists(st.integers(-8, 8), min_size=3, max_size=3),
)
def test_solve_verifies(a, b):
    x = exact.solve(a, b)
    if x is not None:
        assert exact.mat_vec(a, x) == [Fraction(t) for t in b]


# ---------------------------------------------------------------------------
# Hermite row basis


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=5
    )
)
def test_hermite_preserves_span(rows):
    basis = exact.hermite_row_basis(rows)
    # every original row reduces to zero against the basis
    for row in rows:
        v = list(row)
        for b in basis:
            piv = next((j for j, x in enumerate(b) if x != 0), None)
            if piv is not None and v[piv] % b[piv] == 0:
                q = v[piv] // b[piv]
                v = [x - q * y for x, y in zip(v, b)]
        assert all(x == 0 for x in v)


def test_hermite_canonical():
    a = exact.hermite_row_basis([[2, 0], [0, 2], [1, 1]])
    b = exact.hermite_row_basis([[1, 1], [1, -1]])
    assert a == b == [[1, 1], [0, 2]]


def test_inverse_unimodular():
    u = [[1, 2], [1, 3]]
    inv = exact.inverse_unimodular(u)
    assert exact.matmul(u, inv) == exact.identity(2)
    with pytest.raises(ValueError):
        exact.inverse_unimodular([[2, 0], [0, 1]])
