from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from adefold import intmat

small = st.integers(min_value=-6, max_value=6)


def int_matrices(min_rows=1, max_rows=4, min_cols=1, max_cols=4):
    return st.integers(min_rows, max_rows).flatmap(
        lambda m: st.integers(min_cols, max_cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def symmetric_matrices(max_n=5):
    def build(n):
        return st.lists(small, min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2).map(
            lambda xs: _fill_symmetric(n, xs)
        )

    return st.integers(1, max_n).flatmap(build)


def _fill_symmetric(n, xs):
    m = [[0] * n for _ in range(n)]
    it = iter(xs)
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = next(it)
    return m


def _sympy_invariants(a):
    d = sympy_snf(sympy.Matrix(a), domain=sympy.ZZ)
    return sorted(abs(int(d[i, i])) for i in range(min(d.shape)) if d[i, i] != 0)


@given(int_matrices())
def test_smith_form_matches_sympy(a):
    diag, U, V = intmat.smith_normal_form(a)
    assert sorted(d for d in diag if d) == _sympy_invariants(a)


@given(int_matrices())
def test_smith_transforms_are_unimodular_and_diagonalise(a):
    diag, U, V = intmat.smith_normal_form(a)
    D = intmat.matmul(intmat.matmul(U, a), V)
    m, n = len(a), len(a[0])
    for i in range(m):
        for j in range(n):
            assert D[i][j] == (diag[i] if i == j else 0)
    assert abs(intmat.det(U)) == 1 and abs(intmat.det(V)) == 1
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(nz[k + 1] % nz[k] == 0 for k in range(len(nz) - 1))


@pytest.mark.parametrize(
    "a, factors",
    [
        ([[2, 0], [0, 3]], [1, 6]),
        ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
        ([[2, -1], [-1, 2]], [1, 3]),
        ([[0, 0], [0, 0]], []),
    ],
)
def test_invariant_factors_frozen(a, factors):
    assert intmat.invariant_factors(a) == factors


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_sympy(a):
    assert intmat.det(a) == sympy.Matrix(a).det()


@given(int_matrices())
def test_integer_kernel_is_a_saturated_basis(a):
    n = len(a[0])
    ker = intmat.integer_kernel(a, ncols=n)
    assert len(ker) == n - intmat.rank(a)
    for v in ker:
        assert all(x == 0 for x in intmat.matvec(a, v))
    if ker:
        # saturated: all invariant factors of the basis are 1
        assert intmat.invariant_factors(ker) == [1] * len(ker)


@given(int_matrices())
def test_hermite_form_spans_same_module(a):
    h = intmat.hermite_normal_form(a)
    assert intmat.hermite_normal_form(h) == h
    # every original row is an integer combination of the Hermite rows and vice versa
    for row in a:
        if any(row):
            y = intmat.solve_left(h, row)
            assert y is not None and all(Fraction(t).denominator == 1 for t in y)
    assert len(h) == intmat.rank(a)


@given(symmetric_matrices())
def test_signature_matches_eigenvalues(g):
    pos, neg, zero = intmat.signature(g)
    ev = np.linalg.eigvalsh(np.array(g, dtype=float))
    tol = 1e-9
    assert (pos, neg, zero) == (int((ev > tol).sum()), int((ev < -tol).sum()), int((abs(ev) <= tol).sum()))


def test_signature_with_zero_diagonal():
    assert intmat.signature([[0, 1], [1, 0]]) == (1, 1, 0)
    assert intmat.signature([[0, 0], [0, 0]]) == (0, 0, 2)
    assert intmat.signature([[0, 1, 0], [1, 0, 0], [0, 0, -2]]) == (1, 2, 0)


def test_inverse_and_solve_left():
    a = [[2, 1], [1, 1]]
    assert intmat.matmul(a, intmat.inverse(a)) == [[1, 0], [0, 1]]
    assert intmat.solve_left([[1, 0], [0, 2]], [3, 3]) == [3, Fraction(3, 2)]
    assert intmat.solve_left([[1, 0]], [0, 1]) is None


def test_primitive_and_clear_denominators():
    assert intmat.primitive([4, -6, 0]) == (2, -3, 0)
    assert intmat.clear_denominators([Fraction(1, 2), Fraction(1, 3)]) == [3, 2]
