"""Exact integer and rational matrix routines.

Matrices are plain nested lists (or tuples) of ``int`` / ``Fraction``.
Everything here is exact; nothing falls back to floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = Sequence[Sequence]


def to_fraction_matrix(a: Matrix) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in a]


def as_int_matrix(a: Matrix) -> tuple[tuple[int, ...], ...]:
    """Convert to a tuple-of-tuples of ints, refusing non-integral entries."""
    out = []
    for row in a:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError(f"non-integral entry {x}")
            r.append(int(x))
        out.append(tuple(r))
    return tuple(out)


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> list[list]:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Matrix, b: Matrix) -> list[list]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def bilinear(u: Sequence, gram: Matrix, v: Sequence):
    """u^T G v."""
    return sum(ui * sum(g * vj for g, vj in zip(row, v)) for ui, row in zip(u, gram) if ui)


def is_symmetric(a: Matrix) -> bool:
    n = len(a)
    return all(len(row) == n for row in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n)
    )


def det(a: Matrix) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    m = to_fraction_matrix(a)
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        piv = m[c][c]
        result *= piv
        for r in range(c + 1, n):
            f = m[r][c] / piv
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return result


def rref(a: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = to_fraction_matrix(a)
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    if not a:
        return 0
    return len(rref(a)[1])


def nullspace(a: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Rational basis of {x : A x = 0}."""
    if not a:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    m, pivots = rref(a)
    n = len(m[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(v)
    return basis


def inverse(a: Matrix) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(to_fraction_matrix(a))]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in m]


def solve_left(rows: Matrix, target: Sequence) -> list[Fraction] | None:
    """Find y with y · rows = target, or None when target is not in the row span."""
    k = len(rows)
    if k == 0:
        return [] if all(x == 0 for x in target) else None
    # columns of the system are the given rows
    aug = [[rows[i][c] for i in range(k)] + [target[c]] for c in range(len(target))]
    m, pivots = rref(aug)
    if k in pivots:
        return None
    y = [Fraction(0)] * k
    for i, p in enumerate(pivots):
        y[p] = m[i][k]
    return y


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def clear_denominators(v: Sequence) -> list[int]:
    """Smallest positive integer multiple of a rational vector."""
    from math import lcm

    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in v]


def smith_normal_form(a: Matrix) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Smith normal form of an integer matrix.

    Returns ``(diag, U, V)`` with ``U @ A @ V`` diagonal, ``U`` and ``V``
    unimodular, and ``diag`` the diagonal entries (length min(m, n)),
    non-negative and each dividing the next.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    A = [list(map(int, row)) for row in a]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row_dst += f * row_src
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for row in A:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            swap_rows(t, pi)
            swap_cols(t, pj)
            dirty = False
            for i in range(t + 1, m):
                q = A[i][t] // A[t][t]
                if q:
                    add_row(t, i, -q)
                dirty |= A[i][t] != 0
            for j in range(t + 1, n):
                q = A[t][j] // A[t][t]
                if q:
                    add_col(t, j, -q)
                dirty |= A[t][j] != 0
            if dirty:
                continue
            # pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if t < m and t < n and A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    diag = [A[i][i] for i in range(min(m, n))]
    return diag, U, V


def invariant_factors(a: Matrix) -> list[int]:
    """Nonzero Smith invariant factors of an integer matrix."""
    if not a or not a[0]:
        return []
    return [d for d in smith_normal_form(a)[0] if d != 0]


def hermite_normal_form(rows: Matrix) -> list[list[int]]:
    """Row-style Hermite normal form; zero rows dropped.

    The result spans the same Z-module as ``rows`` and is canonical for it.
    """
    A = [list(map(int, r)) for r in rows if any(r)]
    if not A:
        return []
    n = len(A[0])
    out_row = 0
    for c in range(n):
        # Euclid down column c on rows out_row..
        while True:
            nz = [i for i in range(out_row, len(A)) if A[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][c]))
            A[out_row], A[p] = A[p], A[out_row]
            done = True
            for i in range(out_row + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[out_row][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[out_row])]
                    done = done and A[i][c] == 0
            if done:
                break
        if out_row < len(A) and A[out_row][c]:
            if A[out_row][c] < 0:
                A[out_row] = [-x for x in A[out_row]]
            piv = A[out_row][c]
            for i in range(out_row):
                q = A[i][c] // piv
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[out_row])]
            out_row += 1
            if out_row == len(A):
                break
    return [r for r in A[:out_row]]


def integer_kernel(a: Matrix, ncols: int | None = None) -> list[list[int]]:
    """Z-basis (as rows, in Hermite form) of {x in Z^n : A x = 0} for rational A."""
    if not a:
        n = ncols or 0
        return identity(n)
    A = [clear_denominators(row) for row in a]
    n = len(A[0])
    diag, _, V = smith_normal_form(A)
    r = sum(1 for d in diag if d)
    cols = [[V[i][j] for i in range(n)] for j in range(r, n)]
    return hermite_normal_form(cols)


def signature(gram: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric rational matrix.

    Congruence diagonalisation over Q; Sylvester's law makes the counts
    basis independent.
    """
    m = to_fraction_matrix(gram)
    n = len(m)
    pos = neg = 0
    active = list(range(n))
    while active:
        p = next((i for i in active if m[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in active for j in active if i < j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # b_i <- b_i + b_j; with a zero diagonal the new (i, i) entry is 2 m_ij
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            p = i
        piv = m[p][p]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        active.remove(p)
        col = {i: m[i][p] for i in active}
        for i in active:
            if col[i]:
                for j in active:
                    m[i][j] -= col[i] * col[j] / piv
    return pos, neg, n - pos - neg
