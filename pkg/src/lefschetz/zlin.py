"""Exact integer linear algebra.

Matrices are lists of rows of Python ints (arbitrary precision).  Rational
arithmetic uses :class:`fractions.Fraction`; nothing here touches floats.
"""
from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from math import gcd

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    if len(A[0]) != len(B):
        raise ValueError("dimension mismatch")
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(r) for r in zip(*A)]


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U M V = D``, ``U`` and ``V`` unimodular.

    ``D`` is diagonal with nonnegative entries ``d_1 | d_2 | ...``.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    D = [list(r) for r in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in (D, V):
            for row in R:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for R in (D, U):
            R[dst] = [a + q * b for a, b in zip(R[dst], R[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for R in (D, V):
            for row in R:
                row[dst] += q * row[src]

    def neg_row(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (piv is None or abs(D[i][j]) < abs(D[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        done = False
            if done:
                # divisibility: the pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if D[i][j] % D[t][t]), None)
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                continue
            # move the smallest remaining entry of row/column t to the pivot
            best = (t, t)
            for i in range(t, m):
                if D[i][t] and abs(D[i][t]) < abs(D[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, n):
                if D[t][j] and abs(D[t][j]) < abs(D[best[0]][best[1]]):
                    best = (t, j)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
        if D[t][t] < 0:
            neg_row(t)
        t += 1
    return U, D, V


def smith_invariants(M: Sequence[Sequence[int]]) -> list[int]:
    if not M or not M[0]:
        return []
    _, D, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0])))]


def _columns(L: Sequence[Sequence[int]], dim: int) -> Matrix:
    # generators as columns of a dim x len(L) matrix
    return [[v[i] for v in L] for i in range(dim)]


def lattice_membership(v: Sequence[int], L: Sequence[Sequence[int]]) -> list[int] | None:
    """Integer coefficients ``c`` with ``sum c_j L_j = v``, or ``None``."""
    dim = len(v)
    if any(len(w) != dim for w in L):
        raise ValueError("generator length mismatch")
    if not L:
        return [] if not any(v) else None
    A = _columns(L, dim)
    U, D, V = smith_normal_form(A)
    # A x = v  <=>  D y = U v with x = V y
    b = mat_vec(U, v)
    k = len(L)
    y = [0] * k
    for i in range(dim):
        d = D[i][i] if i < k else 0
        if d == 0:
            if b[i]:
                return None
        else:
            if b[i] % d:
                return None
            y[i] = b[i] // d
    x = mat_vec(V, y)
    if mat_vec(A, x) != list(v):  # back-substitution check
        raise ArithmeticError("lattice membership failed verification")
    return x


def lattice_is_full(L: Sequence[Sequence[int]], rank: int) -> bool:
    """True iff ``L`` generates all of ``Z^rank``."""
    if any(len(w) != rank for w in L):
        raise ValueError("generator length mismatch")
    if len(L) < rank:
        return False
    inv = smith_invariants(_columns(L, rank))
    return len(inv) >= rank and all(d == 1 for d in inv[:rank])


def lattice_content(L: Sequence[Sequence[int]]) -> int:
    """Largest ``d >= 0`` with ``L`` inside ``d Z^n``; 0 for the zero lattice."""
    d = 0
    for w in L:
        for x in w:
            d = gcd(d, x)
    return d


def symplectic_form(n: int) -> Matrix:
    """``J`` with ``<a_i, b_i> = +1`` in the basis ``(a1, b1, ..., ag, bg)``."""
    if n % 2:
        raise ValueError("dimension must be even")
    J = [[0] * n for _ in range(n)]
    for i in range(0, n, 2):
        J[i][i + 1] = 1
        J[i + 1][i] = -1
    return J


def pairing(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(u[i] * v[i + 1] - u[i + 1] * v[i] for i in range(0, len(u), 2))


def transvection(c: Sequence[int]) -> Matrix:
    """Matrix of ``x -> x + <x, c> c``."""
    n = len(c)
    if n % 2:
        raise ValueError("length must be even")
    cols = []
    for k in range(n):
        e = [int(i == k) for i in range(n)]
        p = pairing(e, c)
        cols.append([e[i] + p * c[i] for i in range(n)])
    return transpose(cols)


def symplectic_check(M: Sequence[Sequence[int]]) -> bool:
    n = len(M)
    if n == 0 or n % 2 or any(len(r) != n for r in M):
        return False
    J = symplectic_form(n)
    return mat_mul(mat_mul(transpose(M), J), M) == J


def symplectic_inverse(M: Sequence[Sequence[int]]) -> Matrix:
    """``M^-1 = -J M^T J`` for symplectic ``M``."""
    J = symplectic_form(len(M))
    return [[-x for x in r] for r in mat_mul(mat_mul(J, transpose(M)), J)]


def form_signature(S: Sequence[Sequence[int | Fraction]]) -> int:
    """Signature of a symmetric matrix by exact congruence diagonalization."""
    n = len(S)
    if any(len(r) != n for r in S):
        raise ValueError("matrix must be square")
    A = [[Fraction(x) for x in r] for r in S]
    for i in range(n):
        for j in range(i):
            if A[i][j] != A[j][i]:
                raise ValueError("matrix is not symmetric")
    pos = neg = 0
    size = n
    while size:
        # find a nonzero diagonal pivot, else create one from an off-diagonal pair
        k = next((i for i in range(size) if A[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in range(size) for j in range(i + 1, size) if A[i][j] != 0),
                        None)
            if pair is None:
                break
            i, j = pair
            # e_i <- e_i + e_j makes A[i][i] = 2 A[i][j] != 0
            for r in range(size):
                A[r][i] += A[r][j]
            for c in range(size):
                A[i][c] += A[j][c]
            k = i
        # move pivot to the end and eliminate
        last = size - 1
        A[k], A[last] = A[last], A[k]
        for r in A:
            r[k], r[last] = r[last], r[k]
        p = A[last][last]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(last):
            f = A[i][last] / p
            if f:
                for j in range(last):
                    A[i][j] -= f * A[last][j]
        size = last
        A = [r[:size] for r in A[:size]]
    return pos - neg


def nullspace(M: Sequence[Sequence[int]]) -> Matrix:
    """Integer basis (as rows) of the rational kernel of ``M``."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    A = [[Fraction(x) for x in r] for r in M]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        A[r] = [x / pv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fc]
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        basis.append([int(x * den) for x in v])
    return basis
