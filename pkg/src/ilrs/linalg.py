"""Dense Gaussian elimination over a GF (any layer). Matrices are lists of rows."""
from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def rref(F, A: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    Only the first ``ncols`` columns are used as pivot candidates, so an
    augmented matrix can be reduced without pivoting on its right-hand side."""
    M = [list(r) for r in A]
    if not M:
        return M, []
    width = len(M[0])
    ncols = width if ncols is None else ncols
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(M)) if M[r][col]), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = F.inv(M[row][col])
        M[row] = [F.mul(inv, v) for v in M[row]]
        prow = M[row]
        for r in range(len(M)):
            if r != row and M[r][col]:
                c = M[r][col]
                M[r] = [F.sub(a, F.mul(c, b)) for a, b in zip(M[r], prow)]
        pivots.append(col)
        row += 1
        if row == len(M):
            break
    return M, pivots


def rank(F, A: Sequence[Sequence[int]]) -> int:
    return len(rref(F, A)[1])


def solve(F, A: Sequence[Sequence[int]], b: Sequence[int]):
    """Solve A x = b.  Returns (x, nullity) with x one particular solution, or
    (None, nullity) if inconsistent.  Free variables are set to zero."""
    n = len(A[0]) if A else 0
    aug = [list(r) + [v] for r, v in zip(A, b)]
    if not aug:
        return [0] * n, n
    R, piv = rref(F, aug, n)
    for r in R[len(piv):]:
        if r[n]:
            return None, n - len(piv)
    x = [0] * n
    for i, c in enumerate(piv):
        x[c] = R[i][n]
    return x, n - len(piv)


def kernel(F, A: Sequence[Sequence[int]], n: int | None = None) -> Matrix:
    """Basis of the right kernel {x : A x = 0}."""
    n = (len(A[0]) if A else 0) if n is None else n
    if not A:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    R, piv = rref(F, A)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = F.neg(R[i][f])
        basis.append(v)
    return basis


def inverse(F, A: Sequence[Sequence[int]]) -> Matrix:
    n = len(A)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(A)]
    R, piv = rref(F, aug, n)
    if len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in R]


def matmul(F, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    if not B:
        return [[] for _ in A]
    cols = list(zip(*B))
    out = []
    for r in A:
        row = []
        for c in cols:
            acc = 0
            for a, b in zip(r, c):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            row.append(acc)
        out.append(row)
    return out


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(c) for c in zip(*A)]
