"""Dense matrices over a prime field (lists of row lists)."""

from __future__ import annotations

from typing import Sequence

from .field import PrimeField, ff_inv

Matrix = list[list[int]]


def rref(rows: Sequence[Sequence[int]], F: PrimeField) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    M = [[a % F.p for a in row] for row in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(M)) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = ff_inv(M[r][c], F)
        M[r] = [a * inv % F.p for a in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % F.p for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence[int]], F: PrimeField) -> int:
    return len(rref(rows, F)[0])


def same_row_space(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], F: PrimeField) -> bool:
    return rref(a, F)[0] == rref(b, F)[0]


def det(M: Sequence[Sequence[int]], F: PrimeField) -> int:
    n = len(M)
    A = [[a % F.p for a in row] for row in M]
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    d = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if A[i][c]), None)
        if pr is None:
            return 0
        if pr != c:
            A[c], A[pr] = A[pr], A[c]
            d = -d
        d = d * A[c][c] % F.p
        inv = ff_inv(A[c][c], F)
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv % F.p
                A[i] = [(x - f * y) % F.p for x, y in zip(A[i], A[c])]
    return d % F.p


def solve(A: Sequence[Sequence[int]], b: Sequence[int], F: PrimeField) -> list[int]:
    """Solve the square system ``A x = b``; raises if ``A`` is singular."""
    n = len(A)
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, F)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return [R[i][n] for i in range(n)]


def transpose(M: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*M)]


def column(M: Sequence[Sequence[int]], j: int) -> list[int]:
    return [row[j] for row in M]


def mat_vec(M: Sequence[Sequence[int]], x: Sequence[int], F: PrimeField) -> list[int]:
    return [F.dot(row, x) for row in M]


def vec_mat(x: Sequence[int], M: Sequence[Sequence[int]], F: PrimeField) -> list[int]:
    """Row vector times matrix."""
    if len(x) != len(M):
        raise ValueError(f"length mismatch: {len(x)} != {len(M)}")
    ncols = len(M[0]) if M else 0
    return [sum(x[i] * M[i][j] for i in range(len(M))) % F.p for j in range(ncols)]
