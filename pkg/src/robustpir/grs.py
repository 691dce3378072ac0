"""Generalized Reed-Solomon codes, canonical generators and star products."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .field import PrimeField, poly_eval
from .linalg import rref


@dataclass(frozen=True)
class GrsCode:
    """GRS_k(alpha, v): codewords ``(v_i f(alpha_i))_i`` for ``deg f < k``."""

    F: PrimeField
    alpha: tuple[int, ...]
    v: tuple[int, ...]
    k: int

    def __post_init__(self):
        p = self.F.p
        object.__setattr__(self, "alpha", tuple(a % p for a in self.alpha))
        object.__setattr__(self, "v", tuple(a % p for a in self.v))
        n = len(self.alpha)
        if len(self.v) != n:
            raise ValueError(f"alpha has length {n} but v has length {len(self.v)}")
        if len(set(self.alpha)) != n:
            raise ValueError("evaluation points not distinct")
        if any(a == 0 for a in self.v):
            raise ValueError("column multipliers must be nonzero")
        if n >= p:
            raise ValueError(f"code length {n} requires a field larger than GF({p})")
        if not 1 <= self.k <= n:
            raise ValueError(f"dimension k={self.k} outside [1, {n}]")

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def d(self) -> int:
        return self.n - self.k + 1

    def __repr__(self) -> str:
        return f"GRS[{self.n},{self.k},{self.d}] over GF({self.F.p})"


@dataclass(frozen=True)
class GenMatrix:
    rows: tuple[tuple[int, ...], ...]
    # Monomial degree each row evaluates; None for non-monomial rows.
    row_degrees: tuple[int, ...] | None = None

    @property
    def n(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def column(self, j: int) -> list[int]:
        return [row[j] for row in self.rows]

    def stack(self, other: "GenMatrix") -> "GenMatrix":
        degs = None
        if self.row_degrees is not None and other.row_degrees is not None:
            degs = self.row_degrees + other.row_degrees
        return GenMatrix(self.rows + other.rows, degs)


def make_grs(F: PrimeField, alpha: Sequence[int], v: Sequence[int], k: int) -> GrsCode:
    return GrsCode(F, tuple(alpha), tuple(v), k)


def default_grs(F: PrimeField, n: int, k: int) -> GrsCode:
    """GRS_k on alpha = (1..n) with all-ones multipliers."""
    return GrsCode(F, tuple(range(1, n + 1)), (1,) * n, k)


def monomial_rows(
    F: PrimeField, alpha: Sequence[int], v: Sequence[int], degrees: Sequence[int]
) -> GenMatrix:
    """Rows ``(v_i alpha_i^deg)_i`` without validating alpha or v."""
    p = F.p
    rows = tuple(
        tuple(vi * pow(a, deg, p) % p for a, vi in zip(alpha, v)) for deg in degrees
    )
    return GenMatrix(rows, tuple(degrees))


def generator_matrix(C: GrsCode) -> GenMatrix:
    return monomial_rows(C.F, C.alpha, C.v, range(C.k))


def grs_encode(C: GrsCode, message: Sequence[int]) -> list[int]:
    if len(message) != C.k:
        raise ValueError(f"message length {len(message)} != k={C.k}")
    p = C.F.p
    return [vi * poly_eval(message, a, C.F) % p for a, vi in zip(C.alpha, C.v)]


def puncture(C: GrsCode, positions: Sequence[int]) -> GrsCode:
    """Restrict C to the given 0-indexed coordinates (dimension kept)."""
    return GrsCode(
        C.F,
        tuple(C.alpha[j] for j in positions),
        tuple(C.v[j] for j in positions),
        C.k,
    )


def star_vectors(a: Sequence[int], b: Sequence[int], F: PrimeField) -> list[int]:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} != {len(b)}")
    return [x * y % F.p for x, y in zip(a, b)]


def star_product_grs(C: GrsCode, D: GrsCode) -> GrsCode:
    if C.F != D.F:
        raise ValueError("codes over different fields")
    if C.alpha != D.alpha:
        raise ValueError("codes on different evaluation points")
    return GrsCode(
        C.F, C.alpha, tuple(star_vectors(C.v, D.v, C.F)), min(C.k + D.k - 1, C.n)
    )


def star_product_generic(A: GenMatrix, B: GenMatrix, F: PrimeField) -> GenMatrix:
    """Row basis (RREF) of span{a * b} over all row pairs."""
    if A.n != B.n:
        raise ValueError(f"length mismatch: {A.n} != {B.n}")
    products = [star_vectors(a, b, F) for a in A.rows for b in B.rows]
    basis, _ = rref(products, F)
    return GenMatrix(tuple(tuple(r) for r in basis))


def code_distances(C: GrsCode) -> tuple[int, int]:
    """(minimum distance, dual minimum distance) of an MDS code."""
    return C.n - C.k + 1, C.k + 1
