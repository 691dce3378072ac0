"""Prime-field arithmetic and dense polynomial helpers.

Field elements are plain Python ints kept in canonical form ``0 <= a < p``.
Polynomials are lists of coefficients indexed by degree with trailing zeros
trimmed, so the zero polynomial is ``[]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Poly = list[int]

# Deterministic Miller-Rabin witnesses for n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for w in _MR_WITNESSES:
        if n % w == 0:
            return n == w
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    c = n + 1
    while not is_prime(c):
        c += 1
    return c


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"modulus {self.p!r} is not prime")

    def __call__(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        return ff_inv(a, self)

    def div(self, a: int, b: int) -> int:
        return a * ff_inv(b, self) % self.p

    def pow(self, a: int, e: int) -> int:
        return pow(a, e, self.p)

    def dot(self, xs: Sequence[int], ys: Sequence[int]) -> int:
        if len(xs) != len(ys):
            raise ValueError(f"length mismatch: {len(xs)} != {len(ys)}")
        return sum(x * y for x, y in zip(xs, ys)) % self.p

    def elements(self) -> range:
        return range(self.p)


def ff_inv(a: int, F: PrimeField) -> int:
    a %= F.p
    if a == 0:
        raise ZeroDivisionError("no inverse of zero")
    return pow(a, F.p - 2, F.p)


# -- polynomials -------------------------------------------------------------


def poly_trim(f: Iterable[int]) -> Poly:
    out = list(f)
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_deg(f: Sequence[int]) -> int:
    """Degree of a trimmed polynomial; -1 for the zero polynomial."""
    return len(f) - 1


def poly_coeff(f: Sequence[int], d: int) -> int:
    return f[d] if 0 <= d < len(f) else 0


def poly_eval(f: Sequence[int], x: int, F: PrimeField) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % F.p
    return acc


def poly_add(f: Sequence[int], g: Sequence[int], F: PrimeField) -> Poly:
    n = max(len(f), len(g))
    return poly_trim(
        (poly_coeff(f, i) + poly_coeff(g, i)) % F.p for i in range(n)
    )


def poly_sub(f: Sequence[int], g: Sequence[int], F: PrimeField) -> Poly:
    n = max(len(f), len(g))
    return poly_trim(
        (poly_coeff(f, i) - poly_coeff(g, i)) % F.p for i in range(n)
    )


def poly_scale(f: Sequence[int], c: int, F: PrimeField) -> Poly:
    return poly_trim(a * c % F.p for a in f)


def poly_mul(f: Sequence[int], g: Sequence[int], F: PrimeField) -> Poly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return poly_trim(c % F.p for c in out)


def poly_divmod(f: Sequence[int], g: Sequence[int], F: PrimeField) -> tuple[Poly, Poly]:
    g = poly_trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = poly_trim(f)
    if len(rem) < len(g):
        return [], rem
    lead_inv = ff_inv(g[-1], F)
    quot = [0] * (len(rem) - len(g) + 1)
    rem = list(rem)
    for shift in range(len(rem) - len(g), -1, -1):
        c = rem[shift + len(g) - 1] * lead_inv % F.p
        quot[shift] = c
        if c:
            for j, b in enumerate(g):
                rem[shift + j] = (rem[shift + j] - c * b) % F.p
    return poly_trim(quot), poly_trim(rem[: len(g) - 1])


def poly_from_roots(roots: Iterable[int], F: PrimeField) -> Poly:
    """Monic polynomial prod (x - r)."""
    out: Poly = [1]
    for r in roots:
        out = poly_mul(out, [-r % F.p, 1], F)
    return out


def lagrange_interpolate(points: Sequence[tuple[int, int]], F: PrimeField) -> Poly:
    """Unique polynomial of degree < len(points) through ``points``."""
    if not points:
        raise ValueError("need at least one point")
    xs = [x % F.p for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("evaluation points not distinct")
    ys = [y % F.p for _, y in points]
    full = poly_from_roots(xs, F)
    acc = [0] * len(xs)
    for xi, yi in zip(xs, ys):
        if yi == 0:
            continue
        # full / (x - xi) by synthetic division
        basis, _ = poly_divmod(full, [-xi % F.p, 1], F)
        denom = poly_eval(basis, xi, F)
        c = yi * ff_inv(denom, F) % F.p
        for d, b in enumerate(basis):
            acc[d] = (acc[d] + c * b) % F.p
    return poly_trim(acc)
