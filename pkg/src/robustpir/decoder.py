"""Error-and-erasure decoding of GRS codes.

Erased coordinates are punctured away and the surviving Reed-Solomon word
(multipliers divided out) is decoded with Gao's algorithm, which corrects up
to ``(n_surviving - k) // 2`` errors.  With ``s`` erasures that is exactly the
``2e + s <= d - 1`` guarantee.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Optional, Sequence

from .field import (
    Poly,
    ff_inv,
    lagrange_interpolate,
    poly_deg,
    poly_divmod,
    poly_from_roots,
    poly_mul,
    poly_sub,
    poly_trim,
)
from .grs import GrsCode, grs_encode

# Erasure mark in a received word.
ERASED = None

ReceivedWord = Sequence[Optional[int]]

BRUTE_FORCE_LIMIT = 10**6


class DecodingFailure(Exception):
    """No codeword lies within the error/erasure budget."""


class AmbiguousDecoding(Exception):
    """Several codewords are equally close to the received word."""


def _gao(points: list[tuple[int, int]], k: int, F) -> Poly:
    """Message polynomial of degree < k within half the distance, or raise."""
    N = len(points)
    if N < k:
        raise DecodingFailure(f"only {N} symbols survive, need at least {k}")
    g0 = poly_from_roots((x for x, _ in points), F)
    g1 = lagrange_interpolate(points, F)
    # Partial extended Euclid tracking r = u*g1 (mod g0).
    r_prev, r = g0, g1
    u_prev, u = [], [1]
    while 2 * poly_deg(r) >= N + k:
        q, rem = poly_divmod(r_prev, r, F)
        r_prev, r = r, rem
        u_prev, u = u, poly_sub(u_prev, poly_mul(q, u, F), F)
    f, rem = poly_divmod(r, u, F)
    if rem or poly_deg(f) >= k:
        raise DecodingFailure("decoding failure")
    return f


def decode_errors_erasures(C: GrsCode, rw: ReceivedWord) -> tuple[list[int], Poly]:
    """Return ``(codeword, message polynomial)`` or raise DecodingFailure."""
    if len(rw) != C.n:
        raise ValueError(f"received word has length {len(rw)}, code length {C.n}")
    F = C.F
    alive = [j for j, y in enumerate(rw) if y is not ERASED]
    points = [(C.alpha[j], rw[j] % F.p * ff_inv(C.v[j], F) % F.p) for j in alive]
    f = _gao(points, C.k, F)
    codeword = grs_encode(C, f + [0] * (C.k - len(f)))
    budget = (len(alive) - C.k) // 2
    errors = sum(1 for j in alive if codeword[j] != rw[j] % F.p)
    if errors > budget:
        raise DecodingFailure("decoding failure")
    return codeword, poly_trim(f)


@lru_cache(maxsize=64)
def _all_codewords(C: GrsCode) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(grs_encode(C, msg)) for msg in itertools.product(range(C.F.p), repeat=C.k)
    )


def brute_force_decode(C: GrsCode, rw: ReceivedWord) -> list[int]:
    """Nearest codeword by exhaustive enumeration (test oracle)."""
    if len(rw) != C.n:
        raise ValueError(f"received word has length {len(rw)}, code length {C.n}")
    if C.F.p**C.k > BRUTE_FORCE_LIMIT:
        raise ValueError(f"q^k = {C.F.p}^{C.k} exceeds the enumeration budget")
    alive = [j for j, y in enumerate(rw) if y is not ERASED]
    best: tuple[int, ...] | None = None
    best_dist = C.n + 1
    tied = False
    for cw in _all_codewords(C):
        dist = sum(1 for j in alive if cw[j] != rw[j] % C.F.p)
        if dist < best_dist:
            best, best_dist, tied = cw, dist, False
        elif dist == best_dist:
            tied = True
    if tied:
        raise AmbiguousDecoding("ambiguous")
    assert best is not None
    return list(best)
