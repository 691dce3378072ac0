"""Robust PIR over GRS-coded storage.

Parameters, the E-matrix, query generation, server responses and the
user-side recovery that decodes the responses in the star code
C*D + C*E = GRS_{(nu+1)k+t-1}(alpha, v*w) and reads the file off the
top ``nu*k`` polynomial coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .decoder import DecodingFailure, ReceivedWord, decode_errors_erasures
from .field import PrimeField, next_prime, poly_coeff
from .grs import (
    GenMatrix,
    GrsCode,
    generator_matrix,
    grs_encode,
    monomial_rows,
    puncture,
    star_product_generic,
    star_product_grs,
)
from .linalg import rank, same_row_space


class InfeasibleParameters(ValueError):
    pass


class ConditionError(ValueError):
    """The codes do not satisfy the star-code conditions of the scheme."""


class RetrievalFailed(Exception):
    pass


@dataclass(frozen=True)
class SchemeParams:
    n: int
    k: int
    t: int
    b: int
    r: int
    nu: int
    n_prime: int
    d_star: int
    star_dim: int
    rate: Fraction

    def as_dict(self) -> dict:
        return {
            "n": self.n, "k": self.k, "t": self.t, "b": self.b, "r": self.r,
            "nu": self.nu, "n_prime": self.n_prime, "d_star": self.d_star,
            "star_dim": self.star_dim, "rate": str(self.rate),
        }


def compute_params(n: int, k: int, t: int, b: int = 0, r: int = 0) -> SchemeParams:
    """Largest nu with n >= (nu+1)k + t + 2b + r - 1, and the derived quantities."""
    if n < 1 or k < 1 or t < 1 or b < 0 or r < 0:
        raise ValueError(f"invalid parameters n={n} k={k} t={t} b={b} r={r}")
    overhead = k + t + 2 * b + r - 1
    nu = (n - overhead) // k
    if nu < 1:
        raise InfeasibleParameters(
            f"infeasible parameters: need n >= {2 * k + t + 2 * b + r - 1}, got n={n}"
        )
    n_prime = (nu + 1) * k + t + 2 * b + r - 1
    star_dim = (nu + 1) * k + t - 1
    d_star = n_prime - star_dim + 1
    return SchemeParams(n, k, t, b, r, nu, n_prime, d_star, star_dim, Fraction(nu * k, n_prime))


def default_modulus(n: int) -> int:
    return 17 if n <= 16 else next_prime(n)


def e_degrees(params: SchemeParams) -> list[int]:
    return [mu * params.k + params.t - 1 for mu in range(1, params.nu + 1)]


def build_E(params: SchemeParams, alpha: Sequence[int], w: Sequence[int], F: PrimeField) -> GenMatrix:
    """Rows ``w_j alpha_j^(mu k + t - 1)`` for mu = 1..nu."""
    if len(alpha) != params.n_prime or len(w) != params.n_prime:
        raise ValueError(
            f"alpha and w must have length n'={params.n_prime}, got {len(alpha)} and {len(w)}"
        )
    return monomial_rows(F, alpha, w, e_degrees(params))


def star_code(
    C: GrsCode, D: GrsCode, E: GenMatrix, params: Optional[SchemeParams] = None
) -> GrsCode:
    """The code C*D + C*E, checked against its span definition."""
    F = C.F
    if C.F != D.F or C.alpha != D.alpha:
        raise ValueError("C and D must share field and evaluation points")
    if E.n != C.n:
        raise ValueError(f"E has length {E.n}, code length {C.n}")
    nu = len(E.rows)
    GC = generator_matrix(C)
    cd = star_product_generic(GC, generator_matrix(D), F)
    ce = star_product_generic(GC, E, F)
    if len(ce.rows) != nu * C.k:
        raise ConditionError(f"C*E has rank {len(ce.rows)}, expected {nu * C.k}")
    both = cd.rows + ce.rows
    if rank(both, F) != len(cd.rows) + len(ce.rows):
        raise ConditionError("C*D and C*E intersect nontrivially")
    dim = C.k + D.k - 1 + nu * C.k
    if dim > C.n:
        raise ConditionError(f"star code dimension {dim} exceeds length {C.n}")
    w_v = star_product_grs(C, D).v
    star = GrsCode(F, C.alpha, w_v, dim)
    if not same_row_space(generator_matrix(star).rows, both, F):
        raise ConditionError("C*D + C*E is not the expected GRS code")
    if params is not None and star.d - 1 < 2 * params.b + params.r:
        raise ConditionError(
            f"d*-1 = {star.d - 1} < 2b+r = {2 * params.b + params.r}"
        )
    return star


@dataclass(frozen=True)
class PirScheme:
    """Everything the user needs for one deployment of the GRS scheme.

    ``C_full`` is the storage code on all n servers; ``servers`` are the
    0-indexed positions of the n' servers actually queried and ``C`` is
    ``C_full`` punctured to them.
    """

    F: PrimeField
    params: SchemeParams
    C_full: GrsCode
    servers: tuple[int, ...]
    C: GrsCode
    D: GrsCode
    E: GenMatrix
    star: GrsCode
    star_cd: GrsCode


def setup_scheme(
    F: PrimeField,
    n: int,
    k: int,
    t: int,
    b: int = 0,
    r: int = 0,
    alpha: Optional[Sequence[int]] = None,
    v: Optional[Sequence[int]] = None,
    w: Optional[Sequence[int]] = None,
    servers: Optional[Sequence[int]] = None,
) -> PirScheme:
    """Build codes for the scheme; ``servers`` are 1-indexed, default the first n'."""
    params = compute_params(n, k, t, b, r)
    alpha = tuple(range(1, n + 1)) if alpha is None else tuple(alpha)
    v = (1,) * n if v is None else tuple(v)
    w = (1,) * n if w is None else tuple(w)
    if len(w) != n:
        raise ValueError(f"w must have length n={n}")
    C_full = GrsCode(F, alpha, v, k)
    if servers is None:
        used = tuple(range(params.n_prime))
    else:
        used = tuple(s - 1 for s in servers)
        if len(used) != params.n_prime or len(set(used)) != len(used):
            raise ValueError(f"need {params.n_prime} distinct servers, got {servers}")
        if any(not 0 <= s < n for s in used):
            raise ValueError(f"server indices must lie in [1, {n}]")
    C = puncture(C_full, used)
    w_used = tuple(w[j] for j in used)
    D = GrsCode(F, C.alpha, w_used, t)
    E = build_E(params, C.alpha, w_used, F)
    star = star_code(C, D, E, params)
    return PirScheme(F, params, C_full, used, C, D, E, star, star_product_grs(C, D))


# -- randomness ----------------------------------------------------------------


def as_generator(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def split_rng(seed: int, n_servers: int):
    """Independent streams (queries, shared randomness, one per server) from a seed."""
    children = np.random.SeedSequence(seed).spawn(2 + n_servers)
    gens = [np.random.default_rng(c) for c in children]
    return gens[0], gens[1], gens[2:]


# -- queries and responses -------------------------------------------------------


@dataclass(frozen=True)
class QuerySet:
    queries: tuple[tuple[int, ...], ...]  # one length-(m*nu) vector per used server
    target_index: int
    rng_seed: Optional[int]


def make_queries(
    params: SchemeParams,
    C: GrsCode,
    D: GrsCode,
    E: GenMatrix,
    m: int,
    i: int,
    rng,
    zero_randomness: bool = False,
    U: Optional[Sequence[Sequence[int]]] = None,
) -> QuerySet:
    """q_j = U G_{D,j} + Delta_j, with Delta_j carrying E's column j in file i's rows.

    ``U`` overrides the random (m*nu) x t matrix; ``zero_randomness`` forces
    U = 0, leaving only the deterministic part.
    """
    if not 1 <= i <= m:
        raise IndexError(f"file index {i} outside [1, {m}]")
    if C.n != params.n_prime or D.n != params.n_prime or E.n != params.n_prime:
        raise ValueError(f"codes must have length n'={params.n_prime}")
    F = C.F
    p = F.p
    nu, t = params.nu, D.k
    seed = rng if isinstance(rng, int) else None
    rows = m * nu
    if U is not None:
        U = [[u % p for u in row] for row in U]
        if len(U) != rows or any(len(row) != t for row in U):
            raise ValueError(f"U must be {rows}x{t}")
    elif zero_randomness:
        U = [[0] * t for _ in range(rows)]
    else:
        U = as_generator(rng).integers(0, p, size=(rows, t)).tolist()
    GD = generator_matrix(D).rows
    base = (i - 1) * nu
    queries = []
    for j in range(params.n_prime):
        col = [GD[tau][j] for tau in range(t)]
        q = [sum(u * g for u, g in zip(U[row], col)) % p for row in range(rows)]
        for mu in range(nu):
            q[base + mu] = (q[base + mu] + E.rows[mu][j]) % p
        queries.append(tuple(q))
    return QuerySet(tuple(queries), i, seed)


def honest_response(q: Sequence[int], y: Sequence[int], F: PrimeField) -> int:
    return F.dot(q, y)


def symmetric_response(q: Sequence[int], y: Sequence[int], s: int, F: PrimeField) -> int:
    return (F.dot(q, y) + s) % F.p


def sample_shared_randomness(
    star_cd: GrsCode, rng, zero: bool = False, message: Optional[Sequence[int]] = None
) -> list[int]:
    """Uniform codeword of C*D handed out to the servers for symmetric PIR."""
    if message is not None:
        msg = list(message)
    elif zero:
        msg = [0] * star_cd.k
    else:
        msg = as_generator(rng).integers(0, star_cd.F.p, size=star_cd.k).tolist()
    return grs_encode(star_cd, msg)


def extract_file(params: SchemeParams, f: Sequence[int]) -> list[list[int]]:
    """File entry (mu, l) is the coefficient of degree mu*k + t - 1 + (l - 1)."""
    k, t = params.k, params.t
    return [
        [poly_coeff(f, mu * k + t - 1 + l) for l in range(k)]
        for mu in range(1, params.nu + 1)
    ]


def recover(params: SchemeParams, star: GrsCode, responses: ReceivedWord) -> list[list[int]]:
    """Decode the responses in the star code and extract the nu x k file."""
    if star.k != params.star_dim or star.n != params.n_prime:
        raise ValueError(f"star code {star!r} does not match parameters")
    try:
        _, f = decode_errors_erasures(star, responses)
    except DecodingFailure as exc:
        raise RetrievalFailed("retrieval failed: adversary budget exceeded") from exc
    return extract_file(params, f)
