"""Database layout, distribution to servers and the on-disk text format."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .field import PrimeField
from .grs import GrsCode, generator_matrix
from .linalg import solve, transpose


@dataclass(frozen=True)
class Database:
    """m files of nu x k field symbols, stacked into an (m*nu) x k matrix X."""

    F: PrimeField
    m: int
    nu: int
    k: int
    X: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.X) != self.m * self.nu:
            raise ValueError(f"X has {len(self.X)} rows, expected m*nu = {self.m * self.nu}")
        if any(len(row) != self.k for row in self.X):
            raise ValueError(f"every row of X must have k={self.k} entries")

    def file(self, i: int) -> list[list[int]]:
        """File ``i`` (1-indexed) as a nu x k matrix."""
        if not 1 <= i <= self.m:
            raise IndexError(f"file index {i} outside [1, {self.m}]")
        return [list(row) for row in self.X[(i - 1) * self.nu : i * self.nu]]

    def files(self) -> list[list[list[int]]]:
        return [self.file(i) for i in range(1, self.m + 1)]


@dataclass(frozen=True)
class ServerShare:
    server_id: int  # 1-indexed
    y: tuple[int, ...]


def layout_database(files: Sequence[Sequence[Sequence[int]]], F: PrimeField) -> Database:
    if not files:
        raise ValueError("database needs at least one file")
    nu = len(files[0])
    k = len(files[0][0]) if nu else 0
    if nu == 0 or k == 0:
        raise ValueError("files must be non-empty matrices")
    rows = []
    for idx, f in enumerate(files, start=1):
        if len(f) != nu or any(len(row) != k for row in f):
            raise ValueError(f"file {idx} does not have shape {nu}x{k}")
        rows.extend(tuple(a % F.p for a in row) for row in f)
    return Database(F, len(files), nu, k, tuple(rows))


def random_database(F: PrimeField, m: int, nu: int, k: int, rng) -> Database:
    rng = np.random.default_rng(rng)
    X = rng.integers(0, F.p, size=(m * nu, k))
    return Database(F, m, nu, k, tuple(tuple(int(a) for a in row) for row in X))


def distribute(db: Database, C: GrsCode) -> list[ServerShare]:
    if C.F != db.F:
        raise ValueError("code and database over different fields")
    if C.k != db.k:
        raise ValueError(f"code dimension {C.k} != database width {db.k}")
    G = generator_matrix(C).rows
    p = db.F.p
    shares = []
    for j in range(C.n):
        col = [G[l][j] for l in range(C.k)]
        y = tuple(sum(a * g for a, g in zip(row, col)) % p for row in db.X)
        shares.append(ServerShare(j + 1, y))
    return shares


def reconstruct(shares: Sequence[ServerShare], C: GrsCode, F: PrimeField) -> list[list[int]]:
    """Recover X from exactly k shares (MDS: any k columns are invertible)."""
    if len(shares) != C.k:
        raise ValueError(f"need exactly k={C.k} shares, got {len(shares)}")
    G = generator_matrix(C).rows
    cols = [s.server_id - 1 for s in shares]
    # Row x of X satisfies x . G[:, cols] = (y_j[x])_j.
    A = transpose([[G[l][j] for j in cols] for l in range(C.k)])
    nrows = len(shares[0].y)
    return [solve(A, [s.y[x] for s in shares], F) for x in range(nrows)]


# -- text format ---------------------------------------------------------------


def _data_lines(lines: Iterable[str]) -> Iterable[list[int]]:
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            yield [int(tok) for tok in line.split()]


def dumps_database(db: Database) -> str:
    out = ["# p m nu k", f"{db.F.p} {db.m} {db.nu} {db.k}"]
    for i in range(1, db.m + 1):
        out.append(f"# file {i}")
        out.extend(" ".join(map(str, row)) for row in db.file(i))
    return "\n".join(out) + "\n"


def loads_database(text: str) -> Database:
    rows = list(_data_lines(text.splitlines()))
    if not rows or len(rows[0]) != 4:
        raise ValueError("database header must be 'p m nu k'")
    p, m, nu, k = rows[0]
    F = PrimeField(p)
    body = rows[1:]
    if len(body) != m * nu:
        raise ValueError(f"expected {m * nu} data rows, found {len(body)}")
    for row in body:
        if len(row) != k:
            raise ValueError(f"data row {row} does not have {k} entries")
        if any(not 0 <= a < p for a in row):
            raise ValueError(f"data row {row} has entries outside [0, {p})")
    files = [body[i * nu : (i + 1) * nu] for i in range(m)]
    return layout_database(files, F)


def dumps_shares(shares: Sequence[ServerShare], F: PrimeField) -> str:
    out = [f"# server shares over GF({F.p}); one line per server: id y_1 ... y_(m*nu)"]
    out.extend(f"{s.server_id} " + " ".join(map(str, s.y)) for s in shares)
    return "\n".join(out) + "\n"
