"""In-process server cluster with byzantine, silent and colluding servers.

Server ids are 1-indexed over all n storage servers.  Only the n' queried
servers (``PirScheme.servers``) answer; adversarial roles assigned to unused
servers have no effect on the session.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np
import yaml

from .field import PrimeField
from .grs import GenMatrix, GrsCode, generator_matrix
from .linalg import det
from .pir import (
    PirScheme,
    RetrievalFailed,
    SchemeParams,
    as_generator,
    build_E,
    honest_response,
    make_queries,
    recover,
    sample_shared_randomness,
    split_rng,
    symmetric_response,
)
from .storage import Database, ServerShare, distribute
from .transcript import Transcript

SWEEP_LIMIT = 10**5
EXHAUSTIVE_LIMIT = 10**6

FLIP_FUNCTIONS: dict[str, Callable[[int, int], int]] = {
    "negate": lambda h, p: -h % p,
    "increment": lambda h, p: (h + 1) % p,
    "square": lambda h, p: h * h % p,
}


@dataclass(frozen=True)
class Strategy:
    """How a byzantine server replaces its honest answer.

    kind is one of ``uniform_random``, ``fixed``, ``additive_offset`` or
    ``flip_to``; ``param`` is the fixed value, the offset, or the flip
    function (a name from FLIP_FUNCTIONS or a callable ``(honest, p) -> value``).
    """

    kind: str = "uniform_random"
    param: Union[int, str, Callable[[int, int], int], None] = None

    def __post_init__(self):
        if self.kind not in ("uniform_random", "fixed", "additive_offset", "flip_to"):
            raise ValueError(f"unknown byzantine strategy {self.kind!r}")
        if self.kind in ("fixed", "additive_offset") and not isinstance(self.param, int):
            raise ValueError(f"strategy {self.kind} needs an integer parameter")
        if self.kind == "flip_to":
            if isinstance(self.param, str) and self.param not in FLIP_FUNCTIONS:
                raise ValueError(f"unknown flip function {self.param!r}")
            if not (isinstance(self.param, str) or callable(self.param)):
                raise ValueError("strategy flip_to needs a function")

    def corrupt(self, honest: int, rng: np.random.Generator, F: PrimeField) -> int:
        if self.kind == "uniform_random":
            return int(rng.integers(0, F.p))
        if self.kind == "fixed":
            return self.param % F.p
        if self.kind == "additive_offset":
            return (honest + self.param) % F.p
        fn = FLIP_FUNCTIONS[self.param] if isinstance(self.param, str) else self.param
        return fn(honest, F.p) % F.p

    def __str__(self) -> str:
        if self.kind == "uniform_random":
            return self.kind
        if callable(self.param):
            return f"{self.kind}:{getattr(self.param, '__name__', 'custom')}"
        return f"{self.kind}:{self.param}"

    @classmethod
    def parse(cls, text: str) -> "Strategy":
        kind, _, arg = text.strip().partition(":")
        kind = kind.strip().lower().replace("-", "_")
        if kind in ("fixed", "additive_offset"):
            if not arg:
                raise ValueError(f"strategy {kind} needs ':<int>'")
            return cls(kind, int(arg))
        if kind == "flip_to":
            return cls(kind, arg or "negate")
        return cls(kind)


DEFAULT_STRATEGIES = (
    Strategy("uniform_random"),
    Strategy("fixed", 0),
    Strategy("additive_offset", 1),
    Strategy("flip_to", "negate"),
)


@dataclass(frozen=True)
class AdversaryConfig:
    byzantine: tuple[int, ...] = ()
    strategy: Strategy = Strategy()
    silent: tuple[int, ...] = ()
    colluding: tuple[int, ...] = ()
    seed: int = 0

    def __post_init__(self):
        for name in ("byzantine", "silent", "colluding"):
            object.__setattr__(self, name, tuple(sorted(set(getattr(self, name)))))
        overlap = set(self.byzantine) & set(self.silent)
        if overlap:
            raise ValueError(f"servers {sorted(overlap)} are both byzantine and silent")

    @classmethod
    def from_text(cls, text: str) -> "AdversaryConfig":
        """Parse a YAML mapping with byzantine/silent/colluding lists, strategy and seed."""
        data = yaml.safe_load(text) or {}
        if not isinstance(data, dict):
            raise ValueError("adversary config must be a mapping")
        unknown = set(data) - {"byzantine", "silent", "colluding", "strategy", "seed"}
        if unknown:
            raise ValueError(f"unknown adversary config keys: {sorted(unknown)}")
        return cls(
            byzantine=parse_index_list(data.get("byzantine")),
            strategy=Strategy.parse(str(data.get("strategy", "uniform_random"))),
            silent=parse_index_list(data.get("silent")),
            colluding=parse_index_list(data.get("colluding")),
            seed=int(data.get("seed", 0)),
        )


def parse_index_list(value) -> tuple[int, ...]:
    if value is None or value == "":
        return ()
    if isinstance(value, int):
        return (value,)
    if isinstance(value, str):
        return tuple(int(tok) for tok in value.replace(",", " ").split())
    return tuple(int(x) for x in value)


@dataclass
class SessionReport:
    recovered: Optional[list[list[int]]]  # None on decoding failure
    correct: bool
    within_budget: bool
    error_positions_used: list[int]
    erasure_positions_used: list[int]
    collusion_view: dict[int, tuple[int, ...]]
    seed: int
    transcript: Transcript


def run_session(
    db: Database,
    scheme: PirScheme,
    i: int,
    adv: AdversaryConfig = AdversaryConfig(),
    symmetric: bool = False,
    shares: Optional[Sequence[ServerShare]] = None,
) -> SessionReport:
    """One full retrieval of file ``i``; failures are reported, not raised."""
    params, F = scheme.params, scheme.F
    if db.nu != params.nu or db.k != params.k:
        raise ValueError(
            f"database layout {db.nu}x{db.k} does not match scheme nu={params.nu}, k={params.k}"
        )
    if shares is None:
        shares = distribute(db, scheme.C_full)
    query_rng, shared_rng, server_rngs = split_rng(adv.seed, params.n_prime)
    qs = make_queries(params, scheme.C, scheme.D, scheme.E, db.m, i, query_rng)
    mask = sample_shared_randomness(scheme.star_cd, shared_rng) if symmetric else None

    ids = [j + 1 for j in scheme.servers]
    byz, silent = set(adv.byzantine), set(adv.silent)
    responses: list[Optional[int]] = []
    errors, erasures = [], []
    for idx, sid in enumerate(ids):
        q, y = qs.queries[idx], shares[sid - 1].y
        if mask is None:
            honest = honest_response(q, y, F)
        else:
            honest = symmetric_response(q, y, mask[idx], F)
        if sid in silent:
            responses.append(None)
            erasures.append(sid)
        elif sid in byz:
            value = adv.strategy.corrupt(honest, server_rngs[idx], F)
            responses.append(value)
            if value != honest:
                errors.append(sid)
        else:
            responses.append(honest)

    try:
        recovered = recover(params, scheme.star, responses)
    except RetrievalFailed:
        recovered = None
    expected = db.file(i)
    correct = recovered == expected
    used = set(ids)
    within = len(byz & used) <= params.b and len(silent & used) <= params.r
    notes = [] if within else ["adversary exceeds the b/r budget; correctness not guaranteed"]
    if recovered is None:
        notes.append("retrieval failed: adversary budget exceeded")

    transcript = Transcript(
        seed=adv.seed,
        p=F.p,
        params=params.as_dict(),
        servers=ids,
        m=db.m,
        target_index=i,
        symmetric=symmetric,
        strategy=str(adv.strategy),
        byzantine=list(adv.byzantine),
        silent=list(adv.silent),
        queries=[list(q) for q in qs.queries],
        responses=responses,
        decoded=recovered,
        expected=expected,
        correct=correct,
        within_budget=within,
        shared_randomness=mask,
        notes=notes,
    )
    view = {sid: qs.queries[ids.index(sid)] for sid in adv.colluding if sid in used}
    return SessionReport(recovered, correct, within, errors, erasures, view, adv.seed, transcript)


@dataclass
class SweepSummary:
    total: int
    correct: int
    failures: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)

    @property
    def all_correct(self) -> bool:
        return self.correct == self.total


def sweep_adversary_placements(
    db: Database,
    scheme: PirScheme,
    i: int,
    strategy: Strategy = Strategy(),
    seed: int = 0,
    symmetric: bool = False,
    n_byzantine: Optional[int] = None,
    n_silent: Optional[int] = None,
) -> SweepSummary:
    """Run every placement of ``n_byzantine`` liars and ``n_silent`` silent servers."""
    params = scheme.params
    nb = params.b if n_byzantine is None else n_byzantine
    ns = params.r if n_silent is None else n_silent
    npr = params.n_prime
    if nb + ns > npr:
        raise ValueError(f"cannot place {nb}+{ns} adversaries among {npr} servers")
    total = math.comb(npr, nb) * math.comb(npr - nb, ns)
    if total > SWEEP_LIMIT:
        raise ValueError(f"{total} placements exceed the sweep limit {SWEEP_LIMIT}")
    ids = [j + 1 for j in scheme.servers]
    shares = distribute(db, scheme.C_full)
    summary = SweepSummary(0, 0)
    for byz in itertools.combinations(ids, nb):
        rest = [s for s in ids if s not in byz]
        for sil in itertools.combinations(rest, ns):
            adv = AdversaryConfig(byz, strategy, sil, (), seed)
            rep = run_session(db, scheme, i, adv, symmetric, shares)
            summary.total += 1
            if rep.correct:
                summary.correct += 1
            else:
                summary.failures.append((byz, sil))
    return summary


# -- privacy audit --------------------------------------------------------------------


@dataclass
class AuditReport:
    passed: bool
    submatrices_checked: int
    offending: Optional[tuple[int, ...]] = None  # 1-indexed servers
    exhaustive: bool = False
    index_pairs_checked: int = 0
    max_chi_square: Optional[float] = None
    notes: list[str] = field(default_factory=list)


def _query_masks(GD, U_rows, p):
    # (row, server) entries of U . G_D.
    return [
        [sum(u * g for u, g in zip(urow, col)) % p for col in zip(*GD)]
        for urow in U_rows
    ]


def privacy_audit(
    params: SchemeParams,
    D: Union[GrsCode, GenMatrix],
    m: int,
    mode: Union[str, int] = "exhaustive",
    F: Optional[PrimeField] = None,
    E: Optional[GenMatrix] = None,
    rng=None,
) -> AuditReport:
    """Check that any t servers' queries are independent of the file index.

    ``mode`` is ``"exhaustive"`` (enumerate every U), ``"algebraic"`` (the
    submatrix check only) or an integer sample count for a chi-square
    comparison of per-coordinate query marginals.
    """
    if isinstance(D, GrsCode):
        F = D.F
        GD = generator_matrix(D).rows
        if E is None:
            E = build_E(params, D.alpha, D.v, F)
    else:
        if F is None:
            raise ValueError("auditing a raw generator matrix needs the field")
        GD = D.rows
    t = len(GD)
    npr = len(GD[0])
    p = F.p

    checked = 0
    for T in itertools.combinations(range(npr), t):
        checked += 1
        if det([[row[j] for j in T] for row in GD], F) == 0:
            return AuditReport(False, checked, tuple(j + 1 for j in T),
                               notes=["singular t-column submatrix of G_D"])
    report = AuditReport(True, checked)
    if mode == "algebraic":
        return report
    if E is None:
        raise ValueError("distribution checks need the E matrix")

    nu = len(E.rows)
    rows = m * nu
    if mode == "exhaustive":
        space = p ** (rows * t)
        if space > EXHAUSTIVE_LIMIT:
            raise ValueError(f"q^(m nu t) = {space} exceeds the enumeration limit")
        report.exhaustive = True
        masks = [
            _query_masks(GD, [flat[r * t : (r + 1) * t] for r in range(rows)], p)
            for flat in itertools.product(range(p), repeat=rows * t)
        ]
        subsets = list(itertools.combinations(range(npr), t))
        dists = {}
        for i in range(1, m + 1):
            base = (i - 1) * nu
            per_T = {T: Counter() for T in subsets}
            for M in masks:
                q = [list(col) for col in zip(*M)]  # q[j][row]
                for mu in range(nu):
                    for j in range(npr):
                        q[j][base + mu] = (q[j][base + mu] + E.rows[mu][j]) % p
                for T in subsets:
                    per_T[T][tuple(tuple(q[j]) for j in T)] += 1
            dists[i] = per_T
        for i, i2 in itertools.combinations(range(1, m + 1), 2):
            report.index_pairs_checked += 1
            for T in subsets:
                if dists[i][T] != dists[i2][T]:
                    report.passed = False
                    report.offending = tuple(j + 1 for j in T)
                    report.notes.append(f"query distribution differs for files {i} and {i2}")
                    return report
        report.notes.append("exact query distributions identical for every index pair")
        return report

    samples = int(mode)
    gen = as_generator(rng)
    hist = {}
    for i in (1, 2) if m >= 2 else (1,):
        counts = np.zeros((npr, rows, p), dtype=np.int64)
        base = (i - 1) * nu
        for _ in range(samples):
            U = gen.integers(0, p, size=(rows, t)).tolist()
            M = _query_masks(GD, U, p)
            for mu in range(nu):
                for j in range(npr):
                    M[base + mu][j] = (M[base + mu][j] + E.rows[mu][j]) % p
            for r_ in range(rows):
                for j in range(npr):
                    counts[j, r_, M[r_][j]] += 1
        hist[i] = counts
    if len(hist) == 2:
        a, b = hist[1].astype(float), hist[2].astype(float)
        tot = a + b
        with np.errstate(divide="ignore", invalid="ignore"):
            chi = np.where(tot > 0, (a - b) ** 2 / tot, 0.0).sum(axis=2)
        report.max_chi_square = float(chi.max())
        report.notes.append(
            f"max two-sample chi-square over (server, row) marginals: "
            f"{report.max_chi_square:.3f} with {p - 1} degrees of freedom"
        )
    return report
