"""Command-line front end: ``robustpir {params,encode,simulate,audit,rates}``.

Exit codes: 0 success, 1 protocol failure (decoding or audit), 2 usage or
configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import analysis
from .adversary import (
    DEFAULT_STRATEGIES,
    AdversaryConfig,
    Strategy,
    parse_index_list,
    privacy_audit,
    run_session,
    sweep_adversary_placements,
)
from .field import PrimeField
from .grs import GrsCode, monomial_rows
from .pir import InfeasibleParameters, compute_params, default_modulus, setup_scheme
from .storage import distribute, dumps_database, dumps_shares, loads_database, random_database

EXIT_OK, EXIT_PROTOCOL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
SEED_ENV = "ROBUSTPIR_SEED"


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={raw!r} is not an integer") from None


def _int_list(text: str) -> list[int]:
    try:
        return list(parse_index_list(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_scheme_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=13, help="number of servers (default 13)")
    p.add_argument("--k", type=int, default=2, help="storage code dimension (default 2)")
    p.add_argument("--t", type=int, default=3, help="collusion bound (default 3)")
    p.add_argument("--b", type=int, default=2, help="byzantine bound (default 2)")
    p.add_argument("--r", type=int, default=1, help="non-response bound (default 1)")
    p.add_argument("--p", type=int, default=None, help="field modulus (default 17, or next prime > n)")
    p.add_argument("--alpha", type=_int_list, default=None, help="evaluation points")
    p.add_argument("--seed", type=int, default=None, help=f"RNG seed (default ${SEED_ENV} or 0)")


def _field(args) -> PrimeField:
    p = args.p if args.p is not None else default_modulus(args.n)
    try:
        return PrimeField(p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _seed(args) -> int:
    return args.seed if args.seed is not None else _default_seed()


def _scheme(args, F):
    try:
        return setup_scheme(F, args.n, args.k, args.t, args.b, args.r, alpha=args.alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_db(args, F, params, seed):
    if args.db is not None:
        try:
            text = Path(args.db).read_text()
        except OSError as exc:
            raise OSError(f"cannot read database {args.db}: {exc.strerror}") from exc
        try:
            db = loads_database(text)
        except ValueError as exc:
            raise UsageError(f"bad database file {args.db}: {exc}") from None
        if db.F != F or db.nu != params.nu or db.k != params.k:
            raise UsageError(
                f"database (p={db.F.p}, nu={db.nu}, k={db.k}) does not match scheme "
                f"(p={F.p}, nu={params.nu}, k={params.k})"
            )
        return db
    return random_database(F, args.random_db, params.nu, params.k, np.random.default_rng([seed, 1]))


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc


# -- commands ----------------------------------------------------------------------------


def cmd_params(args) -> int:
    try:
        params = compute_params(args.n, args.k, args.t, args.b, args.r)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        print(json.dumps(params.as_dict(), sort_keys=True))
        return EXIT_OK
    star_k = params.star_dim
    print(f"n={params.n} k={params.k} t={params.t} b={params.b} r={params.r}")
    print(f"nu      = {params.nu}  (rows retrieved per round)")
    print(f"n'      = {params.n_prime}  (servers queried)")
    print(f"star    = [{params.n_prime},{star_k},{params.d_star}] GRS code")
    print(f"d*-1    = {params.d_star - 1} >= 2b+r = {2 * params.b + params.r}")
    print(f"rate    = {params.rate}  ({float(params.rate):.6f})")
    return EXIT_OK


def cmd_encode(args) -> int:
    F = _field(args)
    seed = _seed(args)
    scheme = _scheme(args, F)
    db = _load_db(args, F, scheme.params, seed)
    if args.write_db:
        _write(args.write_db, dumps_database(db))
    shares = distribute(db, scheme.C_full)
    _write(args.out, dumps_shares(shares, F))
    return EXIT_OK


def cmd_simulate(args) -> int:
    F = _field(args)
    seed = _seed(args)
    scheme = _scheme(args, F)
    params = scheme.params
    db = _load_db(args, F, params, seed)
    if not 1 <= args.index <= db.m:
        raise UsageError(f"--index {args.index} outside [1, {db.m}]")

    if args.adversary_config:
        try:
            text = Path(args.adversary_config).read_text()
        except OSError as exc:
            raise OSError(f"cannot read {args.adversary_config}: {exc.strerror}") from exc
        try:
            adv = AdversaryConfig.from_text(text)
        except ValueError as exc:
            raise UsageError(f"bad adversary config: {exc}") from None
        if args.seed is not None:
            adv = AdversaryConfig(adv.byzantine, adv.strategy, adv.silent, adv.colluding, seed)
    else:
        strategy = "uniform_random" if args.sweep and args.strategy == "all" else args.strategy
        try:
            adv = AdversaryConfig(
                tuple(args.byzantine or ()),
                Strategy.parse(strategy),
                tuple(args.silent or ()),
                tuple(args.colluding or ()),
                seed,
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    for sid in adv.byzantine + adv.silent + adv.colluding:
        if not 1 <= sid <= args.n:
            raise UsageError(f"server id {sid} outside [1, {args.n}]")

    if args.sweep:
        strategies = DEFAULT_STRATEGIES if args.strategy == "all" else (adv.strategy,)
        ok = True
        lines = []
        for strat in strategies:
            s = sweep_adversary_placements(db, scheme, args.index, strat, seed, args.symmetric)
            ok &= s.all_correct
            lines.append(f"{strat}: {s.correct}/{s.total} placements recovered file {args.index}")
            lines.extend(f"  FAILED byzantine={list(b)} silent={list(e)}" for b, e in s.failures)
        _write(args.transcript, "\n".join(lines) + "\n")
        return EXIT_OK if ok else EXIT_PROTOCOL

    used = {j + 1 for j in scheme.servers}
    if len(set(adv.byzantine) & used) > params.b or len(set(adv.silent) & used) > params.r:
        print(
            f"warning: adversary exceeds budget b={params.b}, r={params.r}; "
            "correct retrieval is not guaranteed",
            file=sys.stderr,
        )
    report = run_session(db, scheme, args.index, adv, symmetric=args.symmetric)
    _write(args.transcript, report.transcript.to_text())
    status = "recovered" if report.correct else (
        "FAILED (decoding failure)" if report.recovered is None else "FAILED (wrong file)"
    )
    print(f"file {args.index}: {status}", file=sys.stderr)
    return EXIT_OK if report.correct else EXIT_PROTOCOL


def cmd_audit(args) -> int:
    F = _field(args)
    try:
        params = compute_params(args.n, args.k, args.t, args.b, args.r)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    npr = params.n_prime
    alpha = args.alpha if args.alpha is not None else list(range(1, npr + 1))
    if len(alpha) != npr:
        raise UsageError(f"--alpha needs n'={npr} points, got {len(alpha)}")
    E = monomial_rows(F, alpha, [1] * npr, [mu * args.k + args.t - 1 for mu in range(1, params.nu + 1)])
    try:
        D = GrsCode(F, tuple(alpha), (1,) * npr, args.t)
    except ValueError:
        # Malformed points: audit the raw Vandermonde rows so the failure is reported.
        D = monomial_rows(F, alpha, [1] * npr, range(args.t))
    mode = "exhaustive" if args.exhaustive else (args.samples if args.samples else "algebraic")
    try:
        rep = privacy_audit(params, D, args.m, mode, F=F, E=E, rng=_seed(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = [
        f"query code D = GRS_{args.t} on {npr} servers over GF({F.p}); m={args.m}, nu={params.nu}",
        f"t-column submatrices checked: {rep.submatrices_checked}",
    ]
    if rep.exhaustive:
        out.append(f"file-index pairs compared exhaustively: {rep.index_pairs_checked}")
    out.extend(rep.notes)
    if rep.offending:
        out.append(f"offending server subset: {list(rep.offending)}")
    out.append("PASS" if rep.passed else "FAIL")
    print("\n".join(out))
    return EXIT_OK if rep.passed else EXIT_PROTOCOL


def cmd_rates(args) -> int:
    try:
        table = analysis.rate_table(args.n, args.k, args.t, args.b, args.r, args.m_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = analysis.emit_table(table) if args.gnuplot else analysis.emit_csv(table)
    _write(args.out, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="robustpir",
        description="Robust private information retrieval over GRS-coded storage.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="derive scheme parameters and rate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_params)

    def add_db_args(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--db", help="database file (header 'p m nu k', then rows)")
        g.add_argument("--random-db", type=int, default=3, metavar="M",
                       help="generate a random database with M files (default 3)")

    p = sub.add_parser("encode", help="distribute a database to the servers")
    _add_scheme_args(p)
    add_db_args(p)
    p.add_argument("--write-db", help="also write the (generated) database here")
    p.add_argument("--out", default=None, help="shares output file (default stdout)")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("simulate", help="run a simulated retrieval session")
    _add_scheme_args(p)
    add_db_args(p)
    p.add_argument("--index", type=int, default=1, help="file to retrieve (1-indexed)")
    p.add_argument("--byzantine", type=_int_list, default=None, help="byzantine server ids")
    p.add_argument("--silent", type=_int_list, default=None, help="non-responsive server ids")
    p.add_argument("--colluding", type=_int_list, default=None, help="colluding server ids")
    p.add_argument("--strategy", default="uniform_random",
                   help="uniform_random | fixed:V | additive_offset:D | flip_to:NAME "
                        "(with --sweep also 'all')")
    p.add_argument("--adversary-config", help="YAML adversary configuration file")
    p.add_argument("--symmetric", action="store_true", help="symmetric PIR variant")
    p.add_argument("--sweep", action="store_true",
                   help="exhaustively sweep all b byzantine / r silent placements")
    p.add_argument("--transcript", default=None, help="transcript output file (default stdout)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("audit", help="t-privacy audit of the query code")
    _add_scheme_args(p)
    p.add_argument("--m", type=int, default=2, help="number of files (default 2)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exhaustive", action="store_true", help="enumerate every random matrix U")
    g.add_argument("--samples", type=int, default=0, help="sampled chi-square comparison")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("rates", help="rate comparison table (CSV)")
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--b", type=_int_list, default=[2], help="byzantine counts (r=0)")
    p.add_argument("--r", type=_int_list, default=[2], help="non-response counts (b=0)")
    p.add_argument("--m-max", type=int, default=100)
    p.add_argument("--gnuplot", action="store_true", help="whitespace table instead of CSV")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_rates)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, InfeasibleParameters) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
