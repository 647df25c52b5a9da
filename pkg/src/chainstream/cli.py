"""Command-line front end: estimators, exact references, generators, and
a multi-trial benchmark runner with CSV output.

Conventions: data arrives on stdin (or a positional file), results go to
stdout, diagnostics to stderr.  Array inputs are whitespace-separated
signed 64-bit integers.  String inputs are raw bytes, one symbol per
byte, unless ``--utf8`` switches to code points; a single trailing
newline is ignored so ordinary text files compare equal.  Exit codes:
0 success, 1 input error, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from itertools import islice
from pathlib import Path
from typing import Iterable, Iterator, Sequence, TextIO

from . import generate
from .exact import exact_edit_distance_indel, exact_lis_length
from .lcs_anchor import build_grid, run_anchored_scan
from .lcs_rand import estimate_edit_distance
from .lis import estimate_dm

THREADS_ENV = "CHAINSTREAM_THREADS"


class CliInputError(Exception):
    """Bad input data or out-of-range parameter (exit code 1)."""


@dataclass(frozen=True)
class ExperimentRecord:
    """One benchmark trial, in CSV column order."""

    algo: str
    n: int
    delta: float
    gamma: float | None
    seed: int
    estimate: int
    exact: int | None
    ratio: float | None
    additive_err: int | None
    peak_active: int
    fell_back: bool
    wall_ns: int


CSV_FIELDS = tuple(f.name for f in fields(ExperimentRecord))


def write_records(path: str, records: Iterable[ExperimentRecord]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for rec in records:
            writer.writerow([_to_cell(getattr(rec, name)) for name in CSV_FIELDS])


def read_records(path: str) -> list[ExperimentRecord]:
    """Parse a CSV written by :func:`write_records` back into records."""
    out = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            out.append(ExperimentRecord(
                algo=row["algo"],
                n=int(row["n"]),
                delta=float(row["delta"]),
                gamma=None if row["gamma"] == "" else float(row["gamma"]),
                seed=int(row["seed"]),
                estimate=int(row["estimate"]),
                exact=None if row["exact"] == "" else int(row["exact"]),
                ratio=None if row["ratio"] == "" else float(row["ratio"]),
                additive_err=(None if row["additive_err"] == ""
                              else int(row["additive_err"])),
                peak_active=int(row["peak_active"]),
                fell_back=row["fell_back"] == "true",
                wall_ns=int(row["wall_ns"]),
            ))
    return out


def _to_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


# ---------------------------------------------------------------- input


def _int_tokens(stream: TextIO) -> Iterator[int]:
    for line in stream:
        for tok in line.split():
            try:
                yield int(tok)
            except ValueError:
                raise CliInputError(f"not an integer: {tok!r}") from None


def _open_array_source(args) -> TextIO:
    if args.file is None:
        return sys.stdin
    try:
        return open(args.file, encoding="ascii")
    except OSError as exc:
        raise CliInputError(f"cannot read input file: {exc}") from None


def _read_array(args) -> tuple[Iterable[int], int | None]:
    stream = _open_array_source(args)
    tokens = _int_tokens(stream)
    if args.n is not None:
        if args.n < 0:
            raise CliInputError("--n must be >= 0")
        return islice(tokens, args.n), args.n
    return list(tokens), None


def _read_symbols(path: str | None, utf8: bool):
    if path is None:
        data = sys.stdin.buffer.read()
    else:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise CliInputError(f"cannot read input file: {exc}") from None
    if data.endswith(b"\r\n"):
        data = data[:-2]
    elif data.endswith(b"\n"):
        data = data[:-1]
    if utf8:
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CliInputError(f"invalid UTF-8 input: {exc}") from None
    return data


def _read_string_pair(args) -> tuple[Sequence, Sequence]:
    x = _read_symbols(args.file, args.utf8)
    y = _read_symbols(args.y, args.utf8)
    if len(x) != len(y):
        raise CliInputError(
            f"length mismatch: x has {len(x)} symbols, y has {len(y)}")
    return x, y


# ----------------------------------------------------------- subcommands


def _cmd_dm(args) -> int:
    _check_params(args.delta, args.gamma)
    values, n = _read_array(args)
    result = estimate_dm(values, n, delta=args.delta, gamma=args.gamma,
                         seed=args.seed)
    print(result.dm_estimate)
    print(f"lis_estimate={result.lis_estimate} peak_active={result.peak_active} "
          f"fell_back={str(result.fell_back).lower()}", file=sys.stderr)
    return 0


def _cmd_dm_exact(args) -> int:
    values, n = _read_array(args)
    values = list(values)
    if n is not None and len(values) != n:
        raise CliInputError(f"expected {n} values, got {len(values)}")
    print(len(values) - exact_lis_length(values))
    return 0


def _cmd_edlt_rand(args) -> int:
    _check_params(args.delta, args.gamma)
    x, y = _read_string_pair(args)
    result = estimate_edit_distance(x, y, delta=args.delta, gamma=args.gamma,
                                    seed=args.seed)
    print(result.est_d)
    print(f"chain_defect_est={result.est} pairs={result.pair_count} "
          f"peak_active={result.peak_active} "
          f"fell_back={str(result.fell_back).lower()}", file=sys.stderr)
    return 0


def _cmd_edlt_det(args) -> int:
    _check_params(args.delta)
    x, y = _read_string_pair(args)
    n = len(y)
    if n < 2:
        print(exact_edit_distance_indel(x, y))
        return 0
    grid = build_grid(n, args.delta)
    final, peak = run_anchored_scan(x, y, grid)
    print(n - max(final.scores))
    print(f"block_len={grid.block_len} blocks={grid.num_blocks} "
          f"peak_cells={peak}", file=sys.stderr)
    return 0


def _cmd_edlt_exact(args) -> int:
    x, y = _read_string_pair(args)
    print(exact_edit_distance_indel(x, y))
    return 0


def _cmd_gen(args) -> int:
    kind = args.kind
    instance = generate.generate_instance(
        kind, args.n, args.seed, beta=args.beta, alphabet=args.alphabet,
        k_cap=args.k_cap, edits=args.edits)
    if kind in generate.ARRAY_KINDS:
        text = "".join(f"{v}\n" for v in instance)
        if args.out:
            Path(args.out).write_text(text, encoding="ascii")
        else:
            sys.stdout.write(text)
        return 0
    if not args.out_x or not args.out_y:
        raise CliInputError("string kinds require --out-x and --out-y")
    x, y = instance
    for path, s in ((args.out_x, x), (args.out_y, y)):
        Path(path).write_bytes(_encode_symbols(s))
    return 0


def _encode_symbols(s: str) -> bytes:
    if all(ord(c) < 256 for c in s):
        return s.encode("latin-1")
    print("note: symbols exceed one byte; wrote UTF-8 (read back with --utf8)",
          file=sys.stderr)
    return s.encode("utf-8")


# ----------------------------------------------------------------- bench


def _bench_trial(payload) -> ExperimentRecord:
    algo, instance, n, delta, gamma, trial_seed, exact = payload
    start = time.perf_counter_ns()
    if algo == "dm":
        res = estimate_dm(instance, n, delta=delta, gamma=gamma,
                          seed=trial_seed)
        estimate, peak, fell = res.dm_estimate, res.peak_active, res.fell_back
    elif algo == "edlt-rand":
        x, y = instance
        res = estimate_edit_distance(x, y, delta=delta, gamma=gamma,
                                     seed=trial_seed)
        estimate, peak, fell = res.est_d, res.peak_active, res.fell_back
    elif algo == "edlt-det":
        x, y = instance
        grid = build_grid(n, delta)
        final, peak = run_anchored_scan(x, y, grid)
        estimate, fell = n - max(final.scores), False
    else:
        raise CliInputError(f"unknown bench algo {algo!r}")
    wall_ns = time.perf_counter_ns() - start
    ratio = estimate / exact if exact else None
    return ExperimentRecord(
        algo=algo, n=n, delta=delta, gamma=gamma, seed=trial_seed,
        estimate=estimate, exact=exact, ratio=ratio,
        additive_err=None if exact is None else estimate - exact,
        peak_active=peak, fell_back=fell, wall_ns=wall_ns)


def _bench_instance(args):
    kind = args.kind
    if kind is None:
        kind = "random-permutation" if args.algo == "dm" else "string-pair"
    if args.algo == "dm" and kind not in generate.ARRAY_KINDS:
        raise CliInputError(f"algo dm needs an array kind, not {kind!r}")
    if args.algo != "dm" and kind not in generate.STRING_KINDS:
        raise CliInputError(f"algo {args.algo} needs a string kind, not {kind!r}")
    return generate.generate_instance(
        kind, args.n, args.seed, beta=args.beta, alphabet=args.alphabet,
        k_cap=args.k_cap, edits=args.edits)


def _cmd_bench(args) -> int:
    _check_params(args.delta, args.gamma)
    if args.trials < 1:
        raise CliInputError("--trials must be >= 1")
    if args.algo != "edlt-det" and args.gamma is None:
        raise CliInputError(f"algo {args.algo} requires --gamma")
    instance = _bench_instance(args)
    if args.algo == "dm":
        exact = args.n - exact_lis_length(instance)
    else:
        exact = exact_edit_distance_indel(*instance)

    payloads = [
        (args.algo, instance, args.n, args.delta, args.gamma,
         args.seed + trial, exact)
        for trial in range(args.trials)
    ]
    workers = int(os.environ.get(THREADS_ENV, "1") or "1")
    if workers > 1 and args.trials > 1:
        with ProcessPoolExecutor(max_workers=min(workers, args.trials)) as pool:
            records = list(pool.map(_bench_trial, payloads))
    else:
        records = [_bench_trial(p) for p in payloads]
    write_records(args.csv, records)

    if args.algo == "edlt-rand":
        bound = exact + args.delta * args.n
    else:
        bound = (1.0 + args.delta) * exact
    violations = sum(1 for r in records if r.estimate > bound)
    print(f"algo={args.algo} n={args.n} trials={args.trials} exact={exact} "
          f"violation_frac={violations / args.trials:.6f} csv={args.csv}")
    return 0


# ------------------------------------------------------------ arg parsing


def _check_params(delta: float | None = None, gamma: float | None = None) -> None:
    # Out-of-range parameter values are input errors (exit 1), not usage
    # errors, so they are checked here instead of in argparse types.
    if delta is not None and not 0.0 < delta <= 1.0:
        raise CliInputError(f"delta out of range (0, 1]: {delta}")
    if gamma is not None and not 0.0 < gamma < 1.0:
        raise CliInputError(f"gamma out of range (0, 1): {gamma}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainstream",
        description="Streaming estimators for distance to monotonicity and "
                    "insertion-deletion edit distance, with exact references.")
    sub = parser.add_subparsers(dest="command", required=True)

    def array_cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", nargs="?", default=None,
                       help="input file (default: stdin)")
        p.add_argument("--n", type=int, default=None,
                       help="read exactly N values (enables pipe streaming)")
        return p

    p = array_cmd("dm", "estimate distance to monotonicity of an int array")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_dm)

    p = array_cmd("dm-exact", "exact distance to monotonicity")
    p.set_defaults(func=_cmd_dm_exact)

    def string_cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", nargs="?", default=None,
                       help="input string x (default: stdin)")
        p.add_argument("--y", required=True, help="fixed string file")
        p.add_argument("--utf8", action="store_true",
                       help="treat symbols as UTF-8 code points, not bytes")
        return p

    p = string_cmd("edlt-rand", "randomized edit-distance estimate")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_edlt_rand)

    p = string_cmd("edlt-det", "deterministic edit-distance estimate")
    p.add_argument("--delta", type=float, required=True)
    p.set_defaults(func=_cmd_edlt_det)

    p = string_cmd("edlt-exact", "exact insertion-deletion edit distance")
    p.set_defaults(func=_cmd_edlt_exact)

    p = sub.add_parser("gen", help="generate a seeded instance")
    p.add_argument("--kind", required=True, choices=generate.KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--beta", type=float, default=0.1,
                   help="planted increasing fraction (planted-lis)")
    p.add_argument("--alphabet", type=int, default=26)
    p.add_argument("--k-cap", dest="k_cap", type=int, default=3,
                   help="max occurrences of any symbol in y (string-pair)")
    p.add_argument("--edits", type=int, default=None,
                   help="exact number of planted edits (string-pair)")
    p.add_argument("--out", default=None, help="output file for array kinds")
    p.add_argument("--out-x", dest="out_x", default=None)
    p.add_argument("--out-y", dest="out_y", default=None)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("bench", help="run seeded trials and write a CSV")
    p.add_argument("--algo", required=True,
                   choices=("dm", "edlt-rand", "edlt-det"))
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0,
                   help="master seed; trial t uses seed + t")
    p.add_argument("--csv", required=True, help="output CSV path")
    p.add_argument("--kind", default=None, choices=generate.KINDS)
    p.add_argument("--beta", type=float, default=0.1)
    p.add_argument("--alphabet", type=int, default=26)
    p.add_argument("--k-cap", dest="k_cap", type=int, default=3)
    p.add_argument("--edits", type=int, default=None)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CliInputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())
