"""Operator surface: generate, verify, audit, benchmark.

Exit codes: 0 ok, 1 property violation, 2 bad parameters, 3 I/O or
format trouble.  Epsilon is always a rational ``num/den`` on the command
line; decimals are rejected so threshold comparisons stay exact.

``SYNCSTR_THREADS`` caps worker parallelism (0 or unset means auto).
Execution is currently single-worker, which trivially respects any cap
and keeps artifacts byte-identical across thread settings.
"""

from __future__ import annotations

import argparse
import os
import re
import statistics
import sys
import time
from fractions import Fraction
from pathlib import Path

from .artifact import ArtifactFormatError, read_artifact, write_artifact
from .codes import greedy_code, read_codebook, write_codebook
from .sampler import ResampleLimitError, SamplerConfig, run_lll
from .synthesis import (
    InfeasiblePlanError,
    construct_deterministic_build,
    construct_two_level,
    construct_two_level_build,
)
from .verifier import SyncString, audit_code, verify_sync_circle, verify_sync_string

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_BAD_PARAMS = 2
EXIT_IO = 3

_FRACTION_RE = re.compile(r"^(\d+)/(\d+)$")


def parse_fraction(text: str) -> Fraction:
    """Strict ``num/den``; decimals and bare integers are rejected."""
    m = _FRACTION_RE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(
            f"epsilon must be a rational num/den, got {text!r}"
        )
    num, den = int(m.group(1)), int(m.group(2))
    if den == 0:
        raise argparse.ArgumentTypeError("denominator must be nonzero")
    return Fraction(num, den)


def parse_n_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad n list {text!r}: {exc}") from exc
    if not values:
        raise argparse.ArgumentTypeError("n list must not be empty")
    if any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("every n must be positive")
    return values


def worker_cap() -> int | None:
    """Parsed SYNCSTR_THREADS: None for auto (unset or 0), else the cap."""
    raw = os.environ.get("SYNCSTR_THREADS")
    if raw is None or raw.strip() == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"SYNCSTR_THREADS must be an integer, got {raw!r}")
    if value < 0:
        raise ValueError("SYNCSTR_THREADS must be non-negative")
    return None if value == 0 else value


def _require_unit_interval(eps: Fraction) -> None:
    if not 0 < eps < 1:
        raise ValueError(f"epsilon must lie strictly in (0,1), got {eps}")


def cmd_gen(args: argparse.Namespace) -> int:
    _require_unit_interval(args.epsilon)
    if args.method == "lll":
        cfg = SamplerConfig(
            n=args.n,
            epsilon=args.epsilon,
            c1=Fraction(args.c1),
            c2=Fraction(args.c2),
            seed=args.seed,
            max_resamples=args.max_resamples,
        )
        run = run_lll(cfg)
        result, kind = run.string, "string"
        print(f"alphabet_size={result.seq.alphabet_size}")
        print(f"resamples={run.resamples}")
    elif args.method == "det":
        build = construct_deterministic_build(
            args.n, args.epsilon, exhaustive_circle_search=args.exhaustive_circle
        )
        result, kind = build.string, "circle"
        print(f"alphabet_size={result.seq.alphabet_size}")
        print(build.plan.to_text())
    else:  # two-level
        build = construct_two_level_build(args.n, args.epsilon)
        result, kind = build.string, "circle"
        print(f"alphabet_size={result.seq.alphabet_size}")
        print(build.plan.to_text())
    write_artifact(args.output, result, kind)
    print(f"wrote {args.output}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    s, kind = read_artifact(args.input)
    eps = args.epsilon if args.epsilon is not None else s.epsilon
    _require_unit_interval(eps)
    if eps != s.epsilon:
        s = SyncString(s.seq, eps)
    mode = args.mode or kind
    limit = None if args.max_n == 0 else args.max_n
    check = verify_sync_circle if mode == "circle" else verify_sync_string
    report = check(s, max_length=limit)
    if report.ok:
        print("OK")
        return EXIT_OK
    print("FAIL")
    i, j, k = report.witness
    print(f"witness {i} {j} {k}")
    print(f"measured_ed {report.measured_ed}")
    thr = report.threshold
    print(f"threshold {thr.numerator}/{thr.denominator}")
    if report.rotation is not None:
        print(f"rotation {report.rotation}")
    return EXIT_VIOLATION


def _timed_construction(method: str, n: int, eps: Fraction, seed: int) -> float:
    start = time.perf_counter()
    if method == "lll":
        run_lll(SamplerConfig(n=n, epsilon=eps, seed=seed))
    elif method == "det":
        construct_deterministic_build(n, eps, certify=False)
    else:
        construct_two_level(n, eps, certify=False)
    return time.perf_counter() - start


def cmd_bench(args: argparse.Namespace) -> int:
    _require_unit_interval(args.epsilon)
    if args.reps < 1:
        raise ValueError("reps must be positive")
    rows = []
    for n in args.n:
        times = [
            _timed_construction(args.method, n, args.epsilon, args.seed + rep)
            for rep in range(args.reps)
        ]
        rows.append((n, statistics.median(times)))

    lines = ["n\tmedian_s"] + [f"{n}\t{med:.6f}" for n, med in rows]
    table = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(table, encoding="ascii", newline="\n")
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(table)
    if args.plot:
        _render_bench_plot(rows, args)
        print(f"wrote {args.plot}")
    return EXIT_OK


def _render_bench_plot(rows: list[tuple[int, float]], args: argparse.Namespace) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = [n for n, _ in rows]
    meds = [med for _, med in rows]
    fig, ax = plt.subplots(figsize=(5.5, 3.5))
    ax.loglog(ns, meds, "o-", label=f"{args.method} construction")
    if meds[0] > 0:
        ref = [meds[0] * n / ns[0] for n in ns]
        ax.loglog(ns, ref, "--", color="grey", label="linear reference")
    ax.set_xlabel("n")
    ax.set_ylabel("median seconds")
    ax.set_title(f"construction time, epsilon={args.epsilon}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.plot)
    plt.close(fig)


def cmd_greedy(args: argparse.Namespace) -> int:
    code = greedy_code(args.block_length, args.distance, args.alphabet, args.count)
    with open(args.output, "w", encoding="ascii") as fp:
        write_codebook(fp, code)
    print(
        f"wrote {args.output}: {len(code.codewords)} codewords, "
        f"block {code.block_length}, alphabet {code.alphabet_size}, "
        f"distance {code.design_distance}"
    )
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    try:
        with open(args.input, "r", encoding="ascii") as fp:
            code = read_codebook(fp)
    except ValueError as exc:
        raise ArtifactFormatError(str(exc)) from exc
    audit = audit_code(code, as_circle_epsilon=args.circle_epsilon)
    print(f"block_length {code.block_length}")
    print(f"alphabet {code.alphabet_size}")
    print(f"count {len(code.codewords)}")
    print(f"design_distance {code.design_distance}")
    print(f"min_hamming_distance {audit.min_hamming_distance}")
    print(f"max_pairwise_lcs {audit.max_pairwise_lcs}")
    ok = True
    if (
        audit.min_hamming_distance is not None
        and audit.min_hamming_distance < code.design_distance
    ):
        print("distance_below_design")
        ok = False
    if args.circle_epsilon is not None:
        print(f"codewords_are_circles {audit.circles_ok}")
        if not audit.circles_ok:
            print(f"first_failing_codeword {audit.first_failing_codeword}")
            ok = False
    return EXIT_OK if ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="syncstr",
        description="construct, verify, audit and benchmark synchronization strings",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="construct a string/circle and write an artifact")
    gen.add_argument("--method", required=True, choices=["lll", "det", "two-level"])
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--epsilon", type=parse_fraction, required=True)
    gen.add_argument("--seed", type=int, default=0, help="lll only")
    gen.add_argument("--c1", type=int, default=24, help="lll alphabet constant")
    gen.add_argument("--c2", type=int, default=4, help="lll window constant")
    gen.add_argument("--max-resamples", type=int, default=None)
    gen.add_argument(
        "--exhaustive-circle",
        action="store_true",
        help="det only: brute-force the internal circle instead of seeded sampling",
    )
    gen.add_argument("-o", "--output", required=True)
    gen.set_defaults(func=cmd_gen)

    ver = sub.add_parser("verify", help="check an artifact against the inequality")
    ver.add_argument("input")
    ver.add_argument(
        "--epsilon",
        type=parse_fraction,
        default=None,
        help="defaults to the epsilon recorded in the artifact",
    )
    ver.add_argument("--mode", choices=["string", "circle"], default=None)
    ver.add_argument(
        "--max-n",
        type=int,
        default=4096,
        help="refuse longer inputs (the check is O(n^4)); 0 disables the guard",
    )
    ver.set_defaults(func=cmd_verify)

    bench = sub.add_parser("bench", help="time construction, verification excluded")
    bench.add_argument("--method", required=True, choices=["lll", "det", "two-level"])
    bench.add_argument("--epsilon", type=parse_fraction, required=True)
    bench.add_argument("--n", type=parse_n_list, required=True, help="comma-separated")
    bench.add_argument("--reps", type=int, default=3)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("-o", "--output", default=None, help="table file (default stdout)")
    bench.add_argument("--plot", default=None, help="render the timing figure here")
    bench.set_defaults(func=cmd_bench)

    greedy = sub.add_parser("greedy", help="search a greedy codebook and write it")
    greedy.add_argument("--block-length", type=int, required=True)
    greedy.add_argument("--distance", type=int, required=True)
    greedy.add_argument("--alphabet", type=int, required=True)
    greedy.add_argument("--count", type=int, required=True)
    greedy.add_argument("-o", "--output", required=True)
    greedy.set_defaults(func=cmd_greedy)

    audit = sub.add_parser("audit", help="measure a codebook's distance profile")
    audit.add_argument("input")
    audit.add_argument(
        "--circle-epsilon",
        type=parse_fraction,
        default=None,
        help="additionally check each codeword as a circle at this epsilon",
    )
    audit.set_defaults(func=cmd_audit)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors, matching the contract
        return int(exc.code or 0)
    try:
        worker_cap()
        if getattr(args, "max_resamples", None) is None and args.command == "gen":
            args.max_resamples = 10 * args.n
        return args.func(args)
    except ArtifactFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InfeasiblePlanError, ResampleLimitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS


if __name__ == "__main__":
    sys.exit(main())
