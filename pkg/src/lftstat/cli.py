"""Command-line entry point ``lft``.

Exit codes: 0 success (or injective), 1 not injective, 2 bad input,
3 enumeration guard exceeded.  Artifacts go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

import numpy as np

from .census import CountParams, ct_canonical_count, total_classes
from .estimator import (
    DEFAULT_SAMPLES,
    estimate_for_taus,
    exhaustive_census,
    random_lft,
    reports_to_csv,
    required_sample_size,
    two_sided_z,
)
from .transducer import (
    Lft,
    LftFormatError,
    OracleTooLarge,
    class_size,
    diagnostic_rank,
    is_injective_with_delay,
    min_injectivity_delay,
)
from .tables import TableSpec, build_table, render

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3
U64 = 1 << 64


class InputError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _load_lft(path: str) -> Lft:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return Lft.from_json(text)
    except (LftFormatError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"1..5"`` or ``"0,2,4"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return values


def _seed(value: Optional[int]) -> int:
    if value is None:
        env = os.environ.get("LFT_SEED")
        if env is None:
            return 0
        try:
            value = int(env, 0)
        except ValueError as exc:
            raise InputError(f"LFT_SEED={env!r} is not an integer") from exc
    if not 0 <= value < U64:
        raise InputError(f"seed must be an unsigned 64-bit integer, got {value}")
    return value


def _positive(*pairs) -> None:
    for name, v in pairs:
        if v < 1:
            raise InputError(f"{name} must be at least 1, got {v}")


# commands --------------------------------------------------------------


def cmd_injective(args) -> int:
    t = _load_lft(args.file)
    if args.tau < 0:
        raise InputError("tau must be nonnegative")
    ok = is_injective_with_delay(t, args.tau)
    _emit({"injective": ok, "min_delay": min_injectivity_delay(t), "tau": args.tau})
    return EXIT_OK if ok else EXIT_NO


def cmd_class_size(args) -> int:
    t = _load_lft(args.file)
    _emit({"rank_diagnostic": diagnostic_rank(t), "class_size": str(class_size(t))})
    return EXIT_OK


def cmd_count_canonical(args) -> int:
    _positive(("l", args.l), ("m", args.m), ("n", args.n))
    if args.q < 2:
        raise InputError("q must be at least 2")
    p = CountParams(args.l, args.m, args.n, args.q)
    if args.cumulative or args.include_trivial:
        count = total_classes(p, include_trivial=args.include_trivial)
    else:
        count = ct_canonical_count(p)
    _emit({
        "l": args.l, "m": args.m, "n": args.n, "q": args.q,
        "cumulative": bool(args.cumulative or args.include_trivial),
        "include_trivial": args.include_trivial,
        "count": str(count),
    })
    return EXIT_OK


def cmd_estimate(args) -> int:
    _positive(("l", args.l), ("m", args.m), ("n", args.n), ("samples", args.samples), ("workers", args.workers))
    if min(args.tau) < 0:
        raise InputError("tau must be nonnegative")
    reports = estimate_for_taus(
        args.samples, args.l, args.m, args.n, args.tau, _seed(args.seed), args.workers,
        percentage=args.percentage, include_trivial=args.include_trivial,
    )
    timing = not args.no_timing
    if args.format == "csv":
        sys.stdout.write(reports_to_csv(reports, timing))
    elif len(reports) == 1:
        _emit(reports[0].to_dict(timing))
    else:
        _emit([r.to_dict(timing) for r in reports])
    return EXIT_OK


def cmd_table(args) -> int:
    if args.table == "count-injective":
        l_values = args.l or list(range(1, 6))
        taus = args.tau or [10]
        if len(taus) != 1:
            raise InputError("count-injective tables take a single --tau")
    else:
        l_values = args.l or [2]
        taus = args.tau or list(range(0, 11))
    try:
        spec = TableSpec(
            table_id=args.table, m=args.m, l_values=l_values, n_values=args.n,
            tau_values=taus, samples=args.samples, seed=_seed(args.seed),
            format=args.format, include_trivial=args.include_trivial, workers=args.workers,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    sys.stdout.write(render(build_table(spec)))
    return EXIT_OK


def cmd_exact(args) -> int:
    _positive(("l", args.l), ("m", args.m), ("n", args.n))
    try:
        result = exhaustive_census(args.l, args.m, args.n, args.tau, guard=1 << args.guard)
    except OracleTooLarge as exc:
        print(f"lft exact: {exc}", file=sys.stderr)
        return EXIT_GUARD
    _emit(result.to_dict())
    return EXIT_OK


def cmd_random(args) -> int:
    _positive(("l", args.l), ("m", args.m), ("n", args.n))
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(_seed(args.seed))))
    _emit(random_lft(args.l, args.m, args.n, rng).to_json())
    return EXIT_OK


def cmd_samples(args) -> int:
    if not (0 < args.confidence < 1 and 0 < args.margin < 1):
        raise InputError("confidence and margin must lie in (0, 1)")
    decimals = None if args.exact_z else 3
    _emit({
        "confidence": args.confidence,
        "margin": args.margin,
        "z": two_sided_z(args.confidence),
        "z_decimals": decimals,
        "samples": required_sample_size(args.confidence, args.margin, decimals),
    })
    return EXIT_OK


# parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lft", description="Injectivity and class counts of linear finite transducers over GF(2).")
    sub = p.add_subparsers(dest="command", required=True)

    def dims(sp, l=True):
        if l:
            sp.add_argument("-l", type=int, required=True, help="input dimension")
        sp.add_argument("-m", type=int, required=True, help="output dimension")
        sp.add_argument("-n", type=int, required=True, help="state dimension (size)")

    sp = sub.add_parser("injective", help="test injectivity with delay tau")
    sp.add_argument("file")
    sp.add_argument("--tau", type=int, required=True)
    sp.set_defaults(func=cmd_injective)

    sp = sub.add_parser("class-size", help="size of the equivalence class")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_class_size)

    sp = sub.add_parser("count-canonical", help="number of canonical LFTs")
    dims(sp)
    sp.add_argument("-q", type=int, default=2)
    sp.add_argument("--cumulative", action="store_true", help="sum over sizes 1..n")
    sp.add_argument("--include-trivial", action="store_true", help="add the q^(l*m) trivial classes (implies --cumulative)")
    sp.set_defaults(func=cmd_count_canonical)

    sp = sub.add_parser("estimate", help="Monte Carlo estimate of injective classes")
    dims(sp)
    sp.add_argument("--tau", type=parse_range, required=True, help="delay, or a range sharing one sample")
    sp.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--percentage", action="store_true")
    sp.add_argument("--include-trivial", action="store_true")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--no-timing", action="store_true", help="omit wall_seconds")
    sp.set_defaults(func=cmd_estimate)

    sp = sub.add_parser("table", help="reproduce a grid of estimates")
    sp.add_argument("table", choices=("count-injective", "percentage"))
    sp.add_argument("-m", type=int, default=5)
    sp.add_argument("-l", type=parse_range, default=None)
    sp.add_argument("-n", type=parse_range, default=list(range(1, 11)))
    sp.add_argument("--tau", type=parse_range, default=None)
    sp.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--include-trivial", action="store_true")
    sp.add_argument("--format", choices=("md", "csv", "json"), default="md")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("exact", help="exhaustive census at small sizes")
    dims(sp)
    sp.add_argument("--tau", type=parse_range, default=[0])
    sp.add_argument("--guard", type=int, default=26, help="log2 of the largest enumeration allowed")
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("random", help="emit a uniformly random LFT as JSON")
    dims(sp)
    sp.add_argument("--seed", type=int, default=None)
    sp.set_defaults(func=cmd_random)

    sp = sub.add_parser("samples", help="sample size for a proportion")
    sp.add_argument("--confidence", type=float, default=0.99)
    sp.add_argument("--margin", type=float, default=0.01)
    sp.add_argument("--exact-z", action="store_true", help="do not round z to table precision")
    sp.set_defaults(func=cmd_samples)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"lft {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
