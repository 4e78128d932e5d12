"""Command-line entry point: ``fuzzysphere <command> --n N [options]``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .exceptions import DegenerateSpectrumError, InternalConsistencyError, UnstableRankError
from .report import COMMANDS, RUNNERS, make_meta, to_csv, to_json


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int | tuple[int, int]
    ell: float = 1.0
    seed: int = 0
    samples: int | None = None
    format: str = "json"
    output: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")
        lo, hi = self.n if isinstance(self.n, tuple) else (self.n, self.n)
        if lo < 1 or hi < lo:
            raise ValueError(f"invalid cutoff range {self.n!r}")
        if not self.ell > 0:
            raise ValueError(f"ell must be positive, got {self.ell}")
        if isinstance(self.n, tuple) and self.command != "sweep":
            raise ValueError(f"{self.command} takes a single cutoff")


@dataclass(frozen=True)
class RunOutcome:
    status: int
    text: str
    failure: str | None = None


def run(config: RunConfig) -> RunOutcome:
    n = config.n
    if config.command == "sweep" and not isinstance(n, tuple):
        n = (n, n)
    result = RUNNERS[config.command](N=n, ell=config.ell, seed=config.seed, samples=config.samples)
    meta = make_meta(config.command, n, config.ell, config.seed)
    text = to_json(meta, result.rows) if config.format == "json" else to_csv(result.rows)
    failed = result.first_failure()
    if failed is None:
        return RunOutcome(0, text)
    return RunOutcome(
        1, text, f"check failed: {failed.name} (value {failed.value:.3e} > tolerance {failed.tolerance:.1e})"
    )


def _cutoff(text: str):
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return int(lo), int(hi)
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or NMIN:NMAX, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzysphere",
        description="Fuzzy sphere spectral triple: identities, spectra, actions and forms.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--n", type=_cutoff, default=None, help="cutoff N, or NMIN:NMAX for sweep")
    parser.add_argument("--ell", type=float, default=1.0, help="sphere radius (default 1)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=None, help="random forms per span (forms)")
    parser.add_argument("--format", choices=("csv", "json"), default="json")
    parser.add_argument("--output", "-o", default=None, help="output path (default stdout)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    n = args.n
    if n is None:
        n = (4, 32) if args.command == "sweep" else 2
    try:
        config = RunConfig(
            command=args.command,
            n=n,
            ell=args.ell,
            seed=args.seed,
            samples=args.samples,
            format=args.format,
            output=args.output,
        )
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2

    try:
        outcome = run(config)
    except ValueError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (DegenerateSpectrumError, InternalConsistencyError, UnstableRankError) as exc:
        print(f"check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1

    if config.output:
        Path(config.output).write_text(outcome.text)
    else:
        sys.stdout.write(outcome.text)
    if outcome.failure:
        print(outcome.failure, file=sys.stderr)
    return outcome.status


if __name__ == "__main__":
    sys.exit(main())
