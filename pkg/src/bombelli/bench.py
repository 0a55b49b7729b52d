"""Benchmark harness: guessed-digit root vs Newton (and optionally bisection).

Per size it draws ``trials`` random radicands with exactly that many limbs,
times each implementation on the same inputs and reports mean nanoseconds.

    bench --sizes 0,1,2,4,...,1024 --trials 100 --seed 7 --format markdown --verify
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .baseline import sqrt_rem_binary_search, sqrt_rem_newton
from .bignat import BigNat, random_limbs
from .isqrt import GuessStats, sqrt_rem

LADDER_SIZES = [0] + [1 << k for k in range(16)]

COLUMNS = (
    "size_limbs",
    "trials",
    "mean_ns_guessed",
    "mean_ns_newton",
    "mean_ns_binary_search",
    "corrections_total",
    "digits_total",
)


class VerifyError(AssertionError):
    def __init__(self, size: int, x: BigNat, detail: str):
        self.size = size
        self.x = x
        super().__init__(f"inexact result at {size} limbs ({detail}) for x = {x.to_decimal()}")


@dataclass
class BenchConfig:
    sizes: list[int] = field(default_factory=lambda: list(LADDER_SIZES))
    trials: int = 1000
    seed: int = 0
    fmt: str = "csv"
    verify: bool = False
    include_binary_search: bool = False
    warmup_frac: float = 0.1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.sizes:
            raise ValueError("sizes must be non-empty")
        if any(s < 0 for s in self.sizes):
            raise ValueError("sizes must be non-negative")
        if self.fmt not in ("csv", "markdown"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if not 0.0 <= self.warmup_frac:
            raise ValueError("warmup_frac must be >= 0")

    @property
    def warmup(self) -> int:
        return math.ceil(self.warmup_frac * self.trials)


@dataclass
class BenchRecord:
    size_limbs: int
    trials: int
    mean_ns_guessed: float
    mean_ns_newton: float
    mean_ns_binary_search: float | None = None
    corrections_total: int = 0
    digits_total: int = 0


def input_stream(seed: int, size: int) -> np.random.Generator:
    # one independent PCG64 stream per (seed, size) so a size's inputs do not
    # depend on which other sizes are in the run
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, size])))


def _timed(fn, x):
    t0 = time.perf_counter_ns()
    res = fn(x)
    return res, time.perf_counter_ns() - t0


def _prime_jit():
    x = BigNat.from_int((1 << 200) + 12345)
    sqrt_rem(x)
    sqrt_rem_newton(x)
    sqrt_rem_binary_search(x)


def run_size(size: int, config: BenchConfig) -> BenchRecord:
    rng = input_stream(config.seed, size)
    n_total = config.warmup + config.trials
    inputs = [random_limbs(size, rng, exact=True) for _ in range(n_total)]
    sums = {"guessed": 0, "newton": 0, "binary_search": 0}
    stats = GuessStats()
    for i, x in enumerate(inputs):
        timed = i >= config.warmup
        trial_stats = GuessStats()
        t0 = time.perf_counter_ns()
        got = sqrt_rem(x, trial_stats)
        dt = time.perf_counter_ns() - t0
        ref, dt_newton = _timed(sqrt_rem_newton, x)
        bis = None
        if config.include_binary_search:
            bis, dt_bis = _timed(sqrt_rem_binary_search, x)
        if timed:
            sums["guessed"] += dt
            sums["newton"] += dt_newton
            if bis is not None:
                sums["binary_search"] += dt_bis
            stats.merge(trial_stats)
        if config.verify:
            if got != ref:
                raise VerifyError(size, x, "guessed vs newton")
            if bis is not None and bis != got:
                raise VerifyError(size, x, "binary search vs guessed")
    n = config.trials
    return BenchRecord(
        size_limbs=size,
        trials=n,
        mean_ns_guessed=sums["guessed"] / n,
        mean_ns_newton=sums["newton"] / n,
        mean_ns_binary_search=sums["binary_search"] / n if config.include_binary_search else None,
        corrections_total=stats.corrections,
        digits_total=stats.digits_guessed,
    )


def run_bench(config: BenchConfig, progress=None) -> list[BenchRecord]:
    _prime_jit()
    records = []
    for size in config.sizes:
        rec = run_size(size, config)
        if progress is not None:
            progress(rec)
        records.append(rec)
    return records


def _cells(rec: BenchRecord) -> list[str]:
    bis = "" if rec.mean_ns_binary_search is None else f"{rec.mean_ns_binary_search:.0f}"
    return [
        str(rec.size_limbs),
        str(rec.trials),
        f"{rec.mean_ns_guessed:.0f}",
        f"{rec.mean_ns_newton:.0f}",
        bis,
        str(rec.corrections_total),
        str(rec.digits_total),
    ]


def emit(records: list[BenchRecord], fmt: str = "csv") -> str:
    rows = [_cells(r) for r in records]
    if fmt == "csv":
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(COLUMNS)
        w.writerows(rows)
        return out.getvalue()
    if fmt != "markdown":
        raise ValueError(f"unknown format {fmt!r}")
    widths = [max([len(c)] + [len(r[i]) for r in rows]) for i, c in enumerate(COLUMNS)]
    lines = ["| " + " | ".join(c.ljust(w) for c, w in zip(COLUMNS, widths)) + " |",
             "|" + "|".join("-" * (w + 1) + ":" for w in widths) + "|"]
    for r in rows:
        lines.append("| " + " | ".join(c.rjust(w) for c, w in zip(r, widths)) + " |")
    return "\n".join(lines) + "\n"


def parse_sizes(text: str) -> list[int]:
    """Comma list of sizes; ``...`` continues a doubling ladder, e.g. ``1,2,...,64``."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    sizes: list[int] = []
    for i, p in enumerate(parts):
        if p == "...":
            if not sizes or i + 1 >= len(parts) or parts[i + 1] == "...":
                raise ValueError("'...' needs a size on both sides")
            stop = int(parts[i + 1])
            nxt = max(sizes[-1] * 2, 1)
            while nxt < stop:
                sizes.append(nxt)
                nxt *= 2
            continue
        sizes.append(int(p))
    return sizes


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bench", description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default=",".join(map(str, LADDER_SIZES)),
                    help="comma-separated limb counts; '...' continues doubling")
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--format", dest="fmt", choices=("csv", "markdown"), default="csv")
    ap.add_argument("--verify", action="store_true", help="cross-check every result")
    ap.add_argument("--include-binary-search", action="store_true")
    ap.add_argument("--warmup-frac", type=float, default=0.1,
                    help="extra untimed trials, as a fraction of --trials")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = BenchConfig(
            sizes=parse_sizes(args.sizes),
            trials=args.trials,
            seed=args.seed,
            fmt=args.fmt,
            verify=args.verify,
            include_binary_search=args.include_binary_search,
            warmup_frac=args.warmup_frac,
        )
    except ValueError as e:
        print(f"bench: {e}", file=sys.stderr)
        return 2

    def progress(rec):
        print(f"size {rec.size_limbs}: guessed {rec.mean_ns_guessed:.0f} ns, "
              f"newton {rec.mean_ns_newton:.0f} ns", file=sys.stderr)

    try:
        records = run_bench(config, progress)
    except VerifyError as e:
        print(f"bench: {e}", file=sys.stderr)
        return 1
    sys.stdout.write(emit(records, config.fmt))
    return 0


if __name__ == "__main__":
    sys.exit(main())
