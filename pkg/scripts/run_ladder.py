"""Run the full benchmark ladder (0, 1, 2, 4, ..., 32768 limbs) and write CSV.

    python scripts/run_ladder.py --trials 50 --out ladder.csv

Large sizes are slow for the Newton baseline (seconds per call past 8192
limbs), so --max-size caps the ladder for quick runs.
"""
import argparse
import sys

from bombelli.bench import LADDER_SIZES, BenchConfig, emit, run_bench


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-size", type=int, default=LADDER_SIZES[-1])
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    sizes = [s for s in LADDER_SIZES if s <= args.max_size]
    cfg = BenchConfig(sizes=sizes, trials=args.trials, seed=args.seed, verify=True)

    def progress(rec):
        print(f"size {rec.size_limbs}: guessed {rec.mean_ns_guessed / 1e3:.1f}us "
              f"newton {rec.mean_ns_newton / 1e3:.1f}us", file=sys.stderr)

    records = run_bench(cfg, progress)
    text = emit(records, "csv")
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)

    # doubling ratios for the guessed-digit column
    prev = None
    for rec in records:
        if prev is not None and prev.size_limbs and prev.mean_ns_guessed:
            print(f"t({rec.size_limbs})/t({prev.size_limbs}) = "
                  f"{rec.mean_ns_guessed / prev.mean_ns_guessed:.2f}", file=sys.stderr)
        prev = rec


if __name__ == "__main__":
    main()
