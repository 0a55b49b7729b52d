"""How often does the float digit guess overshoot?

Counts corrections over uniform random inputs and over y*y - 1 inputs, which
put the final quotient just below an integer. Also reports how often the
window is exactly zero (the path where the float quotient underflows).
"""
import argparse

import numpy as np

from bombelli.bignat import BigNat, random_limbs
from bombelli.isqrt import GuessStats, sqrt_rem


def uniform(rng, size, count):
    stats = GuessStats()
    for _ in range(count):
        sqrt_rem(random_limbs(size, rng, exact=True), stats)
    return stats


def near_squares(rng, size, count):
    stats = GuessStats()
    for _ in range(count):
        y = random_limbs((size + 1) // 2, rng, exact=True).to_int()
        sqrt_rem(BigNat.from_int(y * y - 1), stats)
    return stats


def shifted_squares(rng, size, count):
    # perfect square followed by zero limbs: all-zero windows at the tail
    stats = GuessStats()
    for _ in range(count):
        y = random_limbs(max(size // 4, 1), rng, exact=True).to_int()
        sqrt_rem(BigNat.from_int((y * y) << (32 * (size // 2))), stats)
    return stats


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="4,16,64,256,1024")
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    print(f"{'family':<10} {'size':>6} {'digits':>10} {'corr':>8} {'rate':>10} {'zero_win':>9}")
    for size in map(int, args.sizes.split(",")):
        for name, fn in [("uniform", uniform), ("y*y-1", near_squares), ("y*y<<k", shifted_squares)]:
            s = fn(rng, size, args.count)
            print(f"{name:<10} {size:>6} {s.digits_guessed:>10} {s.corrections:>8} "
                  f"{s.correction_rate:>10.2e} {s.zero_quotient_hits:>9}")


if __name__ == "__main__":
    main()
