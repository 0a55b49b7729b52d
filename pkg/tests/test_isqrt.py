import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bombelli.baseline import sqrt_rem_binary_search
from bombelli.bignat import BigNat, LimbWindow
from bombelli.extfloat import ExtFloat
from bombelli.isqrt import (
    GuessInvariantError,
    GuessStats,
    binary_search_digit,
    compute_remainder,
    first_digit,
    guess_digit,
    sqrt_rem,
    trace,
)

B = 1 << 32


def check_result(x: int, res):
    y, r = res.root.to_int(), res.remainder.to_int()
    assert y * y <= x < (y + 1) ** 2
    assert r == x - y * y
    assert r <= 2 * y


@pytest.mark.parametrize("x, root, rem", [
    (0, 0, 0),
    (1156, 34, 0),
    ((1 << 64) - 1, (1 << 32) - 1, (1 << 33) - 2),
    (99, 9, 18),
])
def test_sqrt_rem_examples(x, root, rem):
    res = sqrt_rem(BigNat.from_int(x))
    assert (res.root.to_int(), res.remainder.to_int()) == (root, rem)


@given(st.integers(0, 1 << 3000))
def test_sqrt_rem_matches_isqrt(x):
    res = sqrt_rem(BigNat.from_int(x))
    assert res.root.to_int() == math.isqrt(x)
    check_result(x, res)


@given(st.integers(1, 1 << 1500))
def test_perfect_squares(y):
    res = sqrt_rem(BigNat.from_int(y * y))
    assert res.root.to_int() == y and res.remainder.to_int() == 0


@given(st.integers(0, 1 << 1000), st.integers(0, 1 << 1000))
def test_monotone(a, b):
    lo, hi = sorted((a, b))
    assert sqrt_rem(BigNat.from_int(lo)).root <= sqrt_rem(BigNat.from_int(hi)).root


@given(st.integers(0, 1 << 2000))
def test_agrees_with_binary_search_variant(x):
    n = BigNat.from_int(x)
    assert sqrt_rem(n) == sqrt_rem_binary_search(n)


def test_result_sizes():
    rng = random.Random(4)
    for limbs in range(1, 40):
        x = rng.getrandbits(32 * limbs) | 1 << (32 * limbs - 1)
        res = sqrt_rem(BigNat.from_int(x))
        assert len(res.root) == (limbs + 1) // 2
        assert len(res.remainder) <= (limbs + 1) // 2 + 1


# -- first digit ------------------------------------------------------------

@pytest.mark.parametrize("top, digit, rem", [
    ([1156], 34, 0),
    ([0xFFFFFFFF, 0xFFFFFFFF], (1 << 32) - 1, (1 << 33) - 2),
    ([1 << 31, 0], 3037000499, (1 << 63) - 3037000499 ** 2),
    ([1], 1, 0),
    ([0xFFFFFFFF], 65535, 0xFFFFFFFF - 65535 ** 2),
])
def test_first_digit_examples(top, digit, rem):
    assert first_digit(top) == (digit, rem)


@given(st.integers(1, (1 << 64) - 1))
def test_first_digit_two_limbs(v):
    if v >> 32 == 0:
        v |= 1 << 32
    d, r = first_digit([v >> 32, v & 0xFFFFFFFF])
    assert d == math.isqrt(v) and r == v - d * d and d < B


def test_first_digit_near_square_boundaries():
    # squares and their neighbours, where a rounded host sqrt is most fragile
    for y in [1 << 31, (1 << 32) - 1, 3037000499, 4294967291, 65536 * 65535 + 17]:
        for v in (y * y - 1, y * y, y * y + 1, y * y + 2 * y):
            if (1 << 32) <= v < 1 << 64:
                d, r = first_digit([v >> 32, v & 0xFFFFFFFF])
                assert d == math.isqrt(v) and r == v - d * d


def test_first_digit_rejects_leading_zero():
    with pytest.raises(ValueError):
        first_digit([0, 5])


# -- digit steps ------------------------------------------------------------

def exact_digit(y: int, w: int, b: int = B) -> int:
    """max{d : 2*b*y*d + d*d <= w}, via an integer square root."""
    return math.isqrt((b * y) ** 2 + w) - b * y


def random_state(rng: random.Random, root_limbs: int):
    """A reachable (Y, W): W = b**2 * R + two fresh limbs with R <= 2Y."""
    y = rng.getrandbits(32 * root_limbs) | 1 << (32 * root_limbs - 1)
    r = rng.randint(0, 2 * y)
    w = r * B * B + rng.getrandbits(64)
    return y, w


def y_float(y: int) -> ExtFloat:
    # b*Y rounded down to 53 bits, as maintained by the main loop
    drop = max(y.bit_length() - 53, 0)
    return ExtFloat.from_u64((y >> drop)).scale_by_pow2(drop + 32)


def window(w: int) -> LimbWindow:
    return LimbWindow.of(BigNat.from_int(w))


def test_decimal_analog_of_guess_formula():
    # b = 10, Y = 3, window 256: the digit of sqrt(1156) after the leading 3
    b, y, w = 10, 3, 256
    guess = math.floor(w / (math.sqrt((b * y) ** 2 + w) + b * y))
    assert guess == exact_digit(y, w, b) == 4
    assert 34 ** 2 == 1156


def test_guess_digit_zero_window():
    assert guess_digit(y_float(12345), window(0)) == 0


def test_guess_digit_never_low_never_two_high():
    rng = random.Random(7)
    for _ in range(3000):
        y, w = random_state(rng, rng.randint(1, 6))
        g = min(guess_digit(y_float(y), window(w)), B - 1)
        assert g - exact_digit(y, w) in (0, 1)


def test_guess_digit_on_integer_quotients():
    # states whose exact quotient is an integer k: candidate must be k or k + 1
    rng = random.Random(8)
    for _ in range(2000):
        y = rng.getrandbits(64) | 1 << 63
        k = rng.randint(0, B - 1)
        w = 2 * B * y * k + k * k
        assert exact_digit(y, w) == k
        assert guess_digit(y_float(y), window(w)) in (k, k + 1)


def test_binary_search_digit():
    rng = random.Random(9)
    assert binary_search_digit([5], window(0)) == 0
    for _ in range(500):
        y, w = random_state(rng, rng.randint(1, 5))
        root = BigNat.from_int(y)
        d = binary_search_digit(root, window(w))
        assert d == exact_digit(y, w)
        assert guess_digit(y_float(y), window(w)) - d in (0, 1)


def test_binary_search_digit_decimal_scale_state():
    # the x = 1156 state, expressed in radix 2**32 terms: Y = 3, W = 256 is too
    # small to matter at this radix, so the exact digit is 0
    assert binary_search_digit([3], window(256)) == exact_digit(3, 256) == 0


def test_compute_remainder_exact_digit():
    rng = random.Random(10)
    for _ in range(500):
        y, w = random_state(rng, rng.randint(1, 5))
        d = exact_digit(y, w)
        got, rem = compute_remainder(d, BigNat.from_int(y), window(w))
        assert got == d
        assert rem.value().to_int() == w - (2 * B * y * d + d * d)


def test_compute_remainder_zero_digit():
    got, rem = compute_remainder(0, [7], window(12345))
    assert got == 0 and rem.value().to_int() == 12345


def test_forced_correction_lands_on_same_remainder():
    rng = random.Random(11)
    fired = 0
    for _ in range(500):
        y, w = random_state(rng, rng.randint(1, 5))
        d = exact_digit(y, w)
        if d == B - 1:
            continue
        root = BigNat.from_int(y)
        a = compute_remainder(d, root, window(w))
        b = compute_remainder(d + 1, root, window(w))
        assert b[0] == d
        assert a[1].value() == b[1].value()
        fired += 1
    assert fired > 400


def test_off_by_two_is_fatal():
    y, w = 0xDEADBEEF, 0
    with pytest.raises(GuessInvariantError):
        compute_remainder(2, [y], window(w))


def test_compute_remainder_rejects_wide_digit():
    with pytest.raises(ValueError):
        compute_remainder(B, [1], window(0))


# -- whole-loop invariants --------------------------------------------------

@given(st.integers(1, 1 << 800))
def test_loop_invariants(x):
    steps = list(trace(BigNat.from_int(x)))
    n_root = len(steps)
    for s in steps:
        assert s.root ** 2 <= s.prefix < (s.root + 1) ** 2
        assert s.remainder == s.prefix - s.root ** 2
        assert 0 <= s.digit < B
        assert s.window_width <= (n_root - 1 - s.index) + 3
        if s.guess is not None:
            assert s.guess - s.digit in (0, 1)
    last = steps[-1]
    res = sqrt_rem(BigNat.from_int(x))
    assert (last.root, last.remainder) == (res.root.to_int(), res.remainder.to_int())


def test_exact_square_remainders_stay_consistent():
    x = (1 << 40) ** 2
    steps = list(trace(BigNat.from_int(x)))
    assert steps[-1].remainder == 0
    for s in steps:
        assert s.remainder == s.prefix - s.root ** 2


def test_stats_count_digits_and_corrections():
    stats = GuessStats()
    rng = random.Random(12)
    for _ in range(300):
        y = rng.getrandbits(32 * rng.randint(2, 10)) | 1
        sqrt_rem(BigNat.from_int(y * y - 1), stats)
    assert stats.digits_guessed > 0
    # y*y - 1 puts the last quotient just under an integer
    assert 0 < stats.corrections <= stats.digits_guessed


def test_stats_track_zero_windows():
    # trailing zero limb pairs leave an all-zero window for the last digits
    stats = GuessStats()
    x = BigNat.from_int((1 << 40) ** 2 << 256)
    res = sqrt_rem(x, stats)
    assert res.remainder.to_int() == 0
    assert stats.zero_quotient_hits >= 4
    assert stats.corrections == 0


def test_stats_absent_is_fine():
    assert sqrt_rem(BigNat.from_int(10**50)).root.to_int() == 10**25


def test_adversarial_limb_patterns():
    cases = [0, 1, B - 1, B, B * B, (1 << 64) - 1, (1 << 4096) - 1, 1 << 4095,
             int("80000000" * 33, 16), int("00000001" * 20, 16)]
    for y in [B - 1, B, (1 << 300) - 1, 3 ** 400]:
        cases += [y * y - 1, y * y, y * y + 1, y * y + 2 * y]
    for x in cases:
        check_result(x, sqrt_rem(BigNat.from_int(x)))
