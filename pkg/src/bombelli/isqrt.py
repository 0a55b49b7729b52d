"""Shift-and-subtract integer square root with floating-point digit guessing.

Each iteration appends two limbs of the radicand to the running remainder
and needs the largest digit ``d < 2**32`` with::

    2*b*Y*d + d*d <= W        (Y = partial root, W = remainder window)

``guess_digit`` evaluates ``W / (sqrt((b*Y)**2 + W) + b*Y)`` in
:mod:`bombelli.extfloat` arithmetic with every rounding pushed so the quotient
can only come out high.  The candidate is therefore the true digit or one
more, and ``compute_remainder`` repairs the second case with a single
add-back of ``2*b*Y + 2*d + 1``.

Working-buffer layout: ``buf[j + 1]`` holds radicand limb ``j``; ``buf[0]`` is
a spare limb so that a trial subtraction always fits above index 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .bignat import BigNat, LimbWindow
from .extfloat import (
    ExtFloat,
    ef_add,
    ef_div,
    ef_from_u64,
    ef_from_window_rd,
    ef_mul,
    ef_next_down,
    ef_next_up,
    ef_scale,
    ef_sqrt,
    ef_to_u64_floor,
)

_MASK = np.uint64(0xFFFFFFFF)
_B = np.uint64(1 << 32)
_SHIFT = np.uint64(32)
_ONE = np.uint64(1)
_ZERO = np.uint64(0)
_S31 = np.uint64(31)
_S63 = np.uint64(63)

# kernel status codes
OK = 0
FIRST_DIGIT_OFF = 1
DOUBLE_CORRECTION = 2
GUESS_TOO_LOW = 3


class GuessInvariantError(ArithmeticError):
    """A digit guess missed the true digit by more than the one-unit allowance."""


@dataclass(frozen=True)
class SqrtResult:
    root: BigNat
    remainder: BigNat

    def __iter__(self):
        return iter((self.root, self.remainder))


@dataclass
class GuessStats:
    """Counters filled in by :func:`sqrt_rem` when passed as ``stats``."""

    digits_guessed: int = 0
    corrections: int = 0
    zero_quotient_hits: int = 0

    @property
    def correction_rate(self) -> float:
        return self.corrections / self.digits_guessed if self.digits_guessed else 0.0

    def merge(self, other: GuessStats) -> None:
        self.digits_guessed += other.digits_guessed
        self.corrections += other.corrections
        self.zero_quotient_hits += other.zero_quotient_hits


# ---------------------------------------------------------------------------
# kernels


@njit(cache=True)
def _first_digit(hi, lo, two_limbs):
    """Integer root of the leading one or two limbs; returns (digit, rem, status)."""
    if two_limbs:
        top = (np.uint64(hi) << _SHIFT) | np.uint64(lo)
        # host sqrt of a 64-bit value may round either way: nudge up, fix below
        r = np.nextafter(math.sqrt(np.nextafter(float(top), np.inf)), np.inf)
        d = np.uint64(r)
    else:
        top = np.uint64(hi)
        d = np.uint64(math.sqrt(float(top)))
    if d >= _B:
        d = _B - _ONE
    if d * d > top:
        d -= _ONE
    if d * d > top:
        return d, _ZERO, FIRST_DIGIT_OFF
    if d < _B - _ONE and (d + _ONE) * (d + _ONE) <= top:
        return d, _ZERO, FIRST_DIGIT_OFF
    return d, top - d * d, OK


@njit(cache=True)
def _guess_digit(ys, ye, buf, begin, end):
    """Candidate digit from the scaled partial-root float (ys, ye) = b*Y rounded down.

    Returns (candidate, 1 if the final quotient underflowed to zero else 0).
    """
    fs, fe = ef_from_window_rd(buf, begin, end)
    ns, ne = ef_next_up(fs, fe)
    qs, qe = ef_mul(ys, ye, ys, ye)
    qs, qe = ef_next_down(qs, qe)
    rs, re = ef_add(qs, qe, fs, fe)
    rs, re = ef_next_down(rs, re)
    ss, se = ef_sqrt(rs, re)
    ss, se = ef_next_down(ss, se)
    ds, de = ef_add(ss, se, ys, ye)
    ds, de = ef_next_down(ds, de)
    ts, te = ef_div(ns, ne, ds, de)
    underflow = 1 if ts == 0.0 else 0
    ts, te = ef_next_up(ts, te)
    return ef_to_u64_floor(ts, te), underflow


@njit(cache=True)
def _twice(root, root_len):
    """Big-endian limbs of 2*Y (root_len + 1 of them) for Y = root[:root_len]."""
    tw = np.zeros(len(root) + 1, dtype=np.uint64)
    for k in range(root_len):
        v = np.uint64(root[k])
        tw[k] |= v >> _S31
        tw[k + 1] = (v << _ONE) & _MASK
    return tw


@njit(cache=True)
def _push_twice(tw, root_len, d):
    # 2*(b*Y + d) from 2*Y: one new limb, one bit carried into the old last limb
    tw[root_len] |= d >> _S31
    tw[root_len + 1] = (d << _ONE) & _MASK


@njit(cache=True)
def _sub_trial(d, tw, root_len, buf, end):
    """buf[:end] -= d * (2*b*Y + d); returns 1 if the result went negative.

    ``tw`` holds 2*Y as produced by :func:`_twice`.
    """
    # least significant limb of 2*b*Y + d is d itself
    p = d * d
    carry = p >> _SHIFT
    t = buf[end - 1] - (p & _MASK)
    buf[end - 1] = t & _MASK
    borrow = t >> _S63
    base = end - 2 - root_len
    for k in range(root_len, -1, -1):
        p = d * tw[k] + carry
        carry = p >> _SHIFT
        t = buf[base + k] - (p & _MASK) - borrow
        buf[base + k] = t & _MASK
        borrow = t >> _S63
    pos = base - 1
    s = carry + borrow
    while s and pos >= 0:
        t = buf[pos] - s
        buf[pos] = t & _MASK
        s = t >> _S63
        pos -= 1
    return 1 if s else 0


@njit(cache=True)
def _add_back(d, tw, root_len, buf, end):
    """buf[:end] += 2*b*Y + 2*d + 1; returns the carry out of buf[0]."""
    carry = buf[end - 1] + (d << _ONE) + _ONE
    buf[end - 1] = carry & _MASK
    carry >>= _SHIFT
    base = end - 2 - root_len
    for k in range(root_len, -1, -1):
        carry += buf[base + k] + tw[k]
        buf[base + k] = carry & _MASK
        carry >>= _SHIFT
    pos = base - 1
    while carry and pos >= 0:
        carry += buf[pos]
        buf[pos] = carry & _MASK
        carry >>= _SHIFT
        pos -= 1
    return carry


@njit(cache=True)
def _compute_remainder(d, tw, root_len, buf, end):
    """Subtract the digit's contribution; returns (final digit, corrected, status)."""
    if d == _ZERO:
        return d, 0, OK
    if _sub_trial(d, tw, root_len, buf, end) == 0:
        return d, 0, OK
    d -= _ONE
    if _add_back(d, tw, root_len, buf, end) != _ONE:
        return d, 1, DOUBLE_CORRECTION
    return d, 1, OK


@njit(cache=True)
def _trial_le_window(beta, tw, root_len, buf, end, scratch):
    """True when beta * (2*b*Y + beta) <= buf[:end] (value of the whole prefix)."""
    width = root_len + 3
    p = beta * beta
    scratch[width - 1] = p & _MASK
    carry = p >> _SHIFT
    for k in range(root_len, -1, -1):
        p = beta * tw[k] + carry
        scratch[k + 1] = p & _MASK
        carry = p >> _SHIFT
    scratch[0] = carry
    lead = end - width
    for i in range(lead):
        if buf[i] != _ZERO:
            return True
    for i in range(width):
        a = buf[lead + i]
        t = scratch[i]
        if t != a:
            return t < a
    return True


@njit(cache=True)
def _binary_search_digit(tw, root_len, buf, begin, end, scratch):
    lo = _ZERO
    hi = _B - _ONE
    # quick exit keeps the all-zero window cheap
    if begin == end:
        return lo
    while lo < hi:
        mid = (lo + hi + _ONE) >> _ONE
        if _trial_le_window(mid, tw, root_len, buf, end, scratch):
            lo = mid
        else:
            hi = mid - _ONE
    return lo


@njit(cache=True)
def _strip(buf, begin, end):
    while begin < end and buf[begin] == _ZERO:
        begin += 1
    return begin


@njit(cache=True)
def _sqrt_rem_kernel(x, guessed):
    """Core loop over big-endian limbs ``x`` (no leading zero, nonempty).

    Returns (root, buf, begin, end, digits, corrections, zero_hits, status, where).
    """
    n = len(x)
    n_root = (n + 1) // 2
    root = np.zeros(n_root, dtype=np.uint64)
    buf = np.zeros(n + 1, dtype=np.uint64)
    tw = np.zeros(n_root + 1, dtype=np.uint64)
    scratch = np.zeros(n_root + 3, dtype=np.uint64)
    digits = 0
    corrections = 0
    zero_hits = 0

    if n % 2 == 0:
        d, r, st = _first_digit(x[0], x[1], True)
        buf[1] = r >> _SHIFT
        buf[2] = r & _MASK
        end = 3
    else:
        d, r, st = _first_digit(x[0], 0, False)
        buf[1] = r
        end = 2
    if st != OK:
        return root, buf, 1, end, digits, corrections, zero_hits, st, 0
    root[0] = d
    _push_twice(tw, 0, d)
    begin = _strip(buf, 1, end)
    ys, ye = ef_from_u64(d)

    for root_len in range(1, n_root):
        buf[end] = x[end - 1]
        buf[end + 1] = x[end]
        end += 2
        if guessed:
            ys, ye = ef_scale(ys, ye, 32)
            d, zq = _guess_digit(ys, ye, buf, begin, end)
            digits += 1
            zero_hits += zq
            if d >= _B:
                d = _B - _ONE
            if d != _ZERO:
                d, corr, st = _compute_remainder(d, tw, root_len, buf, end)
                corrections += corr
                if st != OK:
                    return root, buf, begin, end, digits, corrections, zero_hits, st, root_len
                # the float image only tracks the top ~3 limbs of the root
                if root_len <= 2:
                    if root_len == 2:
                        ys, ye = ef_next_up(ys, ye)
                    ds, de = ef_from_u64(d)
                    ys, ye = ef_add(ys, ye, ds, de)
                    ys, ye = ef_next_down(ys, ye)
        else:
            d = _binary_search_digit(tw, root_len, buf, begin, end, scratch)
            d, corr, st = _compute_remainder(d, tw, root_len, buf, end)
            if corr:
                return root, buf, begin, end, digits, corrections, zero_hits, GUESS_TOO_LOW, root_len
        root[root_len] = d
        _push_twice(tw, root_len, d)
        begin = _strip(buf, begin, end)
    return root, buf, begin, end, digits, corrections, zero_hits, OK, n_root


def _run(x: BigNat, guessed: bool, stats: GuessStats | None) -> SqrtResult:
    if not len(x):
        return SqrtResult(x, x)
    root, buf, begin, end, digits, corr, zq, status, where = _sqrt_rem_kernel(
        x.limbs.astype(np.uint64), guessed)
    if stats is not None:
        stats.digits_guessed += digits
        stats.corrections += corr
        stats.zero_quotient_hits += zq
    if status != OK:
        raise GuessInvariantError(
            f"status {status} at root digit {where} of a {len(x)}-limb input "
            f"(root so far {root[:where + 1].tolist()}, window limbs {buf[begin:end].tolist()})")
    return SqrtResult(BigNat._trusted(root), BigNat._trusted(buf[begin:end]))


def sqrt_rem(x: BigNat, stats: GuessStats | None = None) -> SqrtResult:
    """Floor square root and remainder of ``x``.

    ``stats``, when given, accumulates digit-guess counters.
    """
    return _run(x, True, stats)


def isqrt(x: BigNat) -> BigNat:
    return sqrt_rem(x).root


# ---------------------------------------------------------------------------
# single-step surface over LimbWindow / ExtFloat


def _root_array(partial_root) -> np.ndarray:
    if isinstance(partial_root, BigNat):
        return partial_root.limbs.astype(np.uint64)
    return np.asarray(partial_root, dtype=np.uint64)


def _padded(root: np.ndarray, window: LimbWindow) -> tuple[np.ndarray, int]:
    # a private buffer with room for a full-width trial subtraction
    val = window.buffer[window.begin:window.end]
    pad = len(root) + 3
    buf = np.zeros(pad + len(val), dtype=np.uint64)
    buf[pad:] = val
    return buf, pad


def first_digit(top) -> tuple[int, int]:
    """Root digit and remainder of the leading one or two radicand limbs."""
    top = [int(t) for t in top]
    if len(top) not in (1, 2) or top[0] == 0:
        raise ValueError("expected one or two limbs with a nonzero leading limb")
    if len(top) == 2:
        d, r, st = _first_digit(top[0], top[1], True)
    else:
        d, r, st = _first_digit(top[0], 0, False)
    if st != OK:
        raise GuessInvariantError(f"first digit off by more than one for {top}")
    return int(d), int(r)


def guess_digit(partial_root_float: ExtFloat, remainder_window: LimbWindow) -> int:
    """Digit candidate (true digit or one more) for the given state.

    ``partial_root_float`` must already be ``b * Y`` rounded down.
    """
    w = remainder_window
    d, _ = _guess_digit(partial_root_float.signif, partial_root_float.exp, w.buffer, w.begin, w.end)
    return int(d)


def compute_remainder(digit: int, partial_root, remainder_window: LimbWindow) -> tuple[int, LimbWindow]:
    """Apply ``digit`` to the window; returns the final digit and the new remainder.

    The input window is left untouched.
    """
    if not 0 <= digit < 1 << 32:
        raise ValueError("digit must be below 2**32")
    root = _root_array(partial_root)
    buf, pad = _padded(root, remainder_window)
    d, _, st = _compute_remainder(np.uint64(digit), _twice(root, len(root)), len(root), buf, len(buf))
    if st != OK:
        raise GuessInvariantError(f"digit {digit} is more than one above the true digit")
    return int(d), LimbWindow(buf, _strip(buf, 0, len(buf)), len(buf))


def binary_search_digit(partial_root, remainder_window: LimbWindow) -> int:
    """Exact digit ``max{d : 2*b*Y*d + d*d <= W}`` by bisection."""
    root = _root_array(partial_root)
    buf, pad = _padded(root, remainder_window)
    scratch = np.zeros(len(root) + 3, dtype=np.uint64)
    tw = _twice(root, len(root))
    return int(_binary_search_digit(tw, len(root), buf, _strip(buf, 0, len(buf)), len(buf), scratch))


@dataclass(frozen=True)
class Step:
    """State after one root digit, for invariant checks on small inputs."""

    index: int          # i, counted from the least significant root digit
    digit: int
    root: int           # Y_i
    remainder: int      # R_i
    prefix: int         # (x_{2n-1} ... x_{2i})_b
    window_width: int   # end - begin of the remainder before the digit step
    guess: int | None


def trace(x: BigNat):
    """Yield a :class:`Step` per root digit, replaying the loop step by step.

    Uses the same kernels as :func:`sqrt_rem` but materializes Python ints,
    so it is only meant for small inputs.
    """
    limbs = [int(v) for v in x.limbs]
    n = len(limbs)
    if n == 0:
        return
    if n % 2:
        limbs = [0] + limbs
    n_root = len(limbs) // 2
    lead = limbs[:2] if n % 2 == 0 else limbs[1:2]
    d, r = first_digit(lead)
    root = [d]
    rem = BigNat.from_int(r)
    y_float = ExtFloat.from_u64(d)
    prefix = limbs[0] << 32 | limbs[1]
    yield Step(n_root - 1, d, d, r, prefix, len(rem), None)
    for k in range(1, n_root):
        pair = limbs[2 * k:2 * k + 2]
        w = LimbWindow.of(BigNat(list(rem.limbs) + pair))
        width = len(w)
        y_float = y_float.scale_by_pow2(32)
        g = guess_digit(y_float, w)
        g = min(g, (1 << 32) - 1)
        if g:
            d, w = compute_remainder(g, root, w)
            if k <= 2:
                if k == 2:
                    y_float = y_float.next_up()
                y_float = (y_float + ExtFloat.from_u64(d)).next_down()
        else:
            d = 0
        root.append(d)
        rem = w.value()
        prefix = prefix << 64 | pair[0] << 32 | pair[1]
        y = 0
        for v in root:
            y = y << 32 | v
        yield Step(n_root - 1 - k, d, y, rem.to_int(), prefix, width, g)
