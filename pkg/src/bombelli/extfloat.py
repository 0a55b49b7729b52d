"""Non-negative binary floats with a 53-bit significand and a 64-bit exponent.

A value is the pair ``(signif, exp)`` meaning ``signif * 2**exp`` with
``1 <= signif < 2``, or the canonical zero ``(0.0, MIN_EXP)``.  Significand
arithmetic runs on the host binary64 unit, so every operation rounds to
nearest-even exactly like IEEE-754 would with an unbounded exponent.

The ``ef_*`` functions are numba kernels over plain ``(float, int)`` tuples so
the square-root core can call them from compiled loops.  :class:`ExtFloat` is
the Python-facing wrapper.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numba import njit

PRECISION = 53
# Exponents are kept inside +-2**62 so that sums and differences of two
# exponents never wrap an int64; results below MIN_EXP flush to zero.
MIN_EXP = -(1 << 62)
MAX_EXP = 1 << 62

_ULP1 = 2.0 ** -52  # spacing of significands in [1, 2)
_MIN_EXP = np.int64(MIN_EXP)
# exponent gap beyond which the smaller addend can no longer affect RN(x + y)
_ADD_CUTOFF = 60


@njit(cache=True)
def ef_zero():
    return 0.0, _MIN_EXP


@njit(cache=True)
def _bitlen64(n):
    n = np.uint64(n)
    r = 0
    if n >= np.uint64(1 << 32):
        n >>= np.uint64(32)
        r += 32
    if n >= np.uint64(1 << 16):
        n >>= np.uint64(16)
        r += 16
    if n >= np.uint64(1 << 8):
        n >>= np.uint64(8)
        r += 8
    if n >= np.uint64(1 << 4):
        n >>= np.uint64(4)
        r += 4
    if n >= np.uint64(1 << 2):
        n >>= np.uint64(2)
        r += 2
    if n >= np.uint64(2):
        n >>= np.uint64(1)
        r += 1
    if n >= np.uint64(1):
        r += 1
    return r


@njit(cache=True)
def ef_from_u64(n):
    n = np.uint64(n)
    if n == np.uint64(0):
        return 0.0, _MIN_EXP
    e = _bitlen64(n) - 1
    s = math.ldexp(float(n), -e)
    if s >= 2.0:
        # rounding carried into the next binade (n needs more than 53 bits)
        s *= 0.5
        e += 1
    return s, np.int64(e)


@njit(cache=True)
def ef_from_window_rd(buf, begin, end):
    """Round a big-endian limb window down to 53 bits by truncation."""
    while begin < end and buf[begin] == 0:
        begin += 1
    n = end - begin
    if n == 0:
        return 0.0, _MIN_EXP
    top = np.uint64(buf[begin])
    nb0 = _bitlen64(top)
    total = nb0 + 32 * (n - 1)
    if n == 1:
        return ef_from_u64(top)
    t = (top << np.uint64(32)) | np.uint64(buf[begin + 1])
    have = nb0 + 32
    if have >= PRECISION:
        t >>= np.uint64(have - PRECISION)
    elif n >= 3:
        k = PRECISION - have
        t = (t << np.uint64(k)) | (np.uint64(buf[begin + 2]) >> np.uint64(32 - k))
    else:
        # two limbs holding fewer than 53 bits: exact
        return ef_from_u64(t)
    # t now holds exactly the top 53 bits, so the conversion is exact
    return math.ldexp(float(t), -(PRECISION - 1)), np.int64(total - 1)


@njit(cache=True)
def ef_next_up(s, e):
    if s == 0.0:
        return 1.0, _MIN_EXP
    r = s + _ULP1
    if r >= 2.0:
        return 1.0, e + 1
    return r, e


@njit(cache=True)
def ef_next_down(s, e):
    if s == 0.0 or (s == 1.0 and e == _MIN_EXP):
        return 0.0, _MIN_EXP
    if s == 1.0:
        return 2.0 - _ULP1, e - 1
    return s - _ULP1, e


@njit(cache=True)
def ef_add(s1, e1, s2, e2):
    if s1 == 0.0:
        return s2, e2
    if s2 == 0.0:
        return s1, e1
    if e1 < e2:
        s1, e1, s2, e2 = s2, e2, s1, e1
    gap = e1 - e2
    if gap > _ADD_CUTOFF:
        return s1, e1
    r = s1 + math.ldexp(s2, -gap)
    if r >= 2.0:
        return r * 0.5, e1 + 1
    return r, e1


@njit(cache=True)
def ef_mul(s1, e1, s2, e2):
    if s1 == 0.0 or s2 == 0.0:
        return 0.0, _MIN_EXP
    e = e1 + e2
    r = s1 * s2
    if r >= 2.0:
        r *= 0.5
        e += 1
    if e < _MIN_EXP:
        return 0.0, _MIN_EXP
    return r, e


@njit(cache=True)
def ef_div(s1, e1, s2, e2):
    if s2 == 0.0:
        raise ZeroDivisionError("ExtFloat division by zero")
    if s1 == 0.0:
        return 0.0, _MIN_EXP
    e = e1 - e2
    r = s1 / s2
    if r < 1.0:
        r *= 2.0
        e -= 1
    if e < _MIN_EXP:
        return 0.0, _MIN_EXP
    return r, e


@njit(cache=True)
def ef_sqrt(s, e):
    if s == 0.0:
        return 0.0, _MIN_EXP
    if e & 1:
        return math.sqrt(2.0 * s), (e - 1) >> 1
    return math.sqrt(s), e >> 1


@njit(cache=True)
def ef_scale(s, e, k):
    if s == 0.0:
        return 0.0, _MIN_EXP
    e = e + k
    if e < _MIN_EXP:
        return 0.0, _MIN_EXP
    return s, e


@njit(cache=True)
def ef_to_u64_floor(s, e):
    if s == 0.0 or e < 0:
        return np.uint64(0)
    if e >= 64:
        raise OverflowError("ExtFloat value does not fit in 64 bits")
    bits = np.uint64(math.ldexp(s, PRECISION - 1))
    shift = e - (PRECISION - 1)
    if shift >= 0:
        return bits << np.uint64(shift)
    return bits >> np.uint64(-shift)


@dataclass(frozen=True)
class ExtFloat:
    signif: float = 0.0
    exp: int = MIN_EXP

    def __post_init__(self):
        s, e = self.signif, self.exp
        if s == 0.0:
            if e != MIN_EXP:
                raise ValueError("zero must carry the minimum exponent")
        elif not 1.0 <= s < 2.0:
            raise ValueError(f"significand {s!r} outside [1, 2)")
        elif not MIN_EXP <= e <= MAX_EXP:
            raise ValueError(f"exponent {e} out of range")

    @classmethod
    def _wrap(cls, pair):
        return cls(float(pair[0]), int(pair[1]))

    @classmethod
    def from_u64(cls, n: int) -> ExtFloat:
        if not 0 <= n < 1 << 64:
            raise ValueError("from_u64 expects an unsigned 64-bit integer")
        return cls._wrap(ef_from_u64(np.uint64(n)))

    @classmethod
    def from_window_rd(cls, window) -> ExtFloat:
        return cls._wrap(ef_from_window_rd(window.buffer, window.begin, window.end))

    @classmethod
    def from_float(cls, x: float) -> ExtFloat:
        """Exact conversion of a finite non-negative host double."""
        if not (x >= 0.0 and math.isfinite(x)):
            raise ValueError("expected a finite non-negative float")
        if x == 0.0:
            return ZERO
        m, e = math.frexp(x)
        return cls(m * 2.0, e - 1)

    def is_zero(self) -> bool:
        return self.signif == 0.0

    def next_up(self) -> ExtFloat:
        return self._wrap(ef_next_up(self.signif, self.exp))

    def next_down(self) -> ExtFloat:
        return self._wrap(ef_next_down(self.signif, self.exp))

    def __add__(self, other: ExtFloat) -> ExtFloat:
        return self._wrap(ef_add(self.signif, self.exp, other.signif, other.exp))

    def __mul__(self, other: ExtFloat) -> ExtFloat:
        return self._wrap(ef_mul(self.signif, self.exp, other.signif, other.exp))

    def __truediv__(self, other: ExtFloat) -> ExtFloat:
        if other.signif == 0.0:
            raise ZeroDivisionError("ExtFloat division by zero")
        return self._wrap(ef_div(self.signif, self.exp, other.signif, other.exp))

    def sqrt(self) -> ExtFloat:
        return self._wrap(ef_sqrt(self.signif, self.exp))

    def scale_by_pow2(self, k: int) -> ExtFloat:
        return self._wrap(ef_scale(self.signif, self.exp, k))

    def to_u64_floor(self) -> int:
        if self.signif != 0.0 and self.exp >= 64:
            raise OverflowError("value does not fit in 64 bits")
        return int(ef_to_u64_floor(self.signif, self.exp))

    def to_fraction(self) -> Fraction:
        if self.signif == 0.0:
            return Fraction(0)
        return Fraction(self.signif) * Fraction(2) ** self.exp

    def __float__(self) -> float:
        if self.signif == 0.0:
            return 0.0
        return math.ldexp(self.signif, self.exp)


ZERO = ExtFloat()
MIN_VALUE = ExtFloat(1.0, MIN_EXP)

# module-level spellings of the operations
from_u64 = ExtFloat.from_u64
value_of_window_rd = ExtFloat.from_window_rd


def next_up(x: ExtFloat) -> ExtFloat:
    return x.next_up()


def next_down(x: ExtFloat) -> ExtFloat:
    return x.next_down()


def add(x: ExtFloat, y: ExtFloat) -> ExtFloat:
    return x + y


def mul(x: ExtFloat, y: ExtFloat) -> ExtFloat:
    return x * y


def div(x: ExtFloat, y: ExtFloat) -> ExtFloat:
    return x / y


def sqrt(x: ExtFloat) -> ExtFloat:
    return x.sqrt()


def scale_by_pow2(x: ExtFloat, k: int) -> ExtFloat:
    return x.scale_by_pow2(k)


def to_u64_floor(x: ExtFloat) -> int:
    return x.to_u64_floor()


@dataclass(frozen=True)
class FloatParams:
    """Constants of the digit-guess float model."""

    p: int = PRECISION
    b: int = 1 << 32

    @property
    def u(self) -> Fraction:
        return Fraction(1, 1 << self.p)

    @property
    def delta(self) -> Fraction:
        return 23 * self.u * self.b


def required_precision(b: int, delta) -> int:
    """Smallest p with ``23 * 2**-p * b <= delta``.

    Evaluated in exact rational arithmetic; a float ``delta`` is taken at
    its exact binary value.
    """
    if b < 2 or b & (b - 1):
        raise ValueError("radix must be a power of two >= 2")
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    # 2**p >= 23 * b / delta
    q = Fraction(23 * b) / delta
    need = -(-q.numerator // q.denominator)
    return (need - 1).bit_length()
