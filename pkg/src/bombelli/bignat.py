"""Multiprecision natural numbers stored as big-endian base-2**32 limbs."""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from numba import njit

RADIX_BITS = 32
RADIX = 1 << RADIX_BITS
LIMB = np.uint32

_MASK = np.uint64(0xFFFFFFFF)
_SHIFT = np.uint64(32)
_DEC_CHUNK = 9
_DEC_BASE = np.uint64(10**_DEC_CHUNK)


def _canonical(limbs: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(limbs)
    out = np.array(limbs[nz[0]:] if len(nz) else limbs[:0], dtype=LIMB)
    out.flags.writeable = False
    return out


@functools.total_ordering
class BigNat:
    """Immutable natural number; ``limbs[0]`` is the most significant limb.

    Zero is the empty limb sequence.
    """

    __slots__ = ("limbs",)

    def __init__(self, limbs=()):
        arr = np.asarray(limbs).ravel()
        if arr.size:
            if arr.dtype.kind not in "iu":
                raise TypeError("limbs must be integers")
            if (arr < 0).any() or (arr >= RADIX).any():
                raise ValueError("limb out of range")
        self.limbs = _canonical(arr)

    @classmethod
    def _trusted(cls, limbs: np.ndarray) -> BigNat:
        obj = cls.__new__(cls)
        obj.limbs = _canonical(limbs)
        return obj

    @classmethod
    def from_int(cls, n: int) -> BigNat:
        if n < 0:
            raise ValueError("BigNat cannot be negative")
        nbytes = (n.bit_length() + 31) // 32 * 4
        return cls._trusted(np.frombuffer(n.to_bytes(nbytes, "big"), dtype=">u4"))

    def to_int(self) -> int:
        return int.from_bytes(self.limbs.astype(">u4").tobytes(), "big")

    @classmethod
    def from_decimal(cls, s: str) -> BigNat:
        return from_decimal(s)

    @classmethod
    def from_hex(cls, s: str) -> BigNat:
        return from_hex(s)

    def to_decimal(self) -> str:
        return to_decimal(self)

    def bit_length(self) -> int:
        return bit_length(self)

    def __len__(self):
        return len(self.limbs)

    def __bool__(self):
        return len(self.limbs) > 0

    def __eq__(self, other):
        if not isinstance(other, BigNat):
            return NotImplemented
        return np.array_equal(self.limbs, other.limbs)

    def __lt__(self, other):
        if not isinstance(other, BigNat):
            return NotImplemented
        return compare(self, other) < 0

    def __hash__(self):
        return hash(self.limbs.tobytes())

    def __str__(self):
        return to_decimal(self)

    def __repr__(self):
        if len(self.limbs) <= 4:
            return f"BigNat({self.to_decimal()})"
        return f"BigNat(<{len(self.limbs)} limbs>)"


ZERO = BigNat()


@dataclass
class LimbWindow:
    """Half-open view ``buffer[begin:end]`` read as a big-endian number."""

    buffer: np.ndarray
    begin: int
    end: int

    def __post_init__(self):
        if not 0 <= self.begin <= self.end <= len(self.buffer):
            raise ValueError(f"bad window [{self.begin}, {self.end}) over {len(self.buffer)} limbs")

    @classmethod
    def of(cls, x: BigNat, pad: int = 0) -> LimbWindow:
        """Fresh uint64 working buffer holding ``x`` with ``pad`` zero limbs in front."""
        buf = np.zeros(pad + len(x), dtype=np.uint64)
        buf[pad:] = x.limbs
        return cls(buf, pad, len(buf))

    def __len__(self):
        return self.end - self.begin

    def value(self) -> BigNat:
        return BigNat._trusted(self.buffer[self.begin:self.end])


def strip_leading_zeros(w: LimbWindow) -> LimbWindow:
    begin = w.begin
    while begin < w.end and w.buffer[begin] == 0:
        begin += 1
    return LimbWindow(w.buffer, begin, w.end)


def bit_length(x: BigNat) -> int:
    if not len(x.limbs):
        return 0
    return 32 * (len(x.limbs) - 1) + int(x.limbs[0]).bit_length()


def compare(x: BigNat, y: BigNat) -> int:
    """-1, 0 or 1 as ``x`` is less than, equal to or greater than ``y``."""
    a, b = x.limbs, y.limbs
    if len(a) != len(b):
        return -1 if len(a) < len(b) else 1
    diff = np.flatnonzero(a != b)
    if not len(diff):
        return 0
    i = diff[0]
    return -1 if a[i] < b[i] else 1


@njit(cache=True)
def _mul_small_add(acc, n, m, a):
    """acc[:n] = acc[:n] * m + a (little-endian); returns the new length."""
    carry = np.uint64(a)
    for i in range(n):
        p = acc[i] * m + carry
        acc[i] = p & _MASK
        carry = p >> _SHIFT
    if carry:
        acc[n] = carry
        n += 1
    return n


@njit(cache=True)
def _decimal_to_limbs(chunks):
    # chunks: 9-digit groups, most significant first
    acc = np.zeros(len(chunks) + 1, dtype=np.uint64)
    n = 0
    for i in range(len(chunks)):
        n = _mul_small_add(acc, n, _DEC_BASE, chunks[i])
    out = np.empty(n, dtype=np.uint64)
    for i in range(n):
        out[i] = acc[n - 1 - i]
    return out


@njit(cache=True)
def _limbs_to_decimal_chunks(limbs):
    # repeated short division by 10**9; returns groups least significant first
    work = limbs.astype(np.uint64)
    n = len(work)
    start = 0
    out = np.empty(n * 32 // 29 + 2, dtype=np.uint64)
    k = 0
    while start < n:
        rem = np.uint64(0)
        for i in range(start, n):
            cur = (rem << _SHIFT) | work[i]
            work[i] = cur // _DEC_BASE
            rem = cur % _DEC_BASE
        out[k] = rem
        k += 1
        while start < n and work[start] == 0:
            start += 1
    return out[:k]


def from_decimal(s: str) -> BigNat:
    if not s or not s.isascii() or not s.isdigit():
        raise ValueError(f"not a decimal natural number: {s!r}")
    s = s.lstrip("0")
    if not s:
        return ZERO
    first = len(s) % _DEC_CHUNK or _DEC_CHUNK
    chunks = [s[:first]] + [s[i:i + _DEC_CHUNK] for i in range(first, len(s), _DEC_CHUNK)]
    arr = np.array([int(c) for c in chunks], dtype=np.uint64)
    return BigNat._trusted(_decimal_to_limbs(arr))


def to_decimal(x: BigNat) -> str:
    if not len(x.limbs):
        return "0"
    groups = _limbs_to_decimal_chunks(x.limbs)
    head = str(int(groups[-1]))
    return head + "".join(f"{int(g):09d}" for g in groups[-2::-1])


def from_hex(s: str) -> BigNat:
    body = s[2:] if s[:2].lower() == "0x" else s
    if not body or any(c not in "0123456789abcdefABCDEF" for c in body):
        raise ValueError(f"not a hexadecimal natural number: {s!r}")
    pad = -len(body) % 8
    body = "0" * pad + body
    return BigNat._trusted(np.array([int(body[i:i + 8], 16) for i in range(0, len(body), 8)], dtype=np.uint64))


def random_limbs(n: int, rng: np.random.Generator, exact: bool = False) -> BigNat:
    """Uniform value below ``2**(32*n)``; with ``exact`` the top limb is nonzero."""
    if n < 0:
        raise ValueError("limb count must be non-negative")
    limbs = rng.integers(0, RADIX, size=n, dtype=np.uint64)
    if exact and n:
        limbs[0] = rng.integers(1, RADIX, dtype=np.uint64)
    return BigNat._trusted(limbs)


def random_of_limbs(n: int, rng_seed: int) -> BigNat:
    """Deterministic uniform value in ``[0, 2**(32*n))``.

    Uses numpy's PCG64 generator seeded with ``rng_seed``.
    """
    return random_limbs(n, np.random.Generator(np.random.PCG64(rng_seed)))
