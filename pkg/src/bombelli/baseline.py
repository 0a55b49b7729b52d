"""Comparison implementations: bisection-digit Bombelli and integer Newton.

The Newton path runs on its own little-endian limb kernels (schoolbook
long division, schoolbook multiplication) so that it shares nothing with the
shift-and-subtract core it is compared against.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from .bignat import BigNat
from .isqrt import SqrtResult, _run

_MASK = np.uint64(0xFFFFFFFF)
_B = np.uint64(1 << 32)
_SHIFT = np.uint64(32)
_ONE = np.uint64(1)
_ZERO = np.uint64(0)


def sqrt_rem_binary_search(x: BigNat) -> SqrtResult:
    """Shift-and-subtract root with every digit found by bisection."""
    return _run(x, False, None)


# ---------------------------------------------------------------------------
# little-endian limb kernels


@njit(cache=True)
def _le_len(a, n):
    while n > 0 and a[n - 1] == _ZERO:
        n -= 1
    return n


@njit(cache=True)
def _le_cmp(a, b):
    na = _le_len(a, len(a))
    nb = _le_len(b, len(b))
    if na != nb:
        return -1 if na < nb else 1
    for i in range(na - 1, -1, -1):
        if a[i] != b[i]:
            return -1 if a[i] < b[i] else 1
    return 0


@njit(cache=True)
def _le_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = np.zeros(len(a) + 1, dtype=np.uint64)
    carry = _ZERO
    for i in range(len(a)):
        carry += a[i]
        if i < len(b):
            carry += b[i]
        out[i] = carry & _MASK
        carry >>= _SHIFT
    out[len(a)] = carry
    return out[:_le_len(out, len(out))]


@njit(cache=True)
def _le_sub(a, b):
    """a - b for a >= b."""
    out = a.copy()
    borrow = _ZERO
    for i in range(len(a)):
        s = borrow
        if i < len(b):
            s += b[i]
        elif borrow == _ZERO:
            break
        if out[i] >= s:
            out[i] -= s
            borrow = _ZERO
        else:
            out[i] = (out[i] - s) & _MASK
            borrow = _ONE
    return out[:_le_len(out, len(out))]


@njit(cache=True)
def _le_mul(a, b):
    out = np.zeros(len(a) + len(b), dtype=np.uint64)
    for i in range(len(a)):
        ai = a[i]
        if ai == _ZERO:
            continue
        carry = _ZERO
        for j in range(len(b)):
            t = ai * b[j] + out[i + j] + carry
            # ai*b[j] + out + carry <= (2**32-1)**2 + 2*(2**32-1) < 2**64
            out[i + j] = t & _MASK
            carry = t >> _SHIFT
        out[i + len(b)] = carry
    return out[:_le_len(out, len(out))]


@njit(cache=True)
def _le_shr1(a):
    out = np.zeros(len(a), dtype=np.uint64)
    for i in range(len(a)):
        v = a[i] >> _ONE
        if i + 1 < len(a):
            v |= (a[i + 1] & _ONE) << np.uint64(31)
        out[i] = v
    return out[:_le_len(out, len(out))]


@njit(cache=True)
def _nlz32(v):
    n = 0
    while v < np.uint64(0x80000000):
        v <<= _ONE
        n += 1
    return n


@njit(cache=True)
def _le_divmod(u, v):
    """Knuth's algorithm D on little-endian 32-bit limbs held in uint64."""
    m = _le_len(u, len(u))
    n = _le_len(v, len(v))
    if n == 0:
        raise ZeroDivisionError("division by zero")
    if m < n:
        return np.zeros(0, dtype=np.uint64), u[:m].copy()
    if n == 1:
        d = v[0]
        q = np.zeros(m, dtype=np.uint64)
        rem = _ZERO
        for i in range(m - 1, -1, -1):
            cur = (rem << _SHIFT) | u[i]
            q[i] = cur // d
            rem = cur % d
        r = np.zeros(1, dtype=np.uint64)
        r[0] = rem
        return q[:_le_len(q, m)], r[:_le_len(r, 1)]

    s = np.uint64(_nlz32(v[n - 1]))
    vn = np.zeros(n, dtype=np.uint64)
    un = np.zeros(m + 1, dtype=np.uint64)
    if s:
        rs = np.uint64(32) - s
        for i in range(n - 1, 0, -1):
            vn[i] = ((v[i] << s) | (v[i - 1] >> rs)) & _MASK
        vn[0] = (v[0] << s) & _MASK
        un[m] = u[m - 1] >> rs
        for i in range(m - 1, 0, -1):
            un[i] = ((u[i] << s) | (u[i - 1] >> rs)) & _MASK
        un[0] = (u[0] << s) & _MASK
    else:
        vn[:] = v[:n]
        un[:m] = u[:m]

    q = np.zeros(m - n + 1, dtype=np.uint64)
    vtop = vn[n - 1]
    vnext = vn[n - 2]
    for j in range(m - n, -1, -1):
        num = (un[j + n] << _SHIFT) | un[j + n - 1]
        qhat = num // vtop
        rhat = num - qhat * vtop
        while qhat >= _B or qhat * vnext > ((rhat << _SHIFT) | un[j + n - 2]):
            qhat -= _ONE
            rhat += vtop
            if rhat >= _B:
                break
        # multiply and subtract
        carry = _ZERO
        borrow = _ZERO
        for i in range(n):
            p = qhat * vn[i] + carry
            carry = p >> _SHIFT
            sub = (p & _MASK) + borrow
            if un[i + j] >= sub:
                un[i + j] -= sub
                borrow = _ZERO
            else:
                un[i + j] = (un[i + j] - sub) & _MASK
                borrow = _ONE
        sub = carry + borrow
        if un[j + n] >= sub:
            un[j + n] -= sub
        else:
            un[j + n] = (un[j + n] - sub) & _MASK
            # qhat was one too large: add the divisor back
            qhat -= _ONE
            c = _ZERO
            for i in range(n):
                c += un[i + j] + vn[i]
                un[i + j] = c & _MASK
                c >>= _SHIFT
            un[j + n] = (un[j + n] + c) & _MASK
        q[j] = qhat

    r = np.zeros(n, dtype=np.uint64)
    if s:
        rs = np.uint64(32) - s
        for i in range(n - 1):
            r[i] = ((un[i] >> s) | (un[i + 1] << rs)) & _MASK
        r[n - 1] = un[n - 1] >> s
    else:
        r[:] = un[:n]
    return q[:_le_len(q, len(q))], r[:_le_len(r, n)]


@njit(cache=True)
def _newton_kernel(x):
    """Integer Newton iteration from 2**ceil(bits/2); returns (root, rem, steps)."""
    n = len(x)
    top = x[n - 1]
    bits = 32 * (n - 1)
    while top:
        top >>= _ONE
        bits += 1
    half = (bits + 1) // 2
    y = np.zeros(half // 32 + 1, dtype=np.uint64)
    y[half // 32] = _ONE << np.uint64(half % 32)
    steps = 0
    while True:
        q, _ = _le_divmod(x, y)
        y1 = _le_shr1(_le_add(y, q))
        steps += 1
        if _le_cmp(y1, y) >= 0:
            break
        y = y1
    y = y[:_le_len(y, len(y))]
    sq = _le_mul(y, y)
    while _le_cmp(sq, x) > 0:
        one = np.ones(1, dtype=np.uint64)
        y = _le_sub(y, one)
        sq = _le_mul(y, y)
    return y, _le_sub(x, sq), steps


def _to_le(x: BigNat) -> np.ndarray:
    return x.limbs[::-1].astype(np.uint64)


def _from_le(a: np.ndarray) -> BigNat:
    return BigNat._trusted(a[::-1])


def divide(num: BigNat, den: BigNat) -> tuple[BigNat, BigNat]:
    """Schoolbook long division; returns (quotient, remainder)."""
    if not len(den):
        raise ZeroDivisionError("division by zero")
    if not len(num):
        return num, num
    q, r = _le_divmod(_to_le(num), _to_le(den))
    return _from_le(q), _from_le(r)


def sqrt_rem_newton(x: BigNat) -> SqrtResult:
    """Floor square root by integer Newton iteration with long division."""
    if not len(x):
        return SqrtResult(x, x)
    y, r, _ = _newton_kernel(_to_le(x))
    return SqrtResult(_from_le(y), _from_le(r))


def newton_steps(x: BigNat) -> int:
    """Number of Newton iterations ``sqrt_rem_newton`` performs on ``x``."""
    if not len(x):
        return 0
    return int(_newton_kernel(_to_le(x))[2])


__all__ = ["divide", "newton_steps", "sqrt_rem_binary_search", "sqrt_rem_newton"]
