"""Multiprecision integer square root by shift-and-subtract with float digit guessing."""
from .bignat import (
    BigNat,
    LimbWindow,
    bit_length,
    compare,
    from_decimal,
    from_hex,
    random_limbs,
    random_of_limbs,
    strip_leading_zeros,
    to_decimal,
)
from .extfloat import ExtFloat, FloatParams, required_precision
from .isqrt import GuessInvariantError, GuessStats, SqrtResult, isqrt, sqrt_rem
from .baseline import divide, sqrt_rem_binary_search, sqrt_rem_newton

__all__ = [
    "BigNat",
    "ExtFloat",
    "FloatParams",
    "GuessInvariantError",
    "GuessStats",
    "LimbWindow",
    "SqrtResult",
    "bit_length",
    "compare",
    "divide",
    "from_decimal",
    "from_hex",
    "isqrt",
    "random_limbs",
    "random_of_limbs",
    "required_precision",
    "sqrt_rem",
    "sqrt_rem_binary_search",
    "sqrt_rem_newton",
    "strip_leading_zeros",
    "to_decimal",
]
