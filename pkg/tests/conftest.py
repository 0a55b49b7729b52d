import math
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

# first calls hit the numba compiler
settings.register_profile(
    "default", deadline=None, max_examples=200,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def rn_fraction(q: Fraction) -> tuple[float, int]:
    """Round a positive rational to 53 bits, ties to even; returns (signif, exp)."""
    assert q > 0
    e = q.numerator.bit_length() - q.denominator.bit_length()
    if Fraction(2) ** e > q:
        e -= 1
    scaled = q / Fraction(2) ** e * (1 << 52)
    m = math.floor(scaled)
    rest = scaled - m
    if rest > Fraction(1, 2) or (rest == Fraction(1, 2) and m % 2):
        m += 1
    if m == 1 << 53:
        m >>= 1
        e += 1
    return m / (1 << 52), e


@pytest.fixture
def rn():
    return rn_fraction
