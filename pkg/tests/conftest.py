from fractions import Fraction

import mpmath
import pytest

from regdet.numerics import PrecisionContext

HI_PREC = 400


@pytest.fixture
def ctx():
    return PrecisionContext()


@pytest.fixture(autouse=True)
def _high_precision_mpmath():
    # oracles computed with the global mpmath context run well above 128 bits
    with mpmath.workprec(HI_PREC):
        yield


def hp(x):
    """Convert to a global-context mpf at the current (high) precision."""
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def tail_bracket(f, antiderivative_tail, n):
    """Bounds on sum_{k>=n} f(k) for f positive, decreasing and convex.

    Trapezoid overestimates the integral and the midpoint rule underestimates
    it, giving  int_n^oo f + f(n)/2  <=  sum  <=  int_{n-1/2}^oo f.
    """
    lo = antiderivative_tail(hp(n)) + f(hp(n)) / 2
    hi = antiderivative_tail(hp(n) - hp("1/2"))
    return lo, hi


# one summary line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k[1:])):
        passed, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{key} {'PASS' if passed else 'FAIL'}  {detail}")
