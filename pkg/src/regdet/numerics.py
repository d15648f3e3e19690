"""Arbitrary-precision kernels: Bernoulli numbers, log-gamma, Hurwitz zeta.

Every public operation takes a :class:`PrecisionContext` and returns an
``mpf`` whose absolute error is at most ``ctx.target_abs_err``.  The working
precision is raised above ``ctx.work_bits`` when the result (or an
intermediate) is large, so the absolute guarantee holds for big values too.

Arithmetic runs on a thread-local mpmath context, so concurrent callers never
see each other's precision changes.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from mpmath.ctx_mp import MPContext

GUARD_BITS = 32
EM_MAX_ORDER = 30

_local = threading.local()


class DomainError(ValueError):
    """Argument outside the supported real domain."""


class PoleError(DomainError):
    """Evaluation at a pole (Hurwitz zeta at w = 1)."""


class PrecisionError(ArithmeticError):
    """The requested accuracy could not be certified."""


def mpctx() -> MPContext:
    """Return this thread's private mpmath context."""
    ctx = getattr(_local, "mp", None)
    if ctx is None:
        ctx = _local.mp = MPContext()
    return ctx


@dataclass(frozen=True)
class PrecisionContext:
    work_bits: int = 128
    target_abs_err: Fraction = Fraction(1, 2**100)

    def __post_init__(self):
        if self.work_bits < 64:
            raise ValueError(f"work_bits must be >= 64, got {self.work_bits}")
        if not self.target_abs_err > 0:
            raise ValueError("target_abs_err must be positive")
        object.__setattr__(self, "target_abs_err", Fraction(self.target_abs_err))

    @classmethod
    def from_bits(cls, bits: int) -> PrecisionContext:
        """Context with target 2^-(bits-28); 128 bits gives the default 2^-100."""
        if bits < 64:
            raise ValueError(f"work_bits must be >= 64, got {bits}")
        return cls(bits, Fraction(1, 2 ** (bits - 28)))

    @property
    def target_bits(self) -> int:
        """Smallest k with 2^-k <= target_abs_err."""
        t = self.target_abs_err
        return max(0, math.ceil(-math.log2(t.numerator) + math.log2(t.denominator)))

    def tol(self, k: int | float = 1):
        """k * target_abs_err as an mpf of the calling thread."""
        mp = mpctx()
        with mp.workprec(64):
            return mp.mpf(k) * mp.mpf(self.target_abs_err.numerator) / self.target_abs_err.denominator

    def tightened(self, bits: int) -> PrecisionContext:
        """Same working bits, target divided by 2^bits (for factors of a product)."""
        if bits <= 0:
            return self
        return PrecisionContext(self.work_bits, self.target_abs_err / 2**bits)

    def prec_for(self, magnitude_bits: int = 0) -> int:
        return max(self.work_bits, self.target_bits + GUARD_BITS + max(0, magnitude_bits))


DEFAULT_CONTEXT = PrecisionContext()


def to_mpf(mp: MPContext, x):
    """Convert int / Fraction / str / float / mpf to an mpf at mp.prec.

    Strings (``"1/3"``, ``"0.25"``) are read as exact rationals first.
    """
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


def add_exact(x, k: int):
    """x + k without rounding, for any accepted real input."""
    if isinstance(x, (str, float, int, Fraction)):
        return Fraction(x) + k
    return mpctx().fadd(x, k, exact=True)


def evaluate(ctx: PrecisionContext, kernel: Callable, *args):
    """Run ``kernel(mp, *args)`` at a precision sized to its result.

    A cheap 64-bit pass estimates the magnitude; the real pass then carries
    enough bits for ``ctx.target_abs_err`` in absolute terms.
    """
    mp = mpctx()
    with mp.workprec(64):
        est = kernel(mp, *args)
    mag = int(mp.mag(est)) if est else 0
    with mp.workprec(ctx.prec_for(mag)):
        return +kernel(mp, *args)


# --- Bernoulli numbers ------------------------------------------------------

_bern_lock = threading.Lock()
_bern_cache: list[Fraction] = [Fraction(1)]  # index j holds B_{2j}; B_0 = 1


def _tangent_numbers(n: int) -> list[int]:
    # Brent-Harvey in-place recurrence; T[k] is the k-th tangent number.
    t = [0] * (n + 1)
    t[1] = 1
    for k in range(2, n + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, n + 1):
        for j in range(k, n + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return t


def bernoulli(k: int) -> Fraction:
    """Bernoulli number B_k for even k >= 2 (B_2 = 1/6)."""
    if not isinstance(k, int) or k < 2 or k % 2:
        raise DomainError(f"bernoulli needs an even integer k >= 2, got {k!r}")
    half = k // 2
    with _bern_lock:
        if half >= len(_bern_cache):
            n = max(half, 2 * len(_bern_cache))
            t = _tangent_numbers(n)
            _bern_cache[:] = [Fraction(1)] + [
                Fraction((-1) ** (j - 1) * 2 * j * t[j], 4**j * (4**j - 1))
                for j in range(1, n + 1)
            ]
        return _bern_cache[half]


def _bern_mpf(mp: MPContext, k: int):
    b = bernoulli(k)
    return mp.mpf(b.numerator) / b.denominator


# --- log-gamma ----------------------------------------------------------------


def _lgamma(mp: MPContext, x):
    x = to_mpf(mp, x)
    if not x > 0:
        raise DomainError(f"lgamma needs x > 0, got {x}")
    # shift upward until the Stirling series converges below 2^-prec
    threshold = max(mp.prec / 4, 8)
    shift = mp.one
    while x < threshold:
        shift *= x
        x += 1
    eps = mp.ldexp(1, -mp.prec - 8)
    s = (x - 0.5) * mp.log(x) - x + mp.log(2 * mp.pi) / 2
    xx = x * x
    xpow = x
    k = 1
    while True:
        term = _bern_mpf(mp, 2 * k) / (2 * k * (2 * k - 1) * xpow)
        s += term
        if abs(term) < eps:
            break
        k += 1
        xpow *= xx
        if k > 4 * mp.prec:
            raise PrecisionError("Stirling series failed to converge")
    return s - mp.log(shift)


def lgamma(x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """log Gamma(x) for real x > 0."""
    return evaluate(ctx, _lgamma, x)


# --- Hurwitz zeta -------------------------------------------------------------


def _hurwitz(mp: MPContext, w, a):
    w = to_mpf(mp, w)
    a = to_mpf(mp, a)
    if not a > 0:
        raise DomainError(f"hurwitz_zeta needs a > 0, got {a}")
    if w == 1:
        raise PoleError("hurwitz_zeta has a pole at w = 1")
    eps = mp.ldexp(1, -mp.prec)
    n_terms = max(10, math.ceil(abs(float(w))) + 10)
    partial = mp.zero
    done = 0
    while True:
        for n in range(done, n_terms):
            partial += mp.power(n + a, -w)
        done = n_terms
        x = n_terms + a
        total = partial + mp.power(x, 1 - w) / (w - 1) + mp.power(x, -w) / 2
        # Euler-Maclaurin corrections B_2j/(2j)! * w(w+1)...(w+2j-2) * x^(-w-2j+1)
        rising = w
        xpow = mp.power(x, -w - 1)
        x2 = x * x
        fact = mp.mpf(2)
        for j in range(1, EM_MAX_ORDER + 2):
            term = _bern_mpf(mp, 2 * j) / fact * rising * xpow
            if abs(term) < eps:
                return total
            if j > EM_MAX_ORDER:
                break
            total += term
            rising *= (w + 2 * j - 1) * (w + 2 * j)
            xpow /= x2
            fact *= (2 * j + 1) * (2 * j + 2)
        n_terms *= 2
        if n_terms > 1 << 22:
            raise PrecisionError("Euler-Maclaurin did not reach the target error")


def hurwitz_zeta(w, a, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Analytic continuation of sum_{n>=0} (n+a)^-w for real w != 1, a > 0."""
    return evaluate(ctx, _hurwitz, w, a)


def _lerch(mp: MPContext, a):
    a = to_mpf(mp, a)
    if not a > 0:
        raise DomainError(f"need a > 0, got {a}")
    return _lgamma(mp, a) - mp.log(2 * mp.pi) / 2


def hurwitz_zeta_dw0(a, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """d/dw zeta_H(w, a) at w = 0, i.e. log(Gamma(a) / sqrt(2 pi))."""
    return evaluate(ctx, _lerch, a)


def fd_step(ctx: PrecisionContext):
    """Central-difference step h = target_abs_err^(1/3)."""
    mp = mpctx()
    with mp.workprec(ctx.prec_for()):
        return mp.cbrt(ctx.tol())


def fd_tolerance(ctx: PrecisionContext):
    """Agreement bound 10 * target_abs_err^(2/3) for the finite-difference route."""
    mp = mpctx()
    with mp.workprec(ctx.prec_for()):
        return 10 * mp.cbrt(ctx.tol()) ** 2


def _lerch_fd(mp: MPContext, a, h):
    return (_hurwitz(mp, h, a) - _hurwitz(mp, -h, a)) / (2 * h)


def hurwitz_zeta_dw0_numeric(a, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Finite-difference estimate of d/dw zeta_H(w, a) at w = 0.

    Independent of the log-gamma path; agrees with :func:`hurwitz_zeta_dw0`
    within :func:`fd_tolerance`.
    """
    return evaluate(ctx, _lerch_fd, a, fd_step(ctx))


def mag_bits(x) -> int:
    """Nonnegative bound on log2|x|, for sizing product error budgets."""
    return max(0, int(mpctx().mag(x))) if x else 0


def residual(x, y):
    """|x - y| computed exactly."""
    mp = mpctx()
    return abs(mp.fsub(x, y, exact=True))
