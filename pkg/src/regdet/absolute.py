"""Absolute automorphic forms f_R, f_C and their absolute Hurwitz zeta.

Z_f(w, s) = 1/Gamma(w) * int_1^oo f(x) x^(-s-1) (log x)^(w-1) dx is computed
two ways: by quadrature of the integral (``Z_integral``, convergent w > 1
only) and by the Hurwitz series it reduces to (``Z_series``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .numerics import (
    DEFAULT_CONTEXT,
    DomainError,
    PrecisionContext,
    PrecisionError,
    _hurwitz,
    _lgamma,
    add_exact,
    bernoulli,
    evaluate,
    mag_bits,
    mpctx,
    residual,
    to_mpf,
)

T_CUT = 1 / 16


class UnsupportedFormError(TypeError):
    """Series route requested for a form without a known Hurwitz reduction."""


@dataclass(frozen=True)
class AbsoluteForm:
    """f : R -> C u {oo} with f(1/x) = C x^-D f(x).

    ``evaluate(mp, x)`` gives f(x).  Optional ``at_log(mp, t)`` gives f(e^t)
    stably; ``pole`` and ``regular(mp, t)`` split f(e^t) = pole/t + regular(t)
    near t = 0 so quadrature can peel the endpoint singularity off.
    """

    name: str
    C: int
    D: int
    evaluate: Callable
    at_log: Optional[Callable] = None
    pole: object = 0
    regular: Optional[Callable] = None

    def __post_init__(self):
        if self.C not in (1, -1):
            raise ValueError(f"C must be +1 or -1, got {self.C}")

    def f_exp(self, mp, t):
        if self.at_log is not None:
            return self.at_log(mp, t)
        return self.evaluate(mp, mp.exp(t))


def _bernoulli_plus(mp, t):
    # t/(1 - e^-t) - 1 = t/2 + sum_k B_2k t^2k/(2k)!, divided by t; |t| < 2 pi
    eps = mp.ldexp(1, -mp.prec - 4)
    out = mp.mpf(0.5)
    tt = t * t
    tpow = t
    fact = mp.mpf(2)
    k = 1
    while True:
        b = bernoulli(2 * k)
        term = mp.mpf(b.numerator) / b.denominator * tpow / fact
        out += term
        if abs(term) < eps:
            return out
        k += 1
        tpow *= tt
        fact *= (2 * k - 1) * (2 * k)


def _f_C(mp, x):
    return 1 / (1 - 1 / x)


def _f_R(mp, x):
    return 1 / (1 - 1 / (x * x))


F_C = AbsoluteForm(
    name="f_C",
    C=-1,
    D=1,
    evaluate=_f_C,
    at_log=lambda mp, t: -1 / mp.expm1(-t),
    pole=1,
    regular=_bernoulli_plus,
)

F_R = AbsoluteForm(
    name="f_R",
    C=-1,
    D=2,
    evaluate=_f_R,
    at_log=lambda mp, t: -1 / mp.expm1(-2 * t),
    pole=0.5,
    regular=lambda mp, t: _bernoulli_plus(mp, 2 * t),
)

BUILTIN_FORMS = {"f_C": F_C, "f_R": F_R}


def verify_form_equation(f: AbsoluteForm, sample_count: int = 100, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Max of |f(1/x) - C x^-D f(x)| over log-spaced x in (1, 1000]."""
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    mp = mpctx()
    worst = mp.zero
    with mp.workprec(ctx.prec_for(8)):
        for k in range(1, sample_count + 1):
            x = mp.power(10, mp.mpf(3 * k) / sample_count)
            r = abs(f.evaluate(mp, 1 / x) - f.C * mp.power(x, -f.D) * f.evaluate(mp, x))
            worst = max(worst, r)
    return worst


def _tail_cutoff(mp, f, w, s, budget):
    # For t >= T >= 2(w-1)/s: t^(w-1) e^(-st) <= T^(w-1) e^(-sT) e^(-s(t-T)/2).
    # f(e^t) is bounded by its value at t = 1 for the decreasing builtin forms.
    fbound = max(abs(f.f_exp(mp, mp.one)), mp.one)
    T = max(mp.mpf(8), 2 * abs(w - 1) / s + 1)
    while True:
        bound = fbound * 2 * (mp.power(T, w - 1) + mp.power(T, w - 2)) * mp.exp(-s * T) / s
        if bound < budget:
            return T
        T *= 2


def _z_integral(mp, f, w, s, budget):
    w = to_mpf(mp, w)
    s = to_mpf(mp, s)
    t_cut = mp.mpf(T_CUT)
    T = _tail_cutoff(mp, f, w, s, budget if budget is not None else mp.ldexp(1, -mp.prec))
    breaks = [t_cut]
    b = mp.mpf(0.5)
    while b < T:
        breaks.append(b)
        b *= 2
    breaks.append(T)

    def kernel(t):
        return mp.exp(-s * t) * mp.power(t, w - 1)

    outer, err_outer = mp.quad(lambda t: f.f_exp(mp, t) * kernel(t), breaks, error=True)
    total = outer
    err = err_outer
    if f.regular is not None:
        inner, e1 = mp.quad(lambda t: f.regular(mp, t) * kernel(t), [0, t_cut], error=True)
        # int_0^tcut t^(w-2) e^(-st) = Gamma(w-1) s^(1-w) - int_tcut^oo (same)
        upper, e2 = mp.quad(lambda t: mp.exp(-s * t) * mp.power(t, w - 2), breaks, error=True)
        singular = mp.exp(_lgamma(mp, w - 1)) * mp.power(s, 1 - w) - upper
        total += inner + to_mpf(mp, f.pole) * singular
        err += e1 + abs(to_mpf(mp, f.pole)) * e2
    else:
        inner, e1 = mp.quad(lambda t: f.f_exp(mp, t) * kernel(t), [0, t_cut], error=True)
        total += inner
        err += e1
    if budget is not None and err > budget:
        raise PrecisionError(f"quadrature error estimate {mp.nstr(err, 3)} above budget")
    return total / mp.exp(_lgamma(mp, w))


def Z_integral(f: AbsoluteForm, w, s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Z_f(w, s) by quadrature after x = e^t; needs w > 1 and s > 0."""
    mp = mpctx()
    with mp.workprec(64):
        if not to_mpf(mp, w) > 1:
            raise DomainError("Z_integral converges only for w > 1")
        if not to_mpf(mp, s) > 0:
            raise DomainError("Z_integral needs s > 0")
    with mp.workprec(64):
        est = _z_integral(mp, f, w, s, None)
    with mp.workprec(ctx.prec_for(mag_bits(est))):
        return +_z_integral(mp, f, w, s, ctx.tol() / 16)


def _z_series(mp, f, w, s):
    s_val = to_mpf(mp, s)
    if not s_val > 0:
        raise DomainError("Z_series needs s > 0")
    if f.name == "f_C":
        return _hurwitz(mp, w, s)
    if f.name == "f_R":
        w = to_mpf(mp, w)
        return mp.power(2, -w) * _hurwitz(mp, w, s_val / 2)
    raise UnsupportedFormError(f"no series reduction known for {f.name}")


def Z_series(f: AbsoluteForm, w, s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Hurwitz reduction: zeta_H(w, s) for f_C, 2^-w zeta_H(w, s/2) for f_R."""
    if f.name not in BUILTIN_FORMS or BUILTIN_FORMS[f.name] is not f:
        raise UnsupportedFormError(f"no series reduction known for {f.name}")
    return evaluate(ctx, _z_series, f, w, s)


def check_additive_relation(w, s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """|Z_fR(w, s) + Z_fR(w, s+1) - Z_fC(w, s)|, from f_R(x)(1 + 1/x) = f_C(x)."""
    mp = mpctx()
    a = Z_series(F_R, w, s, ctx)
    b = Z_series(F_R, w, add_exact(s, 1), ctx)
    return residual(mp.fadd(a, b, exact=True), Z_series(F_C, w, s, ctx))


def integral_series_residual(f: AbsoluteForm, w, s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    return residual(Z_integral(f, w, s, ctx), Z_series(f, w, s, ctx))
