"""Regularized products zeta_R, zeta_C, gamma factors, and G_K(s).

G_K(s) is computed two ways:

* ``G_K_def`` differentiates the Dirichlet series phi(w, s) at w = 0 using
  Hurwitz-zeta continuation and Lerch's formula;
* ``G_K_closed`` uses G_K(s)^-1 = zeta_R(s+2)^r1 * zeta_C(s+1)^r2.

The two share only the log-gamma kernel, and evaluate it at different
arguments, so their agreement is a real check.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .numerics import (
    DEFAULT_CONTEXT,
    DomainError,
    PrecisionContext,
    _hurwitz,
    _lerch,
    _lgamma,
    add_exact,
    evaluate,
    mag_bits,
    mpctx,
    residual,
    to_mpf,
)


@dataclass(frozen=True)
class Signature:
    """Real and complex place counts of a number field."""

    r1: int
    r2: int

    def __post_init__(self):
        if self.r1 < 0 or self.r2 < 0:
            raise ValueError(f"negative place count in {self}")
        if self.r1 + 2 * self.r2 < 1:
            raise ValueError("a number field has positive degree")

    @property
    def degree(self) -> int:
        return self.r1 + 2 * self.r2

    def __str__(self):
        return f"({self.r1}, {self.r2})"


class RegZetaKind(enum.Enum):
    R = "R"  # product over 2n + s
    C = "C"  # product over n + s


def _positive(mp, s, name):
    s = to_mpf(mp, s)
    if not s > 0:
        raise DomainError(f"{name} needs s > 0, got {s}")
    return s


def _above_minus_one(mp, s):
    s = to_mpf(mp, s)
    if not s > -1:
        raise DomainError(f"G_K needs s > -1, got {s}")
    return s


# --- closed forms -------------------------------------------------------------


def _log_zeta_R(mp, s):
    s = _positive(mp, s, "zeta_R")
    return _lgamma(mp, s / 2) - mp.log(2 * mp.pi) / 2 + (s - 1) / 2 * mp.ln2


def _log_zeta_C(mp, s):
    s = _positive(mp, s, "zeta_C")
    return _lgamma(mp, s) - mp.log(2 * mp.pi) / 2


def zeta_R_closed(s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Gamma(s/2) 2^((s-1)/2) / sqrt(2 pi)."""
    return evaluate(ctx, lambda mp, s: mp.exp(_log_zeta_R(mp, s)), s)


def zeta_C_closed(s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Gamma(s) / sqrt(2 pi)."""
    return evaluate(ctx, lambda mp, s: mp.exp(_log_zeta_C(mp, s)), s)


def _gamma_R(mp, s):
    s = _positive(mp, s, "gamma_R")
    return mp.exp(_lgamma(mp, s / 2) - s / 2 * mp.log(mp.pi))


def _gamma_C(mp, s):
    s = _positive(mp, s, "gamma_C")
    return 2 * mp.exp(_lgamma(mp, s) - s * mp.log(2 * mp.pi))


def gamma_R(s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Gamma(s/2) pi^(-s/2)."""
    return evaluate(ctx, _gamma_R, s)


def gamma_C(s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """2 (2 pi)^(-s) Gamma(s)."""
    return evaluate(ctx, _gamma_C, s)


# --- definition route -----------------------------------------------------------


def _dw_scaled_hurwitz(mp, a):
    # d/dw [2^-w zeta_H(w, a)] at w = 0; zeta_H(0, a) goes through Euler-Maclaurin
    return -mp.ln2 * _hurwitz(mp, 0, a) + _lerch(mp, a)


def _zeta_def(mp, kind, s):
    s = _positive(mp, s, "zeta_def")
    if kind is RegZetaKind.C:
        return mp.exp(_lerch(mp, s))
    return mp.exp(_dw_scaled_hurwitz(mp, s / 2))


def zeta_def(kind: RegZetaKind, s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """zeta_R or zeta_C as exp(d/dw Z_f(w, s) at w = 0).

    Z for the C-type is zeta_H(w, s); for the R-type it is 2^-w zeta_H(w, s/2).
    The regularized product is the reciprocal of the returned value.
    """
    return evaluate(ctx, _zeta_def, RegZetaKind(kind), s)


def _phi(mp, w, s, sig):
    w = to_mpf(mp, w)
    s = _above_minus_one(mp, s)
    scale = mp.power(2, -w)
    return scale * (
        (sig.r1 + sig.r2) * _hurwitz(mp, w, s / 2 + 1) + sig.r2 * _hurwitz(mp, w, (s + 1) / 2)
    )


def phi(w, s, sig: Signature, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """sum_{n>1} rank K_n * ((n-1)/2 + s)^-w, continued in w.

    n = 1 mod 4 contributes 2+s, 4+s, ...; n = 3 mod 4 contributes 1+s, 3+s, ...
    """
    return evaluate(ctx, _phi, w, s, sig)


def _log_G_def(mp, s, sig):
    s = _above_minus_one(mp, s)
    dphi = (sig.r1 + sig.r2) * _dw_scaled_hurwitz(mp, s / 2 + 1)
    if sig.r2:
        dphi += sig.r2 * _dw_scaled_hurwitz(mp, (s + 1) / 2)
    return -dphi


def _log_G_closed(mp, s, sig):
    s = _above_minus_one(mp, s)
    out = mp.zero
    if sig.r1:
        out -= sig.r1 * _log_zeta_R(mp, s + 2)
    if sig.r2:
        out -= sig.r2 * _log_zeta_C(mp, s + 1)
    return out


def G_K_def(s, sig: Signature, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """exp(-d/dw phi(w, s) at w = 0), the regularized determinant itself."""
    return evaluate(ctx, lambda mp, s, sig: mp.exp(_log_G_def(mp, s, sig)), s, sig)


def G_K_closed(s, sig: Signature, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """(zeta_R(s+2)^r1 zeta_C(s+1)^r2)^-1."""
    return evaluate(ctx, lambda mp, s, sig: mp.exp(_log_G_closed(mp, s, sig)), s, sig)


# --- identity residuals ---------------------------------------------------------
# Each residual is the exact |lhs - rhs| of values that individually meet
# the context's target error.


def _product_residual(lhs, f0, f1, s0, s1, ctx):
    # |lhs - f0(s0) f1(s1)| with each factor tight enough that the product
    # still meets ctx's absolute target
    mp = mpctx()
    v0, v1 = f0(s0, ctx), f1(s1, ctx)
    budget = mag_bits(v0) + mag_bits(v1) + 2
    v0, v1 = f0(s0, ctx.tightened(budget)), f1(s1, ctx.tightened(budget))
    return residual(lhs, mp.fmul(v0, v1, exact=True))


def theorem1_residual(s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """|zeta_C(s) - zeta_R(s) zeta_R(s+1)|."""
    lhs = zeta_C_closed(s, ctx)
    return _product_residual(lhs, zeta_R_closed, zeta_R_closed, s, add_exact(s, 1), ctx)


def gamma_factor_residual(s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """|Gamma_C(s) - Gamma_R(s) Gamma_R(s+1)|."""
    lhs = gamma_C(s, ctx)
    return _product_residual(lhs, gamma_R, gamma_R, s, add_exact(s, 1), ctx)


def route_residual(s, sig: Signature, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """|G_K_def(s) - G_K_closed(s)|."""
    return residual(G_K_def(s, sig, ctx), G_K_closed(s, sig, ctx))


def zeta_route_residual(kind: RegZetaKind, s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    closed = zeta_R_closed if RegZetaKind(kind) is RegZetaKind.R else zeta_C_closed
    return residual(zeta_def(kind, s, ctx), closed(s, ctx))


def _periodicity_ratio(mp, s, sig, r2_exp, r12_exp):
    # G(s+2) / G(s) * (s+1)^r2_exp * (s+2)^r12_exp, done in log space
    s = _above_minus_one(mp, s)
    log_ratio = _log_G_closed(mp, s + 2, sig) - _log_G_closed(mp, s, sig)
    log_ratio += r2_exp * mp.log(s + 1) + r12_exp * mp.log(s + 2)
    return mp.exp(log_ratio)


def periodicity_residual(s, sig: Signature, ctx: PrecisionContext = DEFAULT_CONTEXT, printed=False):
    """|G_K(s+2) G_K(s)^-1 (s+1)^e (s+2)^(r1+r2) - 1|.

    The shift laws give e = r2.  With ``printed=True`` the exponent e = r1 is
    used instead, which only holds when r1 == r2.
    """
    e = sig.r1 if printed else sig.r2
    ratio = evaluate(ctx, _periodicity_ratio, s, sig, e, sig.r1 + sig.r2)
    return residual(ratio, 1)


def shift_law_residual(kind: RegZetaKind, s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """|zeta(s + step) - s zeta(s)| with step 2 for R-type, 1 for C-type."""
    mp = mpctx()
    if RegZetaKind(kind) is RegZetaKind.R:
        f, step = zeta_R_closed, 2
    else:
        f, step = zeta_C_closed, 1
    lhs = f(add_exact(s, step), ctx)
    with mp.workprec(ctx.prec_for(mag_bits(lhs) + 8)):
        s_val = to_mpf(mp, s)
    base = f(s, ctx.tightened(mag_bits(s_val) + 2))
    return residual(lhs, mp.fmul(s_val, base, exact=True))


def _dup_residual(mp, z):
    z = to_mpf(mp, z)
    lhs = _lgamma(mp, 2 * z)
    rhs = _lgamma(mp, z) + _lgamma(mp, z + 0.5) + (2 * z - 1) * mp.ln2 - mp.log(mp.pi) / 2
    return mp.exp(lhs) - mp.exp(rhs)


def duplication_residual(z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """|Gamma(2z) - Gamma(z) Gamma(z+1/2) 2^(2z-1) / sqrt(pi)|."""
    mp = mpctx()
    with mp.workprec(ctx.prec_for(8)):
        return abs(_dup_residual(mp, z))
