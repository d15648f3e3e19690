"""Exact values in the monoid Q_{>0} pi^Q Gamma(1/4)^Q Gamma(1/3)^Q.

Rational prefactors are stored as prime powers with rational exponents, so
2^(-7/4) and 12 = 2^2 3 live in the same map.  Gamma at rationals with
denominator 1, 2, 3, 4 or 6 reduces into the monoid through
Gamma(q+1) = q Gamma(q), reflection and duplication.  Other arguments give
``None`` (unsupported), never an exception.

Classification leans on two independence results: pi with Gamma(1/4), and
pi with Gamma(1/3), each algebraically independent.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from sympy import factorint

from .numerics import DEFAULT_CONTEXT, DomainError, PrecisionContext, _lgamma, evaluate
from .regprod import Signature


def _frac(q) -> Fraction:
    return q if isinstance(q, Fraction) else Fraction(q)


@dataclass(frozen=True)
class ExactValue:
    primes: tuple[tuple[int, Fraction], ...] = ()
    pi_exp: Fraction = Fraction(0)
    g4_exp: Fraction = Fraction(0)
    g3_exp: Fraction = Fraction(0)
    # provenance only: set when Gamma(1/6) was rewritten via duplication
    used_gamma_sixth: bool = field(default=False, compare=False)

    def __post_init__(self):
        merged: dict[int, Fraction] = {}
        for p, e in self.primes:
            merged[p] = merged.get(p, Fraction(0)) + _frac(e)
        object.__setattr__(
            self, "primes", tuple(sorted((p, e) for p, e in merged.items() if e != 0))
        )
        for name in ("pi_exp", "g4_exp", "g3_exp"):
            object.__setattr__(self, name, _frac(getattr(self, name)))

    @property
    def prime_exponents(self) -> dict[int, Fraction]:
        return dict(self.primes)

    @property
    def is_unit(self) -> bool:
        return not self.primes and not (self.pi_exp or self.g4_exp or self.g3_exp)

    def __mul__(self, other: ExactValue) -> ExactValue:
        return exact_mul(self, other)

    def __pow__(self, q) -> ExactValue:
        return exact_pow(self, q)

    def __truediv__(self, other: ExactValue) -> ExactValue:
        return exact_mul(self, exact_pow(other, -1))

    def __str__(self):
        return render(self)


ONE = ExactValue()
PI = ExactValue(pi_exp=1)
GAMMA_QUARTER = ExactValue(g4_exp=1)
GAMMA_THIRD = ExactValue(g3_exp=1)


def exact_mul(u: ExactValue, v: ExactValue) -> ExactValue:
    return ExactValue(
        u.primes + v.primes,
        u.pi_exp + v.pi_exp,
        u.g4_exp + v.g4_exp,
        u.g3_exp + v.g3_exp,
        used_gamma_sixth=u.used_gamma_sixth or v.used_gamma_sixth,
    )


def exact_pow(u: ExactValue, q) -> ExactValue:
    q = _frac(q)
    return ExactValue(
        tuple((p, e * q) for p, e in u.primes),
        u.pi_exp * q,
        u.g4_exp * q,
        u.g3_exp * q,
        used_gamma_sixth=u.used_gamma_sixth and q != 0,
    )


def exact_of_rational(q) -> ExactValue:
    """Prime factorization of a positive rational."""
    q = _frac(q)
    if q <= 0:
        raise DomainError(f"only positive rationals embed, got {q}")
    primes = [(p, Fraction(e)) for p, e in factorint(q.numerator).items()]
    primes += [(p, Fraction(-e)) for p, e in factorint(q.denominator).items()]
    return ExactValue(tuple(primes))


def _prime_power(p: int, e) -> ExactValue:
    return ExactValue(((p, _frac(e)),))


# Gamma on (0, 1] for the supported denominators
_HALF = Fraction(1, 2)
_BASE_GAMMA = {
    Fraction(1): ONE,
    Fraction(1, 2): exact_pow(PI, _HALF),
    Fraction(1, 4): GAMMA_QUARTER,
    # reflection at 1/4: Gamma(3/4) = pi sqrt(2) / Gamma(1/4)
    Fraction(3, 4): _prime_power(2, _HALF) * PI / GAMMA_QUARTER,
    Fraction(1, 3): GAMMA_THIRD,
    # reflection at 1/3: Gamma(2/3) = 2 pi / (sqrt(3) Gamma(1/3))
    Fraction(2, 3): _prime_power(2, 1) * _prime_power(3, -_HALF) * PI / GAMMA_THIRD,
}
# duplication at 1/6 then reflection at 1/3
_GAMMA_SIXTH = ExactValue(
    ((3, _HALF), (2, Fraction(-1, 3))), Fraction(-1, 2), 0, 2, used_gamma_sixth=True
)
_BASE_GAMMA[Fraction(1, 6)] = _GAMMA_SIXTH
# reflection at 1/6: Gamma(5/6) = 2 pi / Gamma(1/6)
_BASE_GAMMA[Fraction(5, 6)] = _prime_power(2, 1) * PI / _GAMMA_SIXTH
SUPPORTED_DENOMINATORS = frozenset({1, 2, 3, 4, 6})


def gamma_exact(q) -> Optional[ExactValue]:
    """Gamma(q) in the monoid, or None when the denominator is unsupported."""
    q = _frac(q)
    if q <= 0:
        raise DomainError(f"gamma_exact needs q > 0, got {q}")
    if q.denominator not in SUPPORTED_DENOMINATORS:
        return None
    base = q - (q.numerator - 1) // q.denominator  # in (0, 1]
    prefactor = Fraction(1)
    k = base
    while k < q:
        prefactor *= k
        k += 1
    return exact_of_rational(prefactor) * _BASE_GAMMA[base]


_INV_SQRT_2PI = exact_pow(_prime_power(2, 1) * PI, -_HALF)


def zeta_R_exact(s) -> Optional[ExactValue]:
    """Gamma(s/2) (2 pi)^(-1/2) 2^((s-1)/2)."""
    s = _frac(s)
    if s <= 0:
        raise DomainError(f"zeta_R_exact needs s > 0, got {s}")
    g = gamma_exact(s / 2)
    if g is None:
        return None
    return g * _INV_SQRT_2PI * _prime_power(2, (s - 1) / 2)


def zeta_C_exact(s) -> Optional[ExactValue]:
    """Gamma(s) (2 pi)^(-1/2)."""
    s = _frac(s)
    if s <= 0:
        raise DomainError(f"zeta_C_exact needs s > 0, got {s}")
    g = gamma_exact(s)
    if g is None:
        return None
    return g * _INV_SQRT_2PI


def G_K_exact(s, sig: Signature) -> Optional[ExactValue]:
    """(zeta_R(s+2)^r1 zeta_C(s+1)^r2)^-1 for rational s >= 0."""
    s = _frac(s)
    if s < 0:
        raise DomainError(f"G_K_exact needs s >= 0, got {s}")
    inv = ONE
    if sig.r1:
        zr = zeta_R_exact(s + 2)
        if zr is None:
            return None
        inv = inv * zr**sig.r1
    if sig.r2:
        zc = zeta_C_exact(s + 1)
        if zc is None:
            return None
        inv = inv * zc**sig.r2
    return inv**-1


# --- classification -------------------------------------------------------------


class Tag(enum.Enum):
    ALGEBRAIC = "algebraic"
    TRANSCENDENTAL = "transcendental"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Classification:
    tag: Tag
    witness: Optional[str] = None

    def __post_init__(self):
        if (self.tag is Tag.TRANSCENDENTAL) != (self.witness is not None):
            raise ValueError("witness must be given exactly for transcendental values")


WITNESS_PI = "π"
WITNESS_PI_G4 = "(π, Γ(1/4))"
WITNESS_PI_G3 = "(π, Γ(1/3))"


def classify(v: ExactValue, paper_strict: bool = False) -> Classification:
    """Algebraic / transcendental / unknown from the generator exponents.

    ``paper_strict`` refuses to decide any value whose derivation passed
    through the Gamma(1/6) duplication rewrite.
    """
    a, b, c = v.pi_exp, v.g4_exp, v.g3_exp
    if a == b == c == 0:
        return Classification(Tag.ALGEBRAIC)
    if paper_strict and v.used_gamma_sixth:
        return Classification(Tag.UNKNOWN)
    if b == 0 and c == 0:
        return Classification(Tag.TRANSCENDENTAL, WITNESS_PI)
    if c == 0:
        return Classification(Tag.TRANSCENDENTAL, WITNESS_PI_G4)
    if b == 0:
        return Classification(Tag.TRANSCENDENTAL, WITNESS_PI_G3)
    return Classification(Tag.UNKNOWN)


# --- numeric bridge and rendering --------------------------------------------------


def _exact_log(mp, v: ExactValue):
    out = mp.zero
    for p, e in v.primes:
        out += mp.mpf(e.numerator) / e.denominator * mp.log(p)
    for exp, gen in (
        (v.pi_exp, lambda: mp.log(mp.pi)),
        (v.g4_exp, lambda: _lgamma(mp, Fraction(1, 4))),
        (v.g3_exp, lambda: _lgamma(mp, Fraction(1, 3))),
    ):
        if exp:
            out += mp.mpf(exp.numerator) / exp.denominator * gen()
    return out


def exact_to_real(v: ExactValue, ctx: PrecisionContext = DEFAULT_CONTEXT):
    return evaluate(ctx, lambda mp, v: mp.exp(_exact_log(mp, v)), v)


def _fmt_exp(e: Fraction) -> str:
    return f"({e.numerator})" if e.denominator == 1 else f"({e.numerator}/{e.denominator})"


def render(v: ExactValue) -> str:
    """Canonical text: primes ascending, then π, Γ(1/4), Γ(1/3); "1" for the unit."""
    parts = [f"{p}^{_fmt_exp(e)}" for p, e in v.primes]
    for sym, e in (("π", v.pi_exp), ("Γ(1/4)", v.g4_exp), ("Γ(1/3)", v.g3_exp)):
        if e:
            parts.append(f"{sym}^{_fmt_exp(e)}")
    return " · ".join(parts) if parts else "1"
