"""Number-field front end: polynomial parsing, Sturm signature, Borel ranks.

Irreducibility is not checked.  A reducible squarefree polynomial yields
the signature of the corresponding etale algebra, not of a field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .numerics import DomainError
from .regprod import Signature


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotSquarefreeError(ValueError):
    pass


@dataclass(frozen=True)
class IntPolynomial:
    """Integer coefficients, constant term first."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if len(coeffs) < 2:
            raise ValueError("polynomial must have degree >= 1")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            mag = abs(c)
            body = f"{mag}" if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            sign = "-" if c < 0 else "+"
            terms.append(f"{sign} {body}")
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


@dataclass(frozen=True)
class KRank:
    n: int
    rank: int


_TERM = re.compile(r"([+-])?(\d+)?(\*)?(x(?:\^(\d+))?)?")


def parse_polynomial(text: str) -> IntPolynomial:
    """Parse e.g. ``"x^3 - 2"`` or ``"3*x^2+x-1"`` into an IntPolynomial."""
    # positions refer to the original text
    chars = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
    s = "".join(ch for _, ch in chars)

    def orig(k: int) -> int:
        return chars[k][0] if k < len(chars) else len(text)

    if not s:
        raise PolynomialSyntaxError("empty polynomial", 0)
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, star, var, exp = m.groups()
        if m.end() == pos or (not num and not var):
            if s[pos] == ".":
                raise PolynomialSyntaxError("non-integer coefficient", orig(pos))
            raise PolynomialSyntaxError(f"unexpected {s[pos]!r}", orig(pos))
        if sign is None and not first:
            raise PolynomialSyntaxError("expected '+' or '-'", orig(pos))
        if star and not var:
            raise PolynomialSyntaxError("expected 'x' after '*'", orig(m.end()))
        if m.end() < len(s) and s[m.end()] == ".":
            raise PolynomialSyntaxError("non-integer coefficient", orig(m.end()))
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        k = (int(exp) if exp else 1) if var else 0
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
        first = False
    degree = max((k for k, c in coeffs.items() if c), default=-1)
    if degree < 0:
        raise PolynomialSyntaxError("zero polynomial", 0)
    if degree == 0:
        raise PolynomialSyntaxError("constant polynomial has no roots", 0)
    return IntPolynomial(tuple(coeffs.get(k, 0) for k in range(degree + 1)))


# --- exact polynomial arithmetic over Q, constant term first -------------------


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _derivative(p):
    return [k * p[k] for k in range(1, len(p))]


def _rem(a, b):
    a = list(a)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        q = a[-1] / lead
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a.pop()
    return a


def _gcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _trim(_rem(a, b))
    return a


def sturm_chain(p: IntPolynomial) -> list[list[Fraction]]:
    chain = [[Fraction(c) for c in p.coefficients]]
    chain.append(_derivative(chain[0]))
    while True:
        r = _trim(_rem(chain[-2], chain[-1]))
        if not r:
            return chain
        chain.append([-c for c in r])


def _sign_changes(signs) -> int:
    signs = [x for x in signs if x]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at_infinity(q, negative: bool) -> int:
    lead = 1 if q[-1] > 0 else -1
    return -lead if negative and (len(q) - 1) % 2 else lead


def real_root_count(p: IntPolynomial) -> int:
    """Distinct real roots, V(-inf) - V(+inf) over the Sturm chain."""
    chain = sturm_chain(p)
    v_minus = _sign_changes(_sign_at_infinity(q, True) for q in chain)
    v_plus = _sign_changes(_sign_at_infinity(q, False) for q in chain)
    return v_minus - v_plus


def sturm_signature(p: IntPolynomial) -> Signature:
    f = [Fraction(c) for c in p.coefficients]
    g = _gcd(f, _derivative(f))
    if len(g) > 1:
        lead = g[-1]
        monic = IntPolynomial(_integer_multiple([c / lead for c in g]))
        raise NotSquarefreeError(f"polynomial is not squarefree: gcd(p, p') = {monic}")
    r1 = real_root_count(p)
    rest = p.degree - r1
    assert rest % 2 == 0, "complex roots of a real polynomial come in pairs"
    return Signature(r1, rest // 2)


def _integer_multiple(coeffs):
    d = lcm(*(c.denominator for c in coeffs))
    return tuple(int(c * d) for c in coeffs)


def borel_rank(n: int, sig: Signature) -> KRank:
    """rank K_n of a ring of integers: r1+r2 for n = 1 mod 4, r2 for n = 3 mod 4, else 0."""
    if n < 2:
        raise DomainError(f"Borel ranks are taken for n >= 2, got {n}")
    if n % 4 == 1:
        return KRank(n, sig.r1 + sig.r2)
    if n % 4 == 3:
        return KRank(n, sig.r2)
    return KRank(n, 0)
