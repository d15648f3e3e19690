"""Acceptance gate: one test per numbered criterion, each at its stated tolerance."""

import random
from fractions import Fraction as F

import mpmath
import pytest

from regdet.absolute import F_C, F_R, check_additive_relation, integral_series_residual
from regdet.fields import IntPolynomial, parse_polynomial, real_root_count, sturm_signature
from regdet.numerics import PrecisionContext
from regdet.regprod import (
    Signature,
    gamma_factor_residual,
    periodicity_residual,
    route_residual,
    theorem1_residual,
)
from regdet.symbolic import (
    PI,
    WITNESS_PI,
    WITNESS_PI_G3,
    WITNESS_PI_G4,
    Tag,
    classify,
    exact_of_rational,
    G_K_exact,
    render,
    zeta_C_exact,
    zeta_R_exact,
)

from .conftest import ACCEPTANCE_RESULTS
from .test_fields import _oracle_real_roots, _random_squarefree

CTX128 = PrecisionContext.from_bits(128)
CTX256 = PrecisionContext.from_bits(256)
TARGET = mpmath.mpf(2) ** -100


def record(key, passed, detail):
    ACCEPTANCE_RESULTS[key] = (bool(passed), detail)
    return passed


def fmt(x):
    return mpmath.nstr(x, 3)


ROUTE_SIGS = [Signature(1, 0), Signature(0, 1), Signature(2, 3)]


def _route_residuals(ctx):
    rng = random.Random(1)
    pts = [rng.uniform(0, 10) for _ in range(20)]
    return [route_residual(s, sig, ctx) for sig in ROUTE_SIGS for s in pts]


def _product_residuals(ctx):
    rng = random.Random(2)
    pts = [rng.uniform(0.1, 20) for _ in range(20)]
    return [theorem1_residual(s, ctx) for s in pts], [gamma_factor_residual(s, ctx) for s in pts]


def test_c1_route_equivalence():
    worst = max(_route_residuals(CTX128))
    ok = worst <= 8 * TARGET
    record("C1", ok, f"route equivalence: max {fmt(worst)} <= 8*2^-100 over 20 s x 3 signatures")
    assert ok


def test_c2_product_formula_numeric():
    zeta, gamma = _product_residuals(CTX128)
    ok = max(zeta) <= 4 * TARGET and max(gamma) <= 4 * TARGET
    record("C2", ok, f"zeta_C = zeta_R zeta_R(+1): max {fmt(max(zeta))}; Gamma form: max {fmt(max(gamma))}; tol 4*2^-100")
    assert ok


def _c3_points():
    return sorted({F(k, d) for d in (1, 2, 3, 4, 6) for k in range(1, 6 * d + 1)})


def test_c3_product_formula_exact_full_grid():
    """The literal criterion, over every s with denominator 1, 2, 3, 4 or 6.

    Denominators 4 and 6 need Gamma at eighths and twelfths, outside the
    supported monoid, so zeta_R_exact reports those as unsupported and the
    identity cannot be checked there.  Expected to fail; kept strict so a
    future extension of the monoid shows up here.
    """
    points = _c3_points()
    failures = [
        s for s in points
        if zeta_R_exact(s) is None or zeta_R_exact(s + 1) is None
        or zeta_R_exact(s) * zeta_R_exact(s + 1) != zeta_C_exact(s)
    ]
    supported = [s for s in points if s.denominator in (1, 2, 3)]
    sub_ok = all(zeta_R_exact(s) * zeta_R_exact(s + 1) == zeta_C_exact(s) for s in supported)
    record(
        "C3",
        not failures,
        f"exact zeta_C = zeta_R zeta_R(+1) on {len(points)} points: {len(failures)} unrepresentable "
        f"(denominators 4, 6 need Gamma(1/8), Gamma(1/12)); subset with denominators 1, 2, 3 "
        f"({len(supported)} points) {'holds' if sub_ok else 'FAILS'}",
    )
    if failures:
        pytest.xfail(f"{len(failures)} points need Gamma outside the monoid, e.g. s = {failures[0]}")


def test_c3_product_formula_exact_supported_subset():
    for s in _c3_points():
        if s.denominator in (1, 2, 3):
            assert zeta_R_exact(s) * zeta_R_exact(s + 1) == zeta_C_exact(s), s


def test_c4_known_values_exact():
    checks = []
    two = exact_of_rational(2)
    for sig in (Signature(1, 0), Signature(2, 0), Signature(0, 1), Signature(1, 1), Signature(0, 2), Signature(3, 2)):
        r1, r2 = sig.r1, sig.r2
        g0, g1 = G_K_exact(0, sig), G_K_exact(1, sig)
        checks.append(render(g0) == render(two ** F(r2, 2) * PI ** F(r1 + r2, 2)))
        checks.append(render(g1) == render(two ** F(r1 + r2, 2) * PI ** F(r2, 2)))
        checks.append(render(g0 * g1) == render((two * PI) ** F(r1 + 2 * r2, 2)))
    checks.append(render(zeta_R_exact(F(5, 2))) == "2^(-7/4) · π^(-1/2) · Γ(1/4)^(1)")
    checks.append(render(zeta_R_exact(F(7, 2))) == "2^(-3/4) · 3^(1) · π^(1/2) · Γ(1/4)^(-1)")
    ok = all(checks)
    record("C4", ok, f"closed-form values string-exact: {sum(checks)}/{len(checks)}")
    assert ok


def test_c5_classification_truth_table():
    sigs = [Signature(1, 0), Signature(2, 0), Signature(0, 1), Signature(1, 1), Signature(0, 2)]
    bad = []
    total = 0
    for sig in sigs:
        for n in range(4):
            cases = [(F(n), (Tag.ALGEBRAIC, None) if n % 2 and sig.r2 == 0 else (Tag.TRANSCENDENTAL, WITNESS_PI))]
            cases.append((n + F(1, 2), (Tag.ALGEBRAIC, None) if sig.r1 == 0 else (Tag.TRANSCENDENTAL, WITNESS_PI_G4)))
            if sig.r1 == 0:
                cases.append((n + F(1, 3), (Tag.TRANSCENDENTAL, WITNESS_PI_G3)))
            for s, (tag, witness) in cases:
                total += 1
                c = classify(G_K_exact(s, sig))
                if (c.tag, c.witness) != (tag, witness):
                    bad.append((s, sig))
    record("C5", not bad, f"classification truth table: {total - len(bad)}/{total} cells match")
    assert not bad


def test_c6_absolute_zeta():
    grid = [(w, s) for w in (2, 3, F(5, 2)) for s in (F(1, 2), 1, 3)]
    quad = max(integral_series_residual(f, w, s, CTX128) for f in (F_C, F_R) for w, s in grid)
    additive = max(check_additive_relation(w, s, CTX128) for w, s in grid)
    ok = quad <= 10 * TARGET and additive <= 4 * TARGET
    record("C6", ok, f"quadrature vs series max {fmt(quad)} (tol 10*2^-100); additive max {fmt(additive)} (tol 4*2^-100)")
    assert ok


def test_c7_sturm_signature():
    rng = random.Random(2024)
    mismatches = 0
    for _ in range(50):
        coeffs, _poly = _random_squarefree(rng)
        if real_root_count(IntPolynomial(tuple(coeffs))) != _oracle_real_roots(coeffs):
            mismatches += 1
    known = {"x^2-2": (2, 0), "x^2+1": (0, 1), "x^3-2": (1, 1)}
    known_ok = all(sturm_signature(parse_polynomial(p)) == Signature(*sig) for p, sig in known.items())
    ok = mismatches == 0 and known_ok
    record("C7", ok, f"Sturm vs grid oracle: {50 - mismatches}/50 agree; known cases {'ok' if known_ok else 'wrong'}")
    assert ok


def test_c8_periodicity():
    rng = random.Random(8)
    pts = [rng.uniform(0, 10) for _ in range(10)]
    derived = max(periodicity_residual(s, sig, CTX128) for sig in (Signature(1, 0), Signature(0, 1)) for s in pts)
    printed = max(periodicity_residual(s, Signature(1, 0), CTX128, printed=True) for s in pts)
    ok = derived <= 8 * TARGET
    record(
        "C8", ok,
        f"periodicity with (s+1)^r2: max {fmt(derived)} (tol 8*2^-100); "
        f"printed (s+1)^-r1 on (1, 0): max {fmt(printed)}, {'fails as expected' if printed > 8 * TARGET else 'holds'}",
    )
    assert ok
    assert printed > 8 * TARGET


def _identity_residuals(ctx):
    """Samples grouped by identity, as the verify command reports them."""
    route = _route_residuals(ctx)
    zeta, gamma = _product_residuals(ctx)
    groups = {f"route {sig}": route[20 * i:20 * (i + 1)] for i, sig in enumerate(ROUTE_SIGS)}
    groups["zeta product"] = zeta
    groups["gamma factor"] = gamma
    return groups


def test_c9_precision_scaling():
    factor = mpmath.mpf(2) ** -50
    lo, hi = _identity_residuals(CTX128), _identity_residuals(CTX256)
    # per identity: the maximum residual must shrink by 2^50
    # (an identity that is exactly zero at 128 bits must stay zero)
    worst = {
        name: max(hi[name]) / max(lo[name]) if max(lo[name]) else (0 if not max(hi[name]) else mpmath.inf)
        for name in lo
    }
    # per sample as well, wherever the 128-bit residual is nonzero; a zero
    # there means both sides rounded to the same 128-bit value
    samples = [(a, b) for name in lo for a, b in zip(lo[name], hi[name])]
    bad = [(a, b) for a, b in samples if a and b > a * factor]
    zeros = sum(1 for a, _ in samples if not a)
    ok = all(r <= factor for r in worst.values()) and not bad
    record(
        "C9", ok,
        f"256 vs 128 bits: worst per-identity ratio {fmt(max(worst.values()))} (need <= 2^-50 = {fmt(factor)}); "
        f"{len(samples) - zeros - len(bad)}/{len(samples) - zeros} nonzero samples reduced, {zeros} exact zeros at 128 bits",
    )
    assert ok
