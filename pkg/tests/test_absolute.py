from fractions import Fraction

import mpmath
import pytest

from regdet.absolute import (
    F_C,
    F_R,
    AbsoluteForm,
    UnsupportedFormError,
    Z_integral,
    Z_series,
    check_additive_relation,
    integral_series_residual,
    verify_form_equation,
)
from regdet.numerics import DomainError, hurwitz_zeta

from .conftest import hp


def test_builtin_constants():
    assert (F_C.C, F_C.D) == (-1, 1)
    assert (F_R.C, F_R.D) == (-1, 2)


@pytest.mark.parametrize("form", [F_C, F_R])
def test_form_equation_holds(ctx, form):
    assert verify_form_equation(form, 100, ctx) <= ctx.tol()


def test_form_equation_negative_control(ctx):
    wrong = AbsoluteForm("f_C_wrong_D", -1, 2, F_C.evaluate)
    assert verify_form_equation(wrong, 100, ctx) > hp("0.1")


def test_form_rejects_bad_sign():
    with pytest.raises(ValueError):
        AbsoluteForm("bad", 2, 1, F_C.evaluate)


def test_Z_integral_examples(ctx):
    tol = hp(ctx.target_abs_err)
    assert abs(hp(Z_integral(F_C, 2, 1, ctx)) - mpmath.pi**2 / 6) <= tol
    assert abs(hp(Z_integral(F_R, 2, 1, ctx)) - mpmath.pi**2 / 8) <= tol
    assert abs(hp(Z_integral(F_C, 3, 2, ctx)) - hp(hurwitz_zeta(3, 2, ctx))) <= 2 * tol


def test_Z_integral_domain(ctx):
    with pytest.raises(DomainError):
        Z_integral(F_C, 1, 1, ctx)
    with pytest.raises(DomainError):
        Z_integral(F_C, "1/2", 1, ctx)
    with pytest.raises(DomainError):
        Z_integral(F_C, 2, 0, ctx)


def test_Z_integral_generic_form_without_splitting(ctx):
    # a user form with no pole split still integrates when it is regular at t = 0
    smooth = AbsoluteForm("one", 1, 0, lambda mp, x: mp.one)
    got = hp(Z_integral(smooth, 2, 1, ctx))
    # (1/Gamma(2)) int_0^oo t e^-t dt = 1
    assert abs(got - 1) <= hp(ctx.target_abs_err)


def test_Z_series_examples(ctx):
    tol = hp(ctx.target_abs_err)
    assert abs(hp(Z_series(F_C, 2, 1, ctx)) - mpmath.pi**2 / 6) <= tol
    assert abs(hp(Z_series(F_R, 2, 2, ctx)) - mpmath.pi**2 / 24) <= tol
    for s in (Fraction(1, 3), 1, Fraction(7, 2)):
        assert abs(hp(Z_series(F_R, 0, s, ctx)) - (hp("1/2") - hp(s) / 2)) <= tol


def test_Z_series_rejects_custom_forms(ctx):
    custom = AbsoluteForm("f_C", -1, 1, F_C.evaluate)  # same name, not the builtin
    with pytest.raises(UnsupportedFormError):
        Z_series(custom, 2, 1, ctx)


@pytest.mark.parametrize("w, s", [(2, 1), (0, Fraction(3, 7)), (3, Fraction(1, 2)), (-2, 4), (Fraction(1, 2), 2)])
def test_additive_relation(ctx, w, s):
    assert check_additive_relation(w, s, ctx) <= ctx.tol(4)


@pytest.mark.parametrize("form", [F_C, F_R])
@pytest.mark.parametrize("w", [2, 3, Fraction(5, 2)])
@pytest.mark.parametrize("s", [Fraction(1, 2), 1, 3])
def test_integral_series_agreement(ctx, form, w, s):
    assert integral_series_residual(form, w, s, ctx) <= ctx.tol(10)
