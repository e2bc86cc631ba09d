import random
from fractions import Fraction

import pytest
from hypothesis import given

from core.normal import (
    FractionForm,
    evaluate_form,
    frac_add,
    frac_inv,
    frac_mul,
    frac_neg,
    from_polynomial,
    integer_value,
    to_fraction,
    to_record,
    to_term,
)
from core.poly import ONE_POLY, ZERO_POLY, MultiPoly
from core.terms import evaluate, parse, render, variables
from core.values import BOT, FpBotModel, QBotModel

from conftest import fp_assignments, proper_terms, qbot_assignments, random_assignment, random_term, terms

x = MultiPoly.variable("x")
y = MultiPoly.variable("y")


def form(num, den, support, guard=1):
    return FractionForm(num, den, frozenset(support), guard)


class TestToFraction:
    def test_sum_of_inverses(self):
        assert to_fraction(parse("1/x + 1/y")) == form(x + y, x * y, {"x", "y"})

    def test_additive_inverse_keeps_support(self):
        assert to_fraction(parse("x + -x")) == form(ZERO_POLY, ONE_POLY, {"x"})

    def test_bottom_absorbs(self):
        assert to_fraction(parse("bot + x")) is BOT
        assert to_fraction(parse("0 * bot")) is BOT

    def test_zero_times_square(self):
        assert to_fraction(parse("0 * (x * x)")) == form(ZERO_POLY, ONE_POLY, {"x"})

    def test_inverse_of_zero(self):
        assert to_fraction(parse("0^-1")) is BOT
        assert to_fraction(parse("(x - x)^-1")) is BOT

    def test_double_inverse_keeps_padding(self):
        assert to_fraction(parse("(x^-1)^-1")) == form(x * x, x, {"x"})

    def test_constant_halves(self):
        result = to_fraction(parse("1/2 + 1/2"))
        assert result.num == ONE_POLY
        assert result.den == ONE_POLY
        assert result.guard == 2

    def test_denominator_is_primitive_positive(self):
        result = to_fraction(parse("x / (0 - 2*x - 4)"))
        assert result.den == x + 2
        assert result.num == x.scale(Fraction(-1, 2))
        assert result.guard == 2


class TestFracOps:
    def test_add(self):
        assert frac_add(from_polynomial(x), form(ZERO_POLY, x, {"x"})) == form(x * x, x, {"x"})

    def test_mul(self):
        assert frac_mul(from_polynomial(x), form(ONE_POLY, x, {"x"})) == form(x, x, {"x"})
        assert frac_mul(BOT, from_polynomial(ONE_POLY)) is BOT

    def test_neg(self):
        assert frac_neg(from_polynomial(x)) == form(-x, ONE_POLY, {"x"})

    def test_inv(self):
        assert frac_inv(from_polynomial(x)) == form(ONE_POLY, x, {"x"})
        assert frac_inv(form(ZERO_POLY, ONE_POLY, {"x"})) is BOT
        assert frac_inv(BOT) is BOT

    def test_inverse_of_multiple_of_p_is_guarded(self):
        result = to_fraction(parse("(7 * x)^-1"))
        assert result.guard == 7
        assert evaluate_form(result, {"x": FpBotModel(7).one}, FpBotModel(7)) is BOT


class TestSemantics:
    @given(t=terms, assignment=qbot_assignments())
    def test_sound_in_qbot(self, t, assignment):
        model = QBotModel()
        assert evaluate(t, assignment, model) == evaluate_form(to_fraction(t), assignment, model)

    @given(t=terms, assignment=fp_assignments(7))
    def test_sound_in_f7(self, t, assignment):
        model = FpBotModel(7)
        assert evaluate(t, assignment, model) == evaluate_form(to_fraction(t), assignment, model)

    @given(t=terms, assignment=fp_assignments(2))
    def test_sound_in_f2(self, t, assignment):
        model = FpBotModel(2)
        assert evaluate(t, assignment, model) == evaluate_form(to_fraction(t), assignment, model)

    @given(t=proper_terms)
    def test_support_is_variables(self, t):
        result = to_fraction(t)
        if result is not BOT:
            assert result.support == frozenset(variables(t))

    @given(t=terms)
    def test_rendered_form_is_idempotent(self, t):
        result = to_fraction(t)
        assert to_fraction(parse(render(to_term(result)))) == result

    @given(t=terms, assignment=qbot_assignments())
    def test_to_term_agrees_with_form(self, t, assignment):
        model = QBotModel()
        result = to_fraction(t)
        assert evaluate(to_term(result), assignment, model) == evaluate_form(result, assignment, model)

    def test_integer_value_by_doubling(self):
        f5 = FpBotModel(5)
        assert integer_value(f5, 13) == f5.numeral(13)
        assert integer_value(QBotModel(), -6) == -6


@pytest.mark.parametrize(
    "left, right",
    [
        ("0 * 0", "0"),
        ("-0", "0"),
        ("0 * a", "0 * -a"),
        ("0 * (a * b)", "0 * (a + b)"),
        ("-(a * b)", "a * -b"),
        ("-1 * a", "-a"),
        ("(-a)^-1", "-(a^-1)"),
        ("-bot", "bot"),
        ("bot^-1", "bot"),
    ],
)
def test_derived_identities_normalize_equal(left, right):
    assert to_fraction(parse(left)) == to_fraction(parse(right))


def test_record():
    assert to_record(BOT) == {"bottom": True}
    assert to_record(to_fraction(parse("1/x + 1/y"))) == {
        "num": "x + y",
        "den": "x*y",
        "support": ["x", "y"],
        "guard": 1,
    }


@pytest.mark.slow
def test_soundness_sweep():
    rng = random.Random(20140101)
    models = [QBotModel(), FpBotModel(7)]
    for _ in range(10000):
        t = random_term(rng, rng.randint(1, 7))
        result = to_fraction(t)
        if result is not BOT:
            assert result.support == variables(t), render(t)
        for model in models:
            for _ in range(50):
                assignment = random_assignment(rng, model)
                assert evaluate(t, assignment, model) == evaluate_form(result, assignment, model), render(t)
