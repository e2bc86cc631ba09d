import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.errors import DomainError, UsageError
from core.fracpair import Fracpair, FracpairModel
from core.values import (
    BOT,
    FpBotModel,
    FpElement,
    QBotModel,
    QZeroModel,
    adjoin_bottom,
    model_from_name,
    operation_tables,
    strip_bottom,
    totalize_field,
)

from conftest import qbot_values


class TestQBot:
    def test_inverse_of_zero_is_bottom(self, qbot):
        assert qbot.inv(Fraction(0)) is BOT

    def test_inverse_of_nonzero(self, qbot):
        assert qbot.inv(Fraction(2, 3)) == Fraction(3, 2)

    @given(value=qbot_values)
    def test_bottom_absorbs(self, value):
        model = QBotModel()
        assert model.add(value, BOT) is BOT
        assert model.mul(BOT, value) is BOT
        assert model.neg(BOT) is BOT
        assert model.inv(BOT) is BOT

    def test_zero_times_bottom(self, qbot):
        assert qbot.mul(Fraction(0), BOT) is BOT

    def test_numeral(self, qbot):
        assert qbot.numeral(0) == 0
        assert qbot.numeral(5) == 5

    def test_rejects_foreign_values(self, qbot):
        with pytest.raises(UsageError):
            qbot.add(Fraction(1), 1.5)

    def test_parse_and_render(self, qbot):
        assert qbot.parse_value("3/6") == Fraction(1, 2)
        assert qbot.parse_value("_|_") is BOT
        assert qbot.parse_value("bot") is BOT
        assert qbot.render_value(BOT) == "_|_"
        assert qbot.render_value(Fraction(-3, 2)) == "-3/2"

    def test_parse_zero_denominator(self, qbot):
        with pytest.raises(UsageError):
            qbot.parse_value("1/0")

    def test_not_enumerable(self, qbot):
        with pytest.raises(UsageError):
            qbot.elements()

    def test_sample_is_reproducible(self, qbot):
        first = [qbot.sample(random.Random(7)) for _ in range(20)]
        second = [qbot.sample(random.Random(7)) for _ in range(20)]
        assert first == second


class TestQZero:
    def test_zero_totalized(self):
        model = QZeroModel()
        assert model.inv(Fraction(0)) == 0
        assert not model.has_bottom

    def test_has_no_bottom(self):
        with pytest.raises(UsageError):
            QZeroModel().bot


class TestFpBot:
    def test_carrier(self, f5):
        elements = f5.elements()
        assert len(elements) == 6
        assert elements[-1] is BOT

    def test_inverse_table(self, f7):
        for residue in range(1, 7):
            element = f7.element(residue)
            assert f7.mul(element, f7.inv(element)) == f7.one
        assert f7.inv(f7.zero) is BOT

    def test_numeral_wraps(self, f5):
        assert f5.numeral(5) == f5.zero
        assert f5.numeral(7) == FpElement(2, 5)

    @pytest.mark.parametrize("p", [0, 1, 4, 9, -3])
    def test_rejects_non_prime(self, p):
        with pytest.raises(UsageError):
            FpBotModel(p)

    def test_element_must_be_reduced(self):
        with pytest.raises(UsageError):
            FpElement(5, 5)

    def test_boundary_values(self, f5):
        assert f5.boundary_values() == [f5.zero, f5.one, f5.element(4), BOT]

    def test_f2_boundary_deduplicates(self):
        f2 = FpBotModel(2)
        assert f2.boundary_values() == [f2.zero, f2.one, BOT]


class TestStripAndAdjoin:
    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_round_trip_reproduces_tables(self, p):
        field = totalize_field(p)
        rebuilt = adjoin_bottom(strip_bottom(field))
        assert operation_tables(rebuilt) == operation_tables(field)

    def test_strip_sets_inverse_of_zero(self, f5):
        stripped = strip_bottom(f5)
        assert not stripped.has_bottom
        assert stripped.inv(stripped.zero) == stripped.zero
        assert len(stripped.elements()) == 5

    def test_strip_requires_finite_model(self, qbot):
        with pytest.raises(UsageError):
            strip_bottom(qbot)

    def test_strip_rejects_non_field(self):
        from core.values import TableModel

        carrier = ["a"]
        add = {("a", "a"): "a"}
        neg = {"a": "a"}
        trivial = TableModel("trivial", carrier, "a", "a", add, add, neg, {"a": BOT}, has_bottom=True)
        with pytest.raises(DomainError):
            strip_bottom(trivial)


class TestModelNames:
    @pytest.mark.parametrize(
        "name, expected",
        [("qbot", QBotModel), ("QZERO", QZeroModel), ("fp:7", FpBotModel), ("fracpair", FracpairModel)],
    )
    def test_known_names(self, name, expected):
        assert isinstance(model_from_name(name), expected)

    def test_fp0_is_stripped(self):
        model = model_from_name("fp0:3")
        assert model.name == "fp0:3"
        assert not model.has_bottom

    def test_unknown_name_lists_models(self):
        with pytest.raises(UsageError, match="qbot"):
            model_from_name("reals")

    def test_bad_modulus(self):
        with pytest.raises(UsageError):
            model_from_name("fp:six")

    def test_fracpair_boundary(self):
        values = model_from_name("fracpair").boundary_values()
        assert Fracpair(2, 2) in values
        assert values[-1] is BOT


@given(st.integers(min_value=0, max_value=60))
def test_numeral_matches_integer_in_qbot(n):
    assert QBotModel().numeral(n) == n
